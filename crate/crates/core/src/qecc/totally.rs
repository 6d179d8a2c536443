use serde::Serialize;

use crate::exec::map_slice;
use crate::maxent::certify_max_entangled;
use crate::qecc::pauli::subsets;
use crate::tensor::{QubitCut, QubitSubspace};
use crate::{Error, Result};

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TotalEntanglementReport {
    pub k: usize,
    pub verdict: bool,
    pub cuts_checked: usize,
    /// First cut (in lexicographic order) with the largest Gram residual.
    pub worst_cut: Vec<usize>,
    pub worst_residual: f64,
    /// `dim V · 2^k > 2^{n-k}`, which rules out every cut before any check.
    pub dimension_law_violated: bool,
}

/// All `k`-qubit subsets of `0..n` in lexicographic order.
pub fn qubit_cuts(n: usize, k: usize) -> Vec<Vec<usize>> {
    subsets(n, k)
}

/// Checks that `v` is maximally entangled across every cut with `k` qubits
/// on side B.
pub fn is_k_totally_entangled(v: &QubitSubspace, k: usize) -> Result<TotalEntanglementReport> {
    let n = v.n();
    if 2 * k > n {
        return Err(Error::CutTooLarge { k, n });
    }
    let dimension_law_violated = (v.dim() as u128) << k > 1u128 << (n - k);
    if k == 0 {
        return Ok(TotalEntanglementReport {
            k,
            verdict: !dimension_law_violated,
            cuts_checked: 0,
            worst_cut: Vec::new(),
            worst_residual: 0.0,
            dimension_law_violated,
        });
    }
    let cuts = qubit_cuts(n, k);
    let residuals = map_slice(&cuts, |b| -> Result<(f64, bool)> {
        let w = v.under_cut(&QubitCut::new(n, b)?)?;
        let c = certify_max_entangled(&w);
        Ok((c.gram_residual, c.is_max_entangled))
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let mut worst = 0;
    for (i, r) in residuals.iter().enumerate() {
        if r.0 > residuals[worst].0 {
            worst = i;
        }
    }
    Ok(TotalEntanglementReport {
        k,
        verdict: !dimension_law_violated && residuals.iter().all(|r| r.1),
        cuts_checked: cuts.len(),
        worst_cut: cuts[worst].clone(),
        worst_residual: residuals[worst].0,
        dimension_law_violated,
    })
}
