use serde::Serialize;

use super::{eos_minimize, EosConfig, PRODUCT_EPS};
use crate::exec::map_range;
use crate::tensor::{entanglement_entropy, haar_unit_vector, seeded_rng, Ket, SubspaceBasis};
use crate::{Result, C64};

#[derive(Clone, Debug, Serialize)]
pub struct DimensionBoundReport {
    pub dim: usize,
    /// `(da - 1)(db - 1)`.
    pub bound: usize,
    pub eos_value: f64,
    pub positive: bool,
    /// A positive value on a subspace larger than the bound. Always an
    /// optimizer failure: such subspaces contain product states.
    pub violation: bool,
}

/// A subspace with positive entanglement has dimension at most `(da-1)(db-1)`.
pub fn check_dimension_bound(w: &SubspaceBasis, eos_value: f64) -> DimensionBoundReport {
    let s = w.shape();
    let bound = (s.da - 1) * (s.db - 1);
    let positive = eos_value > PRODUCT_EPS;
    DimensionBoundReport { dim: w.dim(), bound, eos_value, positive, violation: positive && w.dim() > bound }
}

#[derive(Clone, Debug, Serialize)]
pub struct Prop2Report {
    pub eos_u: f64,
    pub eos_v: f64,
    /// `min(dim U, dim V)`.
    pub n_min: usize,
    /// `E(U) + E(V) - log₂ N`.
    pub lower_bound: f64,
    pub min_sampled: f64,
    /// `(sample index, E(χ))` for samples below the lower bound by more than `1e-7`.
    pub violations: Vec<(usize, f64)>,
    /// Entropy of the product of the two minimizers.
    pub product_of_minimizers: f64,
    pub upper_bound_ok: bool,
}

impl Prop2Report {
    pub fn passed(&self) -> bool {
        self.violations.is_empty() && self.upper_bound_ok
    }
}

/// Samples `χ ∈ U ⊗ V` (grouped `(AA'):(BB')`) and checks
/// `E(χ) ≥ E(U) + E(V) - log₂ min(dim U, dim V)`, plus the upper bound at the
/// product of the minimizers.
pub fn prop2_lower_bound_check(
    u: &SubspaceBasis,
    v: &SubspaceBasis,
    samples: usize,
    seed: u64,
    cfg: &EosConfig,
) -> Result<Prop2Report> {
    let eu = eos_minimize(u, cfg)?;
    let ev = eos_minimize(v, cfg)?;
    let n_min = u.dim().min(v.dim());
    let lower_bound = eu.value + ev.value - (n_min as f64).log2();
    let w = u.tensor(v);
    let shape = w.shape();

    let entropies = map_range(samples, |i| {
        let c = haar_unit_vector(&mut seeded_rng(seed, i as u64), w.dim());
        let chi = Ket::normalize(w.combine(c.amplitudes())).expect("unit combination");
        entanglement_entropy(&chi, shape).expect("shape matches")
    });
    let violations: Vec<(usize, f64)> = entropies
        .iter()
        .enumerate()
        .filter(|(_, &e)| e < lower_bound - 1e-7)
        .map(|(i, &e)| (i, e))
        .collect();

    let coeffs: Vec<C64> = eu
        .minimizer_coefficients
        .iter()
        .flat_map(|a| ev.minimizer_coefficients.iter().map(move |b| a * b))
        .collect();
    let product = Ket::normalize(w.combine(&coeffs))?;
    let product_of_minimizers = entanglement_entropy(&product, shape)?;

    Ok(Prop2Report {
        eos_u: eu.value,
        eos_v: ev.value,
        n_min,
        lower_bound,
        min_sampled: entropies.iter().copied().fold(f64::INFINITY, f64::min),
        violations,
        product_of_minimizers,
        upper_bound_ok: product_of_minimizers <= eu.value + ev.value + 1e-7,
    })
}
