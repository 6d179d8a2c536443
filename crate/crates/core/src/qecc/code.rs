use rand::Rng;
use serde::Serialize;

use super::{check_bounds, is_k_totally_entangled, ErrorSet, PauliString};
use crate::exec::map_slice;
use crate::tensor::{haar_unit_vector, inner, norm, seeded_rng, QubitSubspace};
use crate::{CMatrix, Error, Result, C64};

/// Tolerance for orthogonality of syndrome spaces and for recovery checks.
pub const CODE_TOL: f64 = 1e-10;

/// An `(n, l, k)` code: code space `V₀` of dimension `2^l`, mutually
/// orthogonal syndrome spaces `V₁ … V_d`, recoveries `U_j : V_j → V₀` and the
/// spectrum of the syndrome observable (`λ_j` on `V_j`, `μ` on the rest).
///
/// Several errors may share a syndrome space, so degenerate codes fit.
#[derive(Clone, Debug, PartialEq)]
pub struct CodeModel {
    n: usize,
    l: usize,
    k: usize,
    spaces: Vec<QubitSubspace>,
    recoveries: Vec<PauliString>,
    eigenvalues: Vec<f64>,
    mu: f64,
}

fn max_cross_overlap(a: &QubitSubspace, b: &QubitSubspace) -> f64 {
    let mut worst: f64 = 0.0;
    for x in a.vectors() {
        for y in b.vectors() {
            worst = worst.max(x.inner(y).norm());
        }
    }
    worst
}

impl CodeModel {
    /// `spaces[0]` is `V₀`; `recoveries[0]` must be the identity.
    pub fn new(
        k: usize,
        spaces: Vec<QubitSubspace>,
        recoveries: Vec<PauliString>,
        eigenvalues: Vec<f64>,
        mu: f64,
    ) -> Result<Self> {
        let v0 = spaces.first().ok_or(Error::EmptySubspace)?;
        let (n, dim) = (v0.n(), v0.dim());
        if !dim.is_power_of_two() {
            return Err(Error::InvalidArgument(format!("code dimension {dim} is not a power of two")));
        }
        for s in &spaces {
            if s.n() != n || s.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: s.dim() });
            }
        }
        for len in [recoveries.len(), eigenvalues.len()] {
            if len != spaces.len() {
                return Err(Error::DimensionMismatch { expected: spaces.len(), got: len });
            }
        }
        if !recoveries[0].is_identity() || recoveries.iter().any(|r| r.n() != n) {
            return Err(Error::InvalidArgument("recoveries must act on n qubits, U₀ = I".into()));
        }
        for (i, a) in eigenvalues.iter().enumerate() {
            if *a == mu || eigenvalues[..i].contains(a) {
                return Err(Error::InvalidArgument(format!("eigenvalue {a} repeated")));
            }
        }
        for i in 0..spaces.len() {
            for j in i + 1..spaces.len() {
                let residual = max_cross_overlap(&spaces[i], &spaces[j]);
                if residual > CODE_TOL {
                    return Err(Error::SyndromeOverlap { first: format!("V{i}"), second: format!("V{j}"), residual });
                }
            }
        }
        for (j, (space, u)) in spaces.iter().zip(&recoveries).enumerate() {
            for b in space.vectors() {
                let image = u.apply(b.amplitudes())?;
                let residual = norm(&spaces[0].residual(&image));
                if residual > CODE_TOL {
                    return Err(Error::InvalidArgument(format!("U{j} does not map V{j} into V0 ({residual:e})")));
                }
            }
        }
        Ok(Self { n, l: dim.trailing_zeros() as usize, k, spaces, recoveries, eigenvalues, mu })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn code_space(&self) -> &QubitSubspace {
        &self.spaces[0]
    }

    /// `V₀, V₁, …, V_d`.
    pub fn spaces(&self) -> &[QubitSubspace] {
        &self.spaces
    }

    pub fn recoveries(&self) -> &[PauliString] {
        &self.recoveries
    }

    pub fn eigenvalues(&self) -> &[f64] {
        &self.eigenvalues
    }

    pub fn mu(&self) -> f64 {
        self.mu
    }

    /// `dim(V₀ ⊕ … ⊕ V_d) = (d + 1) · 2^l`.
    pub fn total_dim(&self) -> usize {
        self.spaces.len() << self.l
    }

    /// Swaps in a recovery without validation, for fault injection.
    pub fn replace_recovery_unchecked(&mut self, j: usize, u: PauliString) {
        self.recoveries[j] = u;
    }

    /// `‖P_j w‖²` for every syndrome space.
    pub fn branch_weights(&self, w: &[C64]) -> Vec<f64> {
        self.spaces.iter().map(|s| s.projection_weight(w)).collect()
    }

    /// `‖w - Σ_j P_j w‖`.
    pub fn outside_residual(&self, w: &[C64]) -> f64 {
        let mut rest = w.to_vec();
        for s in &self.spaces {
            let p = s.project(w);
            rest.iter_mut().zip(p).for_each(|(r, x)| *r -= x);
        }
        norm(&rest)
    }

    /// Samples a syndrome with probabilities `‖P_j w‖² / Σ ‖P_i w‖²`; `None`
    /// when `w` has no weight on any syndrome space.
    pub fn measure<R: Rng>(&self, w: &[C64], rng: &mut R) -> Option<usize> {
        let weights = self.branch_weights(w);
        let total: f64 = weights.iter().sum();
        if total < 1e-14 {
            return None;
        }
        let mut target = rng.random::<f64>() * total;
        let last = weights.iter().rposition(|&p| p > 0.0)?;
        for (j, &p) in weights.iter().enumerate() {
            if target < p {
                return Some(j);
            }
            target -= p;
        }
        Some(last)
    }

    /// `U_j P_j w / ‖P_j w‖`.
    pub fn recover(&self, j: usize, w: &[C64]) -> Result<Vec<C64>> {
        let mut p = self.spaces[j].project(w);
        let len = norm(&p);
        if len == 0.0 {
            return Err(Error::ZeroVector);
        }
        p.iter_mut().for_each(|x| *x /= len);
        self.recoveries[j].apply(&p)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FailureKind {
    /// `S v` has weight outside `⊕_j V_j`.
    OutsideCode { residual: f64 },
    /// `U_j` applied to the normalized branch `j` does not return `v`.
    BadRecovery { syndrome: usize, fidelity: f64 },
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyFailure {
    pub error_index: usize,
    pub error: String,
    pub trial: usize,
    #[serde(flatten)]
    pub kind: FailureKind,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerifyReport {
    pub errors_checked: usize,
    pub trials_per_error: usize,
    pub max_outside_residual: f64,
    pub min_fidelity: f64,
    /// Syndromes with nonzero weight, per error, across all trials.
    pub syndromes: Vec<Vec<usize>>,
    pub failures: Vec<VerifyFailure>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct ErrorOutcome {
    max_outside: f64,
    min_fidelity: f64,
    syndromes: Vec<usize>,
    failures: Vec<VerifyFailure>,
}

/// For each error and `trials` Haar-random codewords, checks that `S v` lies
/// in `⊕_j V_j` and that every branch with weight is recovered up to phase.
/// Codewords for error `e` come from stream `e` of `seed`.
pub fn verify_code(model: &CodeModel, errors: &[PauliString], trials: usize, seed: u64) -> Result<VerifyReport> {
    let indexed: Vec<(usize, &PauliString)> = errors.iter().enumerate().collect();
    let outcomes = map_slice(&indexed, |&(e, s)| -> Result<ErrorOutcome> {
        let mut rng = seeded_rng(seed, e as u64);
        let mut out = ErrorOutcome { max_outside: 0.0, min_fidelity: 1.0, syndromes: Vec::new(), failures: Vec::new() };
        let fail = |trial, kind| VerifyFailure { error_index: e, error: s.to_string(), trial, kind };
        for trial in 0..trials {
            let coeffs = haar_unit_vector(&mut rng, model.code_space().dim());
            let v = model.code_space().combine(coeffs.amplitudes());
            let sv = s.apply(&v)?;
            let residual = model.outside_residual(&sv);
            out.max_outside = out.max_outside.max(residual);
            if residual > CODE_TOL {
                out.failures.push(fail(trial, FailureKind::OutsideCode { residual }));
            }
            for (j, w) in model.branch_weights(&sv).into_iter().enumerate() {
                if w.sqrt() <= CODE_TOL {
                    continue;
                }
                if !out.syndromes.contains(&j) {
                    out.syndromes.push(j);
                }
                let fidelity = inner(&v, &model.recover(j, &sv)?).norm();
                out.min_fidelity = out.min_fidelity.min(fidelity);
                if fidelity <= 1.0 - CODE_TOL {
                    out.failures.push(fail(trial, FailureKind::BadRecovery { syndrome: j, fidelity }));
                }
            }
        }
        out.syndromes.sort_unstable();
        Ok(out)
    });
    let mut report = VerifyReport {
        errors_checked: errors.len(),
        trials_per_error: trials,
        max_outside_residual: 0.0,
        min_fidelity: 1.0,
        syndromes: Vec::with_capacity(errors.len()),
        failures: Vec::new(),
    };
    for o in outcomes {
        let o = o?;
        report.max_outside_residual = report.max_outside_residual.max(o.max_outside);
        report.min_fidelity = report.min_fidelity.min(o.min_fidelity);
        report.syndromes.push(o.syndromes);
        report.failures.extend(o.failures);
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrthogonalityResidual {
    /// `max |G - I|` for the Gram matrix of `{S v_i}`.
    pub residual: f64,
    /// Error indices of the worst entry.
    pub worst_errors: (usize, usize),
}

/// Deviation of `{S v_i : S ∈ errors}` from an orthonormal family.
pub fn orthogonality_residual(v: &QubitSubspace, errors: &[PauliString]) -> Result<OrthogonalityResidual> {
    let dim = 1usize << v.n();
    let images = map_slice(errors, |s| {
        v.vectors().iter().map(|b| s.apply(b.amplitudes())).collect::<Result<Vec<_>>>()
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let cols: Vec<&Vec<C64>> = images.iter().flatten().collect();
    let b = CMatrix::from_fn(dim, cols.len(), |r, c| cols[c][r]);
    let gram = b.adjoint() * &b;
    let mut out = OrthogonalityResidual { residual: 0.0, worst_errors: (0, 0) };
    for r in 0..gram.nrows() {
        for c in r..gram.ncols() {
            let target = if r == c { 1.0 } else { 0.0 };
            let dev = (gram[(r, c)] - C64::new(target, 0.0)).norm();
            if dev > out.residual {
                out = OrthogonalityResidual { residual: dev, worst_errors: (r / v.dim(), c / v.dim()) };
            }
        }
    }
    Ok(out)
}

/// Tolerance on the Gram residual of `{S v_i}` in [`build_orthogonal_code`].
const BUILD_TOL: f64 = 1e-9;

/// Builds the orthogonal code `V_j = S_j V₀`, `U_j = S_j` over all Pauli
/// errors of weight at most `k`.
///
/// Checks the Hamming bound first, then that `v` is `2k`-totally entangled,
/// then that `{S v_i}` is orthonormal.
pub fn build_orthogonal_code(v: &QubitSubspace, k: usize) -> Result<CodeModel> {
    let n = v.n();
    if !v.dim().is_power_of_two() {
        return Err(Error::InvalidArgument(format!("code dimension {} is not a power of two", v.dim())));
    }
    let l = v.dim().trailing_zeros() as usize;
    let bounds = check_bounds(n, l, k)?;
    if !bounds.hamming_ok {
        return Err(Error::HammingViolated { lhs: bounds.hamming_lhs, rhs: bounds.hamming_rhs });
    }
    let te = is_k_totally_entangled(v, 2 * k)?;
    if !te.verdict {
        return Err(Error::NotTotallyEntangled { k: 2 * k, worst_cut: te.worst_cut, residual: te.worst_residual });
    }
    let errors = ErrorSet::new(n, k);
    let ortho = orthogonality_residual(v, errors.elements())?;
    if ortho.residual >= BUILD_TOL {
        let (a, b) = ortho.worst_errors;
        return Err(Error::SyndromeOverlap {
            first: errors.elements()[a].to_string(),
            second: errors.elements()[b].to_string(),
            residual: ortho.residual,
        });
    }
    let spaces = errors
        .elements()
        .iter()
        .map(|s| {
            let images = v.vectors().iter().map(|b| s.apply(b.amplitudes())).collect::<Result<Vec<_>>>()?;
            QubitSubspace::orthonormalized(n, &images)
        })
        .collect::<Result<Vec<_>>>()?;
    let eigenvalues = (0..errors.len()).map(|j| (j + 1) as f64).collect();
    CodeModel::new(k, spaces, errors.elements().to_vec(), eigenvalues, 0.0)
}

/// A code built from a `2k`-totally entangled subspace corrects every error
/// of weight at most `k`.
pub fn prop8_forward_check(model: &CodeModel, trials: usize, seed: u64) -> Result<bool> {
    let errors = ErrorSet::new(model.n(), model.k());
    Ok(verify_code(model, errors.elements(), trials, seed)?.passed())
}
