//! Shor's nine-qubit code as 22 mutually orthogonal two-dimensional
//! subspaces of `(C²)^⊗9`, with syndrome measurement and recovery.
//!
//! Qubits are numbered 0–8 and grouped into blocks (0,1,2), (3,4,5), (6,7,8).

use serde::Serialize;

use crate::eos::{eos_minimize, EosConfig};
use crate::exec::map_slice;
use crate::maxent::certify_max_entangled;
use crate::qecc::{apply_error, is_k_totally_entangled, CodeModel, Pauli, PauliString};
use crate::tensor::{
    entanglement_entropy, haar_random_ket, hermitian_eigenvalues, inner, norm, partial_trace_a, seeded_rng, Ket,
    QubitCut, QubitSubspace,
};
use crate::{CMatrix, Error, Result, C64};

pub const QUBITS: usize = 9;
pub const SPACES: usize = 22;

/// Three-qubit block states `u± = (|000⟩ ± |111⟩)/√2` and the bit-flipped
/// `u±^i`, with qubit `i` of the block flipped.
#[derive(Clone, Debug, PartialEq)]
pub struct ShorBlocks {
    pub u_plus: Ket,
    pub u_minus: Ket,
    pub u_plus_i: [Ket; 3],
    pub u_minus_i: [Ket; 3],
}

fn ghz_pair(a: usize, b: usize, sign: f64) -> Ket {
    let mut amps = vec![C64::new(0.0, 0.0); 8];
    amps[a] = C64::new(std::f64::consts::FRAC_1_SQRT_2, 0.0);
    amps[b] = C64::new(sign * std::f64::consts::FRAC_1_SQRT_2, 0.0);
    Ket::new(amps).unwrap()
}

impl ShorBlocks {
    pub fn new() -> Self {
        let flipped = |sign: f64| std::array::from_fn(|i| ghz_pair(0b100 >> i, 0b111 ^ (0b100 >> i), sign));
        Self {
            u_plus: ghz_pair(0, 7, 1.0),
            u_minus: ghz_pair(0, 7, -1.0),
            u_plus_i: flipped(1.0),
            u_minus_i: flipped(-1.0),
        }
    }

    pub fn all(&self) -> Vec<&Ket> {
        let mut v = vec![&self.u_plus, &self.u_minus];
        v.extend(self.u_plus_i.iter());
        v.extend(self.u_minus_i.iter());
        v
    }
}

impl Default for ShorBlocks {
    fn default() -> Self {
        Self::new()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ShorDecomposition {
    /// `V₀ … V₂₁`.
    pub spaces: Vec<QubitSubspace>,
    /// Dimension of the orthogonal complement of `⊕ V_j`.
    pub complement_dim: usize,
}

impl ShorDecomposition {
    /// Largest `|⟨a|b⟩|` between basis vectors of different spaces.
    pub fn max_cross_overlap(&self) -> f64 {
        let mut worst: f64 = 0.0;
        for (i, a) in self.spaces.iter().enumerate() {
            for b in &self.spaces[i + 1..] {
                for x in a.vectors() {
                    for y in b.vectors() {
                        worst = worst.max(x.inner(y).norm());
                    }
                }
            }
        }
        worst
    }
}

fn span(pairs: [[&Ket; 3]; 2]) -> QubitSubspace {
    let vectors = pairs.iter().map(|[a, b, c]| a.kron(b).kron(c)).collect();
    QubitSubspace::new(QUBITS, vectors).unwrap()
}

pub fn build_shor_decomposition() -> ShorDecomposition {
    let s = ShorBlocks::new();
    let (p, m) = (&s.u_plus, &s.u_minus);
    let mut spaces = vec![
        span([[p, p, p], [m, m, m]]),
        span([[m, p, p], [p, m, m]]),
        span([[p, m, p], [m, p, m]]),
        span([[p, p, m], [m, m, p]]),
    ];
    let (pi, mi) = (&s.u_plus_i, &s.u_minus_i);
    for i in 0..3 {
        spaces.push(span([[&pi[i], p, p], [&mi[i], m, m]]));
    }
    for i in 0..3 {
        spaces.push(span([[p, &pi[i], p], [m, &mi[i], m]]));
    }
    for i in 0..3 {
        spaces.push(span([[p, p, &pi[i]], [m, m, &mi[i]]]));
    }
    for i in 0..3 {
        spaces.push(span([[&mi[i], p, p], [&pi[i], m, m]]));
    }
    for i in 0..3 {
        spaces.push(span([[p, &mi[i], p], [m, &pi[i], m]]));
    }
    for i in 0..3 {
        spaces.push(span([[p, p, &mi[i]], [m, m, &pi[i]]]));
    }
    let d = ShorDecomposition { complement_dim: (1 << QUBITS) - 2 * spaces.len(), spaces };
    assert!(d.max_cross_overlap() < 1e-12, "Shor subspaces must be mutually orthogonal");
    d
}

/// Recovery for syndrome `j`: `(A₁)_{3j-1}` for `1 ≤ j ≤ 3`, `(A₂)_{j-4}`
/// for `4 ≤ j ≤ 12`, `(A₃)_{j-13}` for `13 ≤ j ≤ 21`, identity for `j = 0`.
pub fn recovery(j: usize) -> Result<PauliString> {
    match j {
        0 => Ok(PauliString::identity(QUBITS)),
        1..=3 => PauliString::single(QUBITS, 3 * j - 1, Pauli::A1),
        4..=12 => PauliString::single(QUBITS, j - 4, Pauli::A2),
        13..=21 => PauliString::single(QUBITS, j - 13, Pauli::A3),
        _ => Err(Error::InvalidArgument(format!("no Shor syndrome {j}"))),
    }
}

/// Syndrome spaces reachable from `V₀` by an operator on `qubit`:
/// `0, ⌊q/3⌋ + 1, q + 4, q + 13`.
pub fn containment_targets(qubit: usize) -> [usize; 4] {
    [0, qubit / 3 + 1, qubit + 4, qubit + 13]
}

/// The Shor code as a [`CodeModel`] with `λ_j = j + 1` and `μ = 0`.
pub fn shor_code_model() -> CodeModel {
    let spaces = build_shor_decomposition().spaces;
    let recoveries = (0..SPACES).map(|j| recovery(j).unwrap()).collect();
    let eigenvalues = (0..SPACES).map(|j| (j + 1) as f64).collect();
    CodeModel::new(1, spaces, recoveries, eigenvalues, 0.0).expect("Shor code model is consistent")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContainmentEntry {
    pub pauli: u8,
    /// 0 for `v₊`, 1 for `v₋`.
    pub codeword: usize,
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ContainmentReport {
    pub qubit: usize,
    pub targets: [usize; 4],
    pub entries: Vec<ContainmentEntry>,
    pub max_residual: f64,
}

impl ContainmentReport {
    pub fn passed(&self) -> bool {
        self.max_residual < 1e-12
    }
}

fn residual_outside(spaces: &[QubitSubspace], targets: &[usize], w: &[C64]) -> f64 {
    let mut rest = w.to_vec();
    for &j in targets {
        let p = spaces[j].project(w);
        rest.iter_mut().zip(p).for_each(|(r, x)| *r -= x);
    }
    norm(&rest)
}

/// `‖X v - P X v‖` for `P` the projector onto `V₀ ⊕ V_{⌊q/3⌋+1} ⊕ V_{q+4} ⊕ V_{q+13}`,
/// maximized over `v₊, v₋`.
pub fn containment_residual(d: &ShorDecomposition, qubit: usize, x: &CMatrix) -> Result<f64> {
    let targets = containment_targets(qubit);
    let mut worst: f64 = 0.0;
    for v in d.spaces[0].vectors() {
        let w = apply_error(x, &[qubit], v.amplitudes())?;
        worst = worst.max(residual_outside(&d.spaces, &targets, &w));
    }
    Ok(worst)
}

pub fn check_containment(qubit: usize) -> Result<ContainmentReport> {
    if qubit >= QUBITS {
        return Err(Error::QubitOutOfRange { index: qubit, n: QUBITS });
    }
    let d = build_shor_decomposition();
    let targets = containment_targets(qubit);
    let mut entries = Vec::new();
    for p in Pauli::ALL {
        for (c, v) in d.spaces[0].vectors().iter().enumerate() {
            let w = apply_error(&p.matrix(), &[qubit], v.amplitudes())?;
            entries.push(ContainmentEntry {
                pauli: p.label(),
                codeword: c,
                residual: residual_outside(&d.spaces, &targets, &w),
            });
        }
    }
    let max_residual = entries.iter().map(|e| e.residual).fold(0.0, f64::max);
    Ok(ContainmentReport { qubit, targets, entries, max_residual })
}

/// An arbitrary operator on one qubit.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleQubitError {
    pub qubit: usize,
    pub op: CMatrix,
}

impl SingleQubitError {
    pub fn new(qubit: usize, op: CMatrix) -> Result<Self> {
        if qubit >= QUBITS {
            return Err(Error::QubitOutOfRange { index: qubit, n: QUBITS });
        }
        if op.shape() != (2, 2) {
            return Err(Error::InvalidShape(format!("single-qubit operator is {:?}", op.shape())));
        }
        Ok(Self { qubit, op })
    }

    pub fn identity() -> Self {
        Self { qubit: 0, op: CMatrix::identity(2, 2) }
    }

    pub fn pauli(qubit: usize, p: Pauli) -> Result<Self> {
        Self::new(qubit, p.matrix())
    }

    /// Accepts Pauli strings of weight at most one.
    pub fn from_pauli_string(s: &PauliString) -> Result<Self> {
        match (s.positions(), s.labels()) {
            ([], []) => Ok(Self::identity()),
            ([q], [p]) => Self::pauli(*q, *p),
            _ => Err(Error::InvalidArgument(format!("{s} has weight above one"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorrectionOutcome {
    /// Index `j` of the measured syndrome space; `None` when the error
    /// annihilated the codeword.
    pub syndrome: Option<usize>,
    /// `λ_j = j + 1`.
    pub eigenvalue: Option<f64>,
    /// `(j, ‖P_j X v‖² / ‖X v‖²)` over the reachable syndromes.
    pub branch_weights: Vec<(usize, f64)>,
    #[serde(skip)]
    pub recovered: Option<Ket>,
    pub fidelity: Option<f64>,
}

/// Applies `error` to `codeword`, measures the syndrome observable (branch
/// sampled with stream 0 of `seed`) and applies the matching recovery.
pub fn shor_error_correct(
    model: &CodeModel,
    error: &SingleQubitError,
    codeword: &Ket,
    seed: u64,
) -> Result<CorrectionOutcome> {
    let v0 = model.code_space();
    if codeword.dim() != 1 << QUBITS || v0.n() != QUBITS {
        return Err(Error::DimensionMismatch { expected: 1 << QUBITS, got: codeword.dim() });
    }
    let residual = norm(&v0.residual(codeword.amplitudes()));
    if residual > 1e-10 {
        return Err(Error::NotInCodeSpace { residual });
    }
    let w = apply_error(&error.op, &[error.qubit], codeword.amplitudes())?;
    let total = norm(&w);
    let targets = containment_targets(error.qubit);
    let none = CorrectionOutcome { syndrome: None, eigenvalue: None, branch_weights: Vec::new(), recovered: None, fidelity: None };
    if total < 1e-14 {
        return Ok(none);
    }
    let w: Vec<C64> = w.iter().map(|x| x / total).collect();
    let branch_weights: Vec<(usize, f64)> =
        targets.iter().map(|&j| (j, model.spaces()[j].projection_weight(&w))).collect();
    let mass: f64 = branch_weights.iter().map(|b| b.1).sum();
    if mass < 1e-14 {
        return Ok(CorrectionOutcome { branch_weights, ..none });
    }
    let mut rng = seeded_rng(seed, 0);
    let mut target = rand::Rng::random::<f64>(&mut rng) * mass;
    let mut j = branch_weights.iter().rev().find(|b| b.1 > 0.0).map(|b| b.0).unwrap();
    for &(k, p) in &branch_weights {
        if target < p {
            j = k;
            break;
        }
        target -= p;
    }
    let recovered = Ket::normalize(model.recover(j, &w)?)?;
    // Cauchy–Schwarz caps the overlap of unit vectors at 1; clip rounding above it.
    let fidelity = inner(codeword.amplitudes(), recovered.amplitudes()).norm().min(1.0);
    Ok(CorrectionOutcome {
        syndrome: Some(j),
        eigenvalue: Some(model.eigenvalues()[j]),
        branch_weights,
        recovered: Some(recovered),
        fidelity: Some(fidelity),
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum SurveyCertificate {
    /// The exact Gram criterion passed, so the value is `log₂ 4 = 2`.
    ExactMaxent,
    /// Optimizer value, backed by the flat two-level reduced spectrum.
    NumericFlatSpectrum,
    Numeric,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SurveyEntry {
    pub cut: [usize; 2],
    pub same_block: bool,
    pub eos: f64,
    pub certificate: SurveyCertificate,
    pub gram_residual: f64,
    /// Largest deviation of B's reduced spectrum from `(½, ½, 0, 0)` over the
    /// minimizer and sampled codewords; only for cuts that fail the Gram check.
    pub spectrum_deviation: Option<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ShorSurvey {
    pub entries: Vec<SurveyEntry>,
    pub two_ebit_cuts: usize,
    pub one_ebit_cuts: usize,
    /// 27 cross-block cuts at 2 ebits and 9 same-block cuts at 1 ebit, within 1e-7.
    pub pattern_ok: bool,
}

fn flat_spectrum_deviation(v0: &QubitSubspace, cut: &QubitCut, extra: &[C64], samples: u64) -> Result<f64> {
    let mut vectors = vec![Ket::normalize(extra.to_vec())?];
    for s in 0..samples {
        let c = haar_random_ket(v0.dim(), s);
        vectors.push(Ket::normalize(v0.combine(c.amplitudes()))?);
    }
    let mut worst: f64 = 0.0;
    for v in vectors {
        let psi = Ket::new(cut.permute(v.amplitudes())?)?;
        let rho_b = partial_trace_a(&psi, cut.shape())?;
        let mut spec = hermitian_eigenvalues(rho_b.entries());
        spec.reverse();
        for (i, l) in spec.iter().enumerate() {
            let target = if i < 2 { 0.5 } else { 0.0 };
            worst = worst.max((l - target).abs());
        }
    }
    Ok(worst)
}

/// Entanglement of `V₀` across all 36 two-qubit cuts.
pub fn shor_cut_survey(cfg: &EosConfig) -> Result<ShorSurvey> {
    let v0 = build_shor_decomposition().spaces.swap_remove(0);
    let pairs: Vec<[usize; 2]> = (0..QUBITS).flat_map(|a| (a + 1..QUBITS).map(move |b| [a, b])).collect();
    let entries = map_slice(&pairs, |&cut| -> Result<SurveyEntry> {
        let qc = QubitCut::new(QUBITS, &cut)?;
        let w = v0.under_cut(&qc)?;
        let cert = certify_max_entangled(&w);
        let same_block = cut[0] / 3 == cut[1] / 3;
        if cert.is_max_entangled {
            return Ok(SurveyEntry {
                cut,
                same_block,
                eos: w.shape().max_entropy(),
                certificate: SurveyCertificate::ExactMaxent,
                gram_residual: cert.gram_residual,
                spectrum_deviation: None,
            });
        }
        let r = eos_minimize(&w, cfg)?;
        let minimizer = v0.combine(&r.minimizer_coefficients);
        let dev = flat_spectrum_deviation(&v0, &qc, &minimizer, 8)?;
        Ok(SurveyEntry {
            cut,
            same_block,
            eos: r.value,
            certificate: if dev < 1e-10 { SurveyCertificate::NumericFlatSpectrum } else { SurveyCertificate::Numeric },
            gram_residual: cert.gram_residual,
            spectrum_deviation: Some(dev),
        })
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    let two = entries.iter().filter(|e| !e.same_block && (e.eos - 2.0).abs() <= 1e-7).count();
    let one = entries.iter().filter(|e| e.same_block && (e.eos - 1.0).abs() <= 1e-7).count();
    Ok(ShorSurvey { entries, two_ebit_cuts: two, one_ebit_cuts: one, pattern_ok: two == 27 && one == 9 })
}

/// Entropy of `v₊` across `cut`, used as a spot check of the block structure.
pub fn v_plus_entropy(cut: &[usize]) -> Result<f64> {
    let d = build_shor_decomposition();
    let qc = QubitCut::new(QUBITS, cut)?;
    let psi = Ket::new(qc.permute(d.spaces[0].vectors()[0].amplitudes())?)?;
    entanglement_entropy(&psi, qc.shape())
}

/// `V₀` is 1-totally entangled but not 2-totally entangled.
pub fn totally_entangled_profile() -> Result<(bool, bool)> {
    let v0 = build_shor_decomposition().spaces.swap_remove(0);
    Ok((is_k_totally_entangled(&v0, 1)?.verdict, is_k_totally_entangled(&v0, 2)?.verdict))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn blocks_are_orthonormal() {
        let b = ShorBlocks::new();
        let all = b.all();
        assert_eq!(all.len(), 8);
        for (i, x) in all.iter().enumerate() {
            for (j, y) in all.iter().enumerate() {
                let target = if i == j { 1.0 } else { 0.0 };
                assert!((x.inner(y).norm() - target).abs() < 1e-15);
            }
        }
        // u₊⁰ = (|100⟩ + |011⟩)/√2
        assert!(b.u_plus_i[0].amplitudes()[0b100].re > 0.7 && b.u_plus_i[0].amplitudes()[0b011].re > 0.7);
        assert!(b.u_minus_i[2].amplitudes()[0b110].re < -0.7);
    }

    #[test]
    fn decomposition_dimensions() {
        let d = build_shor_decomposition();
        assert_eq!(d.spaces.len(), 22);
        assert_eq!(d.complement_dim, 468);
        assert!(d.max_cross_overlap() < 1e-12);
        for x in d.spaces[4].vectors() {
            for y in d.spaces[13].vectors() {
                assert_eq!(x.inner(y).norm(), 0.0);
            }
        }
    }

    #[test]
    fn v_plus_within_block_entropy() {
        assert!((v_plus_entropy(&[0, 1]).unwrap() - 1.0).abs() < 1e-12);
        assert!((v_plus_entropy(&[3, 4]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn containment_examples() {
        let d = build_shor_decomposition();
        let m = shor_code_model();
        let v_plus = d.spaces[0].vectors()[0].amplitudes();
        let x0 = apply_error(&Pauli::A2.matrix(), &[0], v_plus).unwrap();
        assert!((m.spaces()[4].projection_weight(&x0) - 1.0).abs() < 1e-15);
        for q in 0..3 {
            let z = apply_error(&Pauli::A1.matrix(), &[q], v_plus).unwrap();
            assert!((m.spaces()[1].projection_weight(&z) - 1.0).abs() < 1e-15);
        }
        let y0 = apply_error(&Pauli::A3.matrix(), &[0], v_plus).unwrap();
        assert!((m.spaces()[13].projection_weight(&y0) - 1.0).abs() < 1e-15);
        // A₃|0⟩ = -i|1⟩ puts phase -i on the |100…⟩ component of u₋⁰.
        let s = ShorBlocks::new();
        let expected = s.u_minus_i[0].kron(&s.u_plus).kron(&s.u_plus);
        let phase = inner(expected.amplitudes(), &y0);
        assert!((phase - C64::new(0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn containment_holds_everywhere() {
        for q in 0..QUBITS {
            let r = check_containment(q).unwrap();
            assert!(r.passed(), "{r:?}");
            assert_eq!(r.entries.len(), 6);
        }
        assert!(check_containment(9).is_err());
    }

    #[test]
    fn correction_examples() {
        let m = shor_code_model();
        let d = build_shor_decomposition();
        let v_plus = d.spaces[0].vectors()[0].clone();
        let v_minus = d.spaces[0].vectors()[1].clone();

        let r = shor_error_correct(&m, &SingleQubitError::identity(), &v_plus, 0).unwrap();
        assert_eq!((r.syndrome, r.fidelity), (Some(0), Some(1.0)));
        assert_eq!(r.eigenvalue, Some(1.0));

        let r = shor_error_correct(&m, &SingleQubitError::pauli(5, Pauli::A2).unwrap(), &v_minus, 0).unwrap();
        assert_eq!(r.syndrome, Some(9));
        assert!((r.fidelity.unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_phase_errors_share_a_syndrome() {
        let m = shor_code_model();
        assert_eq!(m.recoveries()[1], PauliString::single(9, 2, Pauli::A1).unwrap());
        for q in 0..3 {
            for seed in 0..4 {
                let c = haar_random_ket(2, seed);
                let v = Ket::new(m.code_space().combine(c.amplitudes())).unwrap();
                let r = shor_error_correct(&m, &SingleQubitError::pauli(q, Pauli::A1).unwrap(), &v, seed).unwrap();
                assert_eq!(r.syndrome, Some(1));
                assert!(r.fidelity.unwrap() > 1.0 - 1e-12);
            }
        }
    }

    #[test]
    fn annihilated_codeword_has_no_outcome() {
        let m = shor_code_model();
        // |0⟩⟨0| ⊗ … on qubit 0 keeps half of v₊; the projector orthogonal to
        // both |0⟩ and |1⟩ components is zero only for the zero operator.
        let zero = SingleQubitError::new(0, CMatrix::zeros(2, 2)).unwrap();
        let v = m.code_space().vectors()[0].clone();
        let r = shor_error_correct(&m, &zero, &v, 0).unwrap();
        assert_eq!(r.syndrome, None);
        let proj = CMatrix::from_row_slice(2, 2, &[C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 0.0)]);
        let r = shor_error_correct(&m, &SingleQubitError::new(0, proj).unwrap(), &v, 0).unwrap();
        assert!(r.fidelity.unwrap() > 1.0 - 1e-10);
    }

    #[test]
    fn rejects_codeword_outside_code_space() {
        let m = shor_code_model();
        let r = shor_error_correct(&m, &SingleQubitError::identity(), &Ket::basis(512, 0), 0);
        assert!(matches!(r, Err(Error::NotInCodeSpace { .. })));
    }

    #[test]
    fn survey_pattern() {
        let s = shor_cut_survey(&EosConfig { restarts: 4, ..EosConfig::with_seed(0) }).unwrap();
        assert_eq!(s.entries.len(), 36);
        assert!(s.pattern_ok, "{} two-ebit, {} one-ebit", s.two_ebit_cuts, s.one_ebit_cuts);
        let e03 = s.entries.iter().find(|e| e.cut == [0, 3]).unwrap();
        assert_eq!(e03.certificate, SurveyCertificate::ExactMaxent);
        let e01 = s.entries.iter().find(|e| e.cut == [0, 1]).unwrap();
        assert_eq!(e01.certificate, SurveyCertificate::NumericFlatSpectrum);
        assert_eq!(s.entries.iter().filter(|e| e.same_block).count(), 9);
    }

    #[test]
    fn one_but_not_two_totally_entangled() {
        assert_eq!(totally_entangled_profile().unwrap(), (true, false));
        let v0 = build_shor_decomposition().spaces.swap_remove(0);
        let r = is_k_totally_entangled(&v0, 2).unwrap();
        assert_eq!(r.worst_cut[0] / 3, r.worst_cut[1] / 3);
    }
}
