use proptest::prelude::*;

use subent::eos::{eos_brute_force, eos_minimize, gradient_pair, EosConfig, PRODUCT_EPS};
use subent::maxent::{certify_isometry_criterion, certify_max_entangled, construct_max_entangled};
use subent::qecc::{apply_error, build_orthogonal_code, check_bounds, Pauli, PauliString};
use subent::shor::{shor_code_model, shor_error_correct, SingleQubitError};
use subent::tensor::{
    entanglement_entropy, haar_random_ket, haar_random_subspace, haar_random_unitary, partial_trace_a,
    partial_trace_b, permute_amplitudes, schmidt, unpermute_amplitudes, BipartiteShape, Ket, SubspaceBasis,
};
use subent::{fixtures, CMatrix, C64};

const SHAPES: [(usize, usize); 5] = [(2, 2), (3, 3), (4, 2), (2, 3), (3, 2)];

fn shape(i: usize) -> BipartiteShape {
    let (a, b) = SHAPES[i % SHAPES.len()];
    BipartiteShape::new(a, b).unwrap()
}

fn quick(seed: u64) -> EosConfig {
    EosConfig { restarts: 16, ..EosConfig::with_seed(seed) }
}

fn max_dev(a: &[C64], b: &[C64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).norm()).fold(0.0, f64::max)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn analytic_gradient_matches_finite_differences(seed in any::<u64>(), s in 0usize..5, d in 2usize..4) {
        let w = haar_random_subspace(shape(s), d, seed).unwrap();
        let c = haar_random_ket(d, seed ^ 0x5eed);
        let (g, fd) = gradient_pair(&w, c.amplitudes(), 1e-5);
        let diff: f64 = g.iter().zip(&fd).map(|(a, b)| (a - b).norm_sqr()).sum::<f64>().sqrt();
        let scale: f64 = g.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt().max(1e-12);
        prop_assert!(diff / scale <= 1e-5, "relative error {}", diff / scale);
    }

    #[test]
    fn schmidt_reconstructs_and_partial_traces_share_spectrum(seed in any::<u64>(), s in 0usize..5) {
        let sh = shape(s);
        let psi = haar_random_ket(sh.dim(), seed);
        let sd = schmidt(&psi, sh).unwrap();
        prop_assert!(max_dev(&sd.reconstruct(), psi.amplitudes()) < 1e-9);
        let total: f64 = sd.coefficients.iter().map(|c| c * c).sum();
        prop_assert!((total - 1.0).abs() < 1e-10);
        let mut a = partial_trace_b(&psi, sh).unwrap().eigenvalues();
        let mut b = partial_trace_a(&psi, sh).unwrap().eigenvalues();
        a.retain(|x| x.abs() > 1e-12);
        b.retain(|x| x.abs() > 1e-12);
        prop_assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x - y).abs() < 1e-12);
        }
    }

    #[test]
    fn qubit_permutation_round_trips(seed in any::<u64>(), n in 1usize..7) {
        let psi = haar_random_ket(1 << n, seed);
        let mut order: Vec<usize> = (0..n).collect();
        let mut rng = seed;
        for i in (1..n).rev() {
            rng = rng.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (rng >> 33) as usize % (i + 1));
        }
        let moved = permute_amplitudes(psi.amplitudes(), n, &order).unwrap();
        let back = unpermute_amplitudes(&moved, n, &order).unwrap();
        prop_assert_eq!(back, psi.amplitudes().to_vec());
    }

    #[test]
    fn apply_error_is_linear(seed in any::<u64>(), q in 0usize..4, a_re in -2.0..2.0f64, b_im in -2.0..2.0f64) {
        let x = haar_random_unitary(2, seed);
        let psi = haar_random_ket(16, seed.wrapping_add(1));
        let phi = haar_random_ket(16, seed.wrapping_add(2));
        let (a, b) = (C64::new(a_re, 0.5), C64::new(0.25, b_im));
        let combo: Vec<C64> = psi.amplitudes().iter().zip(phi.amplitudes()).map(|(p, f)| a * p + b * f).collect();
        let lhs = apply_error(&x, &[q], &combo).unwrap();
        let xp = apply_error(&x, &[q], psi.amplitudes()).unwrap();
        let xf = apply_error(&x, &[q], phi.amplitudes()).unwrap();
        let rhs: Vec<C64> = xp.iter().zip(&xf).map(|(p, f)| a * p + b * f).collect();
        prop_assert!(max_dev(&lhs, &rhs) < 1e-12);
    }

    #[test]
    fn pauli_strings_square_to_identity(seed in any::<u64>(), mask in 1u32..(1 << 5), labels in prop::collection::vec(1u8..4, 5)) {
        let positions: Vec<usize> = (0..5).filter(|q| mask & (1 << q) != 0).collect();
        let labels: Vec<Pauli> = positions.iter().map(|&q| Pauli::from_label(labels[q]).unwrap()).collect();
        let s = PauliString::new(5, positions, labels).unwrap();
        let psi = haar_random_ket(32, seed);
        let twice = Ket::new(s.apply(&s.apply(psi.amplitudes()).unwrap()).unwrap()).unwrap();
        prop_assert!((twice.fidelity(&psi) - 1.0).abs() < 1e-12);
    }
}

#[test]
fn one_dimensional_gradient_vanishes() {
    // On C¹ the tangent space is the phase direction, along which f is constant.
    for seed in 0..20 {
        let w = haar_random_subspace(shape(seed as usize), 1, seed).unwrap();
        let (g, fd) = gradient_pair(&w, haar_random_ket(1, seed).amplitudes(), 1e-5);
        assert!(g[0].norm() < 1e-12 && fd[0].norm() < 1e-8, "{g:?} {fd:?}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn swap_symmetry(seed in any::<u64>(), s in 0usize..5, d in 1usize..3) {
        let w = haar_random_subspace(shape(s), d, seed).unwrap();
        let a = eos_minimize(&w, &quick(1)).unwrap().value;
        let b = eos_minimize(&w.swapped(), &quick(1)).unwrap().value;
        prop_assert!((a - b).abs() <= 1e-7, "{a} vs {b}");
    }

    #[test]
    fn deterministic_for_fixed_seed(seed in any::<u64>(), s in 0usize..5) {
        let w = haar_random_subspace(shape(s), 2, seed).unwrap();
        let cfg = quick(seed);
        prop_assert_eq!(eos_minimize(&w, &cfg).unwrap(), eos_minimize(&w, &cfg).unwrap());
    }

    #[test]
    fn adding_a_vector_never_increases_the_minimum(seed in any::<u64>(), s in 0usize..5) {
        let sh = shape(s);
        let w = haar_random_subspace(sh, 1, seed).unwrap();
        let r = eos_minimize(&w, &quick(seed)).unwrap();
        let extra = haar_random_ket(sh.dim(), seed ^ 0xabc);
        let bigger = w.extended(extra.amplitudes()).unwrap();
        // Seed the larger problem at the smaller minimizer, padded with zero.
        let mut start = r.minimizer_coefficients.clone();
        start.push(C64::new(0.0, 0.0));
        let cfg = EosConfig { extra_starts: vec![start], ..quick(seed) };
        let r2 = eos_minimize(&bigger, &cfg).unwrap();
        prop_assert!(r2.value <= r.value + 1e-12, "{} > {}", r2.value, r.value);
    }

    #[test]
    fn entangled_subspaces_never_gain_product_states(seed in any::<u64>(), s in 0usize..5, d in 1usize..3) {
        let u = haar_random_subspace(shape(s), 1, seed).unwrap();
        let eu = eos_minimize(&u, &quick(2)).unwrap().value;
        prop_assume!(eu >= 0.1);
        let v = haar_random_subspace(shape(s + 1), d, seed.wrapping_add(9)).unwrap();
        let r = eos_minimize(&u.tensor(&v), &quick(3)).unwrap();
        prop_assert!(r.value >= PRODUCT_EPS, "product found: {}", r.value);
    }

    #[test]
    fn local_unitaries_preserve_certificates(seed in any::<u64>(), which in 0usize..4) {
        let (da, db, d) = [(2, 2, 1), (4, 2, 2), (6, 3, 2), (6, 2, 3)][which];
        let sh = BipartiteShape::new(da, db).unwrap();
        let w = construct_max_entangled(sh, d).unwrap().basis();
        let moved = w.apply_local(&haar_random_unitary(da, seed), &haar_random_unitary(db, seed ^ 1)).unwrap();
        let (a, b) = (certify_max_entangled(&w), certify_max_entangled(&moved));
        prop_assert_eq!(a.is_max_entangled, b.is_max_entangled);
        prop_assert!((a.gram_residual - b.gram_residual).abs() < 1e-10);

        let random = haar_random_subspace(sh, d, seed).unwrap();
        let moved = random.apply_local(&haar_random_unitary(da, seed ^ 2), &haar_random_unitary(db, seed ^ 3)).unwrap();
        // The max-entry residual of a failing subspace is not a unitary
        // invariant, only the verdict is.
        prop_assert_eq!(certify_max_entangled(&random).is_max_entangled, certify_max_entangled(&moved).is_max_entangled);
    }

    #[test]
    fn certified_subspaces_obey_dimension_law(seed in any::<u64>(), s in 0usize..5, d in 1usize..5) {
        let sh = shape(s);
        prop_assume!(d <= sh.dim());
        let w = haar_random_subspace(sh, d, seed).unwrap();
        let c = certify_max_entangled(&w);
        if d * sh.min_dim() > sh.da.max(sh.db) {
            prop_assert!(!c.is_max_entangled);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn optimizer_agrees_with_oracle(seed in any::<u64>(), s in 0usize..3) {
        let w = haar_random_subspace(shape(s), 2, seed).unwrap();
        let opt = eos_minimize(&w, &EosConfig::with_seed(seed)).unwrap().value;
        let oracle = eos_brute_force(&w, 400).unwrap();
        prop_assert!((opt - oracle).abs() <= 1e-4, "optimizer {opt} oracle {oracle}");
    }
}

/// Passing and failing subspaces for the criterion-equivalence check.
fn certificate_corpus() -> Vec<SubspaceBasis> {
    let mut out = Vec::new();
    let layouts = [(2, 2, 1), (4, 2, 2), (6, 3, 2), (6, 2, 3), (3, 3, 1), (9, 3, 3)];
    for i in 0..240u64 {
        let (da, db, d) = layouts[(i % 6) as usize];
        let sh = BipartiteShape::new(da, db).unwrap();
        let base = construct_max_entangled(sh, d).unwrap().basis();
        let w = match i % 4 {
            0 => base.apply_local(&haar_random_unitary(da, i), &haar_random_unitary(db, i + 1)).unwrap(),
            1 => base.apply_local(&haar_random_unitary(da, i), &haar_random_unitary(db, i + 1)).unwrap().swapped(),
            2 => haar_random_subspace(sh, d, i).unwrap(),
            _ => {
                let noise = haar_random_ket(sh.dim(), i);
                let mut raw: Vec<Vec<C64>> = base.vectors().iter().map(|v| v.amplitudes().to_vec()).collect();
                raw[0].iter_mut().zip(noise.amplitudes()).for_each(|(a, b)| *a += b * 1e-3);
                SubspaceBasis::orthonormalized(&raw, sh).unwrap()
            }
        };
        out.push(w);
    }
    out
}

#[test]
fn gram_and_isometry_criteria_agree() {
    let corpus = certificate_corpus();
    let mut passes = 0;
    for w in &corpus {
        let a = certify_max_entangled(w);
        let b = certify_isometry_criterion(w);
        assert_eq!(a.is_max_entangled, b.is_max_entangled, "{:?} vs {:?}", a, b);
        passes += usize::from(a.is_max_entangled);
    }
    assert!(corpus.len() >= 200);
    assert!(passes > 50 && passes < corpus.len() - 50, "corpus must mix verdicts: {passes}");
}

#[test]
fn certified_subspaces_are_maximal_at_sampled_vectors() {
    for (da, db, d) in [(4, 2, 2), (6, 3, 2), (9, 3, 3)] {
        let sh = BipartiteShape::new(da, db).unwrap();
        let w = construct_max_entangled(sh, d).unwrap().basis();
        for s in 0..100 {
            let c = haar_random_ket(d, s);
            let psi = Ket::normalize(w.combine(c.amplitudes())).unwrap();
            let e = entanglement_entropy(&psi, sh).unwrap();
            assert!((e - (db as f64).log2()).abs() < 1e-9);
        }
    }
}

#[test]
fn code_dimension_fills_space_exactly_when_hamming_is_tight() {
    for (v, k) in [(fixtures::five_qubit_code(), 1), (fixtures::six_qubit_ame(), 1)] {
        let m = build_orthogonal_code(&v, k).unwrap();
        let b = check_bounds(m.n(), m.l(), k).unwrap();
        assert!(m.total_dim() <= 1 << m.n());
        assert_eq!(m.total_dim() == 1 << m.n(), b.hamming_lhs == b.hamming_rhs);
    }
}

#[test]
fn shor_corrects_generic_single_qubit_operators() {
    let model = shor_code_model();
    let paulis: Vec<CMatrix> = [Pauli::A1, Pauli::A2, Pauli::A3].iter().map(|p| p.matrix()).collect();
    for run in 0..1000u64 {
        let coeffs = haar_random_ket(4, 50_000 + run);
        let c = coeffs.amplitudes();
        let x = CMatrix::identity(2, 2) * c[0] + &paulis[0] * c[1] + &paulis[1] * c[2] + &paulis[2] * c[3];
        let err = SingleQubitError::new(2, x).unwrap();
        let cw = haar_random_ket(2, run);
        let v = Ket::new(model.code_space().combine(cw.amplitudes())).unwrap();
        let r = shor_error_correct(&model, &err, &v, run).unwrap();
        let j = r.syndrome.expect("generic operator leaves weight");
        assert!([0, 1, 6, 15].contains(&j), "syndrome {j}");
        assert!(r.fidelity.unwrap() > 1.0 - 1e-10, "run {run}: {:?}", r.fidelity);
    }
}
