//! Small named subspaces used by tests, benches and the CLI.

use crate::tensor::{BipartiteShape, Ket, QubitSubspace, SubspaceBasis};
use crate::C64;

const H: f64 = std::f64::consts::FRAC_1_SQRT_2;

fn two_qubits() -> BipartiteShape {
    BipartiteShape::new(2, 2).unwrap()
}

fn real_basis(rows: &[&[f64]], shape: BipartiteShape) -> SubspaceBasis {
    let raw: Vec<Vec<C64>> = rows.iter().map(|r| r.iter().map(|&x| C64::new(x, 0.0)).collect()).collect();
    SubspaceBasis::orthonormalized(&raw, shape).unwrap()
}

/// `span{(|00⟩ + |11⟩)/√2}`.
pub fn bell_line() -> SubspaceBasis {
    real_basis(&[&[H, 0.0, 0.0, H]], two_qubits())
}

/// `span{(|00⟩ + |11⟩)/√2, (|01⟩ + |10⟩)/√2}`, which contains `|+⟩|+⟩`.
pub fn bell_pair_span() -> SubspaceBasis {
    real_basis(&[&[H, 0.0, 0.0, H], &[0.0, H, H, 0.0]], two_qubits())
}

/// `span{|00⟩, Φ+}`.
pub fn product_plus_bell() -> SubspaceBasis {
    real_basis(&[&[1.0, 0.0, 0.0, 0.0], &[H, 0.0, 0.0, H]], two_qubits())
}

/// Antisymmetric subspace of `C³ ⊗ C³`, spanned by `(|ij⟩ - |ji⟩)/√2`.
pub fn antisymmetric_3x3() -> SubspaceBasis {
    let shape = BipartiteShape::new(3, 3).unwrap();
    let raw: Vec<Vec<C64>> = [(0, 1), (0, 2), (1, 2)]
        .iter()
        .map(|&(i, j)| {
            let mut v = vec![C64::new(0.0, 0.0); 9];
            v[i * 3 + j] = C64::new(H, 0.0);
            v[j * 3 + i] = C64::new(-H, 0.0);
            v
        })
        .collect();
    SubspaceBasis::orthonormalized(&raw, shape).unwrap()
}

/// `(|00⟩ + |11⟩)/√2` inside `C⁴ ⊗ C⁴`.
pub fn bell_embedded_4x4() -> SubspaceBasis {
    let mut v = vec![0.0; 16];
    v[0] = H;
    v[5] = H;
    real_basis(&[&v], BipartiteShape::new(4, 4).unwrap())
}

/// Applies an X/Z Pauli string (no Y factors), qubit 0 most significant.
fn apply_xz(word: &str, amps: &[C64]) -> Vec<C64> {
    let n = word.len();
    let (mut xm, mut zm) = (0usize, 0usize);
    for (q, ch) in word.chars().enumerate() {
        let bit = 1 << (n - 1 - q);
        match ch {
            'X' => xm |= bit,
            'Z' => zm |= bit,
            _ => {}
        }
    }
    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for (x, a) in amps.iter().enumerate() {
        let sign = if (x & zm).count_ones() % 2 == 0 { 1.0 } else { -1.0 };
        out[x ^ xm] = a * sign;
    }
    out
}

/// Logical states of the five-qubit code with stabilizers
/// `XZZXI, IXZZX, XIXZZ, ZXIXZ`.
pub fn five_qubit_logicals() -> (Ket, Ket) {
    let mut v = vec![C64::new(0.0, 0.0); 32];
    v[0] = C64::new(1.0, 0.0);
    for g in ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"] {
        let gv = apply_xz(g, &v);
        v.iter_mut().zip(gv).for_each(|(a, b)| *a += b);
    }
    let zero = Ket::normalize(v).unwrap();
    let one = Ket::new(apply_xz("XXXXX", zero.amplitudes())).unwrap();
    (zero, one)
}

/// Five-qubit code space, a 2-totally entangled subspace of dimension 2.
pub fn five_qubit_code() -> QubitSubspace {
    let (zero, one) = five_qubit_logicals();
    QubitSubspace::new(5, vec![zero, one]).unwrap()
}

/// `(|0_L⟩|0⟩ + |1_L⟩|1⟩)/√2` on six qubits; every 3-qubit cut is maximally
/// entangled, so the line it spans is 2-totally entangled.
pub fn six_qubit_ame() -> QubitSubspace {
    let (zero, one) = five_qubit_logicals();
    let psi = zero.kron(&Ket::basis(2, 0));
    let phi = one.kron(&Ket::basis(2, 1));
    let sum = psi.amplitudes().iter().zip(phi.amplitudes()).map(|(a, b)| a + b).collect();
    QubitSubspace::new(6, vec![Ket::normalize(sum).unwrap()]).unwrap()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{entanglement_entropy, QubitCut};

    #[test]
    fn five_qubit_logicals_are_stabilized_and_orthogonal() {
        let (zero, one) = five_qubit_logicals();
        for g in ["XZZXI", "IXZZX", "XIXZZ", "ZXIXZ"] {
            for k in [&zero, &one] {
                let gk = apply_xz(g, k.amplitudes());
                let dev = gk.iter().zip(k.amplitudes()).map(|(a, b)| (a - b).norm()).fold(0.0, f64::max);
                assert!(dev < 1e-14);
            }
        }
        assert!(zero.inner(&one).norm() < 1e-14);
    }

    #[test]
    fn six_qubit_state_is_maximal_on_every_half_cut() {
        let w = six_qubit_ame();
        let psi = &w.vectors()[0];
        for a in 0..6 {
            for b in a + 1..6 {
                for c in b + 1..6 {
                    let cut = QubitCut::new(6, &[a, b, c]).unwrap();
                    let amps = Ket::new(cut.permute(psi.amplitudes()).unwrap()).unwrap();
                    let e = entanglement_entropy(&amps, cut.shape()).unwrap();
                    assert!((e - 3.0).abs() < 1e-10, "cut {a}{b}{c}: {e}");
                }
            }
        }
    }
}
