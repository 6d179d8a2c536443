//! `f(c) = E(Σᵢ cᵢ bᵢ)` on the unit sphere of `C^d` and its Riemannian gradient.

use crate::tensor::{entropy_of_spectrum, hermitian_eigen, hermitian_eigenvalues, SubspaceBasis, EIG_CLAMP};
use crate::{CMatrix, C64};

/// Basis coefficient matrices stored `p × q` with `q = min(da, db)`, so the
/// Gram matrix `M†M` is the smaller reduced state.
#[derive(Clone, Debug)]
pub(crate) struct Objective {
    rows: usize,
    cols: usize,
    mats: Vec<Vec<C64>>,
}

impl Objective {
    pub(crate) fn new(w: &SubspaceBasis) -> Self {
        let shape = w.shape();
        let transpose = shape.da < shape.db;
        let (rows, cols) = if transpose { (shape.db, shape.da) } else { (shape.da, shape.db) };
        let mats = w
            .vectors()
            .iter()
            .map(|v| {
                let a = v.amplitudes();
                if transpose {
                    (0..rows)
                        .flat_map(|r| (0..cols).map(move |c| a[c * shape.db + r]))
                        .collect()
                } else {
                    a.to_vec()
                }
            })
            .collect();
        Self { rows, cols, mats }
    }

    fn state_matrix(&self, c: &[C64]) -> Vec<C64> {
        let mut m = vec![C64::new(0.0, 0.0); self.rows * self.cols];
        for (ck, bk) in c.iter().zip(&self.mats) {
            m.iter_mut().zip(bk).for_each(|(x, y)| *x += ck * y);
        }
        m
    }

    fn gram(&self, m: &[C64]) -> CMatrix {
        let q = self.cols;
        let mut g = CMatrix::zeros(q, q);
        for row in m.chunks_exact(q) {
            for i in 0..q {
                let ri = row[i].conj();
                for j in i..q {
                    g[(i, j)] += ri * row[j];
                }
            }
        }
        for i in 0..q {
            g[(i, i)].im = 0.0;
            for j in 0..i {
                g[(i, j)] = g[(j, i)].conj();
            }
        }
        g
    }

    /// Entropy of `Σ cᵢ bᵢ`; `c` is assumed unit.
    pub(crate) fn value(&self, c: &[C64]) -> f64 {
        let g = self.gram(&self.state_matrix(c));
        entropy_of_spectrum(&hermitian_eigenvalues(&g))
    }

    /// Value and Riemannian gradient at unit `c`.
    ///
    /// The gradient is returned in the complex encoding `∂/∂xₖ + i ∂/∂yₖ`,
    /// projected onto the tangent space of the sphere. With `G = M†M` and
    /// `L = log₂ G` on eigenvalues above [`EIG_CLAMP`], the Euclidean
    /// gradient is `-2 ⟨Bₖ, M L⟩_F`; the `1/ln 2` term is parallel to `c` and
    /// vanishes under projection.
    pub(crate) fn value_and_gradient(&self, c: &[C64]) -> (f64, Vec<C64>) {
        let q = self.cols;
        let m = self.state_matrix(c);
        let (values, vecs) = hermitian_eigen(&self.gram(&m));
        let value = entropy_of_spectrum(&values);

        let mut log_g = CMatrix::zeros(q, q);
        for (k, &l) in values.iter().enumerate() {
            if l < EIG_CLAMP {
                continue;
            }
            let col = vecs.column(k);
            log_g += (col * col.adjoint()).scale(l.log2());
        }
        // ML, p × q
        let mut ml = vec![C64::new(0.0, 0.0); m.len()];
        for (row_in, row_out) in m.chunks_exact(q).zip(ml.chunks_exact_mut(q)) {
            for j in 0..q {
                row_out[j] = (0..q).map(|i| row_in[i] * log_g[(i, j)]).sum();
            }
        }
        let mut grad: Vec<C64> = self
            .mats
            .iter()
            .map(|bk| bk.iter().zip(&ml).map(|(b, x)| b.conj() * x).sum::<C64>() * -2.0)
            .collect();
        project_tangent(c, &mut grad);
        (value, grad)
    }

    /// Central finite differences of `f(normalize(c + h·e))` along every real
    /// coordinate, projected onto the tangent space.
    pub(crate) fn finite_difference_gradient(&self, c: &[C64], h: f64) -> Vec<C64> {
        let eval = |k: usize, delta: C64| {
            let mut x = c.to_vec();
            x[k] += delta;
            normalize(&mut x);
            self.value(&x)
        };
        let mut grad: Vec<C64> = (0..c.len())
            .map(|k| {
                let re = (eval(k, C64::new(h, 0.0)) - eval(k, C64::new(-h, 0.0))) / (2.0 * h);
                let im = (eval(k, C64::new(0.0, h)) - eval(k, C64::new(0.0, -h))) / (2.0 * h);
                C64::new(re, im)
            })
            .collect();
        project_tangent(c, &mut grad);
        grad
    }
}

/// `g ← g - Re⟨c, g⟩ c`.
pub(crate) fn project_tangent(c: &[C64], g: &mut [C64]) {
    let radial: f64 = c.iter().zip(g.iter()).map(|(x, y)| (x.conj() * y).re).sum();
    g.iter_mut().zip(c).for_each(|(y, x)| *y -= x * radial);
}

pub(crate) fn normalize(x: &mut [C64]) {
    let n = crate::tensor::norm(x);
    x.iter_mut().for_each(|v| *v /= n);
}

pub(crate) fn real_norm(g: &[C64]) -> f64 {
    crate::tensor::norm(g)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tensor::{entanglement_entropy, haar_random_subspace, seeded_rng, haar_unit_vector, BipartiteShape, Ket};

    #[test]
    fn value_matches_entanglement_entropy_on_both_orientations() {
        for (da, db) in [(2, 3), (3, 2), (4, 2)] {
            let shape = BipartiteShape::new(da, db).unwrap();
            let w = haar_random_subspace(shape, 2, 9).unwrap();
            let obj = Objective::new(&w);
            let c = haar_unit_vector(&mut seeded_rng(1, 0), 2);
            let psi = Ket::new(w.combine(c.amplitudes())).unwrap();
            let direct = entanglement_entropy(&psi, shape).unwrap();
            assert!((obj.value(c.amplitudes()) - direct).abs() < 1e-12);
        }
    }

    #[test]
    fn gradient_matches_finite_differences() {
        for (seed, (da, db, d)) in [(2, 2, 2), (3, 3, 2), (4, 2, 2), (2, 3, 3)].into_iter().enumerate() {
            let shape = BipartiteShape::new(da, db).unwrap();
            let w = haar_random_subspace(shape, d, 40 + seed as u64).unwrap();
            let obj = Objective::new(&w);
            for s in 0..10 {
                let c = haar_unit_vector(&mut seeded_rng(seed as u64, s), d);
                let (_, g) = obj.value_and_gradient(c.amplitudes());
                let fd = obj.finite_difference_gradient(c.amplitudes(), 1e-5);
                let diff: Vec<C64> = g.iter().zip(&fd).map(|(a, b)| a - b).collect();
                let rel = real_norm(&diff) / real_norm(&g).max(1e-12);
                assert!(rel < 1e-5, "relative gradient error {rel:e} for {da}x{db}, d={d}");
            }
        }
    }
}
