use nalgebra::{SymmetricEigen, SVD};
use serde::Serialize;

use super::{inner, norm, BipartiteShape, Ket};
use crate::{CMatrix, Error, Result, C64};

/// Eigenvalues below this contribute nothing to `-λ log₂ λ`.
pub const EIG_CLAMP: f64 = 1e-15;

/// Relative norm below which a vector is treated as linearly dependent.
pub const RANK_TOL: f64 = 1e-10;

const DENSITY_TOL: f64 = 1e-10;

/// Coefficient matrix of `psi`: entry `(a, b)` is amplitude `a·db + b`.
pub fn reshape_to_matrix(psi: &[C64], shape: BipartiteShape) -> Result<CMatrix> {
    shape.check(psi.len())?;
    Ok(CMatrix::from_row_slice(shape.da, shape.db, psi))
}

/// Eigenvalues of a Hermitian matrix, ascending.
pub fn hermitian_eigenvalues(m: &CMatrix) -> Vec<f64> {
    let mut values: Vec<f64> = m.clone().symmetric_eigenvalues().iter().copied().collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending with the
/// matching eigenvectors as columns.
pub fn hermitian_eigen(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let eig = SymmetricEigen::new(m.clone());
    let mut idx: Vec<usize> = (0..m.nrows()).collect();
    idx.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = idx.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = CMatrix::from_fn(m.nrows(), m.ncols(), |r, c| eig.eigenvectors[(r, idx[c])]);
    (values, vectors)
}

/// `-Σ λ log₂ λ`, skipping eigenvalues below [`EIG_CLAMP`]. Never negative.
pub fn entropy_of_spectrum(spectrum: &[f64]) -> f64 {
    let s: f64 = spectrum
        .iter()
        .filter(|&&l| l >= EIG_CLAMP)
        .map(|&l| -l * l.log2())
        .sum();
    s.max(0.0)
}

/// A validated density matrix: Hermitian, unit trace, positive semidefinite.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    entries: CMatrix,
}

impl DensityMatrix {
    pub fn new(entries: CMatrix) -> Result<Self> {
        if !entries.is_square() || entries.nrows() == 0 {
            return Err(Error::InvalidDensityMatrix("matrix is not square".into()));
        }
        let asym = (&entries - entries.adjoint()).iter().map(|z| z.norm()).fold(0.0, f64::max);
        if asym > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("not Hermitian (deviation {asym:e})")));
        }
        let entries = (&entries + entries.adjoint()).scale(0.5);
        let trace = entries.trace().re;
        if (trace - 1.0).abs() > DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {trace} ≠ 1")));
        }
        let lowest = hermitian_eigenvalues(&entries)[0];
        if lowest < -DENSITY_TOL {
            return Err(Error::InvalidDensityMatrix(format!("negative eigenvalue {lowest:e}")));
        }
        Ok(Self { entries })
    }

    /// `|ψ⟩⟨ψ|`.
    pub fn pure(psi: &Ket) -> Self {
        let v = nalgebra::DVector::from_column_slice(psi.amplitudes());
        Self { entries: &v * v.adjoint() }
    }

    /// `Σ pᵢ |ψᵢ⟩⟨ψᵢ|`; weights are normalized to sum to one.
    pub fn mixture(states: &[(f64, Ket)]) -> Result<Self> {
        let dim = states.first().ok_or(Error::EmptySubspace)?.1.dim();
        let total: f64 = states.iter().map(|(p, _)| p).sum();
        let mut m = CMatrix::zeros(dim, dim);
        for (p, psi) in states {
            if psi.dim() != dim {
                return Err(Error::DimensionMismatch { expected: dim, got: psi.dim() });
            }
            m += Self::pure(psi).entries.scale(p / total);
        }
        Self::new(m)
    }

    pub fn dim(&self) -> usize {
        self.entries.nrows()
    }

    pub fn entries(&self) -> &CMatrix {
        &self.entries
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        hermitian_eigenvalues(&self.entries)
    }
}

/// `Tr_B |ψ⟩⟨ψ| = M M†`, the reduced state on A.
pub fn partial_trace_b(psi: &Ket, shape: BipartiteShape) -> Result<DensityMatrix> {
    let m = reshape_to_matrix(psi.amplitudes(), shape)?;
    Ok(DensityMatrix { entries: &m * m.adjoint() })
}

/// `Tr_A |ψ⟩⟨ψ| = Mᵀ M̄`, the reduced state on B.
pub fn partial_trace_a(psi: &Ket, shape: BipartiteShape) -> Result<DensityMatrix> {
    let m = reshape_to_matrix(psi.amplitudes(), shape)?;
    Ok(DensityMatrix { entries: m.transpose() * m.map(|z| z.conj()) })
}

pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues())
}

/// Entanglement entropy of `psi` across `shape`, in bits.
///
/// Works on whichever reduced state is smaller; both sides share the nonzero
/// spectrum.
pub fn entanglement_entropy(psi: &Ket, shape: BipartiteShape) -> Result<f64> {
    let m = reshape_to_matrix(psi.amplitudes(), shape)?;
    if shape.min_dim() == 1 {
        return Ok(0.0);
    }
    let gram = if shape.db <= shape.da { m.adjoint() * &m } else { &m * m.adjoint() };
    Ok(entropy_of_spectrum(&hermitian_eigenvalues(&gram)))
}

/// `ψ = Σᵢ cᵢ leftᵢ ⊗ rightᵢ` with `c` descending.
#[derive(Clone, Debug, Serialize)]
pub struct SchmidtDecomposition {
    pub coefficients: Vec<f64>,
    pub left: Vec<Ket>,
    pub right: Vec<Ket>,
}

impl SchmidtDecomposition {
    pub fn reconstruct(&self) -> Vec<C64> {
        let da = self.left.first().map_or(0, Ket::dim);
        let db = self.right.first().map_or(0, Ket::dim);
        let mut out = vec![C64::new(0.0, 0.0); da * db];
        for ((c, l), r) in self.coefficients.iter().zip(&self.left).zip(&self.right) {
            for (a, la) in l.amplitudes().iter().enumerate() {
                for (b, rb) in r.amplitudes().iter().enumerate() {
                    out[a * db + b] += la * rb * *c;
                }
            }
        }
        out
    }

    pub fn entropy(&self) -> f64 {
        let spectrum: Vec<f64> = self.coefficients.iter().map(|c| c * c).collect();
        entropy_of_spectrum(&spectrum)
    }
}

pub fn schmidt(psi: &Ket, shape: BipartiteShape) -> Result<SchmidtDecomposition> {
    let m = reshape_to_matrix(psi.amplitudes(), shape)?;
    let svd = SVD::new(m, true, true);
    let u = svd.u.expect("requested U");
    let v_t = svd.v_t.expect("requested V†");
    let mut idx: Vec<usize> = (0..svd.singular_values.len()).collect();
    idx.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let mut out = SchmidtDecomposition { coefficients: vec![], left: vec![], right: vec![] };
    for i in idx {
        out.coefficients.push(svd.singular_values[i]);
        out.left.push(Ket::normalize(u.column(i).iter().copied().collect())?);
        out.right.push(Ket::normalize(v_t.row(i).iter().copied().collect())?);
    }
    Ok(out)
}

/// Modified Gram–Schmidt with one reorthogonalization pass.
///
/// Fails with [`Error::RankDeficient`] naming the first input whose residual
/// falls below [`RANK_TOL`] relative to its original norm.
pub fn gram_schmidt(vectors: &[Vec<C64>]) -> Result<Vec<Ket>> {
    let dim = vectors.first().ok_or(Error::EmptySubspace)?.len();
    let mut basis: Vec<Vec<C64>> = Vec::with_capacity(vectors.len());
    for (index, v) in vectors.iter().enumerate() {
        if v.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: v.len() });
        }
        let original = norm(v);
        let mut w = v.clone();
        for _ in 0..2 {
            for q in &basis {
                let overlap = inner(q, &w);
                w.iter_mut().zip(q).for_each(|(x, y)| *x -= overlap * y);
            }
        }
        let n = norm(&w);
        if original == 0.0 || n <= RANK_TOL * original {
            return Err(Error::RankDeficient { index });
        }
        w.iter_mut().for_each(|x| *x /= n);
        basis.push(w);
    }
    basis.into_iter().map(Ket::new).collect()
}
