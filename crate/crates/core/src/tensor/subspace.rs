use serde::Serialize;

use super::{gram_schmidt, inner, reshape_to_matrix, BipartiteShape, Ket, QubitCut};
use crate::{CMatrix, Error, Result, C64};

/// Tolerance on `max |G - I|` for an orthonormal basis.
pub const ORTHO_TOL: f64 = 1e-10;

/// `max_{ij} |⟨vᵢ|vⱼ⟩ - δᵢⱼ|`.
pub fn gram_residual(vectors: &[Ket]) -> f64 {
    let mut worst: f64 = 0.0;
    for (i, a) in vectors.iter().enumerate() {
        for (j, b) in vectors.iter().enumerate().skip(i) {
            let target = if i == j { 1.0 } else { 0.0 };
            worst = worst.max((a.inner(b) - C64::new(target, 0.0)).norm());
        }
    }
    worst
}

/// An orthonormal basis of a subspace `W ⊂ C^da ⊗ C^db`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SubspaceBasis {
    vectors: Vec<Ket>,
    shape: BipartiteShape,
}

impl SubspaceBasis {
    pub fn new(vectors: Vec<Ket>, shape: BipartiteShape) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::EmptySubspace);
        }
        for v in &vectors {
            shape.check(v.dim())?;
        }
        if vectors.len() > shape.dim() {
            return Err(Error::SubspaceTooLarge { d: vectors.len(), dim: shape.dim() });
        }
        let residual = gram_residual(&vectors);
        if residual > ORTHO_TOL {
            return Err(Error::NotOrthonormal { residual });
        }
        Ok(Self { vectors, shape })
    }

    /// Orthonormalizes arbitrary spanning vectors first.
    pub fn orthonormalized(raw: &[Vec<C64>], shape: BipartiteShape) -> Result<Self> {
        Self::new(gram_schmidt(raw)?, shape)
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn shape(&self) -> BipartiteShape {
        self.shape
    }

    pub fn vectors(&self) -> &[Ket] {
        &self.vectors
    }

    /// `Σ cᵢ bᵢ` as a raw vector.
    pub fn combine(&self, coeffs: &[C64]) -> Vec<C64> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count must match subspace dimension");
        let mut out = vec![C64::new(0.0, 0.0); self.shape.dim()];
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            out.iter_mut().zip(v.amplitudes()).for_each(|(o, a)| *o += c * a);
        }
        out
    }

    /// Coefficient matrices (`da × db`) of the basis vectors.
    pub fn coefficient_matrices(&self) -> Vec<CMatrix> {
        self.vectors
            .iter()
            .map(|v| reshape_to_matrix(v.amplitudes(), self.shape).expect("shape checked"))
            .collect()
    }

    /// The same subspace with the roles of A and B exchanged.
    pub fn swapped(&self) -> Self {
        let shape = self.shape.swapped();
        let vectors = self
            .coefficient_matrices()
            .into_iter()
            .map(|m| {
                let t = m.transpose();
                // row-major flatten of the transposed matrix
                let amps = (0..shape.da)
                    .flat_map(|r| (0..shape.db).map(move |c| (r, c)))
                    .map(|(r, c)| t[(r, c)])
                    .collect();
                Ket::new(amps).expect("transposition preserves the norm")
            })
            .collect();
        Self { vectors, shape }
    }

    /// `W ⊗ W'` inside `(A ⊗ A') : (B ⊗ B')`; basis `{wᵢ ⊗ w'ⱼ}` ordered
    /// with `i` major.
    pub fn tensor(&self, other: &Self) -> Self {
        let shape = self.shape.regrouped_product(&other.shape);
        let mine = self.coefficient_matrices();
        let theirs = other.coefficient_matrices();
        let mut vectors = Vec::with_capacity(self.dim() * other.dim());
        for m in &mine {
            for n in &theirs {
                let k = m.kronecker(n);
                let amps = (0..shape.da)
                    .flat_map(|r| (0..shape.db).map(move |c| (r, c)))
                    .map(|(r, c)| k[(r, c)])
                    .collect();
                vectors.push(Ket::normalize(amps).expect("product of unit vectors"));
            }
        }
        Self { vectors, shape }
    }

    /// Applies `U_A ⊗ U_B` to every basis vector: `M ↦ U_A M U_Bᵀ`.
    pub fn apply_local(&self, ua: &CMatrix, ub: &CMatrix) -> Result<Self> {
        if ua.nrows() != self.shape.da || ub.nrows() != self.shape.db {
            return Err(Error::DimensionMismatch { expected: self.shape.da, got: ua.nrows() });
        }
        let vectors = self
            .coefficient_matrices()
            .into_iter()
            .map(|m| {
                let t = ua * m * ub.transpose();
                let amps = (0..self.shape.da)
                    .flat_map(|r| (0..self.shape.db).map(move |c| (r, c)))
                    .map(|(r, c)| t[(r, c)])
                    .collect();
                Ket::normalize(amps)
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vectors, self.shape)
    }

    /// Adds a vector (orthogonalized against the current basis).
    pub fn extended(&self, extra: &[C64]) -> Result<Self> {
        let mut raw: Vec<Vec<C64>> =
            self.vectors.iter().map(|v| v.amplitudes().to_vec()).collect();
        raw.push(extra.to_vec());
        Self::orthonormalized(&raw, self.shape)
    }

    /// Squared norm of the projection of `v` onto the subspace.
    pub fn projection_weight(&self, v: &[C64]) -> f64 {
        self.vectors.iter().map(|b| inner(b.amplitudes(), v).norm_sqr()).sum()
    }
}

/// An orthonormal set of `n`-qubit vectors, before any choice of cut.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct QubitSubspace {
    n: usize,
    vectors: Vec<Ket>,
}

impl QubitSubspace {
    pub fn new(n: usize, vectors: Vec<Ket>) -> Result<Self> {
        if vectors.is_empty() {
            return Err(Error::EmptySubspace);
        }
        for v in &vectors {
            if v.dim() != 1 << n {
                return Err(Error::DimensionMismatch { expected: 1 << n, got: v.dim() });
            }
        }
        let residual = gram_residual(&vectors);
        if residual > ORTHO_TOL {
            return Err(Error::NotOrthonormal { residual });
        }
        Ok(Self { n, vectors })
    }

    /// Orthonormalizes `raw` with [`gram_schmidt`] first.
    pub fn orthonormalized(n: usize, raw: &[Vec<C64>]) -> Result<Self> {
        Self::new(n, gram_schmidt(raw)?)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Ket] {
        &self.vectors
    }

    /// `‖P v‖²`.
    pub fn projection_weight(&self, v: &[C64]) -> f64 {
        self.vectors.iter().map(|b| inner(b.amplitudes(), v).norm_sqr()).sum()
    }

    /// The subspace viewed across `cut`, B qubits moved to the trailing factors.
    pub fn under_cut(&self, cut: &QubitCut) -> Result<SubspaceBasis> {
        if cut.n() != self.n {
            return Err(Error::DimensionMismatch { expected: self.n, got: cut.n() });
        }
        let vectors = self
            .vectors
            .iter()
            .map(|v| Ket::new(cut.permute(v.amplitudes())?))
            .collect::<Result<Vec<_>>>()?;
        SubspaceBasis::new(vectors, cut.shape())
    }

    pub fn combine(&self, coeffs: &[C64]) -> Vec<C64> {
        assert_eq!(coeffs.len(), self.dim(), "coefficient count must match subspace dimension");
        let mut out = vec![C64::new(0.0, 0.0); 1 << self.n];
        for (c, v) in coeffs.iter().zip(&self.vectors) {
            out.iter_mut().zip(v.amplitudes()).for_each(|(o, a)| *o += c * a);
        }
        out
    }

    /// `v - P v`, the component of `v` outside the subspace.
    pub fn residual(&self, v: &[C64]) -> Vec<C64> {
        let mut out = v.to_vec();
        for b in &self.vectors {
            let o = inner(b.amplitudes(), v);
            out.iter_mut().zip(b.amplitudes()).for_each(|(x, a)| *x -= o * a);
        }
        out
    }

    /// `P v`.
    pub fn project(&self, v: &[C64]) -> Vec<C64> {
        let mut out = vec![C64::new(0.0, 0.0); v.len()];
        for b in &self.vectors {
            let o = inner(b.amplitudes(), v);
            out.iter_mut().zip(b.amplitudes()).for_each(|(x, a)| *x += o * a);
        }
        out
    }
}
