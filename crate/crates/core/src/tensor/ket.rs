use serde::Serialize;

use crate::{Error, Result, C64};

/// Tolerance on the Euclidean norm of a [`Ket`] at construction.
pub const NORM_TOL: f64 = 1e-10;

/// A normalized amplitude vector.
///
/// Unnormalized work vectors are plain `Vec<C64>`; converting one into a `Ket`
/// either checks the norm ([`Ket::new`]) or rescales explicitly
/// ([`Ket::normalize`]).
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Ket {
    amps: Vec<C64>,
}

impl Ket {
    pub fn new(amps: Vec<C64>) -> Result<Self> {
        if amps.is_empty() {
            return Err(Error::ZeroVector);
        }
        let n = norm(&amps);
        if (n - 1.0).abs() > NORM_TOL {
            return Err(Error::NotNormalized { norm: n });
        }
        Ok(Self { amps })
    }

    pub fn normalize(mut amps: Vec<C64>) -> Result<Self> {
        let n = norm(&amps);
        if amps.is_empty() || n == 0.0 || !n.is_finite() {
            return Err(Error::ZeroVector);
        }
        amps.iter_mut().for_each(|a| *a /= n);
        Ok(Self { amps })
    }

    /// Computational basis state `|index⟩` in dimension `dim`.
    pub fn basis(dim: usize, index: usize) -> Self {
        assert!(index < dim, "basis index {index} out of range for dimension {dim}");
        let mut amps = vec![C64::new(0.0, 0.0); dim];
        amps[index] = C64::new(1.0, 0.0);
        Self { amps }
    }

    /// Builds a ket from real amplitudes, normalizing them.
    pub fn from_real(amps: &[f64]) -> Result<Self> {
        Self::normalize(amps.iter().map(|&x| C64::new(x, 0.0)).collect())
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amps
    }

    pub fn into_amplitudes(self) -> Vec<C64> {
        self.amps
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Ket) -> C64 {
        inner(&self.amps, &other.amps)
    }

    /// `|⟨self|other⟩|`, the overlap used for "equal up to a phase" checks.
    pub fn fidelity(&self, other: &Ket) -> f64 {
        self.inner(other).norm()
    }

    /// Tensor product `self ⊗ other` with `self` as the leading factor.
    pub fn kron(&self, other: &Ket) -> Ket {
        let mut amps = Vec::with_capacity(self.dim() * other.dim());
        for a in &self.amps {
            for b in &other.amps {
                amps.push(a * b);
            }
        }
        Ket { amps }
    }
}

pub fn norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// `⟨a|b⟩ = Σ conj(aᵢ) bᵢ`.
pub fn inner(a: &[C64], b: &[C64]) -> C64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}
