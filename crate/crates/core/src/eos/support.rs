use serde::Serialize;

use super::{eos_minimize, EosConfig, EosResult};
use crate::tensor::{hermitian_eigen, BipartiteShape, DensityMatrix, Ket, SubspaceBasis};
use crate::{Result, C64};

/// A bipartite mixed state.
#[derive(Clone, Debug, PartialEq)]
pub struct MixedState {
    rho: DensityMatrix,
    shape: BipartiteShape,
}

impl MixedState {
    pub fn new(rho: DensityMatrix, shape: BipartiteShape) -> Result<Self> {
        shape.check(rho.dim())?;
        Ok(Self { rho, shape })
    }

    pub fn rho(&self) -> &DensityMatrix {
        &self.rho
    }

    pub fn shape(&self) -> BipartiteShape {
        self.shape
    }

    /// Eigenvectors with eigenvalue above `rank_tol`, plus whether any
    /// eigenvalue sits in the ambiguous band `[rank_tol/10, 10·rank_tol]`.
    pub fn support(&self, rank_tol: f64) -> Result<(SubspaceBasis, bool)> {
        let (values, vectors) = hermitian_eigen(self.rho.entries());
        let ambiguous = values.iter().any(|&l| l >= rank_tol / 10.0 && l <= rank_tol * 10.0);
        let basis = values
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, &l)| l > rank_tol)
            .map(|(k, _)| Ket::normalize(vectors.column(k).iter().copied().collect::<Vec<C64>>()))
            .collect::<Result<Vec<_>>>()?;
        Ok((SubspaceBasis::new(basis, self.shape)?, ambiguous))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct SupportResult {
    pub eos: EosResult,
    pub support_dim: usize,
    /// Some eigenvalue was within a decade of the rank tolerance.
    pub ambiguous_rank: bool,
}

/// Entanglement of the support subspace of `rho`.
pub fn entanglement_of_support(rho: &MixedState, rank_tol: f64, cfg: &EosConfig) -> Result<SupportResult> {
    let (support, ambiguous_rank) = rho.support(rank_tol)?;
    Ok(SupportResult {
        eos: eos_minimize(&support, cfg)?,
        support_dim: support.dim(),
        ambiguous_rank,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eos::PRODUCT_EPS;
    use crate::fixtures;
    use crate::tensor::{haar_random_ket, QubitCut};

    #[test]
    fn pure_bell_support() {
        let bell = fixtures::bell_line().vectors()[0].clone();
        let rho = MixedState::new(DensityMatrix::pure(&bell), BipartiteShape::new(2, 2).unwrap()).unwrap();
        let r = entanglement_of_support(&rho, 1e-10, &EosConfig::with_seed(0)).unwrap();
        assert_eq!(r.support_dim, 1);
        assert!((r.eos.value - 1.0).abs() < 1e-12);
        assert!(!r.ambiguous_rank);
    }

    #[test]
    fn full_rank_two_qubit_state_has_zero_support_entanglement() {
        let states: Vec<(f64, Ket)> =
            (0..6).map(|s| (1.0 + s as f64, haar_random_ket(4, 200 + s))).collect();
        let rho = MixedState::new(DensityMatrix::mixture(&states).unwrap(), BipartiteShape::new(2, 2).unwrap()).unwrap();
        let r = entanglement_of_support(&rho, 1e-10, &EosConfig::with_seed(1)).unwrap();
        assert_eq!(r.support_dim, 4);
        assert!(r.eos.value < PRODUCT_EPS);
    }

    #[test]
    fn ambiguous_rank_is_flagged() {
        let a = Ket::basis(4, 0);
        let b = Ket::basis(4, 3);
        let rho = DensityMatrix::mixture(&[(1.0, a), (2e-10, b)]).unwrap();
        let rho = MixedState::new(rho, BipartiteShape::new(2, 2).unwrap()).unwrap();
        let (_, ambiguous) = rho.support(1e-10).unwrap();
        assert!(ambiguous);
    }

    #[test]
    fn shor_codeword_mixture_support_is_cut_dependent() {
        let v0 = crate::shor::build_shor_decomposition().spaces[0].clone();
        let states: Vec<(f64, Ket)> = v0.vectors().iter().map(|v| (0.5, v.clone())).collect();
        let mixed = DensityMatrix::mixture(&states).unwrap();
        for (b, expected) in [(&[0usize, 3][..], 2.0), (&[0, 1][..], 1.0)] {
            let cut = QubitCut::new(9, b).unwrap();
            let permuted = permute_density(&mixed, &cut);
            let rho = MixedState::new(permuted, cut.shape()).unwrap();
            let cfg = EosConfig { restarts: 8, ..EosConfig::with_seed(2) };
            let r = entanglement_of_support(&rho, 1e-10, &cfg).unwrap();
            assert_eq!(r.support_dim, 2);
            assert!((r.eos.value - expected).abs() < 1e-7, "cut {b:?}: {}", r.eos.value);
        }
    }

    fn permute_density(rho: &DensityMatrix, cut: &QubitCut) -> DensityMatrix {
        let m = rho.entries();
        let dim = m.nrows();
        let cols: Vec<Vec<C64>> = (0..dim)
            .map(|c| cut.permute(&m.column(c).iter().copied().collect::<Vec<_>>()).unwrap())
            .collect();
        let half = crate::CMatrix::from_fn(dim, dim, |r, c| cols[c][r]);
        let rows: Vec<Vec<C64>> = (0..dim)
            .map(|r| cut.permute(&half.row(r).iter().copied().collect::<Vec<_>>()).unwrap())
            .collect();
        DensityMatrix::new(crate::CMatrix::from_fn(dim, dim, |r, c| rows[r][c])).unwrap()
    }
}
