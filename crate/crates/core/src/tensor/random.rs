use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use super::{gram_schmidt, BipartiteShape, Ket, SubspaceBasis};
use crate::{CMatrix, Error, Result, C64};

/// Deterministic generator for `(seed, stream)`. Independent streams let
/// parallel workers draw reproducibly regardless of scheduling.
pub fn seeded_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// I.i.d. standard complex Gaussian entries.
pub fn gaussian_vector<R: rand::Rng>(rng: &mut R, dim: usize) -> Vec<C64> {
    (0..dim)
        .map(|_| {
            let re: f64 = StandardNormal.sample(rng);
            let im: f64 = StandardNormal.sample(rng);
            C64::new(re, im)
        })
        .collect()
}

/// Unit vector drawn from the unitarily invariant measure.
pub fn haar_unit_vector<R: rand::Rng>(rng: &mut R, dim: usize) -> Ket {
    loop {
        if let Ok(k) = Ket::normalize(gaussian_vector(rng, dim)) {
            return k;
        }
    }
}

pub fn haar_random_ket(dim: usize, seed: u64) -> Ket {
    haar_unit_vector(&mut seeded_rng(seed, 0), dim)
}

/// Orthonormal frame of `d` Gaussian vectors in `C^dim`.
fn haar_frame(dim: usize, d: usize, seed: u64) -> Result<Vec<Ket>> {
    if d == 0 {
        return Err(Error::EmptySubspace);
    }
    if d > dim {
        return Err(Error::SubspaceTooLarge { d, dim });
    }
    let mut rng = seeded_rng(seed, 0);
    loop {
        let raw: Vec<Vec<C64>> = (0..d).map(|_| gaussian_vector(&mut rng, dim)).collect();
        if let Ok(basis) = gram_schmidt(&raw) {
            return Ok(basis);
        }
    }
}

/// A `d`-dimensional subspace of `C^da ⊗ C^db` drawn from the unitarily
/// invariant measure.
pub fn haar_random_subspace(shape: BipartiteShape, d: usize, seed: u64) -> Result<SubspaceBasis> {
    SubspaceBasis::new(haar_frame(shape.dim(), d, seed)?, shape)
}

/// A `dim × dim` Haar-random unitary.
pub fn haar_random_unitary(dim: usize, seed: u64) -> CMatrix {
    let cols = haar_frame(dim, dim, seed).expect("full frame of nonzero dimension");
    CMatrix::from_fn(dim, dim, |r, c| cols[c].amplitudes()[r])
}
