//! Complex dense linear algebra and bipartite-structure primitives.

mod ket;
mod linalg;
mod random;
mod shape;
mod subspace;

pub use ket::{inner, norm, Ket, NORM_TOL};
pub use linalg::{
    entanglement_entropy, entropy_of_spectrum, gram_schmidt, hermitian_eigen,
    hermitian_eigenvalues, partial_trace_a, partial_trace_b, reshape_to_matrix, schmidt,
    von_neumann_entropy, DensityMatrix, SchmidtDecomposition, EIG_CLAMP, RANK_TOL,
};
pub use random::{
    gaussian_vector, haar_random_ket, haar_random_subspace, haar_random_unitary, haar_unit_vector,
    seeded_rng,
};
pub use shape::{permute_amplitudes, unpermute_amplitudes, BipartiteShape, QubitCut};
pub use subspace::{gram_residual, QubitSubspace, SubspaceBasis, ORTHO_TOL};
