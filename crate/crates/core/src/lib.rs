//! Entanglement of bipartite subspaces and its use in quantum error correction.
//!
//! The crate is organized bottom-up:
//!
//! - [`tensor`]: kets, bipartite shapes, qubit cuts, reduced states, Schmidt
//!   decompositions, entropies and Haar sampling.
//! - [`eos`]: the entanglement of a subspace (minimum entanglement entropy over
//!   its unit vectors) by restarted Riemannian gradient descent, a grid oracle,
//!   entanglement of support, and the accompanying bound checks.
//! - [`maxent`]: construction and exact certification of maximally entangled
//!   subspaces, and additivity checks on their tensor products.
//! - [`qecc`]: Pauli error algebra, k-totally entangled subspaces, orthogonal
//!   codes, and the Hamming / Singleton bounds.
//! - [`shor`]: Shor's nine-qubit code as 22 mutually orthogonal subspaces.
//!
//! All entropies are in bits. Qubit 0 is the most significant tensor factor.

pub mod eos;
mod error;
mod exec;
pub mod fixtures;
pub mod maxent;
pub mod qecc;
pub mod shor;
pub mod tensor;

pub use error::{Error, Result};
pub use exec::configure_threads;
pub use num_complex::Complex64 as C64;

/// Dense complex matrix used throughout the crate.
pub type CMatrix = nalgebra::DMatrix<C64>;
