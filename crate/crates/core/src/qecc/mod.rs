//! Qubit error correction: Pauli errors, totally entangled subspaces and
//! orthogonal codes built from them.

mod bounds;
mod code;
mod pauli;
mod totally;

pub use bounds::{check_bounds, hamming_lhs, BoundReport};
pub use code::{
    build_orthogonal_code, orthogonality_residual, prop8_forward_check, verify_code, CodeModel, FailureKind,
    OrthogonalityResidual, VerifyFailure, VerifyReport, CODE_TOL,
};
pub use pauli::{apply_error, ErrorSet, Pauli, PauliString};
pub use totally::{is_k_totally_entangled, qubit_cuts, TotalEntanglementReport};
