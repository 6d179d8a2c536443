use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid shape: {0}")]
    InvalidShape(String),

    #[error("vector is not normalized (norm {norm})")]
    NotNormalized { norm: f64 },

    #[error("zero vector cannot be normalized")]
    ZeroVector,

    #[error("basis is not orthonormal (Gram residual {residual:e})")]
    NotOrthonormal { residual: f64 },

    #[error("vectors are linearly dependent: vector {index} collapsed during orthogonalization")]
    RankDeficient { index: usize },

    #[error("qubit index {index} out of range for {n} qubits")]
    QubitOutOfRange { index: usize, n: usize },

    #[error("duplicate qubit index {0}")]
    DuplicateQubit(usize),

    #[error("invalid density matrix: {0}")]
    InvalidDensityMatrix(String),

    #[error("empty subspace")]
    EmptySubspace,

    #[error("subspace dimension {d} exceeds ambient dimension {dim}")]
    SubspaceTooLarge { d: usize, dim: usize },

    #[error("dimension {d} exceeds the maximally entangled bound floor({da}/{db}) = {bound}")]
    MaxEntDimensionBound { d: usize, da: usize, db: usize, bound: usize },

    #[error("brute-force oracle supports subspaces of dimension at most 3, got {0}")]
    OracleTooLarge(usize),

    #[error("subspace is not maximally entangled (Gram residual {residual:e})")]
    NotMaximallyEntangled { residual: f64 },

    #[error("k = {k} exceeds n/2 for n = {n} qubits")]
    CutTooLarge { k: usize, n: usize },

    #[error("Hamming bound violated: {lhs} > {rhs}")]
    HammingViolated { lhs: u128, rhs: u128 },

    #[error("subspace is not {k}-totally entangled (worst cut {worst_cut:?}, residual {residual:e})")]
    NotTotallyEntangled { k: usize, worst_cut: Vec<usize>, residual: f64 },

    #[error("syndrome basis is not orthonormal: errors {first} and {second} overlap (residual {residual:e})")]
    SyndromeOverlap { first: String, second: String, residual: f64 },

    #[error("integer overflow in bound arithmetic (n = {0})")]
    Overflow(usize),

    #[error("codeword is not in the code space (residual {residual:e})")]
    NotInCodeSpace { residual: f64 },

    #[error("{0}")]
    InvalidArgument(String),
}
