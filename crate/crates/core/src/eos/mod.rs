//! Entanglement of subspaces: the minimum entanglement entropy over all unit
//! vectors of a subspace, computed by restarted Riemannian gradient descent
//! and checked against a derivative-free grid oracle.

mod average;
mod checks;
mod objective;
mod optimize;
mod oracle;
mod support;

pub use average::{average_entanglement_mc, page_average_entropy, McEstimate};
pub use checks::{check_dimension_bound, prop2_lower_bound_check, DimensionBoundReport, Prop2Report};
pub use optimize::{eos_minimize, Certificate, EosConfig, EosResult, GradientMode};
pub use oracle::{eos_brute_force, eos_brute_force_with, OracleConfig, OracleResult};
pub use support::{entanglement_of_support, MixedState, SupportResult};

/// Below this value a subspace is reported as containing a product state.
pub const PRODUCT_EPS: f64 = 1e-7;

/// Analytic-vs-finite-difference gradient at a point, for validation.
///
/// Returns `(analytic, finite_difference)`, both projected onto the tangent
/// space of the unit sphere in `C^d`, in the `∂/∂x + i ∂/∂y` encoding.
pub fn gradient_pair(
    w: &crate::tensor::SubspaceBasis,
    coeffs: &[crate::C64],
    h: f64,
) -> (Vec<crate::C64>, Vec<crate::C64>) {
    let obj = objective::Objective::new(w);
    let (_, g) = obj.value_and_gradient(coeffs);
    (g, obj.finite_difference_gradient(coeffs, h))
}
