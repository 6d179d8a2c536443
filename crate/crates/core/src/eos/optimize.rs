use serde::Serialize;

use super::objective::{normalize, real_norm, Objective};
use super::PRODUCT_EPS;
use crate::exec::map_range;
use crate::maxent::certify_max_entangled;
use crate::tensor::{haar_unit_vector, seeded_rng, SubspaceBasis};
use crate::{Error, Result, C64};

const ARMIJO_SLOPE: f64 = 1e-4;
const ARMIJO_SHRINK: f64 = 0.5;
const MIN_STEP: f64 = 1e-18;
const MAX_STEP: f64 = 1e3;
/// `f ≥ 0`, so reaching this value is a global minimum for all practical purposes.
const ZERO_FLOOR: f64 = 1e-14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GradientMode {
    Analytic,
    /// Central differences, `h = 1e-5`; slow, for validation.
    FiniteDifference,
}

#[derive(Clone, Debug, Serialize)]
pub struct EosConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub seed: u64,
    pub gradient: GradientMode,
    /// Starting points tried in addition to the regular restarts.
    #[serde(skip)]
    pub extra_starts: Vec<Vec<C64>>,
}

impl Default for EosConfig {
    fn default() -> Self {
        Self {
            restarts: 64,
            max_iters: 2000,
            grad_tol: 1e-9,
            seed: 0,
            gradient: GradientMode::Analytic,
            extra_starts: Vec::new(),
        }
    }
}

impl EosConfig {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Certificate {
    /// Optimizer value only; an upper bound on the true minimum.
    Numeric,
    /// The exact Gram criterion passed: every unit vector is maximally entangled.
    ExactMaxent,
    /// The optimizer reached a vector with entropy below [`PRODUCT_EPS`].
    ContainsProduct,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct EosResult {
    /// Best entropy found, in bits. An upper bound on the entanglement of
    /// the subspace unless `certificate` is `ExactMaxent`.
    pub value: f64,
    pub minimizer_coefficients: Vec<C64>,
    pub restarts_run: usize,
    pub converged: bool,
    pub certificate: Certificate,
    pub gradient_norm: f64,
    pub best_restart: usize,
    pub iterations: usize,
}

struct Descent {
    value: f64,
    point: Vec<C64>,
    grad_norm: f64,
    iterations: usize,
    converged: bool,
}

fn evaluate(obj: &Objective, c: &[C64], mode: GradientMode) -> (f64, Vec<C64>) {
    match mode {
        GradientMode::Analytic => obj.value_and_gradient(c),
        GradientMode::FiniteDifference => (obj.value(c), obj.finite_difference_gradient(c, 1e-5)),
    }
}

fn descend(obj: &Objective, mut c: Vec<C64>, cfg: &EosConfig) -> Descent {
    normalize(&mut c);
    let (mut f, mut g) = evaluate(obj, &c, cfg.gradient);
    let mut gn = real_norm(&g);
    let mut step = 1.0;
    let mut iterations = 0;
    while iterations < cfg.max_iters && gn >= cfg.grad_tol && f > ZERO_FLOOR {
        let mut t = step;
        let mut accepted = None;
        while t > MIN_STEP {
            let mut trial: Vec<C64> = c.iter().zip(&g).map(|(x, y)| x - y * t).collect();
            normalize(&mut trial);
            let ft = obj.value(&trial);
            if ft <= f - ARMIJO_SLOPE * t * gn * gn {
                accepted = Some(trial);
                break;
            }
            t *= ARMIJO_SHRINK;
        }
        let Some(next) = accepted else { break };
        c = next;
        (f, g) = evaluate(obj, &c, cfg.gradient);
        gn = real_norm(&g);
        step = (2.0 * t).min(MAX_STEP);
        iterations += 1;
    }
    let converged = gn < cfg.grad_tol || f <= ZERO_FLOOR;
    Descent { value: f, point: c, grad_norm: gn, iterations, converged }
}

fn start_point(index: usize, d: usize, cfg: &EosConfig) -> Vec<C64> {
    if index < cfg.extra_starts.len() {
        return cfg.extra_starts[index].clone();
    }
    let r = index - cfg.extra_starts.len();
    if r < d {
        let mut e = vec![C64::new(0.0, 0.0); d];
        e[r] = C64::new(1.0, 0.0);
        e
    } else {
        haar_unit_vector(&mut seeded_rng(cfg.seed, r as u64), d).into_amplitudes()
    }
}

/// Minimum entanglement entropy over the unit vectors of `w`.
///
/// Runs `cfg.restarts` descents (basis vectors first, then Haar-random
/// starts) plus any `extra_starts`, and keeps the lowest value, ties going to
/// the lower restart index.
pub fn eos_minimize(w: &SubspaceBasis, cfg: &EosConfig) -> Result<EosResult> {
    let d = w.dim();
    if d == 0 {
        return Err(Error::EmptySubspace);
    }
    for s in &cfg.extra_starts {
        if s.len() != d {
            return Err(Error::DimensionMismatch { expected: d, got: s.len() });
        }
    }
    let obj = Objective::new(w);
    let total = (cfg.restarts + cfg.extra_starts.len()).max(1);
    let runs = map_range(total, |i| descend(&obj, start_point(i, d, cfg), cfg));

    let (best_restart, best) = runs
        .iter()
        .enumerate()
        .min_by(|(i, a), (j, b)| a.value.total_cmp(&b.value).then(i.cmp(j)))
        .expect("at least one restart");

    let certificate = if certify_max_entangled(w).is_max_entangled {
        Certificate::ExactMaxent
    } else if best.value < PRODUCT_EPS {
        Certificate::ContainsProduct
    } else {
        Certificate::Numeric
    };
    Ok(EosResult {
        value: best.value,
        minimizer_coefficients: best.point.clone(),
        restarts_run: total,
        converged: best.converged,
        certificate,
        gradient_norm: best.grad_norm,
        best_restart,
        iterations: best.iterations,
    })
}
