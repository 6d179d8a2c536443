//! Derivative-free grid search for the entanglement of small subspaces.
//!
//! Coefficients are parameterized with the global phase removed:
//! `c₁ = cos θ₁`, `c₂ = e^{iφ₁} sin θ₁ cos θ₂`, …, `c_d = e^{iφ_{d-1}} sin θ₁⋯sin θ_{d-1}`,
//! with `θ ∈ [0, π/2]` and `φ ∈ [0, 2π)`. A uniform grid over these angles is
//! scanned, its best local minima are kept, and each is refined on shrinking
//! local grids. Every value is an actual function evaluation, so the result is
//! always an upper bound on the true minimum.

use std::f64::consts::{FRAC_PI_2, PI};

use serde::Serialize;

use super::objective::Objective;
use crate::exec::map_range;
use crate::tensor::SubspaceBasis;
use crate::{Error, Result, C64};

const MAX_GRID_EVALS: usize = 50_000_000;

#[derive(Clone, Debug, Serialize)]
pub struct OracleConfig {
    /// Points per real parameter on the coarse grid.
    pub grid_points: usize,
    /// Coarse-grid local minima refined further.
    pub candidates: usize,
    /// Halvings of the local grid spacing; zero disables refinement.
    pub refine_levels: usize,
}

impl OracleConfig {
    pub fn new(grid_points: usize) -> Self {
        Self { grid_points, candidates: 8, refine_levels: 34 }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct OracleResult {
    pub value: f64,
    pub coefficients: Vec<C64>,
    pub evaluations: usize,
}

fn coefficients(params: &[f64], d: usize) -> Vec<C64> {
    let (thetas, phis) = params.split_at(d - 1);
    let mut c = Vec::with_capacity(d);
    let mut s = 1.0;
    for j in 0..d {
        let mag = if j + 1 < d { s * thetas[j].cos() } else { s };
        let phase = if j == 0 { 0.0 } else { phis[j - 1] };
        c.push(C64::from_polar(mag, phase));
        if j + 1 < d {
            s *= thetas[j].sin();
        }
    }
    c
}

struct Grid {
    d: usize,
    points: usize,
}

impl Grid {
    fn dims(&self) -> usize {
        2 * (self.d - 1)
    }

    fn spacing(&self) -> Vec<f64> {
        let k = self.d - 1;
        let mut s = vec![FRAC_PI_2 / (self.points - 1) as f64; k];
        s.extend(std::iter::repeat_n(2.0 * PI / self.points as f64, k));
        s
    }

    fn coords(&self, mut flat: usize) -> Vec<usize> {
        let mut out = vec![0; self.dims()];
        for slot in out.iter_mut().rev() {
            *slot = flat % self.points;
            flat /= self.points;
        }
        out
    }

    fn flat(&self, coords: &[usize]) -> usize {
        coords.iter().fold(0, |acc, &i| acc * self.points + i)
    }

    fn params(&self, coords: &[usize]) -> Vec<f64> {
        let s = self.spacing();
        coords.iter().zip(&s).map(|(&i, &h)| i as f64 * h).collect()
    }

    /// Neighbor indices; θ clamps at the ends, φ wraps.
    fn neighbors(&self, coords: &[usize]) -> Vec<usize> {
        let k = self.d - 1;
        let dims = self.dims();
        let mut out = Vec::new();
        let total = 3usize.pow(dims as u32);
        for code in 0..total {
            if code == total / 2 {
                continue;
            }
            let mut c = coords.to_vec();
            let mut rem = code;
            let mut valid = true;
            for (axis, slot) in c.iter_mut().enumerate() {
                let step = (rem % 3) as isize - 1;
                rem /= 3;
                let v = *slot as isize + step;
                if axis < k {
                    if v < 0 || v >= self.points as isize {
                        valid = false;
                    } else {
                        *slot = v as usize;
                    }
                } else {
                    *slot = v.rem_euclid(self.points as isize) as usize;
                }
            }
            if valid {
                out.push(self.flat(&c));
            }
        }
        out
    }
}

fn refine(obj: &Objective, d: usize, start: Vec<f64>, spacing: Vec<f64>, levels: usize) -> (f64, Vec<f64>, usize) {
    const LOCAL: usize = 7;
    let k = d - 1;
    let dims = start.len();
    let mut best = start;
    let mut best_val = obj.value(&coefficients(&best, d));
    let mut evals = 1;
    let mut h = spacing;
    for _ in 0..levels {
        let center = best.clone();
        let total = LOCAL.pow(dims as u32);
        for code in 0..total {
            let mut rem = code;
            let mut p = center.clone();
            for (axis, x) in p.iter_mut().enumerate() {
                let offset = (rem % LOCAL) as f64 / (LOCAL - 1) as f64 * 3.0 - 1.5;
                rem /= LOCAL;
                *x += offset * h[axis];
                if axis < k {
                    *x = x.clamp(0.0, FRAC_PI_2);
                }
            }
            let v = obj.value(&coefficients(&p, d));
            evals += 1;
            if v < best_val {
                best_val = v;
                best = p;
            }
        }
        h.iter_mut().for_each(|x| *x *= 0.5);
    }
    (best_val, best, evals)
}

/// Grid-search upper bound on the entanglement of `w` (`dim w ≤ 3`).
pub fn eos_brute_force(w: &SubspaceBasis, grid_points_per_real_dim: usize) -> Result<f64> {
    Ok(eos_brute_force_with(w, &OracleConfig::new(grid_points_per_real_dim))?.value)
}

pub fn eos_brute_force_with(w: &SubspaceBasis, cfg: &OracleConfig) -> Result<OracleResult> {
    let d = w.dim();
    if d > 3 {
        return Err(Error::OracleTooLarge(d));
    }
    let obj = Objective::new(w);
    if d == 1 {
        let c = vec![C64::new(1.0, 0.0)];
        return Ok(OracleResult { value: obj.value(&c), coefficients: c, evaluations: 1 });
    }
    if cfg.grid_points < 2 {
        return Err(Error::InvalidArgument("oracle grid needs at least 2 points per dimension".into()));
    }
    let grid = Grid { d, points: cfg.grid_points };
    let total = cfg
        .grid_points
        .checked_pow(grid.dims() as u32)
        .filter(|&t| t <= MAX_GRID_EVALS)
        .ok_or_else(|| Error::InvalidArgument(format!("oracle grid too large for d = {d}")))?;

    let values = map_range(total, |i| obj.value(&coefficients(&grid.params(&grid.coords(i)), d)));

    let mut minima: Vec<usize> = (0..total)
        .filter(|&i| grid.neighbors(&grid.coords(i)).iter().all(|&j| values[i] <= values[j]))
        .collect();
    minima.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    minima.truncate(cfg.candidates.max(1));

    let spacing = grid.spacing();
    let refined = map_range(minima.len(), |m| {
        let start = grid.params(&grid.coords(minima[m]));
        refine(&obj, d, start, spacing.clone(), cfg.refine_levels)
    });
    let evaluations = total + refined.iter().map(|r| r.2).sum::<usize>();
    let (value, params, _) = refined
        .into_iter()
        .min_by(|a, b| a.0.total_cmp(&b.0))
        .expect("a finite grid has at least one local minimum");
    Ok(OracleResult { value, coefficients: coefficients(&params, d), evaluations })
}
