use serde::Serialize;

use crate::exec::map_range;
use crate::tensor::{entanglement_entropy, haar_unit_vector, seeded_rng, BipartiteShape};
use crate::{Error, Result};

#[derive(Clone, Debug, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub samples: usize,
    /// `log₂ m - m / (2 ln2 · M)` with `m ≤ M` the smaller and larger factor.
    pub page_bound_standard: f64,
    /// The same expression with the roles of `m` and `M` exchanged.
    pub page_bound_exchanged: f64,
    /// Exact average from Page's formula, for reference.
    pub page_exact: f64,
}

/// Exact mean entanglement entropy (bits) of a Haar-random pure state in
/// `C^m ⊗ C^n`: `(Σ_{k=n+1}^{mn} 1/k - (m-1)/(2n)) / ln 2` for `m ≤ n`.
pub fn page_average_entropy(shape: BipartiteShape) -> f64 {
    let m = shape.min_dim();
    let n = shape.da.max(shape.db);
    let harmonic: f64 = (n + 1..=m * n).map(|k| 1.0 / k as f64).sum();
    (harmonic - (m as f64 - 1.0) / (2.0 * n as f64)) / std::f64::consts::LN_2
}

/// Monte Carlo mean of the entanglement entropy of Haar-random kets.
pub fn average_entanglement_mc(shape: BipartiteShape, samples: usize, seed: u64) -> Result<McEstimate> {
    if samples == 0 {
        return Err(Error::InvalidArgument("at least one sample is required".into()));
    }
    let values = map_range(samples, |i| {
        let psi = haar_unit_vector(&mut seeded_rng(seed, i as u64), shape.dim());
        entanglement_entropy(&psi, shape).expect("shape matches")
    });
    let n = samples as f64;
    let mean = values.iter().sum::<f64>() / n;
    let stderr = if samples > 1 {
        let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (n - 1.0);
        (var / n).sqrt()
    } else {
        0.0
    };
    let small = shape.min_dim() as f64;
    let large = shape.da.max(shape.db) as f64;
    let ln2 = std::f64::consts::LN_2;
    Ok(McEstimate {
        mean,
        stderr,
        samples,
        page_bound_standard: small.log2() - small / (2.0 * ln2 * large),
        page_bound_exchanged: large.log2() - large / (2.0 * ln2 * small),
        page_exact: page_average_entropy(shape),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Mean entropy for two qubits by quadrature over the eigenvalue density
    /// `3(2x-1)²` of the reduced state on `[0, 1]`.
    fn two_qubit_mean_by_quadrature() -> f64 {
        let n = 200_000;
        let h = 1.0 / n as f64;
        (0..n)
            .map(|i| {
                let x = (i as f64 + 0.5) * h;
                let s = -x * x.log2() - (1.0 - x) * (1.0 - x).log2();
                3.0 * (2.0 * x - 1.0).powi(2) * s * h
            })
            .sum()
    }

    #[test]
    fn closed_form_matches_quadrature() {
        let quad = two_qubit_mean_by_quadrature();
        let closed = 1.0 / (3.0 * std::f64::consts::LN_2);
        assert!((quad - closed).abs() < 1e-9, "{quad} vs {closed}");
        let page = page_average_entropy(BipartiteShape::new(2, 2).unwrap());
        assert!((page - closed).abs() < 1e-12);
    }

    #[test]
    fn two_qubit_monte_carlo() {
        let est = average_entanglement_mc(BipartiteShape::new(2, 2).unwrap(), 100_000, 2024).unwrap();
        let expected = two_qubit_mean_by_quadrature();
        assert!((est.mean - expected).abs() < 3.0 * est.stderr, "{est:?}");
    }

    #[test]
    fn degenerate_cut_is_exactly_zero() {
        let est = average_entanglement_mc(BipartiteShape::new(1, 4).unwrap(), 100, 1).unwrap();
        assert_eq!(est.mean, 0.0);
        assert_eq!(est.stderr, 0.0);
    }

    #[test]
    fn standard_page_bound_holds_for_8x2() {
        let est = average_entanglement_mc(BipartiteShape::new(8, 2).unwrap(), 100_000, 7).unwrap();
        assert!(est.mean >= est.page_bound_standard - 3.0 * est.stderr);
        assert!((est.mean - est.page_exact).abs() < 4.0 * est.stderr);
    }

    #[test]
    fn zero_samples_rejected() {
        assert!(average_entanglement_mc(BipartiteShape::new(2, 2).unwrap(), 0, 0).is_err());
    }
}
