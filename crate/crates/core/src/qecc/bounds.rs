use serde::Serialize;

use crate::{Error, Result};

/// Largest qubit count accepted by the bound checkers.
pub const MAX_QUBITS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: usize,
    pub l: usize,
    pub k: usize,
    /// `Σ_{r ≤ k} 3^r C(n, r)`.
    pub hamming_lhs: u128,
    /// `2^{n-l}`.
    pub hamming_rhs: u128,
    pub hamming_ok: bool,
    /// `n ≥ 4k + l`.
    pub singleton_ok: bool,
}

fn binomial(n: usize, r: usize) -> u128 {
    let r = r.min(n - r);
    // C(64, 32) < 2^61, and each partial product fits before the division.
    (0..r).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Number of Pauli strings of weight at most `k` on `n` qubits.
pub fn hamming_lhs(n: usize, k: usize) -> Result<u128> {
    if n > MAX_QUBITS {
        return Err(Error::Overflow(n));
    }
    let mut total: u128 = 0;
    for r in 0..=k.min(n) {
        let term = 3u128
            .checked_pow(r as u32)
            .and_then(|p| p.checked_mul(binomial(n, r)))
            .ok_or(Error::Overflow(n))?;
        total = total.checked_add(term).ok_or(Error::Overflow(n))?;
    }
    Ok(total)
}

pub fn check_bounds(n: usize, l: usize, k: usize) -> Result<BoundReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if l > n {
        return Err(Error::InvalidArgument(format!("l = {l} exceeds n = {n}")));
    }
    let hamming_lhs = hamming_lhs(n, k)?;
    let hamming_rhs = 1u128 << (n - l);
    let singleton_ok = k.checked_mul(4).and_then(|x| x.checked_add(l)).is_some_and(|need| n >= need);
    Ok(BoundReport { n, l, k, hamming_lhs, hamming_rhs, hamming_ok: hamming_lhs <= hamming_rhs, singleton_ok })
}
