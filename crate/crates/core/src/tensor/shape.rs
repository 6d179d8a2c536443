use serde::Serialize;

use crate::{Error, Result, C64};

/// How a flat vector of length `da·db` is read as an element of `C^da ⊗ C^db`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct BipartiteShape {
    pub da: usize,
    pub db: usize,
}

impl BipartiteShape {
    pub fn new(da: usize, db: usize) -> Result<Self> {
        if da == 0 || db == 0 {
            return Err(Error::InvalidShape(format!("({da}, {db}) has a zero factor")));
        }
        Ok(Self { da, db })
    }

    pub fn dim(&self) -> usize {
        self.da * self.db
    }

    /// `m = min(da, db)`; the entanglement ceiling is `log₂ m`.
    pub fn min_dim(&self) -> usize {
        self.da.min(self.db)
    }

    pub fn max_entropy(&self) -> f64 {
        (self.min_dim() as f64).log2()
    }

    pub fn swapped(&self) -> Self {
        Self { da: self.db, db: self.da }
    }

    /// Shape of `(A ⊗ A') : (B ⊗ B')`.
    pub fn regrouped_product(&self, other: &Self) -> Self {
        Self { da: self.da * other.da, db: self.db * other.db }
    }

    pub(crate) fn check(&self, dim: usize) -> Result<()> {
        if dim != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), got: dim });
        }
        Ok(())
    }
}

/// A choice of qubits forming side B of an `n`-qubit register.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct QubitCut {
    n: usize,
    b: Vec<usize>,
}

impl QubitCut {
    /// Accepts the B-side indices in any order; they are stored sorted.
    pub fn new(n: usize, b_indices: &[usize]) -> Result<Self> {
        let mut b = b_indices.to_vec();
        b.sort_unstable();
        for w in b.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateQubit(w[0]));
            }
        }
        if let Some(&index) = b.iter().find(|&&i| i >= n) {
            return Err(Error::QubitOutOfRange { index, n });
        }
        if b.is_empty() || b.len() >= n {
            return Err(Error::InvalidShape(format!(
                "cut of {} qubits out of {n} leaves an empty side",
                b.len()
            )));
        }
        Ok(Self { n, b })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn b_indices(&self) -> &[usize] {
        &self.b
    }

    pub fn a_indices(&self) -> Vec<usize> {
        (0..self.n).filter(|i| !self.b.contains(i)).collect()
    }

    pub fn shape(&self) -> BipartiteShape {
        BipartiteShape { da: 1 << (self.n - self.b.len()), db: 1 << self.b.len() }
    }

    /// Qubit order after permutation: A-side qubits, then B-side qubits,
    /// each ascending.
    pub fn qubit_order(&self) -> Vec<usize> {
        let mut order = self.a_indices();
        order.extend_from_slice(&self.b);
        order
    }

    /// Reorders amplitudes so the B qubits occupy the trailing factors.
    pub fn permute(&self, amps: &[C64]) -> Result<Vec<C64>> {
        permute_amplitudes(amps, self.n, &self.qubit_order())
    }

    /// Inverse of [`QubitCut::permute`].
    pub fn unpermute(&self, amps: &[C64]) -> Result<Vec<C64>> {
        unpermute_amplitudes(amps, self.n, &self.qubit_order())
    }
}

fn check_order(n: usize, order: &[usize]) -> Result<()> {
    if order.len() != n {
        return Err(Error::InvalidArgument(format!(
            "qubit order has {} entries, expected {n}",
            order.len()
        )));
    }
    let mut seen = vec![false; n];
    for &q in order {
        if q >= n {
            return Err(Error::QubitOutOfRange { index: q, n });
        }
        if std::mem::replace(&mut seen[q], true) {
            return Err(Error::DuplicateQubit(q));
        }
    }
    Ok(())
}

/// Index map of a qubit permutation: new qubit `j` is old qubit `order[j]`.
fn permuted_index(x: usize, n: usize, order: &[usize]) -> usize {
    order.iter().enumerate().fold(0, |y, (j, &q)| {
        let bit = (x >> (n - 1 - q)) & 1;
        y | (bit << (n - 1 - j))
    })
}

/// Reorders the tensor factors of an `n`-qubit vector so that new qubit `j`
/// carries old qubit `order[j]`.
pub fn permute_amplitudes(amps: &[C64], n: usize, order: &[usize]) -> Result<Vec<C64>> {
    check_order(n, order)?;
    if amps.len() != 1 << n {
        return Err(Error::DimensionMismatch { expected: 1 << n, got: amps.len() });
    }
    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for (x, &a) in amps.iter().enumerate() {
        out[permuted_index(x, n, order)] = a;
    }
    Ok(out)
}

/// Inverse of [`permute_amplitudes`] for the same `order`.
pub fn unpermute_amplitudes(amps: &[C64], n: usize, order: &[usize]) -> Result<Vec<C64>> {
    check_order(n, order)?;
    if amps.len() != 1 << n {
        return Err(Error::DimensionMismatch { expected: 1 << n, got: amps.len() });
    }
    let mut out = vec![C64::new(0.0, 0.0); amps.len()];
    for (x, slot) in out.iter_mut().enumerate() {
        *slot = amps[permuted_index(x, n, order)];
    }
    Ok(out)
}
