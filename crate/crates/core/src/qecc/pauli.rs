use std::fmt;

use serde::{Deserialize, Serialize};

use crate::tensor::{permute_amplitudes, unpermute_amplitudes};
use crate::{CMatrix, Error, Result, C64};

/// Single-qubit Pauli matrices `A₁ = Z`, `A₂ = X` and `A₃ = [[0, i], [-i, 0]]`.
///
/// `A₃` is minus the usual `σ_y`; it is Hermitian and squares to the identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Pauli {
    A1,
    A2,
    A3,
}

impl Pauli {
    pub const ALL: [Pauli; 3] = [Pauli::A1, Pauli::A2, Pauli::A3];

    pub fn label(self) -> u8 {
        match self {
            Pauli::A1 => 1,
            Pauli::A2 => 2,
            Pauli::A3 => 3,
        }
    }

    pub fn from_label(label: u8) -> Result<Self> {
        match label {
            1 => Ok(Pauli::A1),
            2 => Ok(Pauli::A2),
            3 => Ok(Pauli::A3),
            _ => Err(Error::InvalidArgument(format!("Pauli label {label} not in 1..=3"))),
        }
    }

    pub fn matrix(self) -> CMatrix {
        let (o, z, i) = (C64::new(1.0, 0.0), C64::new(0.0, 0.0), C64::new(0.0, 1.0));
        match self {
            Pauli::A1 => CMatrix::from_row_slice(2, 2, &[o, z, z, -o]),
            Pauli::A2 => CMatrix::from_row_slice(2, 2, &[z, o, o, z]),
            Pauli::A3 => CMatrix::from_row_slice(2, 2, &[z, i, -i, z]),
        }
    }

    /// Flips the bit, and the phase picked up from input bit `bit`.
    fn action(self, bit: bool) -> (bool, C64) {
        match self {
            Pauli::A1 => (false, C64::new(if bit { -1.0 } else { 1.0 }, 0.0)),
            Pauli::A2 => (true, C64::new(1.0, 0.0)),
            Pauli::A3 => (true, C64::new(0.0, if bit { 1.0 } else { -1.0 })),
        }
    }
}

/// Tensor product of Paulis on distinct qubits, identity elsewhere.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PauliString {
    n: usize,
    positions: Vec<usize>,
    labels: Vec<Pauli>,
}

impl PauliString {
    pub fn new(n: usize, positions: Vec<usize>, labels: Vec<Pauli>) -> Result<Self> {
        if positions.len() != labels.len() {
            return Err(Error::DimensionMismatch { expected: positions.len(), got: labels.len() });
        }
        for w in positions.windows(2) {
            if w[0] >= w[1] {
                return Err(Error::InvalidArgument("positions must be strictly increasing".into()));
            }
        }
        if let Some(&p) = positions.iter().find(|&&p| p >= n) {
            return Err(Error::QubitOutOfRange { index: p, n });
        }
        Ok(Self { n, positions, labels })
    }

    pub fn identity(n: usize) -> Self {
        Self { n, positions: Vec::new(), labels: Vec::new() }
    }

    pub fn single(n: usize, qubit: usize, p: Pauli) -> Result<Self> {
        Self::new(n, vec![qubit], vec![p])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn positions(&self) -> &[usize] {
        &self.positions
    }

    pub fn labels(&self) -> &[Pauli] {
        &self.labels
    }

    pub fn weight(&self) -> usize {
        self.positions.len()
    }

    pub fn is_identity(&self) -> bool {
        self.positions.is_empty()
    }

    /// `A_{j₀} ⊗ … ⊗ A_{j_{k-1}}` as a `2^k × 2^k` matrix.
    pub fn matrix(&self) -> CMatrix {
        self.labels
            .iter()
            .fold(CMatrix::identity(1, 1), |acc, p| acc.kronecker(&p.matrix()))
    }

    /// Applies the string to a `2ⁿ` amplitude vector (qubit 0 most significant).
    pub fn apply(&self, amps: &[C64]) -> Result<Vec<C64>> {
        let dim = 1usize << self.n;
        if amps.len() != dim {
            return Err(Error::DimensionMismatch { expected: dim, got: amps.len() });
        }
        let bits: Vec<(usize, Pauli)> = self
            .positions
            .iter()
            .map(|&q| 1usize << (self.n - 1 - q))
            .zip(self.labels.iter().copied())
            .collect();
        let mut out = vec![C64::new(0.0, 0.0); dim];
        for (x, a) in amps.iter().enumerate() {
            let mut y = x;
            let mut phase = C64::new(1.0, 0.0);
            for &(bit, p) in &bits {
                let (flip, ph) = p.action(x & bit != 0);
                if flip {
                    y ^= bit;
                }
                phase *= ph;
            }
            out[y] = a * phase;
        }
        Ok(out)
    }
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_identity() {
            return write!(f, "I");
        }
        let parts: Vec<String> =
            self.positions.iter().zip(&self.labels).map(|(q, p)| format!("A{}[{q}]", p.label())).collect();
        write!(f, "{}", parts.join(" "))
    }
}

/// `X_{i₀…i_{k-1}} ψ`: permute the chosen qubits to the front, apply `X ⊗ I`,
/// and permute back. The first tensor factor of `x` acts on `positions[0]`.
pub fn apply_error(x: &CMatrix, positions: &[usize], psi: &[C64]) -> Result<Vec<C64>> {
    if !psi.len().is_power_of_two() {
        return Err(Error::InvalidShape(format!("length {} is not a power of two", psi.len())));
    }
    let n = psi.len().trailing_zeros() as usize;
    let k = positions.len();
    if x.nrows() != 1 << k || x.ncols() != 1 << k {
        return Err(Error::InvalidShape(format!(
            "operator is {}×{}, expected {}×{}",
            x.nrows(),
            x.ncols(),
            1 << k,
            1 << k
        )));
    }
    let mut seen = vec![false; n];
    for &p in positions {
        if p >= n {
            return Err(Error::QubitOutOfRange { index: p, n });
        }
        if std::mem::replace(&mut seen[p], true) {
            return Err(Error::DuplicateQubit(p));
        }
    }
    let order: Vec<usize> = positions.iter().copied().chain((0..n).filter(|q| !seen[*q])).collect();
    let moved = permute_amplitudes(psi, n, &order)?;
    let rest = 1usize << (n - k);
    let m = CMatrix::from_row_slice(1 << k, rest, &moved);
    let applied = x * m;
    let flat: Vec<C64> = (0..applied.nrows()).flat_map(|r| (0..rest).map(move |c| (r, c))).map(|rc| applied[rc]).collect();
    unpermute_amplitudes(&flat, n, &order)
}

/// All Pauli strings of weight at most `k` on `n` qubits, the identity first,
/// then ordered by weight, positions and labels.
#[derive(Clone, Debug, PartialEq)]
pub struct ErrorSet {
    n: usize,
    k: usize,
    elements: Vec<PauliString>,
}

fn combinations(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, r: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == r {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, r, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if r <= n {
        rec(0, n, r, &mut Vec::with_capacity(r), &mut out);
    }
    out
}

pub(crate) fn subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    combinations(n, r)
}

impl ErrorSet {
    pub fn new(n: usize, k: usize) -> Self {
        let mut elements = vec![PauliString::identity(n)];
        for r in 1..=k.min(n) {
            for positions in combinations(n, r) {
                for code in 0..3usize.pow(r as u32) {
                    let mut labels = vec![Pauli::A1; r];
                    let mut c = code;
                    for slot in labels.iter_mut().rev() {
                        *slot = Pauli::ALL[c % 3];
                        c /= 3;
                    }
                    elements.push(PauliString { n, positions: positions.clone(), labels });
                }
            }
        }
        Self { n, k, elements }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn elements(&self) -> &[PauliString] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}
