//! Subspace files: a JSON header (`dims` or `n` with optional `b_indices`)
//! plus basis vectors as lists of `[re, im]` pairs.

use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use subent::tensor::{gram_residual, gram_schmidt, BipartiteShape, Ket, QubitCut, QubitSubspace, SubspaceBasis, ORTHO_TOL};
use subent::C64;

use crate::CliError;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SubspaceFile {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dims: Option<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub b_indices: Option<Vec<usize>>,
    #[serde(default)]
    pub orthonormalize: bool,
    pub vectors: Vec<Vec<[f64; 2]>>,
}

fn encode(v: &Ket) -> Vec<[f64; 2]> {
    v.amplitudes().iter().map(|z| [z.re, z.im]).collect()
}

impl SubspaceFile {
    pub fn from_basis(w: &SubspaceBasis) -> Self {
        let s = w.shape();
        Self {
            dims: Some([s.da, s.db]),
            n: None,
            b_indices: None,
            orthonormalize: false,
            vectors: w.vectors().iter().map(encode).collect(),
        }
    }

    pub fn from_qubits(w: &QubitSubspace, b_indices: Option<Vec<usize>>) -> Self {
        Self {
            dims: None,
            n: Some(w.n()),
            b_indices,
            orthonormalize: false,
            vectors: w.vectors().iter().map(encode).collect(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::Parse(e.to_string()))
    }

    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = fs::read_to_string(path).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))?;
        Self::parse(&text).map_err(|e| CliError::Parse(format!("{}: {e}", path.display())))
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("subspace files serialize");
        s.push('\n');
        s
    }

    pub fn save(&self, path: &Path) -> Result<(), CliError> {
        fs::write(path, self.to_json()).map_err(|e| CliError::Io(format!("{}: {e}", path.display())))
    }

    /// Validated kets of length `dim`, orthonormalized if the header asks for it.
    fn kets(&self, dim: usize) -> Result<Vec<Ket>, CliError> {
        if self.vectors.is_empty() {
            return Err(CliError::Parse("no vectors".into()));
        }
        let raw: Vec<Vec<C64>> =
            self.vectors.iter().map(|v| v.iter().map(|&[re, im]| C64::new(re, im)).collect()).collect();
        for (i, v) in raw.iter().enumerate() {
            if v.len() != dim {
                return Err(CliError::Parse(format!("vector {i} has {} amplitudes, expected {dim}", v.len())));
            }
        }
        if self.orthonormalize {
            return gram_schmidt(&raw).map_err(|e| CliError::Parse(e.to_string()));
        }
        let kets = raw
            .into_iter()
            .enumerate()
            .map(|(i, v)| Ket::new(v).map_err(|e| CliError::Parse(format!("vector {i}: {e}"))))
            .collect::<Result<Vec<_>, _>>()?;
        let residual = gram_residual(&kets);
        if residual > ORTHO_TOL {
            return Err(CliError::Parse(format!(
                "basis is not orthonormal (Gram residual {residual:e}); set \"orthonormalize\": true to fix"
            )));
        }
        Ok(kets)
    }

    /// Bipartite view: `dims` directly, or the qubit cut given by `n` and `b_indices`.
    pub fn to_bipartite(&self) -> Result<SubspaceBasis, CliError> {
        let parse = |e: subent::Error| CliError::Parse(e.to_string());
        match (self.dims, self.n, &self.b_indices) {
            (Some([da, db]), None, None) => {
                let shape = BipartiteShape::new(da, db).map_err(parse)?;
                SubspaceBasis::new(self.kets(shape.dim())?, shape).map_err(parse)
            }
            (None, Some(n), Some(b)) => {
                let cut = QubitCut::new(n, b).map_err(parse)?;
                self.to_qubits()?.under_cut(&cut).map_err(parse)
            }
            (None, Some(_), None) => Err(CliError::Parse("qubit file needs \"b_indices\" for a bipartite view".into())),
            _ => Err(CliError::Parse("header must give either \"dims\" or \"n\" (with optional \"b_indices\")".into())),
        }
    }

    pub fn to_qubits(&self) -> Result<QubitSubspace, CliError> {
        match (self.dims, self.n) {
            (None, Some(n)) if (1..=20).contains(&n) => {
                QubitSubspace::new(n, self.kets(1 << n)?).map_err(|e| CliError::Parse(e.to_string()))
            }
            (None, Some(n)) => Err(CliError::Parse(format!("n = {n} outside 1..=20"))),
            _ => Err(CliError::Parse("this command needs a qubit file with \"n\"".into())),
        }
    }
}
