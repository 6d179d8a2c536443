use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;
use subent::eos::{average_entanglement_mc, check_dimension_bound, eos_minimize, EosConfig};
use subent::fixtures;
use subent::maxent::{certify_isometry_criterion, certify_max_entangled, construct_max_entangled};
use subent::qecc::{
    build_orthogonal_code, check_bounds, is_k_totally_entangled, orthogonality_residual, verify_code, ErrorSet,
    Pauli,
};
use subent::shor::{
    build_shor_decomposition, check_containment, shor_code_model, shor_cut_survey, shor_error_correct,
    SingleQubitError, QUBITS,
};
use subent::tensor::{haar_random_ket, haar_random_subspace, BipartiteShape, Ket};

use crate::{CliError, CodeCommand, Command, MaxentCommand, RandomCommand, Report, ShorCommand, SubspaceFile};

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FixtureName {
    /// (|00⟩ + |11⟩)/√2 in C²⊗C².
    BellLine,
    /// span{(|00⟩ + |11⟩)/√2, (|01⟩ + |10⟩)/√2}.
    AbSpan,
    /// Antisymmetric subspace of C³⊗C³.
    Antisymmetric,
    /// Five-qubit code space.
    FiveQubit,
    /// Six-qubit state maximal across every 3:3 cut.
    SixQubit,
    /// Code space of Shor's nine-qubit code.
    ShorV0,
}

pub fn execute(cmd: Command) -> Result<Report, CliError> {
    match cmd {
        Command::EosMin { subspace, restarts, seed, tol, max_iters } => {
            let w = SubspaceFile::load(&subspace)?.to_bipartite()?;
            let cfg = EosConfig { restarts, max_iters, grad_tol: tol, seed, ..EosConfig::default() };
            let r = eos_minimize(&w, &cfg)?;
            let bound = check_dimension_bound(&w, r.value);
            Ok(Report::new(
                "eos-min",
                json!({ "subspace": subspace, "shape": w.shape(), "dim": w.dim(), "eos": cfg }),
                json!({ "eos": r, "dimension_bound": bound }),
            ))
        }
        Command::Maxent(m) => maxent(m),
        Command::Code(c) => code(c),
        Command::Shor(s) => shor(s),
        Command::Random(r) => random(r),
        Command::Fixture { name, output } => {
            let file = match name {
                FixtureName::BellLine => SubspaceFile::from_basis(&fixtures::bell_line()),
                FixtureName::AbSpan => SubspaceFile::from_basis(&fixtures::bell_pair_span()),
                FixtureName::Antisymmetric => SubspaceFile::from_basis(&fixtures::antisymmetric_3x3()),
                FixtureName::FiveQubit => SubspaceFile::from_qubits(&fixtures::five_qubit_code(), None),
                FixtureName::SixQubit => SubspaceFile::from_qubits(&fixtures::six_qubit_ame(), None),
                FixtureName::ShorV0 => {
                    SubspaceFile::from_qubits(&build_shor_decomposition().spaces.swap_remove(0), None)
                }
            };
            file.save(&output)?;
            Ok(Report::new(
                "fixture",
                json!({ "name": format!("{name:?}"), "output": output }),
                json!({ "vectors": file.vectors.len() }),
            ))
        }
    }
}

fn maxent(cmd: MaxentCommand) -> Result<Report, CliError> {
    match cmd {
        MaxentCommand::Construct { da, db, dim, output } => {
            let shape = BipartiteShape::new(da, db)?;
            // Construction needs da ≥ db; build the transpose and swap back otherwise.
            let swapped = da < db;
            let s = construct_max_entangled(if swapped { shape.swapped() } else { shape }, dim)?;
            let s = if swapped { s.swapped() } else { s };
            let w = s.basis();
            if let Some(path) = &output {
                SubspaceFile::from_basis(&w).save(path)?;
            }
            let gram = certify_max_entangled(&w);
            let iso = certify_isometry_criterion(&w);
            let pass = gram.is_max_entangled && iso.is_max_entangled;
            Ok(Report::new(
                "maxent construct",
                json!({ "da": da, "db": db, "dim": dim, "output": output }),
                json!({ "swapped": swapped, "isometry_residual": s.isometry_residual(), "gram": gram, "isometry": iso }),
            )
            .with_verdict(pass))
        }
        MaxentCommand::Verify { subspace } => {
            let w = SubspaceFile::load(&subspace)?.to_bipartite()?;
            let gram = certify_max_entangled(&w);
            let iso = certify_isometry_criterion(&w);
            let pass = gram.is_max_entangled && iso.is_max_entangled;
            Ok(Report::new(
                "maxent verify",
                json!({ "subspace": subspace, "shape": w.shape(), "dim": w.dim(), "tolerance": subent::maxent::MAXENT_TOL }),
                json!({ "gram": gram, "isometry": iso, "criteria_agree": gram.is_max_entangled == iso.is_max_entangled }),
            )
            .with_verdict(pass))
        }
    }
}

fn code(cmd: CodeCommand) -> Result<Report, CliError> {
    match cmd {
        CodeCommand::Bounds { n, l, k } => {
            let b = check_bounds(n, l, k)?;
            let pass = b.hamming_ok && b.singleton_ok;
            Ok(Report::new("code bounds", json!({ "n": n, "l": l, "k": k }), b).with_verdict(pass))
        }
        CodeCommand::TotallyEntangled { subspace, k } => {
            let v = SubspaceFile::load(&subspace)?.to_qubits()?;
            let r = is_k_totally_entangled(&v, k)?;
            let pass = r.verdict;
            Ok(Report::new(
                "code totally-entangled",
                json!({ "subspace": subspace, "n": v.n(), "dim": v.dim(), "k": k }),
                r,
            )
            .with_verdict(pass))
        }
        CodeCommand::BuildVerify { subspace, k, trials, seed } => {
            let v = SubspaceFile::load(&subspace)?.to_qubits()?;
            let model = build_orthogonal_code(&v, k)?;
            let errors = ErrorSet::new(v.n(), k);
            let ortho = orthogonality_residual(&v, errors.elements())?;
            let report = verify_code(&model, errors.elements(), trials, seed)?;
            let names: Vec<String> = errors.elements().iter().map(|e| e.to_string()).collect();
            let pass = report.passed();
            Ok(Report::new(
                "code build-verify",
                json!({ "subspace": subspace, "n": v.n(), "k": k, "trials": trials, "seed": seed }),
                json!({
                    "l": model.l(),
                    "syndrome_spaces": model.spaces().len(),
                    "total_dim": model.total_dim(),
                    "orthogonality_residual": ortho.residual,
                    "errors": names,
                    "eigenvalues": model.eigenvalues(),
                    "mu": model.mu(),
                    "verification": report,
                }),
            )
            .with_verdict(pass))
        }
    }
}

#[derive(Serialize)]
struct ContainmentRow {
    qubit: usize,
    pauli: u8,
    targets: [usize; 4],
    residual: f64,
}

fn shor(cmd: ShorCommand) -> Result<Report, CliError> {
    match cmd {
        ShorCommand::Survey { restarts, seed } => {
            let cfg = EosConfig { restarts, ..EosConfig::with_seed(seed) };
            let s = shor_cut_survey(&cfg)?;
            let pass = s.pattern_ok;
            Ok(Report::new("shor survey", json!({ "eos": cfg }), s).with_verdict(pass))
        }
        ShorCommand::Demo { pauli, qubit, seed } => {
            let model = shor_code_model();
            let c = haar_random_ket(2, seed);
            let codeword = Ket::new(model.code_space().combine(c.amplitudes()))?;
            let err = SingleQubitError::pauli(qubit as usize, Pauli::from_label(pauli)?)?;
            let r = shor_error_correct(&model, &err, &codeword, seed)?;
            let pass = r.fidelity.is_some_and(|f| f > 1.0 - 1e-10);
            Ok(Report::new(
                "shor demo",
                json!({ "pauli": pauli, "qubit": qubit, "seed": seed }),
                json!({ "codeword_coefficients": c.amplitudes(), "outcome": r }),
            )
            .with_verdict(pass))
        }
        ShorCommand::Containment => {
            let mut rows = Vec::new();
            for q in 0..QUBITS {
                let r = check_containment(q)?;
                for p in Pauli::ALL {
                    let residual = r
                        .entries
                        .iter()
                        .filter(|e| e.pauli == p.label())
                        .map(|e| e.residual)
                        .fold(0.0, f64::max);
                    rows.push(ContainmentRow { qubit: q, pauli: p.label(), targets: r.targets, residual });
                }
            }
            let max_residual = rows.iter().map(|r| r.residual).fold(0.0, f64::max);
            Ok(Report::new(
                "shor containment",
                json!({ "tolerance": 1e-12 }),
                json!({ "rows": rows, "max_residual": max_residual }),
            )
            .with_verdict(max_residual < 1e-12))
        }
    }
}

/// Default split of `dim` into factors: square if possible, else `(dim, 1)`.
fn default_split(dim: usize) -> (usize, usize) {
    let r = (dim as f64).sqrt().round() as usize;
    if r * r == dim {
        (r, r)
    } else {
        (dim, 1)
    }
}

fn random(cmd: RandomCommand) -> Result<Report, CliError> {
    match cmd {
        RandomCommand::AvgEnt { da, db, samples, seed } => {
            let shape = BipartiteShape::new(da, db)?;
            let est = average_entanglement_mc(shape, samples, seed)?;
            Ok(Report::new(
                "random avg-ent",
                json!({ "da": da, "db": db, "samples": samples, "seed": seed }),
                est,
            ))
        }
        RandomCommand::Subspace { dim, d, da, db, seed, output } => {
            let (a, b) = match (da, db) {
                (Some(a), Some(b)) => (a, b),
                (Some(a), None) if a > 0 && dim % a == 0 => (a, dim / a),
                (None, Some(b)) if b > 0 && dim % b == 0 => (dim / b, b),
                (None, None) => default_split(dim),
                _ => return Err(CliError::Parse(format!("factors do not divide dim = {dim}"))),
            };
            if a * b != dim {
                return Err(CliError::Parse(format!("{a} × {b} ≠ {dim}")));
            }
            let w = haar_random_subspace(BipartiteShape::new(a, b)?, d, seed)?;
            SubspaceFile::from_basis(&w).save(&output)?;
            Ok(Report::new(
                "random subspace",
                json!({ "dim": dim, "d": d, "da": a, "db": b, "seed": seed, "output": output }),
                json!({ "vectors": w.dim() }),
            ))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::default_split;

    #[test]
    fn split_prefers_square() {
        assert_eq!(default_split(9), (3, 3));
        assert_eq!(default_split(16), (4, 4));
        assert_eq!(default_split(6), (6, 1));
    }
}
