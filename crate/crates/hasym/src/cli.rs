//! Command-line front end over the analysis pipelines.
//!
//! Four subcommands: `analyze` (detect degeneracies in a matrix file and
//! verify the operators built from them), `scan` (grid-scan a built-in
//! model, optionally refining candidates to degeneracy points), `irrep`
//! (decide whether a pair of 2x2 unitaries forces a two-level crossing),
//! and `certify` (check Kramers pairing against a supplied operator).
//!
//! Reports go to `--out` as JSON, with a short human summary on stdout;
//! without `--out` the JSON itself is the stdout output. Exit codes:
//! 0 success/forced, 1 input error, 2 no degeneracy found, 3 not forced,
//! 4 symmetry precondition or residual failure.

use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::Serialize;

use crate::antiunitary::{
    certify_with_tolerance, construct_nfold_operators, detect_degenerate_subspaces,
    AntiunitaryOperator,
};
use crate::error::{Error, Result};
use crate::irrep::IrrepPair;
use crate::linalg::eigh;
use crate::report::{
    read_irrep_file, read_matrix_file, to_json_string, write_bytes_atomic, write_json_atomic,
    AnalysisReport, CertifyReport, ClusterReport, IrrepReport, MatrixData, OperatorReport,
    RefineFailure, ScanReport, TwoLevelReport, FORMAT_VERSION,
};
use crate::scanner::models::model_by_name;
use crate::scanner::{dedup_points, grid_scan, refine, RefineOptions, DEDUP_TOL};
use crate::twolevel::{canonical_upsilon_check, pauli_decompose};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT_ERROR: i32 = 1;
pub const EXIT_NO_DEGENERACY: i32 = 2;
pub const EXIT_NOT_FORCED: i32 = 3;
pub const EXIT_PRECONDITION: i32 = 4;

#[derive(Debug, Parser)]
#[command(
    name = "hasym",
    version,
    about = "Construct and verify the antiunitary symmetries behind energy degeneracies"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Detect degeneracies in a Hermitian matrix file and verify the
    /// antiunitary operator constructed from each degenerate pair
    Analyze {
        /// Matrix document: {"format":1,"dim":n,"entries":[[re,im],...]}
        path: PathBuf,
        /// Detection and verification tolerance (relative, printed in the report)
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Grid-scan a built-in model for gap minima; optionally refine each
    /// candidate to a degeneracy point with verified symmetry residuals
    Scan {
        /// Built-in model name (linear2, honeycomb, piflux)
        model: String,
        /// Nodes per axis: one value for all axes, or a comma-separated list
        #[arg(long, value_delimiter = ',')]
        resolution: Vec<usize>,
        /// Refine each grid candidate by gap minimization
        #[arg(long)]
        refine: bool,
        /// Seed for the refinement restarts
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Gap threshold for grid candidates
        #[arg(long, default_value_t = 0.5)]
        threshold: f64,
        /// Gap tolerance for refined points (printed in the report)
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Write the whole gap field as CSV
        #[arg(long)]
        csv: Option<PathBuf>,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Decide whether two 2x2 unitary representation matrices force a
    /// two-level degeneracy
    Irrep {
        /// Document with both matrices: {"format":1,"A":{...},"B":{...}}
        path: PathBuf,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Certify Kramers pairing of a Hamiltonian against a supplied
    /// antiunitary operator (unitary part with square -1)
    Certify {
        /// Hamiltonian matrix document
        path: PathBuf,
        /// Operator matrix document (the unitary part)
        #[arg(long)]
        operator: PathBuf,
        /// Precondition and pairing tolerance (printed in the report)
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        /// Write the JSON report here instead of stdout
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Execute a parsed invocation and return its exit code. Errors bubble up
/// for the binary to print and map to exit 1.
pub fn run(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Analyze { path, tol, out } => cmd_analyze(&path, tol, out.as_deref()),
        Command::Scan {
            model,
            resolution,
            refine,
            seed,
            threshold,
            tol,
            csv,
            out,
        } => cmd_scan(
            &model,
            &resolution,
            refine,
            seed,
            threshold,
            tol,
            csv.as_deref(),
            out.as_deref(),
        ),
        Command::Irrep { path, out } => cmd_irrep(&path, out.as_deref()),
        Command::Certify {
            path,
            operator,
            tol,
            out,
        } => cmd_certify(&path, &operator, tol, out.as_deref()),
    }
}

/// Write the report to `out` plus a summary on stdout, or print the JSON
/// itself when no `out` is given.
fn emit<T: Serialize>(report: &T, out: Option<&Path>, summary: &str) -> Result<()> {
    match out {
        Some(path) => {
            write_json_atomic(path, report)?;
            println!("{summary}");
            println!("report written to {}", path.display());
        }
        None => print!("{}", to_json_string(report)?),
    }
    Ok(())
}

fn cmd_analyze(path: &Path, tol: f64, out: Option<&Path>) -> Result<i32> {
    let (file, input_digest) = read_matrix_file(path)?;
    let h = file.to_hermitian()?;
    let sys = eigh(&h)?;
    let subspaces = detect_degenerate_subspaces(&h, tol)?;

    let mut clusters = Vec::with_capacity(subspaces.len());
    let mut within_tolerance = true;
    for sub in &subspaces {
        let mut operators = Vec::new();
        for op in construct_nfold_operators(sub)? {
            let rep = op.verify_has(&h)?;
            within_tolerance &=
                rep.square_residual <= tol && rep.commutator_residual <= tol;
            operators.push(OperatorReport {
                unitary_part: MatrixData::from_complex(op.unitary_part()),
                square_residual: rep.square_residual,
                commutator_residual: rep.commutator_residual,
            });
        }
        clusters.push(ClusterReport {
            energy: sub.energy(),
            dimension: sub.multiplicity(),
            residual: sub.residual(),
            operators,
        });
    }

    let two_level = if h.dim() == 2 {
        let pauli = pauli_decompose(&h)?;
        Some(TwoLevelReport {
            pauli,
            constraint_residual: pauli.constraint_residual(),
            canonical_residual: canonical_upsilon_check(&h)?.residual,
        })
    } else {
        None
    };

    let degenerate = !clusters.is_empty();
    let report = AnalysisReport {
        format: FORMAT_VERSION,
        command: "analyze",
        input_digest,
        tolerance: tol,
        dim: h.dim(),
        eigenvalues: sys.values().to_vec(),
        degenerate,
        within_tolerance,
        clusters,
        two_level,
    };

    let summary = if degenerate {
        format!(
            "analyze: dim {}, {} degenerate cluster(s), residuals within {:.1e}: {}",
            report.dim,
            report.clusters.len(),
            tol,
            within_tolerance
        )
    } else {
        format!("analyze: dim {}, no degeneracy at tolerance {:.1e}", report.dim, tol)
    };
    emit(&report, out, &summary)?;

    Ok(if !degenerate {
        EXIT_NO_DEGENERACY
    } else if within_tolerance {
        EXIT_OK
    } else {
        EXIT_PRECONDITION
    })
}

#[allow(clippy::too_many_arguments)]
fn cmd_scan(
    model_name: &str,
    resolution: &[usize],
    do_refine: bool,
    seed: u64,
    threshold: f64,
    tol: f64,
    csv: Option<&Path>,
    out: Option<&Path>,
) -> Result<i32> {
    let model = model_by_name(model_name)?;
    if resolution.is_empty() {
        return Err(Error::InvalidInput(
            "--resolution requires at least one value".into(),
        ));
    }
    let resolution = if resolution.len() == 1 {
        vec![resolution[0]; model.param_dim()]
    } else {
        resolution.to_vec()
    };

    let field = grid_scan(&model, &resolution)?;
    let candidates = field.local_minima(threshold);

    let mut points = Vec::new();
    let mut refine_failures = Vec::new();
    if do_refine {
        let options = RefineOptions {
            gap_tol: tol,
            seed,
            ..Default::default()
        };
        for c in &candidates {
            match refine(&model, &c.alpha, &options) {
                Ok(p) => points.push(p),
                Err(Error::RefineFailed {
                    best_alpha,
                    best_gap,
                    evaluations,
                }) => refine_failures.push(RefineFailure {
                    start: c.alpha.clone(),
                    best_alpha,
                    best_gap,
                    evaluations,
                }),
                Err(e) => return Err(e),
            }
        }
        points = dedup_points(&model, points, DEDUP_TOL);
    }

    if let Some(csv_path) = csv {
        let mut buf = Vec::new();
        field.to_csv(&mut buf)?;
        write_bytes_atomic(csv_path, &buf)?;
    }

    let found = if do_refine {
        !points.is_empty()
    } else {
        !candidates.is_empty()
    };
    let report = ScanReport {
        format: FORMAT_VERSION,
        command: "scan",
        model: model.name().to_string(),
        resolution,
        threshold,
        tolerance: tol,
        seed,
        node_count: field.node_count(),
        failed_nodes: field.failures().len(),
        minimum: field.min_node(),
        candidates,
        refined: do_refine,
        points,
        refine_failures,
    };

    let summary = if do_refine {
        format!(
            "scan {}: {} candidate(s), {} refined point(s), {} stalled",
            report.model,
            report.candidates.len(),
            report.points.len(),
            report.refine_failures.len()
        )
    } else {
        format!(
            "scan {}: {} candidate(s) at threshold {:.1e}",
            report.model,
            report.candidates.len(),
            threshold
        )
    };
    emit(&report, out, &summary)?;

    Ok(if found { EXIT_OK } else { EXIT_NO_DEGENERACY })
}

fn cmd_irrep(path: &Path, out: Option<&Path>) -> Result<i32> {
    let (file, input_digest) = read_irrep_file(path)?;
    let a = file.a.to_complex()?;
    let b = file.b.to_complex()?;
    let pair = IrrepPair::from_unitary(&a, &b)?;
    let constraints = pair.constraint_system()?;
    let decision = pair.forces_degeneracy()?;

    let report = IrrepReport {
        format: FORMAT_VERSION,
        command: "irrep",
        input_digest,
        a_coefficients: pair.a(),
        b_coefficients: pair.b(),
        lambda: decision.lambda,
        lambda_max_abs: decision.lambda.max_abs(),
        rank: decision.rank,
        forced: decision.forced,
        constraints,
    };

    let summary = format!(
        "irrep: rank {}, degeneracy forced: {}",
        report.rank, report.forced
    );
    emit(&report, out, &summary)?;

    Ok(if decision.forced { EXIT_OK } else { EXIT_NOT_FORCED })
}

fn cmd_certify(path: &Path, operator: &Path, tol: f64, out: Option<&Path>) -> Result<i32> {
    let (hf, input_digest) = read_matrix_file(path)?;
    let h = hf.to_hermitian()?;
    let (mf, operator_digest) = read_matrix_file(operator)?;
    let m = mf.to_complex()?;
    let op = AntiunitaryOperator::full(m.into_inner())?;
    let symmetry = op.verify_has(&h)?;

    let (certified, pairs, code) = match certify_with_tolerance(&op, &h, tol) {
        Ok(pairs) => (true, pairs, EXIT_OK),
        Err(Error::SymmetryPrecondition { .. }) => (false, Vec::new(), EXIT_PRECONDITION),
        Err(e) => return Err(e),
    };

    let report = CertifyReport {
        format: FORMAT_VERSION,
        command: "certify",
        input_digest,
        operator_digest,
        tolerance: tol,
        dim: h.dim(),
        symmetry,
        certified,
        pairs,
    };

    let summary = if certified {
        format!(
            "certify: dim {}, all {} eigenvectors paired within {:.1e}",
            report.dim,
            report.pairs.len(),
            tol
        )
    } else {
        format!(
            "certify: precondition failed (square residual {:.3e}, commutator residual {:.3e})",
            symmetry.square_residual, symmetry.commutator_residual
        )
    };
    emit(&report, out, &summary)?;

    Ok(code)
}
