//! Command-line driver.

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use crn_realize_core::optimizer::SolverOptions;
use crn_realize_core::{
    canonical_realization, deficiency, dynamically_equivalent, find_constr_dense_realization,
    find_cross_component_edges, find_sparse_realization, find_weakly_reversible_realization,
    is_weakly_reversible, strong_components, validate_kirchhoff, CrnError, EdgeSet,
    KirchhoffMatrix, ReactionNetwork, RealizationError, RealizationOptions, RealizationProblem,
    RealizationStatus,
};
use serde_json::{json, Value};
use thiserror::Error;

use crate::document::{DocumentError, NetworkDocument};
use crate::dot::export_dot;
use crate::ode::{parse_ode, parse_ode_exact, OdeError};

pub const EXIT_SUCCESS: i32 = 0;
pub const EXIT_NOT_EQUIVALENT: i32 = 1;
pub const EXIT_NONE_EXISTS: i32 = 2;
pub const EXIT_INVALID: i32 = 3;
pub const EXIT_SOLVER_LIMIT: i32 = 4;

/// Equivalence tolerance of `check-eq` and of the output check.
pub const DEFAULT_EQUIVALENCE_TOL: f64 = 1e-6;
/// Column-sum tolerance for written Kirchhoff matrices.
const KIRCHHOFF_TOL: f64 = 1e-9;

#[derive(Debug, Parser)]
#[command(name = "crn-realize", version, about = "Dense, sparse and weakly reversible realizations of mass-action networks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Rates below this count as absent.
    #[arg(long, global = true, default_value_t = 0.1)]
    pub eps: f64,
    /// Upper bound on each rate; default 1000 * max(1, max|M|).
    #[arg(long, global = true)]
    pub ubound: Option<f64>,
    /// Equivalence tolerance for check-eq and the solver feasibility tolerance.
    #[arg(long, global = true)]
    pub tol: Option<f64>,
    /// Write the resulting document here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Also write the reaction graph in DOT format.
    #[arg(long, global = true)]
    pub dot: Option<PathBuf>,
    /// Print one line per iteration of the weakly reversible search.
    #[arg(long, global = true)]
    pub trace: bool,
    /// Exact rational arithmetic where supported.
    #[arg(long, global = true)]
    pub exact: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Canonical realization of a polynomial ODE file.
    Canonical { ode: PathBuf },
    /// Dense realization.
    Dense { network: PathBuf },
    /// Sparse realization.
    Sparse { network: PathBuf },
    /// Densest weakly reversible realization.
    Wr { network: PathBuf },
    /// Strong components and cross-component edges.
    Scc { network: PathBuf },
    /// Whether two networks are dynamically equivalent.
    CheckEq { first: PathBuf, second: PathBuf },
    /// Deficiency of a network.
    Deficiency { network: PathBuf },
}

#[derive(Debug, Error)]
pub enum AppError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Document { path: PathBuf, source: DocumentError },
    #[error("{path}: {source}")]
    Ode { path: PathBuf, source: OdeError },
    #[error(transparent)]
    Network(#[from] CrnError),
    #[error(transparent)]
    Realization(#[from] RealizationError),
    #[error("computed realization failed its output check: {0}")]
    OutputCheck(String),
}

impl AppError {
    pub fn exit_code(&self) -> i32 {
        match self {
            AppError::Realization(RealizationError::SolverLimit { .. }) | AppError::OutputCheck(_) => {
                EXIT_SOLVER_LIMIT
            }
            _ => EXIT_INVALID,
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code. Diagnostics go to standard error.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INVALID } else { EXIT_SUCCESS };
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}

pub fn run(cli: &Cli) -> Result<i32, AppError> {
    match &cli.command {
        Command::Canonical { ode } => canonical(cli, ode),
        Command::Dense { network } => support_command(cli, network, true),
        Command::Sparse { network } => support_command(cli, network, false),
        Command::Wr { network } => weakly_reversible(cli, network),
        Command::Scc { network } => scc(cli, network),
        Command::CheckEq { first, second } => check_eq(cli, first, second),
        Command::Deficiency { network } => {
            let net = load_network(network)?;
            emit_text(cli, &format!("{}\n", deficiency(&net)))?;
            Ok(EXIT_SUCCESS)
        }
    }
}

fn read(path: &Path) -> Result<String, AppError> {
    fs::read_to_string(path).map_err(|source| AppError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn write(path: &Path, text: &str) -> Result<(), AppError> {
    fs::write(path, text).map_err(|source| AppError::Io {
        path: path.to_path_buf(),
        source,
    })
}

pub fn load_network(path: &Path) -> Result<ReactionNetwork, AppError> {
    let text = read(path)?;
    NetworkDocument::parse(&text)
        .and_then(|doc| doc.to_network())
        .map_err(|source| AppError::Document {
            path: path.to_path_buf(),
            source,
        })
}

fn emit_text(cli: &Cli, text: &str) -> Result<(), AppError> {
    match &cli.out {
        Some(path) => write(path, text),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|source| AppError::Io {
                    path: PathBuf::from("<stdout>"),
                    source,
                })
        }
    }
}

fn emit_network(cli: &Cli, net: &ReactionNetwork, doc: &NetworkDocument) -> Result<(), AppError> {
    if let Some(path) = &cli.dot {
        write(path, &export_dot(net, true))?;
    }
    emit_text(cli, &doc.to_json())
}

fn realization_options(cli: &Cli) -> RealizationOptions {
    let mut solver = SolverOptions::default();
    if let Some(tol) = cli.tol {
        solver.feasibility_tol = tol;
    }
    RealizationOptions {
        epsilon: cli.eps,
        upper_bound: cli.ubound,
        solver,
        ..RealizationOptions::default()
    }
}

fn edge_list(edges: &EdgeSet) -> Value {
    edges
        .iter()
        .map(|e| json!([e.source + 1, e.target + 1]))
        .collect()
}

/// Refuses to report a matrix that is not Kirchhoff or not equivalent.
fn check_output(input: &ReactionNetwork, a: &KirchhoffMatrix) -> Result<ReactionNetwork, AppError> {
    let report = validate_kirchhoff(a.matrix(), KIRCHHOFF_TOL)?;
    if !report.is_valid() {
        return Err(AppError::OutputCheck(report.to_string()));
    }
    let out = input.with_kirchhoff(a.clone())?;
    if !a.is_zero() && !dynamically_equivalent(input, &out, DEFAULT_EQUIVALENCE_TOL)? {
        return Err(AppError::OutputCheck("not dynamically equivalent to the input".into()));
    }
    Ok(out)
}

fn canonical(cli: &Cli, path: &Path) -> Result<i32, AppError> {
    let text = read(path)?;
    let ode_error = |source| AppError::Ode {
        path: path.to_path_buf(),
        source,
    };
    let (net, exact_rates) = if cli.exact {
        let f = parse_ode_exact(&text).map_err(ode_error)?;
        let exact = canonical_realization(&f)?;
        let rates: Vec<Value> = exact
            .kirchhoff()
            .reactions()
            .iter()
            .map(|(_, _, r)| Value::String(r.to_string()))
            .collect();
        (exact.to_f64(), Some(rates))
    } else {
        let f = parse_ode(&text).map_err(ode_error)?;
        (canonical_realization(&f)?, None)
    };
    let mut doc = NetworkDocument::from_network(&net);
    doc.metadata.insert("command".into(), json!("canonical"));
    if let Some(rates) = exact_rates {
        doc.metadata.insert("exact_rates".into(), Value::Array(rates));
    }
    emit_network(cli, &net, &doc)?;
    Ok(EXIT_SUCCESS)
}

fn support_command(cli: &Cli, path: &Path, dense: bool) -> Result<i32, AppError> {
    let net = load_network(path)?;
    let opts = realization_options(cli);
    let none = EdgeSet::new();
    let a = if dense {
        find_constr_dense_realization(&net, &none, &opts)?
    } else {
        find_sparse_realization(&net, &none, &opts)?
    };
    let out = check_output(&net, &a)?;
    let problem = RealizationProblem::from_network(&net, none, &opts)?;
    let suspects: EdgeSet = problem.suspect_entries(&a).into_iter().collect();
    if !suspects.is_empty() {
        eprintln!("warning: entries within 1% of their bound: {suspects}");
    }
    let mut doc = NetworkDocument::from_network(&out);
    doc.metadata.insert("command".into(), json!(if dense { "dense" } else { "sparse" }));
    doc.metadata.insert("epsilon".into(), json!(opts.epsilon));
    doc.metadata.insert("reaction_count".into(), json!(a.reaction_count()));
    doc.metadata.insert("bound_suspects".into(), edge_list(&suspects));
    emit_network(cli, &out, &doc)?;
    Ok(EXIT_SUCCESS)
}

fn weakly_reversible(cli: &Cli, path: &Path) -> Result<i32, AppError> {
    let net = load_network(path)?;
    let opts = realization_options(cli);
    let outcome = match find_weakly_reversible_realization(&net, &opts) {
        Ok(o) => o,
        Err(e) => {
            if cli.trace {
                print_trace(e.trace());
            }
            return Err(e.into());
        }
    };
    if cli.trace {
        print_trace(&outcome.trace);
    }
    let out = check_output(&net, &outcome.kirchhoff)?;
    let mut doc = NetworkDocument::from_network(&out);
    let trace: Vec<Value> = outcome
        .trace
        .iter()
        .map(|r| {
            json!({
                "excluded": r.excluded.len(),
                "removable": r.removable,
                "dense_support": edge_list(&r.dense_support),
                "cut_set": edge_list(&r.cut_set),
            })
        })
        .collect();
    doc.metadata.insert("command".into(), json!("wr"));
    doc.metadata.insert("status".into(), json!(outcome.status.to_string()));
    doc.metadata.insert("iterations".into(), json!(outcome.iterations));
    doc.metadata.insert("epsilon".into(), json!(opts.epsilon));
    doc.metadata
        .insert("final_constraints".into(), edge_list(&outcome.final_constraints));
    doc.metadata.insert("trace".into(), Value::Array(trace));
    emit_network(cli, &out, &doc)?;
    match outcome.status {
        RealizationStatus::Found => Ok(EXIT_SUCCESS),
        RealizationStatus::NoneExists => {
            eprintln!("no weakly reversible realization exists over this complex set");
            Ok(EXIT_NONE_EXISTS)
        }
    }
}

fn print_trace(trace: &[crn_realize_core::IterationRecord]) {
    for (k, r) in trace.iter().enumerate() {
        let removable = match r.removable {
            None => "skipped",
            Some(true) => "yes",
            Some(false) => "no",
        };
        eprintln!(
            "iteration {}: excluded {}, removable {}, dense support {}, cut set {}",
            k + 1,
            r.excluded.len(),
            removable,
            r.dense_support.len(),
            r.cut_set.len()
        );
    }
}

fn scc(cli: &Cli, path: &Path) -> Result<i32, AppError> {
    let net = load_network(path)?;
    let graph = net.graph();
    let partition = strong_components(&graph);
    let components: Vec<Vec<usize>> = partition
        .components
        .iter()
        .map(|c| c.iter().map(|v| v + 1).collect())
        .collect();
    let report = json!({
        "components": components,
        "cut_set": edge_list(&find_cross_component_edges(net.kirchhoff())),
        "weakly_reversible": is_weakly_reversible(net.kirchhoff()),
    });
    let mut text = serde_json::to_string_pretty(&report).expect("json value");
    text.push('\n');
    emit_text(cli, &text)?;
    if let Some(dot) = &cli.dot {
        write(dot, &export_dot(&net, true))?;
    }
    Ok(EXIT_SUCCESS)
}

fn check_eq(cli: &Cli, first: &Path, second: &Path) -> Result<i32, AppError> {
    let a = load_network(first)?;
    let b = load_network(second)?;
    let tol = cli.tol.unwrap_or(DEFAULT_EQUIVALENCE_TOL);
    if dynamically_equivalent(&a, &b, tol)? {
        emit_text(cli, "equivalent\n")?;
        Ok(EXIT_SUCCESS)
    } else {
        emit_text(cli, "not equivalent\n")?;
        Ok(EXIT_NOT_EQUIVALENT)
    }
}
