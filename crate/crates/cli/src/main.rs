//! `klyshko` command-line front end.
//!
//! Exit codes: 0 success, 1 a property check failed, 2 usage or input error.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

use config::{Format, Label, RunConfig, SignArg, Which};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] klyshko::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug)]
#[command(name = "klyshko", version, about = "Bell-Klyshko inequalities, GHZ states and entanglement depth")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Default)]
struct Common {
    /// Number of qubits.
    #[arg(long, global = true)]
    n: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[arg(long, global = true)]
    restarts: Option<usize>,
    /// Optimizer stopping tolerance.
    #[arg(long, global = true)]
    tol: Option<f64>,
    /// Shots per correlator term.
    #[arg(long, global = true)]
    shots: Option<usize>,
    /// State file (JSON).
    #[arg(long, global = true)]
    state: Option<PathBuf>,
    /// Settings file (JSON).
    #[arg(long, global = true)]
    settings: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum)]
    format: Option<Format>,
    /// `key = value` file; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Largest Bell-operator eigenvalue over measurement settings.
    Bellmax,
    /// Entanglement depth from a Bell value or a simulated measurement.
    Certify {
        /// Measured Bell value.
        #[arg(long = "e", visible_alias = "E", allow_negative_numbers = true)]
        e: Option<f64>,
        /// Estimate the value by sampling `--state` under `--settings`
        /// (GHZ-optimal settings when omitted).
        #[arg(long)]
        estimate: bool,
        /// Certification margin; 1e-9 for exact values, 4 standard errors for estimates.
        #[arg(long, allow_negative_numbers = true)]
        epsilon: Option<f64>,
    },
    /// Maximal-entanglement criteria for a state file.
    Criteria {
        #[arg(long, value_enum)]
        which: Option<Which>,
        /// Measured qubits for `distribute`.
        #[arg(long)]
        k: Option<usize>,
        /// Rounds for `distribute`.
        #[arg(long)]
        trials: Option<usize>,
        /// Measurement basis for `mutinfo`.
        #[arg(long, value_enum)]
        basis: Option<Label>,
    },
    /// Exact symmetric-basis coefficient tables.
    Basis {
        #[arg(long, value_enum)]
        from: Option<Label>,
        #[arg(long, value_enum)]
        to: Option<Label>,
        /// Transform `|0..0> ± |1..1>` (the default).
        #[arg(long, value_enum)]
        ghz: Option<SignArg>,
        /// Transform the Dicke ket `|j,n>` instead.
        #[arg(long)]
        dicke: Option<usize>,
    },
    /// The 2^n orthonormal GHZ-type states with their Gram check.
    Bellbasis,
    /// Certification thresholds `2^((n-k+1)/2)`.
    Thresholds,
    /// Eigenvalues of a state or of one of its reductions.
    Spectrum {
        /// Qubits to keep, comma separated.
        #[arg(long, value_delimiter = ',')]
        keep: Option<Vec<usize>>,
    },
    /// The three-qubit singlet mixture example.
    Rho3,
    /// Runs every acceptance criterion.
    Verify {
        /// Restrict to these criterion ids, comma separated.
        #[arg(long, value_delimiter = ',')]
        only: Option<Vec<u8>>,
    },
}

impl Cli {
    fn run_config(&self) -> RunConfig {
        let c = &self.common;
        let mut rc = RunConfig {
            n: c.n,
            seed: c.seed,
            restarts: c.restarts,
            tol: c.tol,
            shots: c.shots,
            state: c.state.clone(),
            settings: c.settings.clone(),
            out: c.out.clone(),
            format: c.format,
            ..RunConfig::default()
        };
        rc.command = match &self.command {
            Command::Bellmax => "bellmax",
            Command::Certify { e, estimate, epsilon } => {
                rc.e = *e;
                rc.estimate = estimate.then_some(true);
                rc.epsilon = *epsilon;
                "certify"
            }
            Command::Criteria { which, k, trials, basis } => {
                rc.which = *which;
                rc.k = *k;
                rc.trials = *trials;
                rc.basis = *basis;
                "criteria"
            }
            Command::Basis { from, to, ghz, dicke } => {
                rc.from = *from;
                rc.to = *to;
                rc.ghz = *ghz;
                rc.dicke = *dicke;
                "basis"
            }
            Command::Bellbasis => "bellbasis",
            Command::Thresholds => "thresholds",
            Command::Spectrum { keep } => {
                rc.keep = keep.clone();
                "spectrum"
            }
            Command::Rho3 => "rho3",
            Command::Verify { only } => {
                rc.only = only.clone();
                "verify"
            }
        }
        .to_string();
        rc
    }
}

/// What a command produced: a JSON result, an optional flat table and
/// whether its property checks held.
pub struct Output {
    pub result: Value,
    pub table: Option<Vec<Vec<String>>>,
    pub ok: bool,
}

fn render(cfg: &RunConfig, out: &Output) -> Result<String, CliError> {
    match cfg.format() {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&json!({ "config": cfg, "result": out.result }))?;
            s.push('\n');
            Ok(s)
        }
        Format::Csv => {
            let rows = out
                .table
                .as_ref()
                .ok_or_else(|| CliError::Usage(format!("{} has no tabular output; use --format json", cfg.command)))?;
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in rows {
                w.write_record(row)?;
            }
            let bytes = w.into_inner().map_err(|e| CliError::Io(e.into_error()))?;
            String::from_utf8(bytes).map_err(|e| CliError::Usage(e.to_string()))
        }
    }
}

fn run(cli: &Cli) -> Result<bool, CliError> {
    let mut cfg = cli.run_config();
    if let Some(path) = &cli.common.config {
        let mut file = config::read_config(path)?;
        file.command = cfg.command.clone();
        cfg = cfg.overlay(&file);
    }
    let cfg = cfg.with_defaults();
    let out = commands::dispatch(&cfg)?;
    let text = render(&cfg, &out)?;
    match &cfg.out {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(out.ok)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
