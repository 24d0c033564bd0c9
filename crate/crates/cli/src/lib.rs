//! Command-line front end for the `udisc` solver.
//!
//! Every subcommand prints pretty JSON on stdout (or writes it to `--out`),
//! except `divider-curves`, which emits CSV. Exit codes: 0 success,
//! 2 usage or validation error, 1 internal error.

pub mod schema;

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use udisc::discriminate::{
    build_povm, failure_probability, fidelity_bound, optimal_profile, saturation_interval, sector_intervals,
};
use udisc::regions::{census, classify, divider_curves};
use udisc::simulate::{run_trials_sharded, scenario_black_box, scenario_key_sharing, InterceptResend};
use udisc::DiscriminationProblem;

use schema::{IntervalsReport, ProblemFile, SolutionFile};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INTERNAL: i32 = 1;
pub const EXIT_INVALID: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "udisc", version, about = "Optimal unambiguous discrimination of two subspaces")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Optimal measurement for one prior.
    Solve {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Per-sector optimality intervals and their intersection.
    Intervals {
        #[arg(long)]
        problem: PathBuf,
    },
    /// Region of a weight point for two sectors.
    Regions {
        #[command(flatten)]
        angles: AnglePair,
        #[arg(long)]
        alpha: f64,
        #[arg(long)]
        beta: f64,
    },
    /// Divider curves over a grid of alpha, as CSV.
    DividerCurves {
        #[command(flatten)]
        angles: AnglePair,
        #[arg(long, default_value_t = 99)]
        grid: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Characteristic cases of the two-sector parameter plane.
    Census {
        #[command(flatten)]
        angles: AnglePair,
    },
    /// Born-rule simulation of the optimal measurement.
    Simulate {
        #[arg(long)]
        problem: PathBuf,
        #[arg(long)]
        eta: f64,
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value_t = 1)]
        shards: usize,
    },
    /// Applications of the four-dimensional example.
    #[command(subcommand)]
    Scenario(Scenario),
}

#[derive(Debug, Args)]
struct AnglePair {
    #[arg(long = "cos2theta1")]
    cos2_theta1: f64,
    #[arg(long = "cos2theta2")]
    cos2_theta2: f64,
}

#[derive(Debug, Subcommand)]
enum Scenario {
    KeySharing {
        #[arg(long)]
        rounds: u64,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        eve: bool,
    },
    BlackBox {
        #[arg(long)]
        trials: u64,
        #[arg(long)]
        seed: u64,
        /// Include one record per trial.
        #[arg(long)]
        records: bool,
    },
}

#[derive(Debug)]
enum Failure {
    Invalid(String),
    Internal(String),
}

impl From<udisc::Error> for Failure {
    fn from(e: udisc::Error) -> Self {
        match e {
            udisc::Error::NonConvergence { .. } => Failure::Internal(e.to_string()),
            _ => Failure::Invalid(e.to_string()),
        }
    }
}

impl From<schema::ProblemFileError> for Failure {
    fn from(e: schema::ProblemFileError) -> Self {
        match e {
            schema::ProblemFileError::Invalid(inner) => Failure::from(inner),
            other => Failure::Invalid(other.to_string()),
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn internal(e: impl std::fmt::Display) -> Failure {
    Failure::Internal(e.to_string())
}

fn load_problem(path: &Path) -> std::result::Result<DiscriminationProblem, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Invalid(format!("cannot read {}: {e}", path.display())))?;
    Ok(ProblemFile::parse(&text)?.to_problem()?)
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("serializable output");
    s.push('\n');
    s
}

fn emit(text: &str, out_path: Option<&Path>, stdout: &mut dyn Write) -> Outcome {
    match out_path {
        Some(p) => fs::write(p, text).map_err(|e| internal(format!("cannot write {}: {e}", p.display()))),
        None => stdout.write_all(text.as_bytes()).map_err(internal),
    }
}

pub fn solve(problem: &DiscriminationProblem, eta: f64) -> udisc::Result<SolutionFile> {
    if problem.jordan().is_some() {
        let sol = build_povm(problem, eta)?;
        return Ok(SolutionFile::from_povm(problem, &sol));
    }
    let sectors = optimal_profile(problem, eta)?;
    let q = failure_probability(problem, eta)?;
    let bound = fidelity_bound(problem, eta)?;
    let saturates = saturation_interval(problem).is_some_and(|iv| iv.contains(eta));
    Ok(SolutionFile::from_profile(problem, eta, &sectors, q, bound, saturates))
}

pub fn intervals(problem: &DiscriminationProblem) -> IntervalsReport {
    IntervalsReport {
        intervals: sector_intervals(problem),
        intersection: saturation_interval(problem),
    }
}

pub fn divider_csv(cos2_theta1: f64, cos2_theta2: f64, grid: usize) -> udisc::Result<String> {
    let rows = divider_curves(cos2_theta1, cos2_theta2, grid)?;
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in &rows {
        w.serialize(r).expect("in-memory csv");
    }
    Ok(String::from_utf8(w.into_inner().expect("in-memory csv")).expect("ascii csv"))
}

fn dispatch(cmd: Command, stdout: &mut dyn Write) -> Outcome {
    match cmd {
        Command::Solve { problem, eta, out } => {
            let p = load_problem(&problem)?;
            emit(&to_json(&solve(&p, eta)?), out.as_deref(), stdout)
        }
        Command::Intervals { problem } => {
            let p = load_problem(&problem)?;
            emit(&to_json(&intervals(&p)), None, stdout)
        }
        Command::Regions { angles, alpha, beta } => {
            let c = classify(angles.cos2_theta1, angles.cos2_theta2, alpha, beta)?;
            emit(&to_json(&c), None, stdout)
        }
        Command::DividerCurves { angles, grid, out } => {
            let csv = divider_csv(angles.cos2_theta1, angles.cos2_theta2, grid)?;
            emit(&csv, out.as_deref(), stdout)
        }
        Command::Census { angles } => {
            let c = census(angles.cos2_theta1, angles.cos2_theta2)?;
            emit(&to_json(&c), None, stdout)
        }
        Command::Simulate {
            problem,
            eta,
            trials,
            seed,
            shards,
        } => {
            let p = load_problem(&problem)?;
            let stats = run_trials_sharded(&p, eta, trials, seed, shards)?;
            emit(&to_json(&stats), None, stdout)
        }
        Command::Scenario(Scenario::KeySharing { rounds, seed, eve }) => {
            let eve_model = InterceptResend::new();
            let eve = eve.then_some(&eve_model as &dyn udisc::simulate::Eavesdropper);
            let report = scenario_key_sharing(rounds, seed, eve)?;
            emit(&to_json(&report), None, stdout)
        }
        Command::Scenario(Scenario::BlackBox { trials, seed, records }) => {
            let mut report = scenario_black_box(trials, seed)?;
            if !records {
                report.records.clear();
            }
            emit(&to_json(&report), None, stdout)
        }
    }
}

/// Runs one invocation with explicit output streams; `argv[0]` is the program name.
pub fn run_with<I, T>(argv: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INVALID } else { EXIT_OK };
            let sink: &mut dyn Write = if e.use_stderr() { stderr } else { stdout };
            let _ = write!(sink, "{}", e.render());
            return code;
        }
    };
    match dispatch(cli.command, stdout) {
        Ok(()) => EXIT_OK,
        Err(Failure::Invalid(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            EXIT_INVALID
        }
        Err(Failure::Internal(m)) => {
            let _ = writeln!(stderr, "internal error: {m}");
            EXIT_INTERNAL
        }
    }
}

pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    let code = run_with(argv, &mut stdout.lock(), &mut stderr.lock());
    let _ = std::io::stdout().flush();
    code
}
