//! `ktrace` — compute k-traces, compound matrices, and mixed discriminants,
//! and run the seeded verification suites for the trace-inequality family.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage error,
//! 3 numerical/domain/input error.

use clap::{CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use ktrace::linalg::Matrix;
use ktrace::trace::{trace_k_with_method, KTraceMethod};
use ktrace::verify::{
    find_case, registry, reports_to_json, run_case, CaseKind, Status, TrialConfig,
    VerificationReport,
};
use ktrace::{exterior, io, mixed, par, Error};
use serde::Deserialize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

const EXIT_VERIFICATION_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

/// What went wrong, carrying the exit code it maps to.
enum Failure {
    /// Bad flags, bad case id, k > n, bad config file: exit 2.
    Usage(String),
    /// Bad matrix input, domain error, IO error: exit 3.
    Numeric(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => EXIT_USAGE,
            Failure::Numeric(_) => EXIT_NUMERIC,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Numeric(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

#[derive(Parser)]
#[command(
    name = "ktrace",
    version,
    about = "k-traces, compound matrices, mixed discriminants, and inequality verification suites"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate one quantity on explicit matrix inputs.
    #[command(subcommand)]
    Compute(ComputeCommand),
    /// Run a verification case, the interpolation subset, or the full suite.
    Verify(VerifyArgs),
    /// Summarize a previously written verification report file.
    Report(ReportArgs),
}

#[derive(Subcommand)]
enum ComputeCommand {
    /// trace_k of a Hermitian matrix, printed at 17 significant digits.
    TraceK(TraceKArgs),
    /// k-th multiplicative compound of a square matrix, with its wedge basis.
    Compound(CompoundArgs),
    /// Mixed discriminant of n Hermitian n×n matrices.
    MixedDisc(MixedDiscArgs),
}

#[derive(clap::Args)]
struct TraceKArgs {
    /// Path to the matrix (JSON: {"n": ..., "entries": [[re, im], ...]}).
    #[arg(long)]
    input: PathBuf,
    /// Order of the trace: sum of k×k principal minors.
    #[arg(long)]
    k: usize,
    /// Evaluation route.
    #[arg(long, value_enum, default_value_t = MethodArg::Eigen)]
    method: MethodArg,
    /// Also write {"value", "method", "k", "n"} to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Cap the worker thread count.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Eigen,
    Minors,
    Compound,
}

impl From<MethodArg> for KTraceMethod {
    fn from(m: MethodArg) -> Self {
        match m {
            MethodArg::Eigen => KTraceMethod::Eigen,
            MethodArg::Minors => KTraceMethod::Minors,
            MethodArg::Compound => KTraceMethod::Compound,
        }
    }
}

#[derive(clap::Args)]
struct CompoundArgs {
    /// Path to the matrix (JSON: {"n": ..., "entries": [[re, im], ...]}).
    #[arg(long)]
    input: PathBuf,
    /// Compound order.
    #[arg(long)]
    k: usize,
    /// Also write the emitted object to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Cap the worker thread count.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(clap::Args)]
struct MixedDiscArgs {
    /// Comma-separated paths to n Hermitian n×n matrices.
    #[arg(long, value_delimiter = ',', required = true)]
    inputs: Vec<PathBuf>,
    /// Also write {"value", "m"} to this file.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Cap the worker thread count.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(clap::Args)]
struct VerifyArgs {
    /// A registered case id, "all", or "interpolation" (with --case).
    target: String,
    /// Case id for the "interpolation" target (quadrature-backed cases only).
    #[arg(long)]
    case: Option<String>,
    /// Matrix dimension.
    #[arg(long)]
    n: Option<usize>,
    /// Trace order (k ≤ n).
    #[arg(long)]
    k: Option<usize>,
    /// Second dimension / factor count for cases that use one.
    #[arg(long)]
    m: Option<usize>,
    /// Trials per case.
    #[arg(long)]
    trials: Option<u64>,
    /// Master seed. Precedence: flag, then config file, then KTRACE_SEED,
    /// then 42.
    #[arg(long)]
    seed: Option<u64>,
    /// Override the per-case tolerance on the normalized gap.
    #[arg(long)]
    tol: Option<f64>,
    /// Convex-combination grid, comma-separated values in (0,1).
    #[arg(long, value_delimiter = ',')]
    tau_grid: Option<Vec<f64>>,
    /// Write the machine-readable report here.
    #[arg(long)]
    json: Option<PathBuf>,
    /// Stop at the first failing case.
    #[arg(long)]
    fail_fast: bool,
    /// Cap the worker thread count. Reports are byte-identical across values.
    #[arg(long)]
    threads: Option<usize>,
    /// TOML file with default parameters; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
}

#[derive(clap::Args)]
struct ReportArgs {
    /// Path to a report produced by `verify --json`.
    path: PathBuf,
    /// Re-emit the normalized (pretty-printed) report to this file.
    #[arg(long)]
    json: Option<PathBuf>,
}

/// Keys the TOML config file may set. Unknown keys are rejected.
#[derive(Deserialize, Default)]
#[serde(deny_unknown_fields)]
struct FileConfig {
    n: Option<usize>,
    k: Option<usize>,
    m: Option<usize>,
    trials: Option<u64>,
    seed: Option<u64>,
    tol: Option<f64>,
    tau_grid: Option<Vec<f64>>,
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let case_list = registered_case_help();
    let mut command = Cli::command().after_help(case_list.clone());
    command = command.mut_subcommand("verify", |sc| sc.after_help(case_list));
    let matches = command.get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

/// The case catalog appended to --help, generated from the registry so the
/// two cannot drift.
fn registered_case_help() -> String {
    let mut s = String::from("Registered cases:\n");
    for case in registry() {
        s.push_str(&format!("  {:<16} {}\n", case.id, case.title));
    }
    s
}

fn dispatch(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Compute(c) => match c {
            ComputeCommand::TraceK(args) => compute_trace_k(args),
            ComputeCommand::Compound(args) => compute_compound(args),
            ComputeCommand::MixedDisc(args) => compute_mixed_disc(args),
        },
        Command::Verify(args) => verify(args),
        Command::Report(args) => report(args),
    }
}

/// 17 significant digits: enough to reproduce the f64 bit pattern.
fn digits17(v: f64) -> String {
    format!("{v:.16e}")
}

fn write_text(path: &Path, text: &str) -> CliResult<()> {
    std::fs::write(path, text)
        .map_err(|e| Failure::Numeric(format!("cannot write {}: {e}", path.display())))
}

fn compute_trace_k(args: TraceKArgs) -> CliResult<ExitCode> {
    let a = io::hermitian_from_json_file(&args.input)?;
    if args.k == 0 || args.k > a.n() {
        return Err(Failure::Usage(format!(
            "k = {} out of range for an n = {} input (need 1 ≤ k ≤ n)",
            args.k,
            a.n()
        )));
    }
    let result = par::run_with_threads(args.threads, || {
        trace_k_with_method(&a, args.k, args.method.into())
    })?;
    println!("{}", digits17(result.value));
    if let Some(path) = &args.json {
        let doc = serde_json::json!({
            "value": result.value,
            "method": method_name(args.method),
            "k": args.k,
            "n": a.n(),
        });
        write_text(path, &serde_json::to_string_pretty(&doc).unwrap())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn method_name(m: MethodArg) -> &'static str {
    match m {
        MethodArg::Eigen => "eigen",
        MethodArg::Minors => "minors",
        MethodArg::Compound => "compound",
    }
}

fn compute_compound(args: CompoundArgs) -> CliResult<ExitCode> {
    let a: Matrix = io::matrix_from_json_file(&args.input)?;
    if args.k == 0 || args.k > a.rows() {
        return Err(Failure::Usage(format!(
            "k = {} out of range for an n = {} input (need 1 ≤ k ≤ n)",
            args.k,
            a.rows()
        )));
    }
    let op = par::run_with_threads(args.threads, || exterior::compound(&a, args.k))?;
    let matrix_json: serde_json::Value =
        serde_json::from_str(&io::matrix_to_json_string(op.matrix())?)
            .expect("emitted matrix JSON parses");
    let doc = serde_json::json!({
        "compound": matrix_json,
        "basis": op.basis().subsets(),
    });
    let text = serde_json::to_string_pretty(&doc).unwrap();
    println!("{text}");
    if let Some(path) = &args.json {
        write_text(path, &text)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn compute_mixed_disc(args: MixedDiscArgs) -> CliResult<ExitCode> {
    let mats = args
        .inputs
        .iter()
        .map(|p| io::hermitian_from_json_file(p))
        .collect::<ktrace::Result<Vec<_>>>()?;
    let refs: Vec<&ktrace::HermitianMatrix> = mats.iter().collect();
    let value = par::run_with_threads(args.threads, || mixed::mixed_discriminant(&refs))?;
    println!("{}", digits17(value));
    if let Some(path) = &args.json {
        let doc = serde_json::json!({ "value": value, "m": mats.len() });
        write_text(path, &serde_json::to_string_pretty(&doc).unwrap())?;
    }
    Ok(ExitCode::SUCCESS)
}

fn verify(args: VerifyArgs) -> CliResult<ExitCode> {
    let file = match &args.config {
        Some(path) => {
            let text = std::fs::read_to_string(path).map_err(|e| {
                Failure::Usage(format!("cannot read config {}: {e}", path.display()))
            })?;
            toml::from_str::<FileConfig>(&text).map_err(|e| {
                Failure::Usage(format!("config {}: {e}", path.display()))
            })?
        }
        None => FileConfig::default(),
    };

    // Seed precedence: flag, then config file, then KTRACE_SEED, then 42.
    let env_seed = match std::env::var("KTRACE_SEED") {
        Ok(s) => Some(s.parse::<u64>().map_err(|_| {
            Failure::Usage(format!("KTRACE_SEED = {s:?} is not a 64-bit unsigned integer"))
        })?),
        Err(_) => None,
    };

    let defaults = TrialConfig::default();
    let cfg = TrialConfig {
        n: args.n.or(file.n).unwrap_or(defaults.n),
        k: args.k.or(file.k).unwrap_or(defaults.k),
        m: args.m.or(file.m),
        trials: args.trials.or(file.trials).unwrap_or(defaults.trials),
        seed: args
            .seed
            .or(file.seed)
            .or(env_seed)
            .unwrap_or(defaults.seed),
        tau_grid: args
            .tau_grid
            .or(file.tau_grid)
            .unwrap_or_else(|| defaults.tau_grid.clone()),
        cond_cap: defaults.cond_cap,
        tol_override: args.tol.or(file.tol),
    };
    cfg.validate().map_err(|e| Failure::Usage(e.to_string()))?;
    let threads = args.threads.or(file.threads);

    // Resolve the target to a case list.
    let cases: Vec<&ktrace::verify::Case> = match args.target.as_str() {
        "all" => {
            if args.case.is_some() {
                return Err(Failure::Usage(
                    "--case only applies to the \"interpolation\" target".into(),
                ));
            }
            registry().iter().filter(|c| !c.expected_failure).collect()
        }
        "interpolation" => {
            let id = args.case.as_deref().ok_or_else(|| {
                Failure::Usage("the \"interpolation\" target requires --case <id>".into())
            })?;
            let case = find_case(id)
                .ok_or_else(|| Failure::Usage(unknown_case_message(id)))?;
            if case.kind != CaseKind::Quadrature {
                return Err(Failure::Usage(format!(
                    "case {id} is not quadrature-backed; use `verify {id}` directly"
                )));
            }
            vec![case]
        }
        id => {
            if args.case.is_some() {
                return Err(Failure::Usage(
                    "--case only applies to the \"interpolation\" target".into(),
                ));
            }
            vec![find_case(id).ok_or_else(|| Failure::Usage(unknown_case_message(id)))?]
        }
    };

    let mut reports: Vec<VerificationReport> = Vec::with_capacity(cases.len());
    for case in cases {
        let report = par::run_with_threads(threads, || run_case(case, &cfg))?;
        print_report_line(&report);
        let failed = report.status == Status::Failed;
        reports.push(report);
        if failed && args.fail_fast {
            eprintln!("stopping at first failure (--fail-fast)");
            break;
        }
    }

    let passed = reports.iter().all(|r| r.status != Status::Failed);
    if let Some(path) = &args.json {
        write_text(path, &reports_to_json(cfg.seed, &reports))?;
    }
    println!(
        "{} of {} case(s) passed",
        reports.iter().filter(|r| r.status != Status::Failed).count(),
        reports.len()
    );
    if passed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_VERIFICATION_FAILURE))
    }
}

fn unknown_case_message(id: &str) -> String {
    let ids: Vec<&str> = registry().iter().map(|c| c.id).collect();
    format!(
        "unknown case {id:?}; expected \"all\", \"interpolation\", or one of: {}",
        ids.join(", ")
    )
}

fn print_report_line(r: &VerificationReport) {
    let status = match r.status {
        Status::Passed => "PASS",
        Status::Failed => "FAIL",
        Status::Skipped => "SKIP",
    };
    println!(
        "case {:<16} {} trials={} worst_gap={:+.3e} scale={:.3e} failures={}",
        r.case,
        status,
        r.trials,
        r.worst_gap,
        r.scale,
        r.failures.len()
    );
}

fn report(args: ReportArgs) -> CliResult<ExitCode> {
    let text = std::fs::read_to_string(&args.path)
        .map_err(|e| Failure::Numeric(format!("cannot read {}: {e}", args.path.display())))?;
    let doc: serde_json::Value = serde_json::from_str(&text)
        .map_err(|e| Failure::Numeric(format!("{}: {e}", args.path.display())))?;
    let seed = doc
        .get("seed")
        .and_then(|v| v.as_u64())
        .ok_or_else(|| Failure::Numeric("report lacks a numeric \"seed\" field".into()))?;
    let passed = doc
        .get("passed")
        .and_then(|v| v.as_bool())
        .ok_or_else(|| Failure::Numeric("report lacks a boolean \"passed\" field".into()))?;
    let cases = doc
        .get("cases")
        .and_then(|v| v.as_array())
        .ok_or_else(|| Failure::Numeric("report lacks a \"cases\" array".into()))?;
    println!("seed {seed}: {} case(s)", cases.len());
    for c in cases {
        let id = c.get("case").and_then(|v| v.as_str()).unwrap_or("?");
        let status = c.get("status").and_then(|v| v.as_str()).unwrap_or("?");
        let worst = c.get("worst_gap").and_then(|v| v.as_f64()).unwrap_or(f64::NAN);
        let nfail = c
            .get("failures")
            .and_then(|v| v.as_array())
            .map(|a| a.len())
            .unwrap_or(0);
        println!("case {id:<16} {status:<7} worst_gap={worst:+.3e} failures={nfail}");
    }
    if let Some(path) = &args.json {
        write_text(path, &serde_json::to_string_pretty(&doc).unwrap())?;
    }
    println!("overall: {}", if passed { "PASS" } else { "FAIL" });
    if passed {
        Ok(ExitCode::SUCCESS)
    } else {
        Ok(ExitCode::from(EXIT_VERIFICATION_FAILURE))
    }
}
