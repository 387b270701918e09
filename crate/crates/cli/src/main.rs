//! `entrocv` — entropic entanglement tests for bipartite
//! continuous-variable states from the command line.
//!
//! Subcommands:
//!
//! * `entropy`   — subsystem and ± quadrature entropies of one state;
//! * `criterion` — evaluate one separability bound and report a verdict;
//! * `scan-beta` — sweep the deformation parameter β and tabulate
//!   bound-vs-β as CSV;
//! * `epi-check` — verify the entropy-power and entropic-uncertainty
//!   inequalities on seeded random states (a numerical self-test).
//!
//! All reports are deterministic: identical inputs produce byte-identical
//! output unless `--timing` is requested.

mod epi;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use entrocv::{
    evaluate_detailed, parse_descriptor, state_entropies, BoundKind, Error as CoreError,
    EvalConfig, Evaluation, GupParam, StateDescriptor,
};
use report::{EpiReport, GridMeta, Report, SweepRow};

#[derive(Parser)]
#[command(
    name = "entrocv",
    version,
    about = "Entropic entanglement criteria for continuous-variable bipartite states",
    long_about = "Detects entanglement in bipartite continuous-variable quantum states via \
                  Shannon-entropic uncertainty criteria, with optional minimal-length (GUP) \
                  corrections that raise the detection bounds."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print subsystem and ± quadrature entropies of a state
    Entropy(EntropyArgs),
    /// Evaluate one entanglement criterion and report the verdict
    Criterion(CriterionArgs),
    /// Sweep the deformation parameter and tabulate bound vs β
    ScanBeta(ScanBetaArgs),
    /// Check the entropy-power and uncertainty inequalities on random states
    EpiCheck(EpiCheckArgs),
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Rep {
    /// Position densities w
    X,
    /// Momentum densities v
    P,
    /// Deformed momentum densities u (requires β > 0)
    K,
}

impl Rep {
    fn label(self) -> &'static str {
        match self {
            Rep::X => "x",
            Rep::P => "p",
            Rep::K => "k",
        }
    }

    fn key_prefixes(self) -> &'static [&'static str] {
        match self {
            Rep::X => &["H[w"],
            Rep::P => &["H[v"],
            Rep::K => &["H[u", "eta"],
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct GridArgs {
    /// Grid resolution: number of subintervals, a power of two in [256, 65536]
    #[arg(long, default_value_t = 4096)]
    grid_n: usize,
    /// Half-width of the position window (derived from the state if omitted)
    #[arg(long)]
    half_width: Option<f64>,
    /// Largest tolerable momentum mass beyond the deformation cutoff
    #[arg(long, default_value_t = 1e-8)]
    eps_tail: f64,
    /// Margin a criterion must clear to report Entangled
    #[arg(long, default_value_t = 1e-9)]
    tau_verdict: f64,
}

#[derive(Args)]
struct OutputArgs {
    /// Write the report to this path instead of stdout
    #[arg(long)]
    out: Option<PathBuf>,
    /// Report format
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Include wall-clock timing in the report (makes output non-reproducible)
    #[arg(long)]
    timing: bool,
}

#[derive(Args)]
struct EntropyArgs {
    /// Path to a state-descriptor JSON file
    #[arg(long)]
    state: PathBuf,
    /// Which representation's entropies to print
    #[arg(long, value_enum, default_value_t = Rep::X)]
    rep: Rep,
    /// Deformation parameter β ≥ 0
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct CriterionArgs {
    /// Path to a state-descriptor JSON file
    #[arg(long)]
    state: PathBuf,
    /// Criterion kind: strong-pure, weak-pure, strong-mixed, weak-mixed,
    /// each optionally suffixed with -gup
    #[arg(long)]
    kind: String,
    /// Deformation parameter β ≥ 0
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    beta: f64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct ScanBetaArgs {
    /// Path to a state-descriptor JSON file
    #[arg(long)]
    state: PathBuf,
    /// Criterion kind to evaluate at every β
    #[arg(long)]
    kind: String,
    /// β grid as START:STOP:COUNT or START:STOP:COUNT:log
    #[arg(long)]
    beta_grid: String,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

#[derive(Args)]
struct EpiCheckArgs {
    /// Number of random trials
    #[arg(long, default_value_t = 200)]
    trials: usize,
    /// RNG seed; identical seeds reproduce reports byte for byte
    #[arg(long, default_value_t = 7, allow_hyphen_values = true)]
    seed: i64,
    #[command(flatten)]
    grid: GridArgs,
    #[command(flatten)]
    output: OutputArgs,
}

/// A command failure carrying the process exit code.
#[derive(Debug)]
enum Failure {
    /// Bad flags or unusable invocation input: exit 64.
    Usage(String),
    /// Library error, mapped onto the documented exit codes.
    Core(CoreError),
    /// A verified inequality failed on random states: exit 5.
    Violation(String),
    /// Filesystem trouble while writing output: exit 1.
    Io(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 64,
            Failure::Core(e) => match e {
                CoreError::GupDomain { .. } | CoreError::Domain { .. } => 2,
                CoreError::Schema(_) | CoreError::Param(_) => 3,
                CoreError::KindMismatch(_) => 4,
                _ => 1,
            },
            Failure::Violation(_) => 5,
            Failure::Io(_) => 1,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(m) | Failure::Violation(m) | Failure::Io(m) => m.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

impl From<CoreError> for Failure {
    fn from(e: CoreError) -> Failure {
        Failure::Core(e)
    }
}

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(64);
        }
    };
    let started = Instant::now();
    let outcome = match cli.command {
        Command::Entropy(args) => cmd_entropy(args, started),
        Command::Criterion(args) => cmd_criterion(args, started),
        Command::ScanBeta(args) => cmd_scan_beta(args),
        Command::EpiCheck(args) => cmd_epi_check(args, started),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}

fn build_config(grid: &GridArgs) -> Result<EvalConfig, Failure> {
    let n = grid.grid_n;
    if !(n.is_power_of_two() && (256..=65536).contains(&n)) {
        return Err(usage(format!(
            "--grid-n must be a power of two in [256, 65536], got {n}"
        )));
    }
    if !(grid.eps_tail.is_finite() && grid.eps_tail > 0.0) {
        return Err(usage(format!(
            "--eps-tail must be a positive real, got {}",
            grid.eps_tail
        )));
    }
    if !(grid.tau_verdict.is_finite() && grid.tau_verdict > 0.0) {
        return Err(usage(format!(
            "--tau-verdict must be a positive real, got {}",
            grid.tau_verdict
        )));
    }
    if let Some(hw) = grid.half_width {
        if !(hw.is_finite() && hw > 0.0) {
            return Err(usage(format!(
                "--half-width must be a positive real, got {hw}"
            )));
        }
    }
    Ok(EvalConfig {
        grid_n: n,
        half_width: grid.half_width,
        eps_tail: grid.eps_tail,
        tau_verdict: grid.tau_verdict,
    })
}

fn check_beta(beta: f64) -> Result<GupParam, Failure> {
    if !(beta.is_finite() && beta >= 0.0) {
        return Err(usage(format!(
            "--beta must be a nonnegative finite real, got {beta}"
        )));
    }
    Ok(GupParam::new(beta).expect("validated above"))
}

/// Reads and parses the state file. An unreadable path is a usage error; a
/// readable file with an invalid descriptor is a schema error (exit 3).
fn load_state(path: &Path) -> Result<(StateDescriptor, serde_json::Value), Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage(format!("cannot read state file {}: {e}", path.display())))?;
    let descriptor = parse_descriptor(&text)?;
    let echo: serde_json::Value =
        serde_json::from_str(&text).expect("descriptor parsed, so the text is valid JSON");
    Ok((descriptor, echo))
}

fn write_output(dest: &Option<PathBuf>, content: &str) -> Result<(), Failure> {
    match dest {
        Some(path) => std::fs::write(path, content)
            .map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{content}");
            Ok(())
        }
    }
}

fn timing_of(args: &OutputArgs, started: Instant) -> Option<f64> {
    args.timing
        .then(|| started.elapsed().as_secs_f64() * 1e3)
}

fn cmd_entropy(args: EntropyArgs, started: Instant) -> Result<(), Failure> {
    let cfg = build_config(&args.grid)?;
    let g = check_beta(args.beta)?;
    if args.rep == Rep::K && g.beta() == 0.0 {
        return Err(usage(
            "--rep k needs --beta > 0; at β = 0 the deformed representation \
             is identical to momentum (use --rep p)",
        ));
    }
    let (descriptor, echo) = load_state(&args.state)?;
    let all = state_entropies(&descriptor, &g, &cfg)?;
    let entropies: std::collections::BTreeMap<String, f64> = all
        .into_iter()
        .filter(|(k, _)| args.rep.key_prefixes().iter().any(|p| k.starts_with(p)))
        .collect();
    let report = Report {
        version: env!("CARGO_PKG_VERSION"),
        command: "entropy",
        descriptor: echo,
        grid: GridMeta::of(&cfg),
        beta: g.beta(),
        representation: Some(args.rep.label()),
        entropies,
        criteria: Vec::new(),
        timing_ms: timing_of(&args.output, started),
    };
    let content = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => report.to_json(),
        Format::Csv => report.entropies_csv(),
    };
    write_output(&args.output.out, &content)
}

fn cmd_criterion(args: CriterionArgs, started: Instant) -> Result<(), Failure> {
    let cfg = build_config(&args.grid)?;
    let g = check_beta(args.beta)?;
    let kind = BoundKind::parse(&args.kind).map_err(|e| usage(e.to_string()))?;
    let (descriptor, echo) = load_state(&args.state)?;
    let eval = evaluate_detailed(&descriptor, kind, &g, &cfg)?;
    let entropies = state_entropies(&descriptor, &g, &cfg)?;
    let row = SweepRow::from_evaluation(&eval);
    let report = Report {
        version: env!("CARGO_PKG_VERSION"),
        command: "criterion",
        descriptor: echo,
        grid: GridMeta::of(&cfg),
        beta: g.beta(),
        representation: None,
        entropies,
        criteria: vec![eval.result],
        timing_ms: timing_of(&args.output, started),
    };
    let content = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => report.to_json(),
        Format::Csv => report::sweep_csv(&[row]),
    };
    write_output(&args.output.out, &content)
}

/// Parses `START:STOP:COUNT` or `START:STOP:COUNT:log` into explicit β
/// values (inclusive endpoints; COUNT = 1 yields just START).
fn parse_beta_grid(text: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = text.split(':').collect();
    if !(parts.len() == 3 || parts.len() == 4) {
        return Err(usage(format!(
            "--beta-grid must look like START:STOP:COUNT[:log], got {text:?}"
        )));
    }
    let start: f64 = parts[0]
        .parse()
        .map_err(|_| usage(format!("bad β start {:?}", parts[0])))?;
    let stop: f64 = parts[1]
        .parse()
        .map_err(|_| usage(format!("bad β stop {:?}", parts[1])))?;
    let count: usize = parts[2]
        .parse()
        .map_err(|_| usage(format!("bad β count {:?}", parts[2])))?;
    let log = match parts.get(3) {
        None => false,
        Some(&"log") => true,
        Some(other) => {
            return Err(usage(format!(
                "unknown β spacing {other:?}; only \"log\" is recognized"
            )))
        }
    };
    if !(start.is_finite() && start >= 0.0 && stop.is_finite() && stop >= 0.0) {
        return Err(usage("β endpoints must be nonnegative finite reals".to_string()));
    }
    if count == 0 {
        return Err(usage("β count must be at least 1".to_string()));
    }
    if log && (start == 0.0 || stop == 0.0) {
        return Err(usage(
            "log spacing needs strictly positive β endpoints".to_string(),
        ));
    }
    if count == 1 {
        return Ok(vec![start]);
    }
    let m = (count - 1) as f64;
    Ok((0..count)
        .map(|i| {
            let t = i as f64 / m;
            if log {
                start * (stop / start).powf(t)
            } else {
                start + (stop - start) * t
            }
        })
        .collect())
}

fn cmd_scan_beta(args: ScanBetaArgs) -> Result<(), Failure> {
    let cfg = build_config(&args.grid)?;
    let kind = BoundKind::parse(&args.kind).map_err(|e| usage(e.to_string()))?;
    let betas = parse_beta_grid(&args.beta_grid)?;
    let (descriptor, _) = load_state(&args.state)?;

    // Rows evaluate independently and in parallel; emission stays in β
    // order, so output is deterministic.
    let evals: Vec<Result<Evaluation, CoreError>> = betas
        .par_iter()
        .map(|&beta| {
            let g = GupParam::new(beta).expect("β grid validated");
            evaluate_detailed(&descriptor, kind, &g, &cfg)
        })
        .collect();

    let format = args.output.format.unwrap_or(Format::Csv);
    let mut rows: Vec<SweepRow> = Vec::with_capacity(evals.len());
    let mut first_error: Option<CoreError> = None;
    for eval in evals {
        match eval {
            Ok(e) => rows.push(SweepRow::from_evaluation(&e)),
            Err(e) => {
                first_error = Some(e);
                break;
            }
        }
    }
    // Flush whatever succeeded before the first failing β, then fail.
    let content = match format {
        Format::Csv => report::sweep_csv(&rows),
        Format::Json => report::sweep_json(&rows),
    };
    write_output(&args.output.out, &content)?;
    match first_error {
        Some(e) => Err(Failure::Core(e)),
        None => Ok(()),
    }
}

fn cmd_epi_check(args: EpiCheckArgs, started: Instant) -> Result<(), Failure> {
    let cfg = build_config(&args.grid)?;
    if args.trials == 0 {
        return Err(usage("--trials must be at least 1".to_string()));
    }
    let seed = u64::from_ne_bytes(args.seed.to_ne_bytes());
    let outcome = epi::run(args.trials, seed, &cfg)?;
    let ok = outcome.min_epi_gap >= epi::TOLERANCE && outcome.min_bbm_excess >= epi::TOLERANCE;
    let report = EpiReport {
        version: env!("CARGO_PKG_VERSION"),
        command: "epi-check",
        trials: args.trials,
        seed: args.seed,
        grid: GridMeta::of(&cfg),
        tolerance: epi::TOLERANCE,
        min_epi_gap: outcome.min_epi_gap,
        min_bbm_excess: outcome.min_bbm_excess,
        verdict: if ok { "ok" } else { "violation" },
        timing_ms: timing_of(&args.output, started),
    };
    let content = match args.output.format.unwrap_or(Format::Json) {
        Format::Json => report.to_json(),
        Format::Csv => report.to_csv(),
    };
    write_output(&args.output.out, &content)?;
    if ok {
        Ok(())
    } else {
        Err(Failure::Violation(format!(
            "inequality violation: min EPI gap {:.3e}, min BBM excess {:.3e}",
            outcome.min_epi_gap, outcome.min_bbm_excess
        )))
    }
}
