//! Command-line front end: trade-off curves, capacity summaries and self-checks.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use cqregion::channel::{degradability_residual, ChannelConfig, DegradabilityConfig, KrausChannel};
use cqregion::region::{
    self, compare_time_sharing, ea_pair, format_sig, holevo_capacity, q1_capacity, sweep_curve, sweep_tensor_power,
    OptimizerConfig, TradeoffCurve, DEFAULT_LAMBDA_GRID,
};
use serde_json::json;

pub mod output;
pub mod suites;

use output::{write_atomic, RunManifest, REPORT_SCHEMA};
use suites::Suite;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_USAGE: i32 = 3;

/// Environment variable capping worker threads (0 or unset: one per core).
pub const THREADS_ENV: &str = "CQREGION_THREADS";

#[derive(Debug, Parser)]
#[command(name = "cqregion", version, about = "Classical/quantum capacity trade-off curves of quantum channels")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Sweep the trade-off curve and write one CSV row per envelope point.
    Curve(CurveArgs),
    /// Compare the swept curve against time-sharing on an r grid.
    Compare(CompareArgs),
    /// Single-letter capacities, degradability and the entanglement-assisted point.
    Capacities(CapacitiesArgs),
    /// Run a self-check suite.
    Check(CheckArgs),
}

#[derive(Debug, Clone, Args)]
pub struct OptimArgs {
    /// Channel config file (JSON).
    #[arg(long, value_name = "FILE")]
    pub channel: PathBuf,
    /// Comma-separated slopes λ ≥ 1 in ascending order, or "default".
    #[arg(long, value_name = "SPEC", default_value = "default")]
    pub lambda_grid: String,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 1e-6)]
    pub tol: f64,
    /// Ensemble size (default dim_in² + 2).
    #[arg(long)]
    pub cardinality: Option<usize>,
    #[arg(long, default_value_t = 2000)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1e-5)]
    pub fd_step: f64,
    #[arg(long, default_value_t = 0.1)]
    pub jitter: f64,
    #[arg(long, default_value_t = 4)]
    pub refine_rounds: usize,
    /// Sweep N^{⊗L} and report rates per channel use.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    pub tensor_power: u8,
}

#[derive(Debug, Args)]
pub struct CurveArgs {
    #[command(flatten)]
    pub opt: OptimArgs,
    /// Output CSV (stdout when omitted).
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CompareArgs {
    #[command(flatten)]
    pub opt: OptimArgs,
    /// Number of evenly spaced r values in [0, C].
    #[arg(long, default_value_t = 101)]
    pub grid_points: usize,
    #[arg(long, value_name = "FILE")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CapacitiesArgs {
    #[command(flatten)]
    pub opt: OptimArgs,
    /// JSON report with the achieving ensembles.
    #[arg(long, value_name = "FILE")]
    pub report: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct CheckArgs {
    #[arg(long, value_enum)]
    pub suite: Suite,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

/// Failure classes, each with its exit code.
#[derive(Debug)]
pub enum CliError {
    Config(String),
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => EXIT_CONFIG,
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Failure(_) => EXIT_FAILURE,
        }
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Config(m) => write!(f, "config error: {m}"),
            CliError::Usage(m) => write!(f, "invalid flag: {m}"),
            CliError::Failure(m) => write!(f, "{m}"),
        }
    }
}

fn failure(e: impl std::fmt::Display) -> CliError {
    CliError::Failure(e.to_string())
}

pub fn parse_lambda_grid(spec: &str) -> Result<Vec<f64>, CliError> {
    if spec.trim() == "default" {
        return Ok(DEFAULT_LAMBDA_GRID.to_vec());
    }
    let grid = spec
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|_| CliError::Usage(format!("--lambda-grid: '{t}' is not a number")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    if grid.is_empty() {
        return Err(CliError::Usage("--lambda-grid is empty".into()));
    }
    Ok(grid)
}

impl OptimArgs {
    pub fn config(&self) -> Result<OptimizerConfig, CliError> {
        let config = OptimizerConfig {
            restarts: self.restarts,
            seed: self.seed,
            tol: self.tol,
            max_iters: self.max_iters,
            cardinality: self.cardinality,
            fd_step: self.fd_step,
            lambda_grid: parse_lambda_grid(&self.lambda_grid)?,
            jitter: self.jitter,
            refine_rounds: self.refine_rounds,
        };
        config.validate().map_err(|e| CliError::Usage(e.to_string()))?;
        Ok(config)
    }

    /// Canonical flags reproducing this run.
    fn echo(&self, config: &OptimizerConfig) -> String {
        let grid: Vec<String> = config.lambda_grid.iter().map(|l| l.to_string()).collect();
        let mut s = format!(
            "--channel {} --lambda-grid {} --restarts {} --seed {} --tol {:e} --max-iters {} --fd-step {:e} --jitter {} --refine-rounds {} --tensor-power {}",
            self.channel.display(),
            grid.join(","),
            config.restarts,
            config.seed,
            config.tol,
            config.max_iters,
            config.fd_step,
            config.jitter,
            config.refine_rounds,
            self.tensor_power
        );
        if let Some(k) = config.cardinality {
            let _ = write!(s, " --cardinality {k}");
        }
        s
    }
}

pub fn load_channel(path: &Path) -> Result<(ChannelConfig, KrausChannel), CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
    let cfg = ChannelConfig::from_json(&text).map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    let ch = cfg.build().map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
    Ok((cfg, ch))
}

struct Prepared {
    cfg: ChannelConfig,
    channel: KrausChannel,
    config: OptimizerConfig,
}

fn prepare(opt: &OptimArgs) -> Result<Prepared, CliError> {
    let config = opt.config()?;
    let (cfg, channel) = load_channel(&opt.channel)?;
    Ok(Prepared { cfg, channel, config })
}

fn sweep(p: &Prepared, tensor_power: u8) -> Result<TradeoffCurve, CliError> {
    let result = if tensor_power > 1 {
        sweep_tensor_power(&p.channel, tensor_power as usize, &p.config)
    } else {
        sweep_curve(&p.channel, &p.config)
    };
    result.map_err(|e| match e {
        cqregion::Error::ResourceGuard(m) => CliError::Usage(format!("--tensor-power: {m}")),
        other => failure(other),
    })
}

fn manifest(command: &'static str, opt: &OptimArgs, p: &Prepared, started: Instant) -> RunManifest {
    RunManifest {
        command,
        channel: p.cfg.descriptor(),
        channel_config: p.cfg.to_json(),
        config: serde_json::to_value(&p.config).expect("config serialises"),
        args: opt.echo(&p.config),
        seed: p.config.seed,
        duration: started.elapsed(),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<(), CliError> {
    match out {
        Some(path) => write_atomic(path, text).map_err(|e| failure(format!("writing {}: {e}", path.display()))),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(failure),
    }
}

pub fn curve_csv(curve: &TradeoffCurve) -> String {
    let mut s = String::from("lambda,r,R,objective,cardinality_used\n");
    for p in &curve.points {
        let _ = writeln!(
            s,
            "{},{},{},{},{}",
            p.kind.label(),
            format_sig(p.classical),
            format_sig(p.quantum),
            format_sig(p.objective),
            p.cardinality()
        );
    }
    s
}

pub fn cmd_curve(args: &CurveArgs) -> Result<(), CliError> {
    let started = Instant::now();
    let p = prepare(&args.opt)?;
    let curve = sweep(&p, args.opt.tensor_power)?;
    let body = curve_csv(&curve);
    let header = manifest("curve", &args.opt, &p, started).header();
    emit(args.out.as_deref(), &format!("{header}{body}"))
}

pub fn cmd_compare(args: &CompareArgs) -> Result<(), CliError> {
    let started = Instant::now();
    if args.grid_points < 2 {
        return Err(CliError::Usage("--grid-points must be at least 2".into()));
    }
    let p = prepare(&args.opt)?;
    let curve = sweep(&p, args.opt.tensor_power)?;
    let rows = compare_time_sharing(&curve, args.grid_points).map_err(failure)?;
    let mut body = String::from("r,R_opt,R_timeshare,delta\n");
    for row in rows {
        let _ = writeln!(
            body,
            "{},{},{},{}",
            format_sig(row.r),
            format_sig(row.r_opt),
            format_sig(row.r_timeshare),
            format_sig(row.delta)
        );
    }
    let header = manifest("compare", &args.opt, &p, started).header();
    emit(args.out.as_deref(), &format!("{header}{body}"))
}

pub fn cmd_capacities(args: &CapacitiesArgs) -> Result<(), CliError> {
    let started = Instant::now();
    if args.opt.tensor_power != 1 {
        return Err(CliError::Usage("--tensor-power is only supported by curve and compare".into()));
    }
    let p = prepare(&args.opt)?;
    let c1 = holevo_capacity(&p.channel, &p.config).map_err(failure)?;
    let q1 = q1_capacity(&p.channel, &p.config).map_err(failure)?;
    let deg = degradability_residual(&p.channel, &DegradabilityConfig { seed: p.config.seed, ..Default::default() });
    let q1_input = q1
        .ensemble
        .as_ref()
        .and_then(|e| e.entries().first())
        .map(|(_, rho)| rho.clone())
        .ok_or_else(|| failure("Q1 search returned no input state"))?;
    let (ea_r, ea_q) = ea_pair(&q1_input, &p.channel).map_err(failure)?;

    let method = match deg.method {
        cqregion::channel::DegradabilityMethod::DephasingIdentity => "dephasing_identity",
        cqregion::channel::DegradabilityMethod::Search => "search",
    };
    let mut lines = String::new();
    let _ = writeln!(lines, "channel={}", p.cfg.descriptor());
    let _ = writeln!(lines, "C1={}", format_sig(c1.classical));
    let _ = writeln!(lines, "Q1={}", format_sig(q1.quantum));
    let _ = writeln!(lines, "degradability_residual={}", format_sig(deg.residual));
    let _ = writeln!(lines, "degradability_method={method}");
    let _ = writeln!(lines, "degradable={}", deg.certified);
    let _ = writeln!(lines, "ea_r={}", format_sig(ea_r));
    let _ = writeln!(lines, "ea_R={}", format_sig(ea_q));
    std::io::stdout().write_all(lines.as_bytes()).map_err(failure)?;

    if let Some(path) = &args.report {
        let report = json!({
            "schema": REPORT_SCHEMA,
            "manifest": manifest("capacities", &args.opt, &p, started).to_json(),
            "C1": c1.to_json(),
            "Q1": q1.to_json(),
            "degradability": {
                "residual": deg.residual,
                "method": method,
                "certified": deg.certified,
            },
            "ea_point": {
                "r": ea_r,
                "R": ea_q,
                "input": region::ensemble_to_json(&cqregion::infoquant::Ensemble::single(q1_input)),
            },
        });
        let text = serde_json::to_string_pretty(&report).expect("report serialises") + "\n";
        write_atomic(path, &text).map_err(|e| failure(format!("writing {}: {e}", path.display())))?;
    }
    Ok(())
}

/// Runs a suite, printing one line per assertion; fails if any assertion fails.
pub fn cmd_check(args: &CheckArgs) -> Result<(), CliError> {
    let report = args.suite.run(args.seed);
    let mut out = String::new();
    for c in &report.checks {
        let _ = writeln!(out, "{c}");
    }
    for n in &report.notes {
        let _ = writeln!(out, "NOTE {n}");
    }
    let _ = writeln!(out, "{}", report.summary());
    std::io::stdout().write_all(out.as_bytes()).map_err(failure)?;
    if report.passed() {
        Ok(())
    } else {
        Err(CliError::Failure(format!("{} check(s) failed", report.failures())))
    }
}

fn configure_threads() -> Result<(), CliError> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{THREADS_ENV}='{raw}' is not a thread count")))?;
    if n > 0 {
        // a second initialisation only happens when run() is called twice in one process
        let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    }
    Ok(())
}

/// Parses arguments, runs the command and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    let result = configure_threads().and_then(|()| match &cli.command {
        Command::Curve(a) => cmd_curve(a),
        Command::Compare(a) => cmd_compare(a),
        Command::Capacities(a) => cmd_capacities(a),
        Command::Check(a) => cmd_check(a),
    });
    match result {
        Ok(()) => EXIT_OK,
        Err(e) => {
            eprintln!("cqregion: {e}");
            e.exit_code()
        }
    }
}
