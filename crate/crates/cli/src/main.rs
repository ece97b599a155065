mod eval;
mod numeric;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use projdunkl_core::precision::Precision;
use projdunkl_core::rational::parse_rational;
use projdunkl_core::verify::{run_suites, Fault, Suite, SuiteConfig};

#[derive(Parser)]
#[command(name = "projdunkl", version, about = "Projection-type Dunkl operators: verification and evaluation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the verification suites; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Evaluate one operator or function.
    #[command(subcommand)]
    Eval(eval::EvalCommand),
    /// Kummer transform of a catalog function as CSV `lambda,re,im,abs`.
    Transform(numeric::TransformArgs),
    /// bold M_kappa(i lambda x) over a product grid as CSV `kappa,lambda,x,re,im,abs`.
    Grid(numeric::GridArgs),
    /// Dump the Gauss–Jacobi rule for the weight (1 - t)^(kappa - 1) as JSON.
    Quadrature(numeric::QuadratureArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite to run; repeat for several. Default: all.
    #[arg(long = "suite", value_name = "NAME")]
    suites: Vec<String>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Directory receiving records.jsonl and summary.json.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
    #[arg(long)]
    max_dimension: Option<usize>,
    #[arg(long)]
    max_degree: Option<u32>,
    /// Comma-separated rationals, e.g. "1/2,1,3/2".
    #[arg(long)]
    kappa_set: Option<String>,
    /// Random tuples for the commutativity and geometry suites.
    #[arg(long)]
    samples: Option<usize>,
    /// Tolerance override NAME=VALUE; repeatable.
    #[arg(long = "tolerance", value_name = "NAME=VALUE")]
    tolerances: Vec<String>,
    #[arg(long, group = "fault")]
    perturb_kappa: bool,
    #[arg(long, group = "fault")]
    perturb_root: bool,
    #[arg(long, group = "fault")]
    drop_projection: bool,
    /// Keep per-check timings in the records (breaks byte-for-byte reproducibility).
    #[arg(long)]
    timing: bool,
    /// Print every record to stdout as JSON lines.
    #[arg(long)]
    jsonl: bool,
}

fn config_from(args: &VerifyArgs) -> Result<SuiteConfig> {
    let mut config = SuiteConfig { seed: args.seed, ..SuiteConfig::default() };
    if !args.suites.is_empty() {
        config.suites = args.suites.iter().map(|s| s.parse::<Suite>()).collect::<Result<_, _>>()?;
    }
    if let Some(d) = args.max_dimension {
        config.max_dimension = d;
    }
    if let Some(d) = args.max_degree {
        config.max_degree = d;
    }
    if let Some(k) = &args.kappa_set {
        config.kappa_set = k.split(',').map(parse_rational).collect::<Result<_, _>>().context("kappa_set")?;
    }
    if let Some(s) = args.samples {
        config.samples = s;
    }
    for t in &args.tolerances {
        let Some((name, value)) = t.split_once('=') else {
            bail!("tolerance '{t}' must look like NAME=VALUE");
        };
        let value: f64 = value.trim().parse().with_context(|| format!("tolerance {name}"))?;
        config.tolerances.set(name.trim(), value)?;
    }
    config.fault = if args.perturb_kappa {
        Some(Fault::PerturbKappa)
    } else if args.perturb_root {
        Some(Fault::PerturbRoot)
    } else if args.drop_projection {
        Some(Fault::DropProjection)
    } else {
        None
    };
    config.validate()?;
    Ok(config)
}

fn verify(args: &VerifyArgs) -> Result<bool> {
    let config = config_from(args)?;
    let report = run_suites(&config)?;
    if let Some(dir) = &args.out {
        report.write(dir, args.timing).with_context(|| format!("writing report to {}", dir.display()))?;
    }
    if args.jsonl {
        print!("{}", report.to_jsonl(args.timing));
    }
    for s in &report.summary.suites {
        eprintln!("{:<15} {:>5} passed {:>5} failed", s.suite, s.passed, s.failed);
    }
    for r in report.failures() {
        let witness = r.witness.as_ref().map(|w| w.to_string()).unwrap_or_default();
        eprintln!("FAIL {}/{} [{}]: {}\n     witness: {}", r.suite, r.name, &r.inputs_digest[..12], r.detail, witness);
    }
    eprintln!("total: {} passed, {} failed", report.summary.passed, report.summary.failed);
    Ok(report.all_passed())
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Verify(args) => verify(&args),
        Command::Eval(cmd) => eval::run(cmd).map(|()| true),
        Command::Transform(args) => numeric::transform(&args).map(|()| true),
        Command::Grid(args) => numeric::grid(&args).map(|()| true),
        Command::Quadrature(args) => numeric::quadrature(&args).map(|()| true),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(e) = Precision::from_env() {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
