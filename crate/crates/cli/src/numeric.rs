use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};
use projdunkl_core::kummer::grid_csv;
use projdunkl_core::quadrature::JacobiQuadrature;
use projdunkl_core::rational::{parse_rational, to_f64};
use projdunkl_core::testfn::catalog;
use projdunkl_core::transform::{
    c0_decay_check, factorization_check, kummer_transform, transform_csv, TransformRequest, DEFAULT_ORDER,
};

#[derive(Clone, Copy, ValueEnum)]
pub enum Report {
    /// CSV of the transform values.
    Csv,
    /// JSON comparison with F(tchi f) on the grid.
    Factorization,
    /// JSON decay report at lambda = 10, 100, 1000 (grid ignored).
    Decay,
}

#[derive(Args)]
pub struct TransformArgs {
    /// Catalog function: bump, gaussian, indicator, smooth_indicator, shifted_bump.
    #[arg(long)]
    function: String,
    #[arg(long)]
    kappa: String,
    /// Grid as LO:HI:STEP or a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    #[arg(long, default_value_t = DEFAULT_ORDER)]
    order: usize,
    #[arg(long, value_enum, default_value = "csv")]
    report: Report,
}

#[derive(Args)]
pub struct GridArgs {
    /// Comma-separated multiplicities.
    #[arg(long)]
    kappa: String,
    /// LO:HI:STEP or a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    lambda: String,
    /// LO:HI:STEP or a comma-separated list.
    #[arg(long, allow_hyphen_values = true)]
    x: String,
}

#[derive(Args)]
pub struct QuadratureArgs {
    #[arg(long)]
    kappa: String,
    #[arg(long, default_value_t = 20)]
    order: usize,
}

fn number(text: &str) -> Result<f64> {
    let t = text.trim();
    if t.eq_ignore_ascii_case("pi") {
        return Ok(std::f64::consts::PI);
    }
    match t.parse::<f64>() {
        Ok(v) => Ok(v),
        Err(_) => Ok(to_f64(&parse_rational(t).with_context(|| format!("'{t}' is not a number"))?)),
    }
}

/// `LO:HI:STEP` (inclusive, step > 0) or `a,b,c`.
pub fn parse_grid(text: &str) -> Result<Vec<f64>> {
    let parts: Vec<&str> = text.split(':').collect();
    match parts.as_slice() {
        [lo, hi, step] => {
            let (lo, hi, step) = (number(lo)?, number(hi)?, number(step)?);
            if step.is_nan() || step <= 0.0 || hi < lo {
                bail!("grid '{text}' needs LO <= HI and STEP > 0");
            }
            let n = ((hi - lo) / step + 1e-9).floor() as usize;
            if n > 1_000_000 {
                bail!("grid '{text}' has more than a million points");
            }
            Ok((0..=n).map(|k| lo + step * k as f64).collect())
        }
        [_] => text.split(',').map(number).collect(),
        _ => bail!("grid '{text}' must be LO:HI:STEP or a comma-separated list"),
    }
}

pub fn transform(args: &TransformArgs) -> Result<()> {
    let f = catalog(&args.function)?;
    let kappa = number(&args.kappa)?;
    let lambdas = parse_grid(&args.lambda)?;
    let req = TransformRequest::with_order(kappa, f.as_ref(), lambdas.clone(), args.order)?;
    match args.report {
        Report::Csv => print!("{}", transform_csv(&lambdas, &kummer_transform(&req)?)),
        Report::Factorization => println!("{}", serde_json::to_string_pretty(&factorization_check(&req)?)?),
        Report::Decay => println!("{}", serde_json::to_string_pretty(&c0_decay_check(kappa, f.as_ref(), args.order)?)?),
    }
    Ok(())
}

pub fn grid(args: &GridArgs) -> Result<()> {
    let kappas = args.kappa.split(',').map(number).collect::<Result<Vec<_>>>()?;
    print!("{}", grid_csv(&kappas, &parse_grid(&args.lambda)?, &parse_grid(&args.x)?)?);
    Ok(())
}

pub fn quadrature(args: &QuadratureArgs) -> Result<()> {
    let kappa = parse_rational(&args.kappa).context("--kappa")?;
    println!("{}", JacobiQuadrature::new(&kappa, args.order)?.to_json());
    Ok(())
}
