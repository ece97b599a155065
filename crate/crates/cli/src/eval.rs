use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand, ValueEnum};
use num_complex::Complex64;
use projdunkl_core::gamma_ratio::GammaPoly;
use projdunkl_core::intertwine::{chi_poly_scaled, ek_left_inverse_d, erdelyi_kober_i};
use projdunkl_core::kummer::{bold_m, kummer_m, KummerParams};
use projdunkl_core::opengine::ProjectionDunklOperator;
use projdunkl_core::poly::parse_poly;
use projdunkl_core::rational::{parse_rational, to_f64, Rational};
use projdunkl_core::rootgeom::{
    build_subsystem_a, build_subsystem_b, build_subsystem_direct, OrthogonalSubsystem, RationalVector,
};

#[derive(Subcommand)]
pub enum EvalCommand {
    /// T_xi p, exact.
    #[command(name = "T")]
    T(TArgs),
    /// prod Gamma(kappa_j + 1) chi p, exact, with its scale.
    #[command(name = "chi")]
    Chi(ChiArgs),
    /// bold M_kappa(z) = M(1, kappa + 1; z) / Gamma(kappa + 1).
    #[command(name = "M")]
    M(MArgs),
    /// Erdélyi–Kober I^{gamma,delta} p, or its left inverse D^{gamma,delta}.
    #[command(name = "EK")]
    Ek(EkArgs),
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Family {
    /// Coordinate roots e_1, ..., e_N.
    Direct,
    /// e_{2i-1} - e_{2i}.
    A,
    /// e_{2i-1} + e_{2i} and e_{2i-1} - e_{2i}, interleaved.
    B,
}

#[derive(Args)]
pub struct SubsystemArgs {
    /// Multiplicities in subsystem order, comma separated; a single value applies to every root.
    #[arg(long)]
    kappa: String,
    #[arg(long, value_enum, default_value = "direct")]
    family: Family,
    /// Subsystem as JSON {"dim":..,"roots":[..],"kappas":[..]}; overrides --family and --kappa.
    #[arg(long)]
    subsystem: Option<String>,
}

#[derive(Args)]
pub struct TArgs {
    #[command(flatten)]
    system: SubsystemArgs,
    #[arg(long)]
    poly: String,
    /// Direction, e.g. "(1, -1/2)"; its length fixes the dimension.
    #[arg(long)]
    xi: String,
}

#[derive(Args)]
pub struct ChiArgs {
    #[command(flatten)]
    system: SubsystemArgs,
    #[arg(long)]
    poly: String,
    /// Dimension; defaults to the largest variable index in the polynomial.
    #[arg(long)]
    dim: Option<usize>,
}

#[derive(Args)]
pub struct MArgs {
    #[arg(long)]
    kappa: String,
    /// Complex argument such as "1", "2.5i" or "-1+3i".
    #[arg(long, allow_hyphen_values = true)]
    z: String,
    /// Print M(1, kappa + 1; z) without the 1 / Gamma(kappa + 1) factor.
    #[arg(long)]
    unnormalized: bool,
}

#[derive(Args)]
pub struct EkArgs {
    #[arg(long, allow_hyphen_values = true)]
    gamma: String,
    #[arg(long)]
    delta: String,
    /// One-variable polynomial in x1.
    #[arg(long)]
    poly: String,
    /// Apply D^{gamma,delta} instead of I^{gamma,delta}.
    #[arg(long)]
    inverse: bool,
    /// Also print the value at this point.
    #[arg(long, allow_hyphen_values = true)]
    x: Option<f64>,
}

fn kappas(text: &str, count: usize) -> Result<Vec<Rational>> {
    let given: Vec<Rational> = text.split(',').map(parse_rational).collect::<Result<_, _>>().context("--kappa")?;
    match given.len() {
        1 => Ok(vec![given[0].clone(); count]),
        n if n == count => Ok(given),
        n => bail!("--kappa has {n} values but the subsystem has {count} roots"),
    }
}

fn subsystem(args: &SubsystemArgs, dim: usize) -> Result<OrthogonalSubsystem> {
    if let Some(json) = &args.subsystem {
        let s = OrthogonalSubsystem::from_json(json)?;
        if s.dim() != dim {
            bail!("subsystem has dimension {} but the input has dimension {dim}", s.dim());
        }
        return Ok(s);
    }
    Ok(match args.family {
        Family::Direct => build_subsystem_direct(dim, kappas(&args.kappa, dim)?)?,
        Family::A => build_subsystem_a(dim, kappas(&args.kappa, dim / 2)?)?,
        Family::B => {
            let k = kappas(&args.kappa, 2 * (dim / 2))?;
            let plus = k.iter().step_by(2).cloned().collect();
            let minus = k.iter().skip(1).step_by(2).cloned().collect();
            build_subsystem_b(dim, plus, minus)?
        }
    })
}

pub fn parse_complex(text: &str) -> Result<Complex64> {
    let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = || anyhow::anyhow!("cannot parse complex number '{text}'");
    let Some(body) = s.strip_suffix('i') else {
        return s.parse::<f64>().map(|re| Complex64::new(re, 0.0)).map_err(|_| bad());
    };
    // split before the last sign that is not an exponent sign
    let bytes = body.as_bytes();
    let split = (1..bytes.len())
        .rev()
        .find(|&k| (bytes[k] == b'+' || bytes[k] == b'-') && !matches!(bytes[k - 1], b'e' | b'E'));
    let (re, im) = match split {
        Some(k) => (&body[..k], &body[k..]),
        None => ("0", body),
    };
    let im = match im {
        "" | "+" => 1.0,
        "-" => -1.0,
        t => t.parse::<f64>().map_err(|_| bad())?,
    };
    Ok(Complex64::new(re.parse::<f64>().map_err(|_| bad())?, im))
}

pub fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{}", z.re)
    } else if z.im < 0.0 {
        format!("{}-{}i", z.re, -z.im)
    } else {
        format!("{}+{}i", z.re, z.im)
    }
}

pub fn run(cmd: EvalCommand) -> Result<()> {
    match cmd {
        EvalCommand::T(a) => {
            let xi: RationalVector = a.xi.parse().context("--xi")?;
            let p = parse_poly(&a.poly, Some(xi.dim())).context("--poly")?;
            let op = ProjectionDunklOperator::new(subsystem(&a.system, xi.dim())?, xi)?;
            println!("{}", op.apply_poly(&p)?);
        }
        EvalCommand::Chi(a) => {
            let p = parse_poly(&a.poly, a.dim).context("--poly")?;
            let s = subsystem(&a.system, p.dim())?;
            let chi = chi_poly_scaled(&p, &s)?;
            println!("{} (scale: {})", chi.poly, chi.scale);
        }
        EvalCommand::M(a) => {
            let kappa = to_f64(&parse_rational(&a.kappa).context("--kappa")?);
            let z = parse_complex(&a.z)?;
            let v =
                if a.unnormalized { kummer_m(&KummerParams::real(1.0, kappa + 1.0)?, z)? } else { bold_m(kappa, z)? };
            println!("{}", format_complex(v));
        }
        EvalCommand::Ek(a) => {
            let gamma = parse_rational(&a.gamma).context("--gamma")?;
            let delta = parse_rational(&a.delta).context("--delta")?;
            let p = GammaPoly::from_mpoly(&parse_poly(&a.poly, Some(1)).context("--poly")?)?;
            let q =
                if a.inverse { ek_left_inverse_d(&p, &gamma, &delta)? } else { erdelyi_kober_i(&p, &gamma, &delta)? };
            println!("{q}");
            if let Some(x) = a.x {
                println!("{}", q.eval_f64(x));
            }
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complex_forms() {
        assert_eq!(parse_complex("1").unwrap(), Complex64::new(1.0, 0.0));
        assert_eq!(parse_complex("2.5i").unwrap(), Complex64::new(0.0, 2.5));
        assert_eq!(parse_complex("-i").unwrap(), Complex64::new(0.0, -1.0));
        assert_eq!(parse_complex("-1 + 3i").unwrap(), Complex64::new(-1.0, 3.0));
        assert_eq!(parse_complex("1e-3-2e+1i").unwrap(), Complex64::new(1e-3, -20.0));
        assert!(parse_complex("1+").is_err());
        assert_eq!(format_complex(Complex64::new(1.5, -2.0)), "1.5-2i");
    }
}
