//! Confluent hypergeometric functions M(a, b; z), the normalized function
//! bold M_kappa(z) = M(1, kappa + 1; z) / Gamma(kappa + 1), and the
//! eigenfunctions of the projection-type operators built from them.

mod checks;
mod eigen;
mod integral;
mod series;

use libm::tgamma as gamma;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::precision::Precision;

pub use checks::{
    bound_grid, decay_profile, derivative_bound, generalized_ode_residual, grid_csv, series_integral_agreement,
    BoundSample, DecayProfile,
};
pub use eigen::{eigen_multivar, EigenFamily, KummerEigen, MultivarEigenfunction};

/// Above this modulus the integral representation replaces the series when
/// it applies.
pub const SWITCH_RADIUS: f64 = 40.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KummerParams {
    pub a: Complex64,
    pub b: Complex64,
    pub series_tolerance: f64,
    pub max_terms: usize,
}

fn is_pole(b: Complex64) -> bool {
    b.im == 0.0 && b.re <= 0.0 && b.re.fract() == 0.0
}

impl KummerParams {
    pub const DEFAULT_TOLERANCE: f64 = 1e-17;
    pub const DEFAULT_MAX_TERMS: usize = 2000;

    pub fn new(a: Complex64, b: Complex64) -> Result<Self> {
        Self::with_limits(a, b, Self::DEFAULT_TOLERANCE, Self::DEFAULT_MAX_TERMS)
    }

    pub fn real(a: f64, b: f64) -> Result<Self> {
        Self::new(Complex64::new(a, 0.0), Complex64::new(b, 0.0))
    }

    pub fn with_limits(a: Complex64, b: Complex64, series_tolerance: f64, max_terms: usize) -> Result<Self> {
        if is_pole(b) {
            return Err(Error::GammaPole(format!("b = {}", b.re)));
        }
        if !(series_tolerance > 0.0 && series_tolerance <= 1e-10) {
            return Err(Error::invalid("series tolerance must lie in (0, 1e-10]"));
        }
        if max_terms < 50 {
            return Err(Error::invalid("max_terms must be at least 50"));
        }
        Ok(Self { a, b, series_tolerance, max_terms })
    }

    fn integral_applies(&self) -> bool {
        self.a.im == 0.0 && self.b.im == 0.0 && self.b.re > self.a.re && self.a.re > 0.0
    }
}

/// M(a, b; z) with the process-wide precision.
pub fn kummer_m(params: &KummerParams, z: Complex64) -> Result<Complex64> {
    kummer_m_with(params, z, Precision::current())
}

pub fn kummer_m_with(params: &KummerParams, z: Complex64, precision: Precision) -> Result<Complex64> {
    if z.norm() > SWITCH_RADIUS {
        if params.a == params.b {
            return Ok(z.exp());
        }
        if params.integral_applies() {
            return integral::integral_path(params.a.re, params.b.re, z);
        }
    }
    series::sum_series(params, z, precision)
}

/// M(a, b; z) by the power series regardless of |z|.
pub fn kummer_m_series(params: &KummerParams, z: Complex64, precision: Precision) -> Result<Complex64> {
    series::sum_series(params, z, precision)
}

/// M(a, b; z) by the integral representation; needs real b > a > 0.
pub fn kummer_m_integral(a: f64, b: f64, z: Complex64) -> Result<Complex64> {
    integral::integral_path(a, b, z)
}

fn check_kappa(kappa: f64) -> Result<()> {
    if !(kappa > -1.0) || !kappa.is_finite() {
        return Err(Error::invalid(format!("kappa must exceed -1, got {kappa}")));
    }
    Ok(())
}

/// M_kappa(z) = M(1, kappa + 1; z), the eigenfunction normalized by f(0) = 1.
pub fn m_kappa(kappa: f64, z: Complex64) -> Result<Complex64> {
    check_kappa(kappa)?;
    kummer_m(&KummerParams::real(1.0, kappa + 1.0)?, z)
}

/// bold M_kappa(z) = sum z^n / Gamma(kappa + 1 + n).
pub fn bold_m(kappa: f64, z: Complex64) -> Result<Complex64> {
    Ok(m_kappa(kappa, z)? / gamma(kappa + 1.0))
}

/// n-th derivative of bold M_kappa:
/// n! / Gamma(kappa + n + 1) M(n + 1, kappa + n + 1; z).
pub fn bold_m_derivative(kappa: f64, n: u32, z: Complex64) -> Result<Complex64> {
    check_kappa(kappa)?;
    let nf = n as f64;
    let params = KummerParams::real(nf + 1.0, kappa + nf + 1.0)?;
    let factorial: f64 = (1..=n).map(|j| j as f64).product();
    Ok(kummer_m(&params, z)? * (factorial / gamma(kappa + nf + 1.0)))
}

/// k-th derivative in z of M(1, kappa + 1; z): (1)_k / (kappa + 1)_k M(1 + k, kappa + 1 + k; z).
pub fn m_kappa_derivative(kappa: f64, k: u32, z: Complex64) -> Result<Complex64> {
    check_kappa(kappa)?;
    let kf = k as f64;
    let mut ratio = 1.0;
    for j in 0..k {
        ratio *= (1.0 + j as f64) / (kappa + 1.0 + j as f64);
    }
    Ok(kummer_m(&KummerParams::real(1.0 + kf, kappa + 1.0 + kf)?, z)? * ratio)
}

/// bold M_kappa(z) for large |z| off the positive real axis from the
/// asymptotic expansion
/// bold M_kappa(z) ~ e^z z^(-kappa) - 1 / (Gamma(kappa) z) sum_s (1 - kappa)_s (-z)^(-s),
/// which terminates for integer kappa >= 1. The sum is cut at its smallest
/// term; if that term is not below the tolerance the expansion is rejected.
pub fn bold_m_asymptotic(kappa: f64, z: Complex64) -> Result<Complex64> {
    check_kappa(kappa)?;
    if z.re > 0.0 && z.im.abs() < z.re {
        return Err(Error::invalid("asymptotic expansion used only for |arg z| >= pi/4"));
    }
    let head = z.exp() * z.powf(-kappa);
    if kappa == 0.0 {
        return Ok(head);
    }
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut s = 0.0;
    loop {
        let next = term * (1.0 - kappa + s) / (-z);
        s += 1.0;
        if next.norm() == 0.0 || next.norm() <= KummerParams::DEFAULT_TOLERANCE * sum.norm() {
            sum += next;
            break;
        }
        if next.norm() >= term.norm() {
            return Err(Error::NonConvergence(s as usize));
        }
        sum += next;
        term = next;
    }
    Ok(head - sum / (gamma(kappa) * z))
}

/// The rank-one eigenfunction x -> M(1, kappa + 1; i lambda x).
pub fn eigen_rank_one(kappa: f64, lambda: f64, x: f64) -> Result<Complex64> {
    m_kappa(kappa, Complex64::new(0.0, lambda * x))
}
