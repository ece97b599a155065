//! Residuals, bounds and grids for the Kummer functions.

use num_complex::Complex64;
use serde::Serialize;

use super::{bold_m, bold_m_derivative, kummer_m_integral, kummer_m_series, KummerParams};
use crate::error::Result;
use crate::precision::Precision;
use crate::testfn::Univariate;

/// x u'' + (kappa + 1) u' - i lambda (x u' + u).
pub fn generalized_ode_residual(kappa: f64, lambda: f64, u: &dyn Univariate, x: f64) -> Result<Complex64> {
    let u0 = u.derivative(x, 0)?;
    let u1 = u.derivative(x, 1)?;
    let u2 = u.derivative(x, 2)?;
    let il = Complex64::new(0.0, lambda);
    Ok(u2 * x + u1 * (kappa + 1.0) - il * (u1 * x + u0))
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct BoundSample {
    pub kappa: f64,
    /// The product lambda x.
    pub t: f64,
    pub abs: f64,
}

/// |bold M_kappa(i t)| at `points` equally spaced t in [-t_max, t_max].
pub fn bound_grid(kappa: f64, points: usize, t_max: f64) -> Result<Vec<BoundSample>> {
    let step = if points > 1 { 2.0 * t_max / (points - 1) as f64 } else { 0.0 };
    (0..points)
        .map(|k| {
            let t = -t_max + step * k as f64;
            Ok(BoundSample { kappa, t, abs: bold_m(kappa, Complex64::new(0.0, t))?.norm() })
        })
        .collect()
}

/// Returns (|bold M^{(n)}_kappa(z)|, |z|^n e^{Re z}).
pub fn derivative_bound(kappa: f64, n: u32, z: Complex64) -> Result<(f64, f64)> {
    let lhs = bold_m_derivative(kappa, n, z)?.norm();
    let rhs = z.norm().powi(n as i32) * z.re.exp();
    Ok((lhs, rhs))
}

/// Relative gap between the series and the integral representation of
/// M(1, kappa + 1; i y).
pub fn series_integral_agreement(kappa: f64, y: f64, precision: Precision) -> Result<f64> {
    let z = Complex64::new(0.0, y);
    let params = KummerParams::real(1.0, kappa + 1.0)?;
    let s = kummer_m_series(&params, z, precision)?;
    let i = kummer_m_integral(1.0, kappa + 1.0, z)?;
    Ok((s - i).norm() / i.norm())
}

#[derive(Debug, Clone, Serialize)]
pub struct DecayProfile {
    pub kappa: f64,
    pub x: f64,
    pub lambdas: Vec<f64>,
    pub abs: Vec<f64>,
    pub monotone: bool,
}

/// |bold M_kappa(i lambda x)| along a lambda sequence.
pub fn decay_profile(kappa: f64, x: f64, lambdas: &[f64]) -> Result<DecayProfile> {
    let abs =
        lambdas.iter().map(|l| Ok(bold_m(kappa, Complex64::new(0.0, l * x))?.norm())).collect::<Result<Vec<_>>>()?;
    let monotone = abs.windows(2).all(|w| w[1] < w[0]);
    Ok(DecayProfile { kappa, x, lambdas: lambdas.to_vec(), abs, monotone })
}

/// CSV `kappa,lambda,x,re,im,abs` of bold M_kappa(i lambda x) over the product grid.
pub fn grid_csv(kappas: &[f64], lambdas: &[f64], xs: &[f64]) -> Result<String> {
    let mut out = String::from("kappa,lambda,x,re,im,abs\n");
    for &kappa in kappas {
        for &lambda in lambdas {
            for &x in xs {
                let v = bold_m(kappa, Complex64::new(0.0, lambda * x))?;
                out.push_str(&format!("{kappa},{lambda},{x},{:e},{:e},{:e}\n", v.re, v.im, v.norm()));
            }
        }
    }
    Ok(out)
}
