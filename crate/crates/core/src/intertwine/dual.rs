//! The dual intertwiner
//! tchi g(x) = 1 / Gamma(kappa) int_{|x|}^{A} (t - |x|)^(kappa - 1) t^(-kappa) g(sgn(x) t) dt
//! for g supported in [-A, A] and x != 0.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{jacobi_rule, legendre};
use crate::testfn::Univariate;

/// Number of uniform panels covering [|x|, A] away from the endpoint.
pub const DUAL_PANELS: usize = 24;

/// With s = t - |x| the integrand is s^(kappa-1) (|x| + s)^(-kappa) g(sgn(x)(|x| + s)).
/// The factor (|x| + s)^(-kappa) varies on the scale |x|, so panels grow
/// geometrically from min(|x|, L / DUAL_PANELS) before turning uniform; the
/// first panel carries the Jacobi weight s^(kappa - 1).
pub fn dual_chi(g: &dyn Univariate, kappa: f64, x: f64, order: usize) -> Result<Complex64> {
    if !(kappa > 0.0) {
        return Err(Error::invalid(format!("kappa must be positive, got {kappa}")));
    }
    if x == 0.0 || !x.is_finite() {
        return Err(Error::Domain { function: "dual_chi".into(), point: format!("{x}") });
    }
    let (lo, hi) = g.support().ok_or_else(|| Error::invalid(format!("{} has no compact support", g.name())))?;
    let sign = x.signum();
    let a = if sign > 0.0 { hi } else { -lo };
    let ax = x.abs();
    if ax >= a {
        return Ok(Complex64::new(0.0, 0.0));
    }
    let len = a - ax;
    let uniform = len / DUAL_PANELS as f64;
    let mut cuts = vec![0.0, ax.min(uniform)];
    while *cuts.last().unwrap() < uniform {
        let next = (2.0 * cuts.last().unwrap()).min(uniform);
        cuts.push(next);
    }
    for k in 2..=DUAL_PANELS {
        cuts.push(if k == DUAL_PANELS { len } else { uniform * k as f64 });
    }
    let smooth = |s: f64| -> Result<Complex64> {
        let t = ax + s;
        Ok(g.value(sign * t)? * t.powf(-kappa))
    };

    let h0 = cuts[1];
    let first = jacobi_rule(order, 0.0, kappa - 1.0)?;
    let mut acc = first.try_integrate_complex(|u| smooth(h0 * u))? * h0.powf(kappa);
    let rule = legendre(order)?;
    for w in cuts[1..].windows(2) {
        let (s0, h) = (w[0], w[1] - w[0]);
        acc += rule.try_integrate_complex(|u| {
            let s = s0 + h * u;
            Ok(smooth(s)? * s.powf(kappa - 1.0))
        })? * h;
    }
    Ok(acc / libm::tgamma(kappa))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::testfn::{Bump, SmoothIndicator};

    #[test]
    fn outside_support_is_zero() {
        let b = Bump::unit();
        assert_eq!(dual_chi(&b, 0.5, 2.0, 20).unwrap(), Complex64::new(0.0, 0.0));
        assert_eq!(dual_chi(&b, 0.5, -1.0, 20).unwrap(), Complex64::new(0.0, 0.0));
        assert!(dual_chi(&b, 0.5, 0.0, 20).is_err());
        assert!(dual_chi(&b, 0.0, 0.5, 20).is_err());
    }

    #[test]
    fn small_arguments_resolve_the_endpoint_scale() {
        // g = 1 on [-1, 1] region around the origin, kappa = 1:
        // tchi g(x) = int_x^A g(t) / t dt ~ -ln x for small x
        let g = SmoothIndicator { a: -1.0, b: 1.0, ramp: 0.5 };
        let base = dual_chi(&g, 1.0, 0.5, 30).unwrap().re;
        for x in [1e-3, 1e-6, 1e-9] {
            let v = dual_chi(&g, 1.0, x, 30).unwrap().re;
            let want = base + (0.5f64 / x).ln();
            assert!((v - want).abs() < 1e-10, "{x}: {v} vs {want}");
        }
    }

    #[test]
    fn kappa_one_is_weighted_average() {
        // kappa = 1: int_x^A g(t) / t dt, compared with a fine midpoint sum
        let g = SmoothIndicator { a: 1.0, b: 3.0, ramp: 0.25 };
        let x = 2.0;
        let got = dual_chi(&g, 1.0, x, 30).unwrap();
        let n = 400_000;
        let (_, hi) = g.support().unwrap();
        let step = (hi - x) / n as f64;
        let want: f64 = (0..n)
            .map(|k| {
                let t = x + step * (k as f64 + 0.5);
                g.value(t).unwrap().re / t * step
            })
            .sum();
        assert!((got.re - want).abs() < 1e-8, "{got} vs {want}");
    }
}
