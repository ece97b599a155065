//! M(a, b; z) from its Beta-weighted integral for real b > a > 0:
//! Gamma(b) / (Gamma(a) Gamma(b - a)) int_0^1 t^(a-1) (1-t)^(b-a-1) e^(zt) dt.

use libm::lgamma as ln_gamma;
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::quadrature::{jacobi_rule, legendre};

const PANEL_ORDER: usize = 30;

pub(crate) fn integral_path(a: f64, b: f64, z: Complex64) -> Result<Complex64> {
    if !(a > 0.0 && b > a) {
        return Err(Error::invalid(format!("integral representation needs b > a > 0, got a={a}, b={b}")));
    }
    let c = b - a;
    let panels = ((z.norm() / 10.0).ceil() as usize).max(2);
    let h = 1.0 / panels as f64;
    let mut acc = Complex64::new(0.0, 0.0);

    // [0, h]: t = h u, weight u^(a-1) absorbed by the rule.
    let first = jacobi_rule(PANEL_ORDER, 0.0, a - 1.0)?;
    let scale = h.powf(a);
    acc += first.integrate_complex(|u| {
        let t = h * u;
        (z * t).exp() * (1.0 - t).powf(c - 1.0)
    }) * scale;

    let mid = legendre(PANEL_ORDER)?;
    for p in 1..panels - 1 {
        let lo = h * p as f64;
        acc += mid.integrate_complex(|u| {
            let t = lo + h * u;
            (z * t).exp() * t.powf(a - 1.0) * (1.0 - t).powf(c - 1.0)
        }) * h;
    }

    // [1 - h, 1]: 1 - t = h (1 - u), weight (1 - u)^(c-1) absorbed.
    let last = jacobi_rule(PANEL_ORDER, c - 1.0, 0.0)?;
    let scale = h.powf(c);
    acc += last.integrate_complex(|u| {
        let t = 1.0 - h * (1.0 - u);
        (z * t).exp() * t.powf(a - 1.0)
    }) * scale;

    let norm = (ln_gamma(b) - ln_gamma(a) - ln_gamma(c)).exp();
    Ok(acc * norm)
}
