//! The rank-one operator T f(x) = f'(x) + kappa (f(x) - f(0)) / x on the line.

use num_complex::Complex64;

use crate::error::{check_dim, Error, Result};
use crate::poly::MPoly;
use crate::rational::Rational;
use crate::rootgeom::RationalVector;
use crate::testfn::Univariate;

/// Below this |x| the closed form of T^2 is replaced by its Taylor expansion.
const SMALL_X: f64 = 1e-4;

/// Exact T p for a polynomial in one variable.
pub fn one_var_t_poly(kappa: &Rational, p: &MPoly) -> Result<MPoly> {
    check_dim(1, p.dim())?;
    let f0 = p.coefficient(&[0]);
    let shifted = p.checked_sub(&MPoly::constant(1, f0))?;
    let mut out = p.partial(0);
    out.add_scaled(&shifted.div_linear_form(&RationalVector::from_ints(&[1]))?, kappa);
    Ok(out)
}

/// T f(x), with the continuous value (1 + kappa) f'(0) at the origin.
pub fn one_var_t_numeric(kappa: f64, f: &dyn Univariate, x: f64) -> Result<Complex64> {
    if x == 0.0 {
        return Ok(f.derivative(0.0, 1)? * (1.0 + kappa));
    }
    Ok(f.derivative(x, 1)? + (f.value(x)? - f.value(0.0)?) * (kappa / x))
}

/// T^2 f(x) = f'' + 2 kappa f' / x + kappa (kappa - 1) (f - f(0)) / x^2
///            - kappa (kappa + 1) f'(0) / x.
///
/// Near the origin the terms cancel; there the Taylor coefficients of f at 0
/// are used instead, T^2 x^k = (k + kappa)(k - 1 + kappa) x^(k-2).
pub fn one_var_t_squared(kappa: f64, f: &dyn Univariate, x: f64) -> Result<Complex64> {
    if x.abs() < SMALL_X {
        match taylor_t_squared(kappa, f, x) {
            Ok(v) => return Ok(v),
            Err(Error::DerivativeOrder { .. }) if x != 0.0 => {}
            Err(e) => return Err(e),
        }
    }
    let f0 = f.value(0.0)?;
    let d0 = f.derivative(0.0, 1)?;
    let v = f.value(x)?;
    let d1 = f.derivative(x, 1)?;
    let d2 = f.derivative(x, 2)?;
    Ok(d2 + d1 * (2.0 * kappa / x) + (v - f0) * (kappa * (kappa - 1.0) / (x * x)) - d0 * (kappa * (kappa + 1.0) / x))
}

fn taylor_t_squared(kappa: f64, f: &dyn Univariate, x: f64) -> Result<Complex64> {
    let mut out = f.derivative(0.0, 2)? * ((2.0 + kappa) * (1.0 + kappa) / 2.0);
    if x == 0.0 {
        return Ok(out);
    }
    let mut factorial = 2.0;
    for k in 3..=4usize {
        factorial *= k as f64;
        let kf = k as f64;
        out += f.derivative(0.0, k)? * ((kf + kappa) * (kf - 1.0 + kappa) / factorial * x.powi(k as i32 - 2));
    }
    Ok(out)
}

/// T f as a function, carrying value and first derivative so that T can be
/// applied to it again.
#[derive(Debug)]
pub struct OneVarT<'a> {
    pub kappa: f64,
    pub inner: &'a dyn Univariate,
}

impl Univariate for OneVarT<'_> {
    fn name(&self) -> String {
        format!("T[{}]({})", self.kappa, self.inner.name())
    }

    fn derivative(&self, x: f64, order: usize) -> Result<Complex64> {
        let f = self.inner;
        match order {
            0 => one_var_t_numeric(self.kappa, f, x),
            // (T f)'(x) = f'' + kappa (x f' - (f - f(0))) / x^2, and
            // (1 + kappa / 2) f''(0) at the origin.
            1 if x == 0.0 => Ok(f.derivative(0.0, 2)? * (1.0 + self.kappa / 2.0)),
            1 => {
                let num = f.derivative(x, 1)? * x - (f.value(x)? - f.value(0.0)?);
                Ok(f.derivative(x, 2)? + num * (self.kappa / (x * x)))
            }
            _ => Err(Error::DerivativeOrder { function: self.name(), order }),
        }
    }
}

/// T (T f)(x) by applying the first-order operator twice.
pub fn one_var_t_twice(kappa: f64, f: &dyn Univariate, x: f64) -> Result<Complex64> {
    one_var_t_numeric(kappa, &OneVarT { kappa, inner: f }, x)
}
