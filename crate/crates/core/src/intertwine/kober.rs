//! Erdélyi–Kober fractional integrals
//! I^{gamma,delta} f(x) = 1 / Gamma(delta) int_0^1 (1 - t)^(delta - 1) t^gamma f(t x) dt,
//! their left inverses D^{gamma,delta} = prod_{k=1}^{n} (gamma + k + x d/dx) I^{gamma+delta, n-delta}
//! with n = ceil(delta), and the one-variable intertwiner chi = I^{0,kappa}.
//!
//! All of them act diagonally on monomials, which the exact versions exploit:
//! I^{gamma,delta} x^m = Gamma(gamma + m + 1) / Gamma(gamma + m + delta + 1) x^m
//! and x d/dx x^m = m x^m.

use num_complex::Complex64;
use num_traits::{Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::gamma_ratio::{GammaPoly, GammaRatio};
use crate::quadrature::jacobi_rule;
use crate::rational::{ceil, int, Rational};
use crate::testfn::Univariate;

fn check_delta(delta: &Rational) -> Result<()> {
    if delta.is_negative() {
        return Err(Error::invalid(format!("delta must be nonnegative, got {delta}")));
    }
    Ok(())
}

fn ceil_u32(delta: &Rational) -> Result<u32> {
    ceil(delta).to_u32().ok_or_else(|| Error::invalid(format!("delta {delta} too large")))
}

/// I^{gamma,delta} on a polynomial; delta = 0 is the identity.
pub fn erdelyi_kober_i(p: &GammaPoly, gamma: &Rational, delta: &Rational) -> Result<GammaPoly> {
    check_delta(delta)?;
    if delta.is_zero() {
        return Ok(p.clone());
    }
    p.map_diagonal(|m, c| {
        let top = gamma + int(m as i64 + 1);
        let bottom = &top + delta;
        Ok(c.mul(&GammaRatio::new(int(1), vec![top], vec![bottom])?))
    })
}

/// D^{gamma,delta} on a polynomial.
pub fn ek_left_inverse_d(p: &GammaPoly, gamma: &Rational, delta: &Rational) -> Result<GammaPoly> {
    check_delta(delta)?;
    let n = ceil_u32(delta)?;
    let inner = erdelyi_kober_i(p, &(gamma + delta), &(int(n as i64) - delta))?;
    inner.map_diagonal(|m, c| {
        let mut factor = int(1);
        for k in 1..=n {
            factor *= gamma + int(k as i64 + m as i64);
        }
        Ok(c.scale(&factor))
    })
}

/// chi on one variable, I^{0,kappa}.
pub fn chi_one_var(p: &GammaPoly, kappa: &Rational) -> Result<GammaPoly> {
    if !kappa.is_positive() {
        return Err(Error::invalid(format!("kappa must be positive, got {kappa}")));
    }
    erdelyi_kober_i(p, &int(0), kappa)
}

/// The inverse of chi on one variable, D^{0,kappa}.
pub fn chi_inverse_one_var(p: &GammaPoly, kappa: &Rational) -> Result<GammaPoly> {
    if !kappa.is_positive() {
        return Err(Error::invalid(format!("kappa must be positive, got {kappa}")));
    }
    ek_left_inverse_d(p, &int(0), kappa)
}

/// I^{gamma,delta} f as a function, with derivatives
/// (I^{gamma,delta} f)^(i) = I^{gamma+i,delta} f^(i).
#[derive(Debug)]
pub struct FractionalIntegral<'a> {
    pub gamma: f64,
    pub delta: f64,
    pub inner: &'a dyn Univariate,
    /// Gauss–Jacobi order.
    pub order: usize,
}

impl Univariate for FractionalIntegral<'_> {
    fn name(&self) -> String {
        format!("I[{},{}]({})", self.gamma, self.delta, self.inner.name())
    }

    fn derivative(&self, x: f64, order: usize) -> Result<Complex64> {
        if self.delta == 0.0 {
            return self.inner.derivative(x, order);
        }
        if !(self.delta > 0.0) {
            return Err(Error::invalid(format!("delta must be nonnegative, got {}", self.delta)));
        }
        let g = self.gamma + order as f64;
        let rule = jacobi_rule(self.order, self.delta - 1.0, g)?;
        let v = rule.try_integrate_complex(|t| self.inner.derivative(t * x, order))?;
        Ok(v / libm::tgamma(self.delta))
    }
}

pub fn erdelyi_kober_i_numeric(f: &dyn Univariate, gamma: f64, delta: f64, x: f64, order: usize) -> Result<Complex64> {
    FractionalIntegral { gamma, delta, inner: f, order }.value(x)
}

/// D^{gamma,delta} f(x) for a function with n = ceil(delta) derivatives.
///
/// prod_k (c_k + theta) with theta = x d/dx is expanded in powers of theta,
/// and theta^j = sum_i S(j, i) x^i d^i/dx^i with Stirling numbers of the
/// second kind.
pub fn ek_left_inverse_d_numeric(
    f: &dyn Univariate,
    gamma: f64,
    delta: f64,
    x: f64,
    order: usize,
) -> Result<Complex64> {
    if !(delta >= 0.0) {
        return Err(Error::invalid(format!("delta must be nonnegative, got {delta}")));
    }
    let n = delta.ceil() as usize;
    let u = FractionalIntegral { gamma: gamma + delta, delta: n as f64 - delta, inner: f, order };

    let mut theta_poly = vec![1.0];
    for k in 1..=n {
        let c = gamma + k as f64;
        let mut next = vec![0.0; theta_poly.len() + 1];
        for (j, e) in theta_poly.iter().enumerate() {
            next[j] += c * e;
            next[j + 1] += e;
        }
        theta_poly = next;
    }
    // coefficient of x^i d^i
    let mut stirling = vec![vec![0.0; n + 1]; n + 1];
    stirling[0][0] = 1.0;
    for j in 1..=n {
        for i in 1..=j {
            stirling[j][i] = i as f64 * stirling[j - 1][i] + stirling[j - 1][i - 1];
        }
    }
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..=n {
        let w: f64 = (i..=n).map(|j| theta_poly[j] * stirling[j][i]).sum();
        if w != 0.0 {
            acc += u.derivative(x, i)? * (w * x.powi(i as i32));
        }
    }
    Ok(acc)
}

pub fn chi_one_var_numeric(f: &dyn Univariate, kappa: f64, x: f64, order: usize) -> Result<Complex64> {
    if !(kappa > 0.0) {
        return Err(Error::invalid(format!("kappa must be positive, got {kappa}")));
    }
    erdelyi_kober_i_numeric(f, 0.0, kappa, x, order)
}

pub fn chi_inverse_one_var_numeric(f: &dyn Univariate, kappa: f64, x: f64, order: usize) -> Result<Complex64> {
    if !(kappa > 0.0) {
        return Err(Error::invalid(format!("kappa must be positive, got {kappa}")));
    }
    ek_left_inverse_d_numeric(f, 0.0, kappa, x, order)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::rational::rat;
    use crate::testfn::{Exponential, Polynomial1};

    fn gp(text: &str) -> GammaPoly {
        GammaPoly::from_mpoly(&parse_poly(text, Some(1)).unwrap()).unwrap()
    }

    #[test]
    fn integral_examples() {
        assert_eq!(erdelyi_kober_i(&gp("x1^2"), &int(0), &int(1)).unwrap(), gp("1/3*x1^2"));
        assert_eq!(erdelyi_kober_i(&gp("1"), &int(1), &int(1)).unwrap(), gp("1/2"));
        assert_eq!(erdelyi_kober_i(&gp("x1^3 - x1"), &rat(1, 3), &int(0)).unwrap(), gp("x1^3 - x1"));
        // I^{kappa+1, n-kappa} x^m = Gamma(kappa+m+2) / Gamma(m+n+2) x^m
        let kappa = rat(3, 2);
        let i = erdelyi_kober_i(&gp("x1^4"), &(&kappa + int(1)), &(int(2) - &kappa)).unwrap();
        let want = GammaRatio::new(int(1), vec![&kappa + int(6)], vec![int(8)]).unwrap();
        assert_eq!(i.coefficient(4).unwrap(), &want);
        assert!(erdelyi_kober_i(&gp("x1"), &int(0), &rat(-1, 2)).is_err());
    }

    #[test]
    fn left_inverse_on_monomials() {
        for kappa in [rat(1, 2), rat(3, 2), int(2), rat(5, 2), int(1)] {
            for m in 0..=6u32 {
                let p = GammaPoly::monomial(m, GammaRatio::one());
                for gamma in [int(0), rat(1, 3)] {
                    let back =
                        ek_left_inverse_d(&erdelyi_kober_i(&p, &gamma, &kappa).unwrap(), &gamma, &kappa).unwrap();
                    assert_eq!(back, p, "kappa={kappa} m={m}");
                }
                let back = chi_inverse_one_var(&chi_one_var(&p, &kappa).unwrap(), &kappa).unwrap();
                assert_eq!(back, p);
                assert_eq!(back.coefficient(m).unwrap().as_rational(), Some(int(1)));
            }
        }
        // D^{0,1} g = g + x g'
        let g = gp("1/3*x1^2 + x1");
        assert_eq!(ek_left_inverse_d(&g, &int(0), &int(1)).unwrap(), gp("x1^2 + 2*x1"));
    }

    #[test]
    fn inverse_of_constant() {
        let kappa = rat(3, 2);
        let c = GammaPoly::monomial(0, GammaRatio::recip_gamma(&kappa + int(1)).unwrap());
        assert_eq!(chi_inverse_one_var(&c, &kappa).unwrap(), gp("1"));
    }

    #[test]
    fn numeric_paths() {
        let sq = Polynomial1::monomial(2);
        let v = erdelyi_kober_i_numeric(&sq, 0.0, 1.0, 2.0, 10).unwrap();
        assert!((v.re - 4.0 / 3.0).abs() < 1e-15);
        let e = Exponential::real(1.0);
        for kappa in [0.5, 1.0, 2.5] {
            let chi_e = FractionalIntegral { gamma: 0.0, delta: kappa, inner: &e, order: 40 };
            for x in [-2.0, -0.5, 0.0, 1.0, 2.0] {
                let back = chi_inverse_one_var_numeric(&chi_e, kappa, x, 40).unwrap();
                assert!((back - e.value(x).unwrap()).norm() < 1e-12 * x.exp().max(1.0), "{kappa} {x} {back}");
            }
        }
        // against the exact path
        let p = gp("x1^5 - 3*x1^2 + 2");
        let kappa = rat(3, 2);
        let exact = chi_one_var(&p, &kappa).unwrap();
        let f = Polynomial1::new(vec![2.0, 0.0, -3.0, 0.0, 0.0, 1.0]);
        let num = chi_one_var_numeric(&f, 1.5, 0.7, 8).unwrap();
        assert!((num.re - exact.eval_f64(0.7)).abs() < 1e-14);
    }
}
