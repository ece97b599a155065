//! Smooth test functions for the numeric paths: one-variable functions with
//! analytic derivatives, and functions on R^N with analytic gradients.

use std::f64::consts::PI;
use std::fmt::Debug;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::poly::MPoly;
use crate::rational::to_f64;

fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

fn domain(function: &str, point: impl Debug) -> Error {
    Error::Domain { function: function.to_string(), point: format!("{point:?}") }
}

fn order_error(function: &str, order: usize) -> Error {
    Error::DerivativeOrder { function: function.to_string(), order }
}

/// A function R -> C together with its derivatives.
pub trait Univariate: Send + Sync + Debug {
    fn name(&self) -> String;

    /// Derivative of the given order; order 0 is the value.
    fn derivative(&self, x: f64, order: usize) -> Result<Complex64>;

    fn value(&self, x: f64) -> Result<Complex64> {
        self.derivative(x, 0)
    }

    /// Closed interval outside of which the function vanishes, if any.
    fn support(&self) -> Option<(f64, f64)> {
        None
    }
}

/// A function R^N -> C with an analytic gradient.
pub trait TestFunction: Send + Sync + Debug {
    fn name(&self) -> String;
    fn dim(&self) -> usize;
    fn value(&self, x: &[f64]) -> Result<Complex64>;
    fn gradient(&self, x: &[f64]) -> Result<Vec<Complex64>>;

    /// Radius of a ball containing the support; infinite when unbounded.
    fn support_bound(&self) -> f64 {
        f64::INFINITY
    }
}

/// e^{c x}.
#[derive(Debug, Clone, Copy)]
pub struct Exponential {
    pub c: Complex64,
}

impl Exponential {
    pub fn real(c: f64) -> Self {
        Self { c: Complex64::new(c, 0.0) }
    }

    pub fn imaginary(lambda: f64) -> Self {
        Self { c: Complex64::new(0.0, lambda) }
    }
}

impl Univariate for Exponential {
    fn name(&self) -> String {
        format!("exp({}*x)", self.c)
    }

    fn derivative(&self, x: f64, order: usize) -> Result<Complex64> {
        if !x.is_finite() {
            return Err(domain("exp", x));
        }
        Ok(self.c.powu(order as u32) * (self.c * x).exp())
    }
}

/// A one-variable polynomial with f64 coefficients, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
pub struct Polynomial1 {
    coeffs: Vec<f64>,
}

impl Polynomial1 {
    pub fn new(coeffs: Vec<f64>) -> Self {
        Self { coeffs }
    }

    pub fn from_mpoly(p: &MPoly) -> Result<Self> {
        crate::error::check_dim(1, p.dim())?;
        let degree = p.degree().unwrap_or(0) as usize;
        let mut coeffs = vec![0.0; degree + 1];
        for (mono, r) in p.terms() {
            coeffs[mono.exponents()[0] as usize] = to_f64(r);
        }
        Ok(Self { coeffs })
    }

    pub fn monomial(n: usize) -> Self {
        let mut coeffs = vec![0.0; n + 1];
        coeffs[n] = 1.0;
        Self { coeffs }
    }
}

impl Univariate for Polynomial1 {
    fn name(&self) -> String {
        format!("poly{:?}", self.coeffs)
    }

    fn derivative(&self, x: f64, order: usize) -> Result<Complex64> {
        if !x.is_finite() {
            return Err(domain("poly", x));
        }
        // Horner over the differentiated coefficients.
        let mut horner = 0.0;
        for k in (order..self.coeffs.len()).rev() {
            let falling: f64 = (k - order + 1..=k).map(|j| j as f64).product();
            horner = horner * x + self.coeffs[k] * falling;
        }
        Ok(c(horner))
    }
}

/// e^{-x^2/2} cut off outside [-8, 8], where the discarded mass is below 1.3e-15.
#[derive(Debug, Clone, Copy)]
pub struct Gaussian;

pub const GAUSSIAN_CUTOFF: f64 = 8.0;

impl Univariate for Gaussian {
    fn name(&self) -> String {
        "gaussian".into()
    }

    fn derivative(&self, x: f64, order: usize) -> Result<Complex64> {
        if !x.is_finite() {
            return Err(domain("gaussian", x));
        }
        if x.abs() > GAUSSIAN_CUTOFF {
            return Ok(c(0.0));
        }
        // d^k e^{-x^2/2} = (-1)^k He_k(x) e^{-x^2/2}
        let (mut h0, mut h1) = (1.0, x);
        let he = match order {
            0 => 1.0,
            _ => {
                for k in 1..order {
                    let h2 = x * h1 - k as f64 * h0;
                    h0 = h1;
                    h1 = h2;
                }
                h1
            }
        };
        let sign = if order % 2 == 0 { 1.0 } else { -1.0 };
        Ok(c(sign * he * (-0.5 * x * x).exp()))
    }

    fn support(&self) -> Option<(f64, f64)> {
        Some((-GAUSSIAN_CUTOFF, GAUSSIAN_CUTOFF))
    }
}

/// exp(-1 / (1 - u^2)) with u = (x - center) / radius, zero for |u| >= 1.
#[derive(Debug, Clone, Copy)]
pub struct Bump {
    pub center: f64,
    pub radius: f64,
}

impl Bump {
    pub fn unit() -> Self {
        Self { center: 0.0, radius: 1.0 }
    }
}

impl Univariate for Bump {
    fn name(&self) -> String {
        format!("bump[{}, {}]", self.center - self.radius, self.center + self.radius)
    }

    fn derivative(&self, x: f64, order: usize) -> Result<Complex64> {
        if !x.is_finite() {
            return Err(domain("bump", x));
        }
        let u = (x - self.center) / self.radius;
        if u.abs() >= 1.0 {
            return Ok(c(0.0));
        }
        let s = 1.0 - u * u;
        let f = (-1.0 / s).exp();
        // g = -1/s, g' = -2u/s^2 (in u), f' = g' f, f'' = (g'' + g'^2) f
        let g1 = -2.0 * u / (s * s);
        let v = match order {
            0 => f,
            1 => g1 * f / self.radius,
            2 => {
                let g2 = -2.0 * (1.0 + 3.0 * u * u) / (s * s * s);
                (g2 + g1 * g1) * f / (self.radius * self.radius)
            }
            _ => return Err(order_error("bump", order)),
        };
        Ok(c(v))
    }

    fn support(&self) -> Option<(f64, f64)> {
        Some((self.center - self.radius, self.center + self.radius))
    }
}

/// The hard indicator of [a, b]. Only its values are available.
#[derive(Debug, Clone, Copy)]
pub struct Indicator {
    pub a: f64,
    pub b: f64,
}

impl Univariate for Indicator {
    fn name(&self) -> String {
        format!("indicator[{}, {}]", self.a, self.b)
    }

    fn derivative(&self, x: f64, order: usize) -> Result<Complex64> {
        if order > 0 {
            return Err(order_error("indicator", order));
        }
        if !x.is_finite() {
            return Err(domain("indicator", x));
        }
        Ok(c(if x >= self.a && x <= self.b { 1.0 } else { 0.0 }))
    }

    fn support(&self) -> Option<(f64, f64)> {
        Some((self.a, self.b))
    }
}

fn psi(t: f64) -> (f64, f64) {
    if t <= 0.0 {
        (0.0, 0.0)
    } else {
        let v = (-1.0 / t).exp();
        (v, v / (t * t))
    }
}

/// Smooth step: 0 for t <= 0, 1 for t >= 1. Returns value and derivative.
fn smooth_step(t: f64) -> (f64, f64) {
    let (p, dp) = psi(t);
    let (q, dq) = psi(1.0 - t);
    let s = p + q;
    (p / s, (dp * q + p * dq) / (s * s))
}

/// Equal to 1 on [a, b], 0 outside [a - ramp, b + ramp], smooth in between.
#[derive(Debug, Clone, Copy)]
pub struct SmoothIndicator {
    pub a: f64,
    pub b: f64,
    pub ramp: f64,
}

impl Univariate for SmoothIndicator {
    fn name(&self) -> String {
        format!("smooth_indicator[{}, {}; {}]", self.a, self.b, self.ramp)
    }

    fn derivative(&self, x: f64, order: usize) -> Result<Complex64> {
        if !x.is_finite() {
            return Err(domain("smooth_indicator", x));
        }
        let (l, dl) = smooth_step((x - (self.a - self.ramp)) / self.ramp);
        let (r, dr) = smooth_step(((self.b + self.ramp) - x) / self.ramp);
        match order {
            0 => Ok(c(l * r)),
            1 => Ok(c((dl * r - l * dr) / self.ramp)),
            _ => Err(order_error("smooth_indicator", order)),
        }
    }

    fn support(&self) -> Option<(f64, f64)> {
        Some((self.a - self.ramp, self.b + self.ramp))
    }
}

/// Scaled sum of two one-variable functions, for linearity checks.
#[derive(Debug)]
pub struct Combination<'a> {
    pub terms: Vec<(Complex64, &'a dyn Univariate)>,
}

impl Univariate for Combination<'_> {
    fn name(&self) -> String {
        let parts: Vec<String> = self.terms.iter().map(|(w, f)| format!("{w}*{}", f.name())).collect();
        parts.join(" + ")
    }

    fn derivative(&self, x: f64, order: usize) -> Result<Complex64> {
        let mut acc = c(0.0);
        for (w, f) in &self.terms {
            acc += w * f.derivative(x, order)?;
        }
        Ok(acc)
    }

    fn support(&self) -> Option<(f64, f64)> {
        let mut lo = f64::INFINITY;
        let mut hi = f64::NEG_INFINITY;
        for (_, f) in &self.terms {
            let (a, b) = f.support()?;
            lo = lo.min(a);
            hi = hi.max(b);
        }
        Some((lo, hi))
    }
}

/// A one-variable function seen as a test function on R^1.
#[derive(Debug)]
pub struct Line<F: Univariate>(pub F);

impl<F: Univariate> TestFunction for Line<F> {
    fn name(&self) -> String {
        self.0.name()
    }

    fn dim(&self) -> usize {
        1
    }

    fn value(&self, x: &[f64]) -> Result<Complex64> {
        crate::error::check_dim(1, x.len())?;
        self.0.value(x[0])
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<Complex64>> {
        crate::error::check_dim(1, x.len())?;
        Ok(vec![self.0.derivative(x[0], 1)?])
    }

    fn support_bound(&self) -> f64 {
        match self.0.support() {
            Some((a, b)) => a.abs().max(b.abs()),
            None => f64::INFINITY,
        }
    }
}

/// Numeric form of an exact polynomial.
#[derive(Debug, Clone)]
pub struct PolyFunction {
    poly: MPoly,
    partials: Vec<MPoly>,
}

impl PolyFunction {
    pub fn new(poly: MPoly) -> Self {
        let partials = (0..poly.dim()).map(|j| poly.partial(j)).collect();
        Self { poly, partials }
    }

    pub fn poly(&self) -> &MPoly {
        &self.poly
    }
}

impl TestFunction for PolyFunction {
    fn name(&self) -> String {
        self.poly.to_string()
    }

    fn dim(&self) -> usize {
        self.poly.dim()
    }

    fn value(&self, x: &[f64]) -> Result<Complex64> {
        Ok(c(self.poly.eval_f64(x)?))
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<Complex64>> {
        self.partials.iter().map(|p| Ok(c(p.eval_f64(x)?))).collect()
    }
}

/// e^{<c, x>} on R^N.
#[derive(Debug, Clone)]
pub struct ExpLinear {
    pub c: Vec<Complex64>,
}

impl ExpLinear {
    /// The plane wave e^{i <lambda, x>}.
    pub fn plane_wave(lambda: &[f64]) -> Self {
        Self { c: lambda.iter().map(|&l| Complex64::new(0.0, l)).collect() }
    }
}

impl TestFunction for ExpLinear {
    fn name(&self) -> String {
        format!("exp(<{:?}, x>)", self.c)
    }

    fn dim(&self) -> usize {
        self.c.len()
    }

    fn value(&self, x: &[f64]) -> Result<Complex64> {
        crate::error::check_dim(self.c.len(), x.len())?;
        let s: Complex64 = self.c.iter().zip(x).map(|(a, b)| a * b).sum();
        Ok(s.exp())
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<Complex64>> {
        let v = self.value(x)?;
        Ok(self.c.iter().map(|a| a * v).collect())
    }
}

/// Compares the analytic gradient with central differences at `x`. The
/// step adapts to the scale of x; the comparison is relative to the larger
/// of the gradient norm and the function value.
pub fn check_gradient(f: &dyn TestFunction, x: &[f64], rel_tol: f64) -> Result<f64> {
    let grad = f.gradient(x)?;
    let v = f.value(x)?;
    let scale = grad.iter().map(|g| g.norm()).fold(v.norm(), f64::max).max(f64::MIN_POSITIVE);
    let mut worst: f64 = 0.0;
    let mut y = x.to_vec();
    for j in 0..x.len() {
        let h = 1e-5 * x[j].abs().max(1.0);
        y[j] = x[j] + h;
        let up = f.value(&y)?;
        y[j] = x[j] - h;
        let down = f.value(&y)?;
        y[j] = x[j];
        let fd = (up - down) / (2.0 * h);
        worst = worst.max((fd - grad[j]).norm() / scale);
    }
    if worst <= rel_tol {
        Ok(worst)
    } else {
        Err(Error::Verification(format!("gradient of {} off by {worst:.3e} at {x:?}", f.name())))
    }
}

/// Named one-variable catalog entries used by the transform front end.
pub fn catalog(name: &str) -> Result<Box<dyn Univariate>> {
    match name {
        "bump" => Ok(Box::new(Bump::unit())),
        "gaussian" => Ok(Box::new(Gaussian)),
        "indicator" => Ok(Box::new(Indicator { a: -1.0, b: 1.0 })),
        "smooth_indicator" => Ok(Box::new(SmoothIndicator { a: -1.0, b: 1.0, ramp: 0.5 })),
        "shifted_bump" => Ok(Box::new(Bump { center: 0.5, radius: 1.5 })),
        other => {
            Err(Error::invalid(format!("unknown catalog function '{other}' (expected one of {})", CATALOG.join(", "))))
        }
    }
}

pub const CATALOG: &[&str] = &["bump", "gaussian", "indicator", "smooth_indicator", "shifted_bump"];

/// Exact L1 norm of the truncated Gaussian up to the tail mass.
pub fn gaussian_integral() -> f64 {
    (2.0 * PI).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fd(f: &dyn Univariate, x: f64, order: usize) -> Complex64 {
        let h = 1e-5;
        (f.derivative(x + h, order - 1).unwrap() - f.derivative(x - h, order - 1).unwrap()) / (2.0 * h)
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let fs: Vec<Box<dyn Univariate>> = vec![
            Box::new(Exponential { c: Complex64::new(0.3, 1.7) }),
            Box::new(Polynomial1::new(vec![1.0, -2.0, 0.5, 3.0])),
            Box::new(Gaussian),
            Box::new(Bump { center: 0.2, radius: 1.3 }),
            Box::new(SmoothIndicator { a: -1.0, b: 1.0, ramp: 0.5 }),
        ];
        for f in &fs {
            for &x in &[-1.1, -0.4, 0.0, 0.35, 0.9, 1.2] {
                let exact = f.derivative(x, 1).unwrap();
                let approx = fd(f.as_ref(), x, 1);
                assert!((exact - approx).norm() < 1e-7 * exact.norm().max(1.0), "{} at {x}", f.name());
                if let Ok(exact2) = f.derivative(x, 2) {
                    let approx2 = fd(f.as_ref(), x, 2);
                    assert!((exact2 - approx2).norm() < 1e-6 * exact2.norm().max(1.0), "{} f'' at {x}", f.name());
                }
            }
        }
    }

    #[test]
    fn smooth_indicator_is_flat_inside() {
        let f = SmoothIndicator { a: 1.0, b: 3.0, ramp: 0.25 };
        assert_eq!(f.value(2.0).unwrap(), c(1.0));
        assert_eq!(f.value(0.7).unwrap(), c(0.0));
        assert!(f.value(0.875).unwrap().re > 0.0 && f.value(0.875).unwrap().re < 1.0);
        assert!(Indicator { a: 0.0, b: 1.0 }.derivative(0.5, 1).is_err());
    }

    #[test]
    fn multivariate_gradients() {
        let p: MPoly = "3/2*x1^2*x3 - x2 + x1*x2*x3".parse().unwrap();
        let f = PolyFunction::new(p);
        check_gradient(&f, &[0.3, -1.2, 2.0], 1e-6).unwrap();
        let e = ExpLinear { c: vec![Complex64::new(0.1, 1.0), Complex64::new(0.0, -2.0)] };
        check_gradient(&e, &[0.7, 0.2], 1e-6).unwrap();
        let l = Line(Bump::unit());
        check_gradient(&l, &[0.5], 1e-6).unwrap();
        assert_eq!(l.support_bound(), 1.0);
    }

    #[test]
    fn catalog_lookup() {
        for name in CATALOG {
            assert!(catalog(name).is_ok());
        }
        assert!(catalog("sinc").is_err());
    }
}
