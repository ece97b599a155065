//! Power series of M(a, b; z) in double or double-double arithmetic.

use std::ops::{Add, Div, Mul};

use num_complex::Complex64;
use twofloat::TwoFloat;

use super::KummerParams;
use crate::error::{Error, Result};
use crate::precision::{dd_div, Precision};

#[derive(Debug, Clone, Copy)]
struct DdComplex {
    re: TwoFloat,
    im: TwoFloat,
}

impl DdComplex {
    fn from_c64(z: Complex64) -> Self {
        Self { re: TwoFloat::from_f64(z.re), im: TwoFloat::from_f64(z.im) }
    }

    fn to_c64(self) -> Complex64 {
        Complex64::new(f64::from(self.re), f64::from(self.im))
    }

    /// |z| to double precision, enough for the stopping test.
    fn norm(self) -> f64 {
        self.to_c64().norm()
    }
}

impl Add for DdComplex {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self { re: self.re + o.re, im: self.im + o.im }
    }
}

impl Mul for DdComplex {
    type Output = Self;
    fn mul(self, o: Self) -> Self {
        Self { re: self.re * o.re - self.im * o.im, im: self.re * o.im + self.im * o.re }
    }
}

impl Div for DdComplex {
    type Output = Self;
    fn div(self, o: Self) -> Self {
        let d = o.re * o.re + o.im * o.im;
        Self { re: dd_div(self.re * o.re + self.im * o.im, d), im: dd_div(self.im * o.re - self.re * o.im, d) }
    }
}

/// Stops once three consecutive terms are each below tol times the partial sum.
struct StopRule {
    tol: f64,
    run: u32,
}

impl StopRule {
    fn small(&mut self, term: f64, partial: f64) -> bool {
        if term <= self.tol * partial || (term == 0.0 && partial == 0.0) {
            self.run += 1;
        } else {
            self.run = 0;
        }
        self.run >= 3
    }
}

pub(crate) fn sum_series(p: &KummerParams, z: Complex64, precision: Precision) -> Result<Complex64> {
    match precision {
        Precision::Double => sum_double(p, z),
        Precision::Extended => sum_extended(p, z),
    }
}

fn sum_double(p: &KummerParams, z: Complex64) -> Result<Complex64> {
    let mut term = Complex64::new(1.0, 0.0);
    let mut sum = term;
    let mut stop = StopRule { tol: p.series_tolerance.max(f64::EPSILON / 4.0), run: 0 };
    for n in 0..p.max_terms {
        let nf = n as f64;
        term = term * (p.a + nf) / (p.b + nf) * z / (nf + 1.0);
        sum += term;
        if stop.small(term.norm(), sum.norm()) {
            return Ok(sum);
        }
    }
    Err(Error::NonConvergence(p.max_terms))
}

fn sum_extended(p: &KummerParams, z: Complex64) -> Result<Complex64> {
    let one = DdComplex::from_c64(Complex64::new(1.0, 0.0));
    let a = DdComplex::from_c64(p.a);
    let b = DdComplex::from_c64(p.b);
    let zz = DdComplex::from_c64(z);
    let mut term = one;
    let mut sum = one;
    let mut stop = StopRule { tol: p.series_tolerance, run: 0 };
    for n in 0..p.max_terms {
        let nd = DdComplex { re: TwoFloat::from_f64(n as f64), im: TwoFloat::from_f64(0.0) };
        let np1 = DdComplex { re: TwoFloat::from_f64(n as f64 + 1.0), im: TwoFloat::from_f64(0.0) };
        term = term * (a + nd) / (b + nd) * zz / np1;
        sum = sum + term;
        if stop.small(term.norm(), sum.norm()) {
            return Ok(sum.to_c64());
        }
    }
    Err(Error::NonConvergence(p.max_terms))
}
