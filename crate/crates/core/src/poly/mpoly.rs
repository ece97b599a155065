use std::cmp::Ordering;
use std::collections::btree_map::Entry;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{check_dim, Error, Result};
use crate::rational::{fmt_rational, Rational};
use crate::rootgeom::RationalVector;

/// Exponent multi-index. Ordered graded-lexicographically: total degree
/// first, then lexicographically with x1 most significant.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn one(dim: usize) -> Self {
        Self(vec![0; dim])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    fn mul(&self, other: &Self) -> Self {
        Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial in `dim` variables with exact rational coefficients.
/// No zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MPoly {
    dim: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl MPoly {
    pub fn zero(dim: usize) -> Self {
        Self { dim, terms: BTreeMap::new() }
    }

    pub fn constant(dim: usize, c: Rational) -> Self {
        let mut p = Self::zero(dim);
        p.add_term(Monomial::one(dim), c);
        p
    }

    pub fn one(dim: usize) -> Self {
        Self::constant(dim, Rational::one())
    }

    /// The coordinate function x_{index+1}.
    pub fn var(dim: usize, index: usize) -> Self {
        let mut e = vec![0; dim];
        e[index] = 1;
        Self::monomial(Monomial(e), Rational::one())
    }

    pub fn monomial(mono: Monomial, c: Rational) -> Self {
        let mut p = Self::zero(mono.dim());
        p.add_term(mono, c);
        p
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Vec<u32>, Rational)>) -> Result<Self> {
        let mut p = Self::zero(dim);
        for (e, c) in terms {
            check_dim(dim, e.len())?;
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }

    /// The linear form <x, alpha>.
    pub fn linear_form(alpha: &RationalVector) -> Self {
        let dim = alpha.dim();
        let mut p = Self::zero(dim);
        for (j, a) in alpha.coords().iter().enumerate() {
            let mut e = vec![0; dim];
            e[j] = 1;
            p.add_term(Monomial(e), a.clone());
        }
        p
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exponents: &[u32]) -> Rational {
        self.terms.get(&Monomial(exponents.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    /// Total degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().map(Monomial::degree)
    }

    /// True when every term has total degree `n` (the zero polynomial is
    /// homogeneous of every degree).
    pub fn is_homogeneous_of(&self, n: u32) -> bool {
        self.terms.keys().all(|m| m.degree() == n)
    }

    pub(crate) fn add_term(&mut self, mono: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(mono) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub(crate) fn add_scaled(&mut self, other: &Self, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.dim);
        }
        Self { dim: self.dim, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        out.add_scaled(other, &Rational::one());
        Ok(out)
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut out = self.clone();
        out.add_scaled(other, &-Rational::one());
        Ok(out)
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim, other.dim)?;
        let mut out = Self::zero(self.dim);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                out.add_term(ma.mul(mb), a * b);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one(self.dim);
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    pub fn eval(&self, x: &RationalVector) -> Result<Rational> {
        check_dim(self.dim, x.dim())?;
        let mut acc = Rational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (xi, &e) in x.coords().iter().zip(&m.0) {
                if e > 0 {
                    t *= num_traits::pow(xi.clone(), e as usize);
                }
            }
            acc += t;
        }
        Ok(acc)
    }

    /// Floating-point evaluation of the exact polynomial.
    pub fn eval_f64(&self, x: &[f64]) -> Result<f64> {
        check_dim(self.dim, x.len())?;
        Ok(self
            .terms
            .iter()
            .map(|(m, c)| {
                let c = c.to_f64().unwrap_or(f64::NAN);
                m.0.iter().zip(x).fold(c, |acc, (&e, &xi)| acc * xi.powi(e as i32))
            })
            .sum())
    }

    pub fn partial(&self, index: usize) -> Self {
        let mut out = Self::zero(self.dim);
        for (m, c) in &self.terms {
            let e = m.0[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.0.clone();
            exps[index] -= 1;
            out.add_term(Monomial(exps), c * Rational::from_integer(e.into()));
        }
        out
    }

    /// d_xi p = sum_j xi_j dp/dx_j.
    pub fn directional_derivative(&self, xi: &RationalVector) -> Result<Self> {
        check_dim(self.dim, xi.dim())?;
        let mut out = Self::zero(self.dim);
        for (j, c) in xi.coords().iter().enumerate() {
            if !c.is_zero() {
                out.add_scaled(&self.partial(j), c);
            }
        }
        Ok(out)
    }

    /// Substitutes x_i -> images[i]. The result lives in the images' dimension.
    pub fn substitute(&self, images: &[MPoly]) -> Result<Self> {
        check_dim(self.dim, images.len())?;
        let target = images.first().map(MPoly::dim).unwrap_or(0);
        for img in images {
            check_dim(target, img.dim)?;
        }
        let mut powers: Vec<Vec<MPoly>> = images.iter().map(|img| vec![MPoly::one(img.dim)]).collect();
        let mut out = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = MPoly::constant(target, c.clone());
            for (i, &e) in m.0.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = powers[i].last().expect("seeded with one") * &images[i];
                    powers[i].push(next);
                }
                term = &term * &powers[i][e as usize];
            }
            out.add_scaled(&term, &Rational::one());
        }
        Ok(out)
    }

    /// Reinterprets the polynomial in `new_dim >= dim` variables.
    pub fn embed(&self, new_dim: usize) -> Result<Self> {
        if new_dim < self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: new_dim });
        }
        Ok(Self {
            dim: new_dim,
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.resize(new_dim, 0);
                    (Monomial(e), c.clone())
                })
                .collect(),
        })
    }

    /// Exact quotient by the linear form <x, alpha>. Synthetic division along
    /// the first variable with a nonzero alpha coordinate; a nonzero remainder
    /// is reported as [`Error::InexactDivision`], never truncated.
    pub fn div_linear_form(&self, alpha: &RationalVector) -> Result<Self> {
        check_dim(self.dim, alpha.dim())?;
        let pivot = alpha.coords().iter().position(|a| !a.is_zero()).ok_or(Error::ZeroRoot { index: 1 })?;
        let lead = &alpha.coords()[pivot];
        // rest = <x, alpha> - lead * x_pivot
        let mut rest = MPoly::linear_form(alpha);
        rest.add_term(Monomial(unit(self.dim, pivot)), -lead.clone());

        // Coefficients of q as a polynomial in x_pivot.
        let mut slices: Vec<MPoly> = Vec::new();
        for (m, c) in &self.terms {
            let d = m.0[pivot] as usize;
            if slices.len() <= d {
                slices.resize(d + 1, MPoly::zero(self.dim));
            }
            let mut e = m.0.clone();
            e[pivot] = 0;
            slices[d].add_term(Monomial(e), c.clone());
        }
        let mut quotient = MPoly::zero(self.dim);
        let inv_lead = lead.recip();
        for d in (1..slices.len()).rev() {
            let s = slices[d].scale(&inv_lead);
            if s.is_zero() {
                continue;
            }
            let correction = &s * &rest;
            slices[d - 1].add_scaled(&correction, &-Rational::one());
            for (m, c) in &s.terms {
                let mut e = m.0.clone();
                e[pivot] += (d - 1) as u32;
                quotient.add_term(Monomial(e), c.clone());
            }
        }
        match slices.first() {
            Some(r) if !r.is_zero() => Err(Error::InexactDivision),
            _ => Ok(quotient),
        }
    }
}

fn unit(dim: usize, index: usize) -> Vec<u32> {
    let mut e = vec![0; dim];
    e[index] = 1;
    e
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        self.checked_add(rhs).expect("dimension mismatch in polynomial addition")
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        self.checked_sub(rhs).expect("dimension mismatch in polynomial subtraction")
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        self.checked_mul(rhs).expect("dimension mismatch in polynomial product")
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        self.scale(&-Rational::one())
    }
}

impl fmt::Display for MPoly {
    /// Canonical form: descending graded-lex order, e.g. `3/2*x1^2*x3 - x2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (k, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> =
                m.0.iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| if e == 1 { format!("x{}", i + 1) } else { format!("x{}^{}", i + 1, e) })
                    .collect();
            if vars.is_empty() {
                write!(f, "{}", fmt_rational(&abs))?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", fmt_rational(&abs), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

/// All exponent vectors of total degree exactly `degree` in `dim` variables,
/// in ascending graded-lex order.
pub fn monomials_of_degree(dim: usize, degree: u32) -> Vec<Monomial> {
    fn rec(dim: usize, left: u32, prefix: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if prefix.len() + 1 == dim {
            prefix.push(left);
            out.push(Monomial(prefix.clone()));
            prefix.pop();
            return;
        }
        for e in 0..=left {
            prefix.push(e);
            rec(dim, left - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    if dim == 0 {
        return out;
    }
    rec(dim, degree, &mut Vec::with_capacity(dim), &mut out);
    out.sort();
    out
}

/// All exponent vectors with total degree at most `max_degree`.
pub fn monomials_up_to(dim: usize, max_degree: u32) -> Vec<Monomial> {
    (0..=max_degree).flat_map(|d| monomials_of_degree(dim, d)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn x(dim: usize, i: usize) -> MPoly {
        MPoly::var(dim, i)
    }

    #[test]
    fn no_zero_coefficients_stored() {
        let p = &x(2, 0) - &x(2, 0);
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
        assert_eq!(p.to_string(), "0");
    }

    #[test]
    fn eval_examples() {
        let p = x(2, 0).pow(2);
        assert_eq!(p.eval(&RationalVector::from_ints(&[3, 1])).unwrap(), int(9));
        assert_eq!(MPoly::zero(2).eval(&RationalVector::from_ints(&[3, 1])).unwrap(), int(0));
        let q = &(&x(2, 0) * &x(2, 1)) + &MPoly::constant(2, rat(1, 2));
        let pt = RationalVector::new(vec![rat(1, 2), int(2)]).unwrap();
        // 1/2 * 2 + 1/2
        assert_eq!(q.eval(&pt).unwrap(), rat(3, 2));
        assert!(q.eval(&RationalVector::from_ints(&[1])).is_err());
    }

    #[test]
    fn directional_derivative_examples() {
        let p = x(1, 0).pow(2);
        assert_eq!(p.directional_derivative(&RationalVector::from_ints(&[1])).unwrap(), x(1, 0).scale(&int(2)));
        let q = &x(2, 0) * &x(2, 1);
        let d = q.directional_derivative(&RationalVector::from_ints(&[1, 1])).unwrap();
        assert_eq!(d, &x(2, 0) + &x(2, 1));
        let c = MPoly::constant(2, int(5));
        assert!(c.directional_derivative(&RationalVector::from_ints(&[1, 1])).unwrap().is_zero());
    }

    #[test]
    fn display_is_graded_lex_descending() {
        let p = MPoly::from_terms(3, [(vec![2, 0, 1], rat(3, 2)), (vec![0, 1, 0], int(-1))]).unwrap();
        assert_eq!(p.to_string(), "3/2*x1^2*x3 - x2");
        let q = MPoly::from_terms(2, [(vec![0, 0], rat(-1, 2)), (vec![1, 1], int(1)), (vec![2, 0], int(-2))]).unwrap();
        assert_eq!(q.to_string(), "-2*x1^2 + x1*x2 - 1/2");
    }

    #[test]
    fn exact_division_by_linear_form() {
        // (x1 - x2)(3 x1 + x2) / (x1 - x2)
        let alpha = RationalVector::from_ints(&[1, -1]);
        let lin = MPoly::linear_form(&alpha);
        let other = &x(2, 0).scale(&int(3)) + &x(2, 1);
        let q = (&lin * &other).div_linear_form(&alpha).unwrap();
        assert_eq!(q, other);
        // x1 is not divisible by x1 - x2
        assert_eq!(x(2, 0).div_linear_form(&alpha), Err(Error::InexactDivision));
        assert!(MPoly::zero(2).div_linear_form(&alpha).unwrap().is_zero());
    }

    #[test]
    fn monomial_enumeration_counts() {
        assert_eq!(monomials_of_degree(3, 2).len(), 6);
        assert_eq!(monomials_up_to(6, 8).len(), 3003);
        assert_eq!(monomials_up_to(1, 0), vec![Monomial::one(1)]);
    }
}
