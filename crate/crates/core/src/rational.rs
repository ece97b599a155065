//! Exact rational helpers shared by the geometry and polynomial layers.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(numer: i64, denom: i64) -> Rational {
    Rational::new(BigInt::from(numer), BigInt::from(denom))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

/// Parses `7`, `-3/2` or a terminating decimal such as `0.25` exactly.
pub fn parse_rational(text: &str) -> Result<Rational> {
    parse_rational_at(text, 1)
}

pub(crate) fn parse_rational_at(text: &str, column: usize) -> Result<Rational> {
    let s = text.trim();
    if s.is_empty() {
        return Err(Error::parse(column, "expected a rational number"));
    }
    if let Some((n, d)) = s.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::parse(column, format!("bad numerator in '{s}'")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::parse(column, format!("bad denominator in '{s}'")))?;
        if d.is_zero() {
            return Err(Error::parse(column, "zero denominator"));
        }
        return Ok(Rational::new(n, d));
    }
    if let Some((whole, frac)) = s.split_once('.') {
        let negative = whole.trim_start().starts_with('-');
        let digits = format!("{}{}", whole.trim_start_matches(['-', '+']), frac);
        if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
            return Err(Error::parse(column, format!("bad decimal '{s}'")));
        }
        let n: BigInt = digits.parse().expect("validated digits");
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let r = Rational::new(n, d);
        return Ok(if negative { -r } else { r });
    }
    let n: BigInt = s.parse().map_err(|_| Error::parse(column, format!("bad integer '{s}'")))?;
    Ok(Rational::from_integer(n))
}

/// Canonical text: `3`, `-3/2`.
pub fn fmt_rational(r: &Rational) -> String {
    r.to_string()
}

pub fn is_nonpositive_integer(r: &Rational) -> bool {
    r.is_integer() && !r.is_positive()
}

/// Rising factorial (a)_n.
pub fn pochhammer(a: &Rational, n: u32) -> Rational {
    let mut acc = Rational::one();
    let mut term = a.clone();
    for _ in 0..n {
        acc *= &term;
        term += Rational::one();
    }
    acc
}

pub fn factorial(n: u32) -> Rational {
    pochhammer(&Rational::one(), n)
}

/// Smallest integer >= r.
pub fn ceil(r: &Rational) -> BigInt {
    r.ceil().to_integer()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_rational("-3/2").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational("0.25").unwrap(), rat(1, 4));
        assert_eq!(parse_rational("-1.5").unwrap(), rat(-3, 2));
        assert_eq!(parse_rational(" 7 ").unwrap(), int(7));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn pochhammer_matches_products() {
        assert_eq!(pochhammer(&rat(3, 2), 3), rat(3, 2) * rat(5, 2) * rat(7, 2));
        assert_eq!(pochhammer(&int(5), 0), int(1));
        assert_eq!(factorial(5), int(120));
    }
}
