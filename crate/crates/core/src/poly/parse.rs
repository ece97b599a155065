//! Text format: a signed sum of `c*x1^a1*...*xN^aN` terms.

use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use super::mpoly::{MPoly, Monomial};
use crate::error::{Error, Result};
use crate::rational::{parse_rational_at, Rational};

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Number(Rational),
    Var(usize),
    Caret,
    Star,
    Plus,
    Minus,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let column = i + 1;
        match bytes[i] {
            b' ' | b'\t' | b'\n' => i += 1,
            b'^' => {
                out.push((column, Token::Caret));
                i += 1;
            }
            b'*' => {
                out.push((column, Token::Star));
                i += 1;
            }
            b'+' => {
                out.push((column, Token::Plus));
                i += 1;
            }
            b'-' => {
                out.push((column, Token::Minus));
                i += 1;
            }
            b'x' => {
                let start = i + 1;
                let mut j = start;
                while j < bytes.len() && bytes[j].is_ascii_digit() {
                    j += 1;
                }
                if j == start {
                    return Err(Error::parse(column, "variable needs an index, e.g. x1"));
                }
                let index: usize =
                    text[start..j].parse().map_err(|_| Error::parse(column, "variable index out of range"))?;
                if index == 0 {
                    return Err(Error::parse(column, "variables are numbered from x1"));
                }
                out.push((column, Token::Var(index)));
                i = j;
            }
            c if c.is_ascii_digit() => {
                let mut j = i;
                while j < bytes.len() && (bytes[j].is_ascii_digit() || bytes[j] == b'.') {
                    j += 1;
                }
                // A '/' directly after digits continues the rational literal.
                if j < bytes.len() && bytes[j] == b'/' {
                    j += 1;
                    let den_start = j;
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    if j == den_start {
                        return Err(Error::parse(j + 1, "expected denominator after '/'"));
                    }
                }
                out.push((column, Token::Number(parse_rational_at(&text[i..j], column)?)));
                i = j;
            }
            other => {
                return Err(Error::parse(column, format!("unexpected character '{}'", other as char)));
            }
        }
    }
    Ok(out)
}

/// Parses a polynomial. With `dim = None` the dimension is the largest
/// variable index seen (at least 1).
pub fn parse_poly(text: &str, dim: Option<usize>) -> Result<MPoly> {
    let tokens = tokenize(text)?;
    let end_column = text.len() + 1;
    let max_var = tokens
        .iter()
        .filter_map(|(_, t)| match t {
            Token::Var(i) => Some(*i),
            _ => None,
        })
        .max()
        .unwrap_or(1);
    let dim = match dim {
        Some(d) if d < max_var => {
            return Err(Error::parse(1, format!("variable x{max_var} exceeds dimension {d}")));
        }
        Some(d) => d,
        None => max_var,
    };

    let mut pos = 0;
    let mut poly = MPoly::zero(dim);
    let mut first = true;
    while pos < tokens.len() || first {
        let mut sign = Rational::one();
        match tokens.get(pos) {
            Some((_, Token::Plus)) => pos += 1,
            Some((_, Token::Minus)) => {
                sign = -sign;
                pos += 1;
            }
            Some((c, t)) if !first => {
                return Err(Error::parse(*c, format!("expected '+' or '-', found {t:?}")));
            }
            _ => {}
        }
        first = false;

        let mut coeff = sign;
        let mut exps = vec![0u32; dim];
        let mut expect_factor = true;
        loop {
            if expect_factor {
                match tokens.get(pos) {
                    Some((_, Token::Number(r))) => {
                        coeff *= r;
                        pos += 1;
                    }
                    Some((_, Token::Var(i))) => {
                        pos += 1;
                        let mut e = 1u32;
                        if let Some((_, Token::Caret)) = tokens.get(pos) {
                            pos += 1;
                            match tokens.get(pos) {
                                Some((c, Token::Number(r))) => {
                                    if !r.is_integer() || r < &Rational::from_integer(BigInt::from(0)) {
                                        return Err(Error::parse(*c, "exponent must be a non-negative integer"));
                                    }
                                    e = u32::try_from(r.to_integer())
                                        .map_err(|_| Error::parse(*c, "exponent too large"))?;
                                    pos += 1;
                                }
                                Some((c, _)) => return Err(Error::parse(*c, "expected exponent")),
                                None => return Err(Error::parse(end_column, "expected exponent")),
                            }
                        }
                        exps[i - 1] += e;
                    }
                    Some((c, t)) => {
                        return Err(Error::parse(*c, format!("expected a number or variable, found {t:?}")))
                    }
                    None => return Err(Error::parse(end_column, "unexpected end of input")),
                }
                expect_factor = false;
            } else {
                match tokens.get(pos) {
                    Some((_, Token::Star)) => {
                        pos += 1;
                        expect_factor = true;
                    }
                    _ => break,
                }
            }
        }
        poly.add_term(Monomial::new(exps), coeff);
    }
    Ok(poly)
}

impl FromStr for MPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        parse_poly(s, None)
    }
}
