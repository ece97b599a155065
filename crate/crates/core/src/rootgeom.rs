//! Root vectors, reflections, hyperplane projections and orthogonal subsystems.
//!
//! Everything here is exact rational arithmetic. Roots are never normalized;
//! `|alpha|^2` is carried through every formula explicitly.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{check_dim, Error, Result};
use crate::rational::{fmt_rational, int, parse_rational_at, to_f64, Rational};

/// A vector in Q^N.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalVector(Vec<Rational>);

impl RationalVector {
    pub fn new(coords: Vec<Rational>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::invalid("vector must have at least one coordinate"));
        }
        Ok(Self(coords))
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|&c| int(c)).collect()).expect("non-empty literal")
    }

    pub fn zeros(dim: usize) -> Self {
        Self(vec![Rational::zero(); dim.max(1)])
    }

    /// The standard basis vector e_{index+1}.
    pub fn basis(dim: usize, index: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[index] = Rational::one();
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<Rational> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.0.iter().map(to_f64).collect()
    }

    pub fn dot(&self, other: &Self) -> Result<Rational> {
        check_dim(self.dim(), other.dim())?;
        Ok(self.dot_unchecked(other))
    }

    pub(crate) fn dot_unchecked(&self, other: &Self) -> Rational {
        self.0.iter().zip(&other.0).fold(Rational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn norm_sq(&self) -> Rational {
        self.dot_unchecked(self)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self(self.0.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        check_dim(self.dim(), other.dim())?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect()))
    }

    /// Applies a coordinate permutation: `(u x)_{perm[i]} = x_i`.
    pub fn permute(&self, perm: &[usize]) -> Result<Self> {
        check_dim(self.dim(), perm.len())?;
        let mut out = vec![Rational::zero(); self.dim()];
        for (i, &p) in perm.iter().enumerate() {
            out[p] = self.0[i].clone();
        }
        Ok(Self(out))
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", fmt_rational(c))?;
        }
        write!(f, ")")
    }
}

impl FromStr for RationalVector {
    type Err = Error;

    /// Parses `(a/b, c, -d/e)`; the parentheses are optional.
    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim();
        let offset = s.len() - s.trim_start().len();
        let (body, start) = match trimmed.strip_prefix('(') {
            Some(rest) => {
                let inner =
                    rest.strip_suffix(')').ok_or_else(|| Error::parse(offset + trimmed.len(), "missing ')'"))?;
                (inner, offset + 1)
            }
            None => (trimmed, offset),
        };
        let mut coords = Vec::new();
        let mut column = start;
        for piece in body.split(',') {
            coords.push(parse_rational_at(piece, column + 1)?);
            column += piece.len() + 1;
        }
        Self::new(coords)
    }
}

impl Serialize for RationalVector {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.0.iter().map(fmt_rational).collect();
        v.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for RationalVector {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<RationalRepr>::deserialize(deserializer)?;
        let coords = raw
            .into_iter()
            .map(RationalRepr::into_rational)
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        Self::new(coords).map_err(serde::de::Error::custom)
    }
}

/// JSON accepts exact rationals as strings (`"3/2"`) or plain integers.
#[derive(Deserialize)]
#[serde(untagged)]
pub(crate) enum RationalRepr {
    Text(String),
    Integer(i64),
}

impl RationalRepr {
    pub(crate) fn into_rational(self) -> Result<Rational> {
        match self {
            RationalRepr::Text(s) => crate::rational::parse_rational(&s),
            RationalRepr::Integer(i) => Ok(int(i)),
        }
    }
}

fn nonzero(alpha: &RationalVector) -> Result<()> {
    if alpha.is_zero() {
        Err(Error::ZeroRoot { index: 1 })
    } else {
        Ok(())
    }
}

/// s_alpha(x) = x - 2 <x,alpha>/|alpha|^2 alpha.
pub fn reflect(alpha: &RationalVector, x: &RationalVector) -> Result<RationalVector> {
    nonzero(alpha)?;
    let c = x.dot(alpha)? / alpha.norm_sq();
    x.sub(&alpha.scale(&(c * int(2))))
}

/// tau_alpha(x) = x - <x,alpha>/|alpha|^2 alpha, the orthogonal projection
/// onto the hyperplane alpha^perp.
pub fn project(alpha: &RationalVector, x: &RationalVector) -> Result<RationalVector> {
    nonzero(alpha)?;
    let c = x.dot(alpha)? / alpha.norm_sq();
    x.sub(&alpha.scale(&c))
}

/// Pairwise orthogonal nonzero roots with one multiplicity per root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrthogonalSubsystem {
    dim: usize,
    roots: Vec<RationalVector>,
    kappas: Vec<Rational>,
}

impl OrthogonalSubsystem {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn roots(&self) -> &[RationalVector] {
        &self.roots
    }

    pub fn kappas(&self) -> &[Rational] {
        &self.kappas
    }

    pub fn rank(&self) -> usize {
        self.roots.len()
    }

    /// Same roots, different multiplicities.
    pub fn with_kappas(&self, kappas: Vec<Rational>) -> Result<Self> {
        validate_subsystem(self.roots.clone(), kappas, self.dim)
    }

    /// Builds a subsystem without validation. Used by fault injection, which
    /// must be able to construct deliberately broken inputs.
    pub fn new_unchecked(dim: usize, roots: Vec<RationalVector>, kappas: Vec<Rational>) -> Self {
        Self { dim, roots, kappas }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("subsystem serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::parse(e.column(), e.to_string()))
    }
}

#[derive(Serialize, Deserialize)]
struct SubsystemJson {
    dim: usize,
    roots: Vec<RationalVector>,
    kappas: Vec<RationalVector1>,
}

/// A single rational serialized as a string.
#[derive(Serialize, Deserialize)]
#[serde(transparent)]
struct RationalVector1(#[serde(with = "rational_serde")] Rational);

pub(crate) mod rational_serde {
    use super::*;

    pub fn serialize<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&fmt_rational(r))
    }

    pub fn deserialize<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Rational, D::Error> {
        RationalRepr::deserialize(d)?.into_rational().map_err(serde::de::Error::custom)
    }
}

impl Serialize for OrthogonalSubsystem {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        SubsystemJson {
            dim: self.dim,
            roots: self.roots.clone(),
            kappas: self.kappas.iter().cloned().map(RationalVector1).collect(),
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for OrthogonalSubsystem {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let raw = SubsystemJson::deserialize(deserializer)?;
        validate_subsystem(raw.roots, raw.kappas.into_iter().map(|k| k.0).collect(), raw.dim)
            .map_err(serde::de::Error::custom)
    }
}

/// Checks nonzero-ness, pairwise orthogonality and count consistency.
/// Membership in an ambient crystallographic root system is not checked.
pub fn validate_subsystem(
    roots: Vec<RationalVector>,
    kappas: Vec<Rational>,
    dim: usize,
) -> Result<OrthogonalSubsystem> {
    if kappas.len() != roots.len() {
        return Err(Error::MultiplicityCount { expected: roots.len(), found: kappas.len() });
    }
    for (i, r) in roots.iter().enumerate() {
        check_dim(dim, r.dim())?;
        if r.is_zero() {
            return Err(Error::ZeroRoot { index: i + 1 });
        }
    }
    for i in 0..roots.len() {
        for j in i + 1..roots.len() {
            if !roots[i].dot_unchecked(&roots[j]).is_zero() {
                return Err(Error::NotOrthogonal(i + 1, j + 1));
            }
        }
    }
    // Nonzero pairwise orthogonal vectors are linearly independent.
    if roots.len() > dim {
        return Err(Error::TooManyRoots { roots: roots.len(), dim });
    }
    Ok(OrthogonalSubsystem { dim, roots, kappas })
}

/// alpha_i = e_{2i-1} - e_{2i}, i = 1..floor(N/2), inside A_{N-1}.
pub fn build_subsystem_a(dim: usize, kappas: Vec<Rational>) -> Result<OrthogonalSubsystem> {
    if dim < 2 {
        return Err(Error::invalid("type A construction needs N >= 2"));
    }
    let pairs = dim / 2;
    if kappas.len() != pairs {
        return Err(Error::MultiplicityCount { expected: pairs, found: kappas.len() });
    }
    let roots = (0..pairs)
        .map(|i| {
            let mut v = RationalVector::zeros(dim);
            v.0[2 * i] = int(1);
            v.0[2 * i + 1] = int(-1);
            v
        })
        .collect();
    validate_subsystem(roots, kappas, dim)
}

/// alpha_i^{+/-} = e_{2i-1} +/- e_{2i} inside B_N. Roots are interleaved
/// per pair as `[alpha_1^+, alpha_1^-, alpha_2^+, alpha_2^-, ...]` with the
/// multiplicities in the same order.
pub fn build_subsystem_b(
    dim: usize,
    kappas_plus: Vec<Rational>,
    kappas_minus: Vec<Rational>,
) -> Result<OrthogonalSubsystem> {
    if dim < 2 {
        return Err(Error::invalid("type B construction needs N >= 2"));
    }
    let pairs = dim / 2;
    for given in [kappas_plus.len(), kappas_minus.len()] {
        if given != pairs {
            return Err(Error::MultiplicityCount { expected: pairs, found: given });
        }
    }
    let mut roots = Vec::with_capacity(2 * pairs);
    let mut kappas = Vec::with_capacity(2 * pairs);
    for (i, (kp, km)) in kappas_plus.into_iter().zip(kappas_minus).enumerate() {
        for (sign, k) in [(1, kp), (-1, km)] {
            let mut v = RationalVector::zeros(dim);
            v.0[2 * i] = int(1);
            v.0[2 * i + 1] = int(sign);
            roots.push(v);
            kappas.push(k);
        }
    }
    validate_subsystem(roots, kappas, dim)
}

/// The coordinate subsystem {e_1, ..., e_N} of the direct-product setting.
pub fn build_subsystem_direct(dim: usize, kappas: Vec<Rational>) -> Result<OrthogonalSubsystem> {
    if kappas.len() != dim {
        return Err(Error::MultiplicityCount { expected: dim, found: kappas.len() });
    }
    let roots = (0..dim).map(|j| RationalVector::basis(dim, j)).collect();
    validate_subsystem(roots, kappas, dim)
}

/// xi = sum_i xi_i alpha_i + residual, residual orthogonal to every root.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XiDecomposition {
    pub coefficients: Vec<Rational>,
    pub residual: RationalVector,
}

impl XiDecomposition {
    pub fn reconstruct(&self, subsystem: &OrthogonalSubsystem) -> Result<RationalVector> {
        let mut acc = self.residual.clone();
        for (c, alpha) in self.coefficients.iter().zip(subsystem.roots()) {
            acc = acc.add(&alpha.scale(c))?;
        }
        Ok(acc)
    }
}

pub fn decompose_xi(xi: &RationalVector, subsystem: &OrthogonalSubsystem) -> Result<XiDecomposition> {
    check_dim(subsystem.dim(), xi.dim())?;
    let mut residual = xi.clone();
    let mut coefficients = Vec::with_capacity(subsystem.rank());
    for alpha in subsystem.roots() {
        let c = xi.dot_unchecked(alpha) / alpha.norm_sq();
        residual = residual.sub(&alpha.scale(&c))?;
        coefficients.push(c);
    }
    Ok(XiDecomposition { coefficients, residual })
}

/// Sign helper used by the pair constructions: (-1)^{i+1} for 1-based i.
pub(crate) fn alternating_sign(one_based: usize) -> Rational {
    if one_based % 2 == 1 {
        int(1)
    } else {
        int(-1)
    }
}
