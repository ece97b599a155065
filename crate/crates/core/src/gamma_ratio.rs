//! Exact products and quotients of Gamma values at rational arguments.
//!
//! A [`GammaRatio`] keeps the arguments as built, for display, and compares by
//! a canonical form in which every argument z is shifted to the representative
//! r in (0, 1] with z - r an integer, the shift being absorbed into the
//! rational prefactor through Gamma(z + 1) = z Gamma(z). Equal representatives
//! in numerator and denominator then cancel.

use std::collections::BTreeMap;
use std::fmt;

use libm::tgamma as gamma;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rational::{fmt_rational, int, is_nonpositive_integer, to_f64, Rational};

#[derive(Debug, Clone)]
pub struct GammaRatio {
    prefactor: Rational,
    numerator: Vec<Rational>,
    denominator: Vec<Rational>,
}

/// Reduced form: prefactor times prod Gamma(r)^e over representatives r.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalGamma {
    pub prefactor: Rational,
    /// Representative in (0, 1] mapped to its net exponent (never zero).
    pub powers: BTreeMap<Rational, i64>,
}

impl CanonicalGamma {
    pub fn is_rational(&self) -> bool {
        self.powers.is_empty() || self.prefactor.is_zero()
    }
}

fn check_arg(z: &Rational) -> Result<()> {
    if is_nonpositive_integer(z) {
        Err(Error::GammaPole(fmt_rational(z)))
    } else {
        Ok(())
    }
}

/// Splits z = r + k with r in (0, 1] and k an integer.
fn representative(z: &Rational) -> (Rational, i64) {
    let k = z.ceil() - Rational::one();
    let shift: i64 = k.to_integer().try_into().expect("argument shift fits in i64");
    (z - &k, shift)
}

/// Gamma(r + k) / Gamma(r) as an exact rational.
fn shift_factor(r: &Rational, k: i64) -> Rational {
    let mut acc = Rational::one();
    if k >= 0 {
        for j in 0..k {
            acc *= r + int(j);
        }
    } else {
        for j in k..0 {
            acc /= r + int(j);
        }
    }
    acc
}

impl GammaRatio {
    pub fn new(prefactor: Rational, numerator: Vec<Rational>, denominator: Vec<Rational>) -> Result<Self> {
        for z in numerator.iter().chain(&denominator) {
            check_arg(z)?;
        }
        Ok(Self { prefactor, numerator, denominator })
    }

    pub fn rational(c: Rational) -> Self {
        Self { prefactor: c, numerator: Vec::new(), denominator: Vec::new() }
    }

    pub fn one() -> Self {
        Self::rational(Rational::one())
    }

    /// Gamma(z).
    pub fn gamma(z: Rational) -> Result<Self> {
        Self::new(Rational::one(), vec![z], Vec::new())
    }

    /// 1 / Gamma(z).
    pub fn recip_gamma(z: Rational) -> Result<Self> {
        Self::new(Rational::one(), Vec::new(), vec![z])
    }

    /// (a)_n = Gamma(a + n) / Gamma(a).
    pub fn pochhammer(a: Rational, n: u32) -> Result<Self> {
        let top = &a + int(n as i64);
        Self::new(Rational::one(), vec![top], vec![a])
    }

    pub fn prefactor(&self) -> &Rational {
        &self.prefactor
    }

    pub fn numerator_args(&self) -> &[Rational] {
        &self.numerator
    }

    pub fn denominator_args(&self) -> &[Rational] {
        &self.denominator
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut numerator = self.numerator.clone();
        numerator.extend(other.numerator.iter().cloned());
        let mut denominator = self.denominator.clone();
        denominator.extend(other.denominator.iter().cloned());
        Self { prefactor: &self.prefactor * &other.prefactor, numerator, denominator }
    }

    pub fn recip(&self) -> Result<Self> {
        if self.prefactor.is_zero() {
            return Err(Error::invalid("reciprocal of zero"));
        }
        Ok(Self {
            prefactor: self.prefactor.recip(),
            numerator: self.denominator.clone(),
            denominator: self.numerator.clone(),
        })
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self { prefactor: &self.prefactor * c, ..self.clone() }
    }

    pub fn is_zero(&self) -> bool {
        self.prefactor.is_zero()
    }

    pub fn canonical(&self) -> CanonicalGamma {
        let mut prefactor = self.prefactor.clone();
        let mut powers: BTreeMap<Rational, i64> = BTreeMap::new();
        if prefactor.is_zero() {
            return CanonicalGamma { prefactor, powers };
        }
        for (args, sign) in [(&self.numerator, 1i64), (&self.denominator, -1i64)] {
            for z in args {
                let (r, k) = representative(z);
                let f = shift_factor(&r, k);
                if sign > 0 {
                    prefactor *= f;
                } else {
                    prefactor /= f;
                }
                *powers.entry(r).or_insert(0) += sign;
            }
        }
        // Gamma(1) = 1 carries no information.
        powers.remove(&Rational::one());
        powers.retain(|_, e| *e != 0);
        CanonicalGamma { prefactor, powers }
    }

    /// The exact value when all Gamma factors cancel.
    pub fn as_rational(&self) -> Option<Rational> {
        let c = self.canonical();
        c.is_rational().then_some(c.prefactor)
    }

    pub fn value_f64(&self) -> f64 {
        let c = self.canonical();
        let mut v = to_f64(&c.prefactor);
        for (r, e) in &c.powers {
            v *= gamma(to_f64(r)).powi(*e as i32);
        }
        v
    }

    /// Applies single Gamma(z + 1) = z Gamma(z) steps and pairwise
    /// cancellations in the order chosen by `pick`, which receives the number
    /// of available moves and returns the index of the one to take. The end
    /// result is the canonical form regardless of the choices made.
    pub fn reduce_by_steps(&self, mut pick: impl FnMut(usize) -> usize) -> CanonicalGamma {
        let mut prefactor = self.prefactor.clone();
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        if prefactor.is_zero() {
            return CanonicalGamma { prefactor, powers: BTreeMap::new() };
        }
        let in_range = |z: &Rational| z.is_positive() && z <= &Rational::one();
        loop {
            // Moves: shift any out-of-range argument one step towards (0, 1],
            // or cancel an identical numerator/denominator pair.
            let mut moves: Vec<(u8, usize, usize)> = Vec::new();
            for (i, z) in num.iter().enumerate() {
                if !in_range(z) {
                    moves.push((0, i, 0));
                }
            }
            for (j, z) in den.iter().enumerate() {
                if !in_range(z) {
                    moves.push((1, j, 0));
                }
            }
            for (i, a) in num.iter().enumerate() {
                for (j, b) in den.iter().enumerate() {
                    if a == b {
                        moves.push((2, i, j));
                    }
                }
            }
            if moves.is_empty() {
                break;
            }
            let (kind, i, j) = moves[pick(moves.len()) % moves.len()];
            match kind {
                0 | 1 => {
                    let list = if kind == 0 { &mut num } else { &mut den };
                    let z = list[i].clone();
                    // Gamma(z) = (z - 1) Gamma(z - 1) or Gamma(z) = Gamma(z + 1) / z.
                    let factor = if z > Rational::one() {
                        list[i] = &z - Rational::one();
                        &z - Rational::one()
                    } else {
                        list[i] = &z + Rational::one();
                        z.recip()
                    };
                    if kind == 0 {
                        prefactor *= factor;
                    } else {
                        prefactor /= factor;
                    }
                }
                _ => {
                    num.swap_remove(i);
                    den.swap_remove(j);
                }
            }
        }
        let mut powers: BTreeMap<Rational, i64> = BTreeMap::new();
        for z in num {
            *powers.entry(z).or_insert(0) += 1;
        }
        for z in den {
            *powers.entry(z).or_insert(0) -= 1;
        }
        powers.remove(&Rational::one());
        powers.retain(|_, e| *e != 0);
        CanonicalGamma { prefactor, powers }
    }
}

impl PartialEq for GammaRatio {
    fn eq(&self, other: &Self) -> bool {
        self.canonical() == other.canonical()
    }
}

fn fmt_gammas(args: &[Rational]) -> String {
    args.iter().map(|z| format!("Γ({})", fmt_rational(z))).collect()
}

impl fmt::Display for GammaRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let num = fmt_gammas(&self.numerator);
        let head = match (self.prefactor.is_one(), num.is_empty()) {
            (true, true) => "1".to_string(),
            (true, false) => num,
            (false, true) => fmt_rational(&self.prefactor),
            (false, false) => format!("{}*{}", fmt_rational(&self.prefactor), num),
        };
        match self.denominator.len() {
            0 => write!(f, "{head}"),
            1 => write!(f, "{head}/{}", fmt_gammas(&self.denominator)),
            _ => write!(f, "{head}/({})", fmt_gammas(&self.denominator)),
        }
    }
}

/// Univariate polynomial whose coefficients are Gamma ratios. The operators
/// that produce it (fractional integrals, the rank-one intertwiner and its
/// inverse) act diagonally on monomials, so each degree holds one ratio.
#[derive(Debug, Clone, Default)]
pub struct GammaPoly {
    terms: BTreeMap<u32, GammaRatio>,
}

impl GammaPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn monomial(degree: u32, c: GammaRatio) -> Self {
        let mut p = Self::zero();
        if !c.is_zero() {
            p.terms.insert(degree, c);
        }
        p
    }

    /// Lifts a one-variable rational polynomial.
    pub fn from_mpoly(p: &crate::poly::MPoly) -> Result<Self> {
        crate::error::check_dim(1, p.dim())?;
        let mut out = Self::zero();
        for (mono, c) in p.terms() {
            out.terms.insert(mono.exponents()[0], GammaRatio::rational(c.clone()));
        }
        Ok(out)
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &GammaRatio)> {
        self.terms.iter().map(|(d, c)| (*d, c))
    }

    pub fn coefficient(&self, degree: u32) -> Option<&GammaRatio> {
        self.terms.get(&degree)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Multiplies each coefficient by a degree-dependent factor.
    pub fn map_diagonal(&self, mut f: impl FnMut(u32, &GammaRatio) -> Result<GammaRatio>) -> Result<Self> {
        let mut out = Self::zero();
        for (&d, c) in &self.terms {
            let v = f(d, c)?;
            if !v.is_zero() {
                out.terms.insert(d, v);
            }
        }
        Ok(out)
    }

    /// The rational polynomial, if every coefficient reduces to a rational.
    pub fn to_mpoly(&self) -> Option<crate::poly::MPoly> {
        let mut terms = Vec::new();
        for (d, c) in &self.terms {
            terms.push((vec![*d], c.as_rational()?));
        }
        crate::poly::MPoly::from_terms(1, terms).ok()
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.terms.iter().map(|(d, c)| c.value_f64() * x.powi(*d as i32)).sum()
    }
}

impl PartialEq for GammaPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms.len() == other.terms.len()
            && self.terms.iter().zip(&other.terms).all(|((d1, c1), (d2, c2))| d1 == d2 && c1 == c2)
    }
}

impl fmt::Display for GammaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(d, c)| match d {
                0 => format!("({c})"),
                1 => format!("({c})*x1"),
                _ => format!("({c})*x1^{d}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn pole_guard() {
        assert!(matches!(GammaRatio::gamma(int(0)), Err(Error::GammaPole(_))));
        assert!(GammaRatio::recip_gamma(int(-3)).is_err());
        assert!(GammaRatio::gamma(rat(-1, 2)).is_ok());
    }

    #[test]
    fn shifts_reduce_to_rationals() {
        // Gamma(7/2) / Gamma(3/2) = (3/2)(5/2)
        let g = GammaRatio::new(int(1), vec![rat(7, 2)], vec![rat(3, 2)]).unwrap();
        assert_eq!(g.as_rational(), Some(rat(15, 4)));
        // Gamma(5) = 24
        assert_eq!(GammaRatio::gamma(int(5)).unwrap().as_rational(), Some(int(24)));
        // Gamma(-1/2) / Gamma(1/2) = -2
        let g = GammaRatio::new(int(1), vec![rat(-1, 2)], vec![rat(1, 2)]).unwrap();
        assert_eq!(g.as_rational(), Some(int(-2)));
        let g = GammaRatio::new(int(1), vec![rat(1, 2)], vec![]).unwrap();
        assert_eq!(g.as_rational(), None);
        assert!((g.value_f64() - std::f64::consts::PI.sqrt()).abs() < 1e-15);
    }

    #[test]
    fn pochhammer_matches_rational() {
        for n in 0..8 {
            let a = rat(3, 7);
            let g = GammaRatio::pochhammer(a.clone(), n).unwrap();
            assert_eq!(g.as_rational(), Some(crate::rational::pochhammer(&a, n)));
        }
    }

    #[test]
    fn equality_is_by_canonical_form() {
        // Gamma(5/2) Gamma(1/2) vs 3/4 Gamma(1/2)^2
        let a = GammaRatio::new(int(1), vec![rat(5, 2), rat(1, 2)], vec![]).unwrap();
        let b = GammaRatio::new(rat(3, 4), vec![rat(1, 2), rat(1, 2)], vec![]).unwrap();
        assert_eq!(a, b);
        assert_ne!(a, GammaRatio::rational(rat(3, 4)));
        assert_eq!(a.mul(&a.recip().unwrap()).as_rational(), Some(int(1)));
    }

    #[test]
    fn reduction_order_is_irrelevant() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..200 {
            let draw = |rng: &mut ChaCha8Rng| loop {
                let z = rat(rng.random_range(-12..30), *[1, 2, 3, 4].get(rng.random_range(0..4)).unwrap());
                if !is_nonpositive_integer(&z) {
                    return z;
                }
            };
            let num: Vec<_> = (0..rng.random_range(0..4)).map(|_| draw(&mut rng)).collect();
            let den: Vec<_> = (0..rng.random_range(0..4)).map(|_| draw(&mut rng)).collect();
            let g = GammaRatio::new(rat(rng.random_range(1..9), 5), num, den).unwrap();
            let expected = g.canonical();
            for _ in 0..5 {
                let got = g.reduce_by_steps(|n| rng.random_range(0..n));
                assert_eq!(got, expected, "{g}");
            }
        }
    }

    #[test]
    fn display_keeps_the_built_form() {
        assert_eq!(GammaRatio::recip_gamma(int(2)).unwrap().to_string(), "1/Γ(2)");
        let g = GammaRatio::new(rat(3, 2), vec![rat(1, 2)], vec![int(2), rat(5, 2)]).unwrap();
        assert_eq!(g.to_string(), "3/2*Γ(1/2)/(Γ(2)Γ(5/2))");
        assert_eq!(GammaRatio::rational(rat(-1, 3)).to_string(), "-1/3");
    }

    #[test]
    fn gamma_poly_round_trip() {
        let p = crate::poly::parse_poly("x1^2 - 1/2", Some(1)).unwrap();
        let g = GammaPoly::from_mpoly(&p).unwrap();
        assert_eq!(g.to_mpoly().unwrap(), p);
        assert!((g.eval_f64(2.0) - 3.5).abs() < 1e-15);
    }
}
