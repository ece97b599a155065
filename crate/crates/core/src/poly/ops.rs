use num_traits::Zero;

use super::linear::{compose_linear, LinearMap};
use super::mpoly::MPoly;
use crate::error::{check_dim, Error, Result};
use crate::rational::Rational;
use crate::rootgeom::RationalVector;

/// rho_alpha p = (p - p o tau_alpha) / <x, alpha>.
///
/// The numerator vanishes on the hyperplane <x, alpha> = 0, so the division
/// is exact; a nonzero remainder surfaces as [`Error::InexactDivision`].
pub fn divided_difference(p: &MPoly, alpha: &RationalVector) -> Result<MPoly> {
    let tau = LinearMap::projection(alpha)?;
    divided_difference_with(p, alpha, &tau)
}

/// Same as [`divided_difference`] with a precomputed projection matrix.
pub(crate) fn divided_difference_with(p: &MPoly, alpha: &RationalVector, tau: &LinearMap) -> Result<MPoly> {
    check_dim(p.dim(), alpha.dim())?;
    if p.is_zero() {
        return Ok(MPoly::zero(p.dim()));
    }
    let numerator = p.checked_sub(&compose_linear(p, tau)?)?;
    numerator.div_linear_form(alpha)
}

/// Reflection difference (p - p o s_alpha) / <x, alpha>, used by the classical
/// Dunkl operator.
pub fn reflection_difference(p: &MPoly, alpha: &RationalVector) -> Result<MPoly> {
    check_dim(p.dim(), alpha.dim())?;
    let s = LinearMap::reflection(alpha)?;
    p.checked_sub(&compose_linear(p, &s)?)?.div_linear_form(alpha)
}

/// The classical Dunkl operator on polynomials:
/// d_xi p + sum_alpha kappa(alpha) <alpha, xi> (p - p o s_alpha) / <x, alpha>.
pub fn classical_dunkl(
    p: &MPoly,
    xi: &RationalVector,
    positive_roots: &[RationalVector],
    kappas: &[Rational],
) -> Result<MPoly> {
    if positive_roots.len() != kappas.len() {
        return Err(Error::MultiplicityCount { expected: positive_roots.len(), found: kappas.len() });
    }
    let mut out = p.directional_derivative(xi)?;
    for (i, (alpha, kappa)) in positive_roots.iter().zip(kappas).enumerate() {
        if alpha.is_zero() {
            return Err(Error::ZeroRoot { index: i + 1 });
        }
        let weight = kappa * alpha.dot(xi)?;
        if weight.is_zero() {
            continue;
        }
        let diff = reflection_difference(p, alpha)?;
        out = out.checked_add(&diff.scale(&weight))?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse::parse_poly;
    use crate::rational::{int, rat};

    fn poly(s: &str, dim: usize) -> MPoly {
        parse_poly(s, Some(dim)).unwrap()
    }

    #[test]
    fn divided_difference_examples() {
        let alpha = RationalVector::from_ints(&[1, -1]);
        let p = poly("x1^2", 2);
        let q = divided_difference(&p, &alpha).unwrap();
        assert_eq!(q, poly("3/4*x1 + 1/4*x2", 2));
        // Oracle: multiply back and add p o tau.
        let tau = LinearMap::projection(&alpha).unwrap();
        let back = &(&q * &MPoly::linear_form(&alpha)) + &compose_linear(&p, &tau).unwrap();
        assert_eq!(back, p);

        assert!(divided_difference(&poly("7", 2), &alpha).unwrap().is_zero());
        assert_eq!(divided_difference(&poly("x1", 1), &RationalVector::from_ints(&[1])).unwrap(), poly("1", 1));
        assert_eq!(divided_difference(&p, &RationalVector::from_ints(&[0, 0])), Err(Error::ZeroRoot { index: 1 }));
    }

    #[test]
    fn compose_linear_examples() {
        let tau = LinearMap::projection(&RationalVector::from_ints(&[1, -1])).unwrap();
        assert_eq!(compose_linear(&poly("x1", 2), &tau).unwrap(), poly("1/2*x1 + 1/2*x2", 2));
        let p = poly("3*x1^2*x2 - x2 + 5", 2);
        assert_eq!(compose_linear(&p, &LinearMap::identity(2)).unwrap(), p);
        let s = LinearMap::reflection(&RationalVector::from_ints(&[1])).unwrap();
        assert_eq!(compose_linear(&poly("x1^2", 1), &s).unwrap(), poly("x1^2", 1));
        assert!(compose_linear(&p, &LinearMap::identity(3)).is_err());
    }

    #[test]
    fn classical_dunkl_rank_one() {
        let e1 = RationalVector::from_ints(&[1]);
        let kappa = rat(3, 5);
        let even =
            classical_dunkl(&poly("x1^2", 1), &e1, std::slice::from_ref(&e1), std::slice::from_ref(&kappa)).unwrap();
        assert_eq!(even, poly("2*x1", 1));
        // (x^3 - (-x)^3)/x = 2x^2, so D x^3 = (3 + 2 kappa) x^2.
        let odd =
            classical_dunkl(&poly("x1^3", 1), &e1, std::slice::from_ref(&e1), std::slice::from_ref(&kappa)).unwrap();
        assert_eq!(odd, poly("x1^2", 1).scale(&(int(3) + int(2) * &kappa)));
        let plain = classical_dunkl(&poly("x1^3", 1), &e1, std::slice::from_ref(&e1), &[Rational::zero()]).unwrap();
        assert_eq!(plain, poly("3*x1^2", 1));
    }
}
