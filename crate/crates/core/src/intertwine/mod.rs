//! The intertwining operator
//! chi f(x) = 1 / prod Gamma(kappa_j) int_{[0,1]^n} f(h(t, x)) prod (1 - t_j)^(kappa_j - 1) dt
//! with h(t, x) = x + sum_j (t_j - 1) <x, alpha_j> / |alpha_j|^2 alpha_j, together
//! with its one-variable inverse and dual.

mod dual;
mod kober;

use num_complex::Complex64;
use num_traits::{One, Signed};

use crate::error::{check_dim, Error, Result};
use crate::gamma_ratio::GammaRatio;
use crate::poly::MPoly;
use crate::quadrature::jacobi_rule;
use crate::rational::{int, to_f64, Rational};
use crate::rootgeom::{OrthogonalSubsystem, RationalVector};
use crate::testfn::TestFunction;

pub use dual::{dual_chi, DUAL_PANELS};
pub use kober::{
    chi_inverse_one_var, chi_inverse_one_var_numeric, chi_one_var, chi_one_var_numeric, ek_left_inverse_d,
    ek_left_inverse_d_numeric, erdelyi_kober_i, erdelyi_kober_i_numeric, FractionalIntegral,
};

/// h(t, x) for real t.
pub fn h_map(t: &[f64], x: &RationalVector, subsystem: &OrthogonalSubsystem) -> Result<Vec<f64>> {
    check_dim(subsystem.dim(), x.dim())?;
    h_map_f64(t, &x.to_f64(), &RootData::new(subsystem))
}

/// h(t, x) for rational t, exactly.
pub fn h_map_exact(t: &[Rational], x: &RationalVector, subsystem: &OrthogonalSubsystem) -> Result<RationalVector> {
    check_dim(subsystem.rank(), t.len())?;
    check_dim(subsystem.dim(), x.dim())?;
    let mut out = x.clone();
    for (tj, alpha) in t.iter().zip(subsystem.roots()) {
        let c = (tj - int(1)) * x.dot_unchecked(alpha) / alpha.norm_sq();
        out = out.add(&alpha.scale(&c))?;
    }
    Ok(out)
}

struct RootData {
    roots: Vec<Vec<f64>>,
    norms_sq: Vec<f64>,
}

impl RootData {
    fn new(subsystem: &OrthogonalSubsystem) -> Self {
        let roots: Vec<Vec<f64>> = subsystem.roots().iter().map(RationalVector::to_f64).collect();
        let norms_sq = roots.iter().map(|a| a.iter().map(|v| v * v).sum()).collect();
        Self { roots, norms_sq }
    }
}

fn h_map_f64(t: &[f64], x: &[f64], data: &RootData) -> Result<Vec<f64>> {
    check_dim(data.roots.len(), t.len())?;
    let mut out = x.to_vec();
    for ((tj, alpha), n2) in t.iter().zip(&data.roots).zip(&data.norms_sq) {
        let pair: f64 = alpha.iter().zip(x).map(|(a, v)| a * v).sum();
        let c = (tj - 1.0) * pair / n2;
        for (o, a) in out.iter_mut().zip(alpha) {
            *o += c * a;
        }
    }
    Ok(out)
}

/// prod Gamma(kappa_j + 1) chi p, exact, with the normalization that turns it
/// back into chi p.
#[derive(Debug, Clone, PartialEq)]
pub struct ScaledChi {
    pub poly: MPoly,
    /// 1 / prod Gamma(kappa_j + 1).
    pub scale: GammaRatio,
}

fn check_positive(kappas: &[Rational]) -> Result<()> {
    if let Some(k) = kappas.iter().find(|k| !k.is_positive()) {
        return Err(Error::invalid(format!("multiplicity {k} must be positive")));
    }
    Ok(())
}

/// The scaled intertwiner on polynomials.
///
/// The roots are orthogonal, so h is a composition of one-root maps and chi
/// factors root by root. Along one root, with u = <x, alpha> / |alpha|^2,
/// Taylor expansion in t gives
/// Gamma(kappa + 1) chi_alpha p = sum_k (-1)^k kappa / (kappa + k) u^k / k! d_alpha^k p.
pub fn chi_poly_scaled(p: &MPoly, subsystem: &OrthogonalSubsystem) -> Result<ScaledChi> {
    check_dim(subsystem.dim(), p.dim())?;
    check_positive(subsystem.kappas())?;
    let mut out = p.clone();
    for (alpha, kappa) in subsystem.roots().iter().zip(subsystem.kappas()) {
        out = chi_one_root(&out, alpha, kappa)?;
    }
    let mut scale = GammaRatio::one();
    for kappa in subsystem.kappas() {
        scale = scale.mul(&GammaRatio::recip_gamma(kappa + int(1))?);
    }
    Ok(ScaledChi { poly: out, scale })
}

fn chi_one_root(p: &MPoly, alpha: &RationalVector, kappa: &Rational) -> Result<MPoly> {
    let u = MPoly::linear_form(alpha).scale(&alpha.norm_sq().recip());
    let mut out = MPoly::zero(p.dim());
    let mut derivative = p.clone();
    let mut u_pow = MPoly::one(p.dim());
    let mut k: i64 = 0;
    let mut factorial = Rational::one();
    while !derivative.is_zero() {
        let sign = if k % 2 == 0 { int(1) } else { int(-1) };
        let c = sign * kappa / (kappa + int(k)) / &factorial;
        out.add_scaled(&u_pow.checked_mul(&derivative)?, &c);
        derivative = derivative.directional_derivative(alpha)?;
        u_pow = u_pow.checked_mul(&u)?;
        k += 1;
        factorial *= int(k);
    }
    Ok(out)
}

/// chi f(x) by tensor Gauss–Jacobi quadrature of the given order per root.
pub fn chi_numeric(
    f: &dyn TestFunction,
    subsystem: &OrthogonalSubsystem,
    x: &[f64],
    order: usize,
) -> Result<Complex64> {
    check_dim(subsystem.dim(), f.dim())?;
    check_dim(subsystem.dim(), x.len())?;
    check_positive(subsystem.kappas())?;
    if order < 1 {
        return Err(Error::Quadrature("order must be at least 1".into()));
    }
    let kappas: Vec<f64> = subsystem.kappas().iter().map(to_f64).collect();
    let rules = kappas.iter().map(|k| jacobi_rule(order, k - 1.0, 0.0)).collect::<Result<Vec<_>>>()?;
    let data = RootData::new(subsystem);
    let n = rules.len();
    let mut norm = 1.0;
    for k in &kappas {
        norm /= libm::tgamma(*k);
    }
    if n == 0 {
        return Ok(f.value(x)? * norm);
    }
    // odometer over the tensor grid
    let mut index = vec![0usize; n];
    let mut t = vec![0.0; n];
    let mut acc = Complex64::new(0.0, 0.0);
    loop {
        let mut w = 1.0;
        for j in 0..n {
            t[j] = rules[j].nodes()[index[j]];
            w *= rules[j].weights()[index[j]];
        }
        acc += f.value(&h_map_f64(&t, x, &data)?)? * w;
        let mut j = 0;
        loop {
            index[j] += 1;
            if index[j] < order {
                break;
            }
            index[j] = 0;
            j += 1;
            if j == n {
                return Ok(acc * norm);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kummer::bold_m;
    use crate::poly::{monomials_up_to, parse_poly, Monomial};
    use crate::rational::{factorial, pochhammer, rat};
    use crate::rootgeom::{build_subsystem_a, build_subsystem_b, build_subsystem_direct};
    use crate::testfn::{ExpLinear, PolyFunction};

    /// Expands p(h(t, x)) in the variables (x, t) and integrates each t_j^m
    /// against (1 - t_j)^(kappa_j - 1), scaled: m! / (kappa_j + 1)_m.
    fn chi_by_t_expansion(p: &MPoly, s: &OrthogonalSubsystem) -> MPoly {
        let (dim, n) = (s.dim(), s.rank());
        let big = dim + n;
        let mut images: Vec<MPoly> = (0..dim).map(|i| MPoly::var(big, i)).collect();
        for (j, alpha) in s.roots().iter().enumerate() {
            let u = MPoly::linear_form(alpha).embed(big).unwrap().scale(&alpha.norm_sq().recip());
            let tm1 = &MPoly::var(big, dim + j) - &MPoly::one(big);
            let shift = &u * &tm1;
            for (i, c) in alpha.coords().iter().enumerate() {
                images[i] = &images[i] + &shift.scale(c);
            }
        }
        let expanded = p.substitute(&images).unwrap();
        let mut out = MPoly::zero(dim);
        for (mono, c) in expanded.terms() {
            let e = mono.exponents();
            let mut coeff = c.clone();
            for (j, kappa) in s.kappas().iter().enumerate() {
                let m = e[dim + j];
                coeff = coeff * factorial(m) / pochhammer(&(kappa + int(1)), m);
            }
            out.add_term(Monomial::new(e[..dim].to_vec()), coeff);
        }
        out
    }

    #[test]
    fn h_map_examples() {
        let s = build_subsystem_a(2, vec![int(1)]).unwrap();
        let x = RationalVector::from_ints(&[3, 1]);
        assert_eq!(
            h_map_exact(&[rat(1, 2)], &x, &s).unwrap(),
            RationalVector::new(vec![rat(5, 2), rat(3, 2)]).unwrap()
        );
        assert_eq!(h_map_exact(&[int(1)], &x, &s).unwrap(), x);
        assert_eq!(h_map_exact(&[int(0)], &x, &s).unwrap(), crate::rootgeom::project(&s.roots()[0], &x).unwrap());
        assert_eq!(h_map(&[0.5], &x, &s).unwrap(), vec![2.5, 1.5]);
        assert!(h_map(&[0.5, 0.5], &x, &s).is_err());
    }

    #[test]
    fn rank_one_examples() {
        let s = build_subsystem_direct(1, vec![int(1)]).unwrap();
        let x2 = parse_poly("x1^2", Some(1)).unwrap();
        let out = chi_poly_scaled(&x2, &s).unwrap();
        assert_eq!(out.poly, parse_poly("1/3*x1^2", Some(1)).unwrap());
        assert_eq!(out.scale.to_string(), "1/Γ(2)");
        let c = MPoly::constant(1, rat(-7, 2));
        assert_eq!(chi_poly_scaled(&c, &s).unwrap().poly, c);

        let kappa = rat(3, 2);
        let s = build_subsystem_direct(1, vec![kappa.clone()]).unwrap();
        for n in 0..9u32 {
            let p = MPoly::monomial(Monomial::new(vec![n]), int(1));
            let expect = factorial(n) / pochhammer(&(&kappa + int(1)), n);
            assert_eq!(chi_poly_scaled(&p, &s).unwrap().poly.coefficient(&[n]), expect);
        }
        assert!(chi_poly_scaled(&c, &build_subsystem_direct(1, vec![int(0)]).unwrap()).is_err());
    }

    #[test]
    fn taylor_form_matches_t_expansion() {
        let cases = [
            build_subsystem_a(4, vec![rat(1, 2), int(2)]).unwrap(),
            build_subsystem_b(3, vec![rat(3, 2)], vec![int(1)]).unwrap(),
            build_subsystem_direct(2, vec![rat(1, 3), rat(5, 2)]).unwrap(),
        ];
        for s in &cases {
            for m in monomials_up_to(s.dim(), 4) {
                let p = MPoly::monomial(m, int(1));
                assert_eq!(chi_poly_scaled(&p, s).unwrap().poly, chi_by_t_expansion(&p, s), "{p}");
            }
        }
    }

    #[test]
    fn numeric_matches_exact() {
        let s = build_subsystem_b(4, vec![rat(1, 2), int(2)], vec![rat(3, 2), int(1)]).unwrap();
        let p = parse_poly("x1^3*x2 - 2*x3^2*x4 + x1*x4 + 5", Some(4)).unwrap();
        let exact = chi_poly_scaled(&p, &s).unwrap();
        let scale = exact.scale.value_f64();
        let f = PolyFunction::new(p);
        let x = [0.3, -1.1, 0.8, 2.0];
        let want = exact.poly.eval_f64(&x).unwrap() * scale;
        let got = chi_numeric(&f, &s, &x, 4).unwrap();
        assert!((got.re - want).abs() <= 1e-12 * want.abs(), "{got} vs {want}");
    }

    #[test]
    fn plane_wave_gives_kummer() {
        for kappa in [rat(1, 2), int(2)] {
            let s = build_subsystem_direct(1, vec![kappa.clone()]).unwrap();
            let f = ExpLinear::plane_wave(&[3.0]);
            for x in [-1.5, 0.4, 2.0] {
                let got = chi_numeric(&f, &s, &[x], 40).unwrap();
                let want = bold_m(to_f64(&kappa), Complex64::new(0.0, 3.0 * x)).unwrap();
                assert!((got - want).norm() < 1e-11, "{got} vs {want}");
            }
        }
        let s = build_subsystem_direct(1, vec![int(12)]).unwrap();
        let one = PolyFunction::new(MPoly::one(1));
        let v = chi_numeric(&one, &s, &[0.7], 3).unwrap();
        assert!((v.re - 1.0 / libm::tgamma(13.0)).abs() < 1e-20);
    }
}
