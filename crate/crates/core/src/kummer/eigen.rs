//! Eigenfunctions M_kappa(lambda, x) of the commuting family T_xi.
//!
//! For an orthogonal subsystem with roots alpha_r the joint eigenfunction with
//! eigenvalues i <lambda, xi> and value 1 at the origin is
//! e^{i <lambda, h(0, x)>} prod_r M_{kappa_r}(i <lambda, alpha_r> <x, alpha_r> / |alpha_r|^2),
//! which specializes to the direct-product, A-type and B-type formulas.

use num_complex::Complex64;

use super::{m_kappa, m_kappa_derivative};
use crate::error::{check_dim, Error, Result};
use crate::rational::to_f64;
use crate::rootgeom::{build_subsystem_a, build_subsystem_b, build_subsystem_direct, OrthogonalSubsystem};
use crate::testfn::{TestFunction, Univariate};

/// x -> M(1, kappa + 1; i lambda x) with all derivatives.
#[derive(Debug, Clone, Copy)]
pub struct KummerEigen {
    pub kappa: f64,
    pub lambda: f64,
}

impl Univariate for KummerEigen {
    fn name(&self) -> String {
        format!("M_{}(i*{}*x)", self.kappa, self.lambda)
    }

    fn derivative(&self, x: f64, order: usize) -> Result<Complex64> {
        let il = Complex64::new(0.0, self.lambda);
        let k = u32::try_from(order).map_err(|_| Error::invalid("derivative order too large"))?;
        Ok(il.powu(k) * m_kappa_derivative(self.kappa, k, il * x)?)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EigenFamily {
    DirectProduct,
    AType,
    BType,
    General,
}

impl EigenFamily {
    pub fn name(self) -> &'static str {
        match self {
            EigenFamily::DirectProduct => "direct_product",
            EigenFamily::AType => "A_type",
            EigenFamily::BType => "B_type",
            EigenFamily::General => "general",
        }
    }
}

#[derive(Debug, Clone)]
pub struct MultivarEigenfunction {
    family: EigenFamily,
    dim: usize,
    kappas: Vec<f64>,
    lambda: Vec<Complex64>,
    roots: Vec<Vec<f64>>,
    /// i <lambda, alpha_r> / |alpha_r|^2, the factor multiplying <x, alpha_r>.
    rates: Vec<Complex64>,
    /// Component of lambda orthogonal to every root.
    lambda_perp: Vec<Complex64>,
}

impl MultivarEigenfunction {
    /// Direct-product family: roots e_1..e_N, one multiplicity each.
    pub fn direct_product(kappas: Vec<f64>, lambda: Vec<Complex64>) -> Result<Self> {
        let n = lambda.len();
        let s = build_subsystem_direct(n, vec![crate::rational::int(0); kappas.len()])?;
        Self::build(EigenFamily::DirectProduct, &s, kappas, lambda)
    }

    /// A-type family: roots e_{2j-1} - e_{2j}, floor(N/2) multiplicities.
    pub fn a_type(kappas: Vec<f64>, lambda: Vec<Complex64>) -> Result<Self> {
        let n = lambda.len();
        let s = build_subsystem_a(n, vec![crate::rational::int(0); kappas.len()])?;
        Self::build(EigenFamily::AType, &s, kappas, lambda)
    }

    /// B-type family: roots e_{2j-1} + e_{2j} and e_{2j-1} - e_{2j}.
    pub fn b_type(kappas_plus: Vec<f64>, kappas_minus: Vec<f64>, lambda: Vec<Complex64>) -> Result<Self> {
        let n = lambda.len();
        let zeros = |k: usize| vec![crate::rational::int(0); k];
        let s = build_subsystem_b(n, zeros(kappas_plus.len()), zeros(kappas_minus.len()))?;
        // Subsystem order is interleaved: alpha_1^+, alpha_1^-, alpha_2^+, ...
        let kappas = kappas_plus.iter().zip(&kappas_minus).flat_map(|(p, m)| [*p, *m]).collect();
        Self::build(EigenFamily::BType, &s, kappas, lambda)
    }

    /// Any orthogonal subsystem, with its own multiplicities.
    pub fn for_subsystem(subsystem: &OrthogonalSubsystem, lambda: Vec<Complex64>) -> Result<Self> {
        let kappas = subsystem.kappas().iter().map(to_f64).collect();
        Self::build(EigenFamily::General, subsystem, kappas, lambda)
    }

    fn build(family: EigenFamily, s: &OrthogonalSubsystem, kappas: Vec<f64>, lambda: Vec<Complex64>) -> Result<Self> {
        check_dim(s.dim(), lambda.len())?;
        if kappas.len() != s.rank() {
            return Err(Error::MultiplicityCount { expected: s.rank(), found: kappas.len() });
        }
        if let Some(k) = kappas.iter().find(|k| !(**k > -1.0)) {
            return Err(Error::invalid(format!("multiplicity {k} must exceed -1")));
        }
        let roots: Vec<Vec<f64>> = s.roots().iter().map(|a| a.to_f64()).collect();
        let norms_sq: Vec<f64> = roots.iter().map(|a| a.iter().map(|v| v * v).sum()).collect();
        let mut lambda_perp = lambda.clone();
        let mut rates = Vec::with_capacity(roots.len());
        for (a, n2) in roots.iter().zip(&norms_sq) {
            let pair: Complex64 = lambda.iter().zip(a).map(|(l, v)| l * v).sum();
            rates.push(Complex64::i() * pair / n2);
            for (lp, v) in lambda_perp.iter_mut().zip(a) {
                *lp -= pair * (v / n2);
            }
        }
        Ok(Self { family, dim: s.dim(), kappas, lambda, roots, rates, lambda_perp })
    }

    pub fn family(&self) -> EigenFamily {
        self.family
    }

    pub fn lambda(&self) -> &[Complex64] {
        &self.lambda
    }

    pub fn kappas(&self) -> &[f64] {
        &self.kappas
    }

    fn parts(&self, x: &[f64]) -> Result<(Complex64, Vec<Complex64>)> {
        check_dim(self.dim, x.len())?;
        if x.iter().any(|v| !v.is_finite()) {
            return Err(Error::Domain { function: "eigenfunction".into(), point: format!("{x:?}") });
        }
        let phase: Complex64 = self.lambda_perp.iter().zip(x).map(|(l, v)| l * v).sum();
        let e = (Complex64::i() * phase).exp();
        let mut z = Vec::with_capacity(self.roots.len());
        for (a, rate) in self.roots.iter().zip(&self.rates) {
            let ax: f64 = a.iter().zip(x).map(|(u, v)| u * v).sum();
            z.push(rate * ax);
        }
        Ok((e, z))
    }
}

impl TestFunction for MultivarEigenfunction {
    fn name(&self) -> String {
        format!("eigen[{}; kappa={:?}]", self.family.name(), self.kappas)
    }

    fn dim(&self) -> usize {
        self.dim
    }

    fn value(&self, x: &[f64]) -> Result<Complex64> {
        let (e, z) = self.parts(x)?;
        let mut v = e;
        for (k, zr) in self.kappas.iter().zip(&z) {
            v *= m_kappa(*k, *zr)?;
        }
        Ok(v)
    }

    fn gradient(&self, x: &[f64]) -> Result<Vec<Complex64>> {
        let (e, z) = self.parts(x)?;
        let factors: Vec<Complex64> =
            self.kappas.iter().zip(&z).map(|(k, zr)| m_kappa(*k, *zr)).collect::<Result<_>>()?;
        let product: Complex64 = factors.iter().product();
        let value = e * product;
        let mut grad: Vec<Complex64> = self.lambda_perp.iter().map(|l| Complex64::i() * l * value).collect();
        for r in 0..self.roots.len() {
            let others: Complex64 = factors.iter().enumerate().filter(|(s, _)| *s != r).map(|(_, f)| *f).product();
            let dk = m_kappa_derivative(self.kappas[r], 1, z[r])?;
            let w = e * others * dk * self.rates[r];
            for (g, a) in grad.iter_mut().zip(&self.roots[r]) {
                *g += w * a;
            }
        }
        Ok(grad)
    }
}

/// Evaluates the eigenfunction at x.
pub fn eigen_multivar(eigen: &MultivarEigenfunction, x: &[f64]) -> Result<Complex64> {
    eigen.value(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kummer::eigen_rank_one;
    use crate::testfn::check_gradient;

    fn cv(v: &[f64]) -> Vec<Complex64> {
        v.iter().map(|&x| Complex64::new(x, 0.0)).collect()
    }

    #[test]
    fn one_at_origin() {
        let fams = [
            MultivarEigenfunction::direct_product(vec![0.5, 1.0, 2.0], cv(&[1.0, -2.0, 0.5])).unwrap(),
            MultivarEigenfunction::a_type(vec![0.5, 1.5], cv(&[1.0, 2.0, -1.0, 0.0, 3.0])).unwrap(),
            MultivarEigenfunction::b_type(vec![0.5, 1.0], vec![1.5, 2.0], cv(&[1.0, 2.0, -1.0, 0.5])).unwrap(),
        ];
        for f in &fams {
            assert_eq!(f.value(&vec![0.0; f.dim()]).unwrap(), Complex64::new(1.0, 0.0));
        }
    }

    #[test]
    fn matches_explicit_formulas() {
        let lam = [1.0, 2.0, -1.0, 0.5];
        let x = [0.3, -0.7, 1.1, 0.4];
        let i = Complex64::i();
        let m = |k: f64, z: Complex64| m_kappa(k, z).unwrap();

        let d = MultivarEigenfunction::direct_product(vec![0.5, 1.0, 1.5, 2.0], cv(&lam)).unwrap();
        let expect: Complex64 =
            (0..4).map(|j| eigen_rank_one([0.5, 1.0, 1.5, 2.0][j], lam[j], x[j]).unwrap()).product();
        assert!((d.value(&x).unwrap() - expect).norm() < 1e-14);

        let a = MultivarEigenfunction::a_type(vec![0.5, 1.5], cv(&lam)).unwrap();
        let h0 = [(x[0] + x[1]) / 2.0, (x[0] + x[1]) / 2.0, (x[2] + x[3]) / 2.0, (x[2] + x[3]) / 2.0];
        let phase: f64 = lam.iter().zip(&h0).map(|(l, v)| l * v).sum();
        let expect = (i * phase).exp()
            * m(0.5, i * 0.5 * (lam[0] - lam[1]) * (x[0] - x[1]))
            * m(1.5, i * 0.5 * (lam[2] - lam[3]) * (x[2] - x[3]));
        assert!((a.value(&x).unwrap() - expect).norm() < 1e-14);

        let b = MultivarEigenfunction::b_type(vec![0.5, 1.0], vec![1.5, 2.0], cv(&lam)).unwrap();
        let expect = m(1.5, i * 0.5 * (lam[0] - lam[1]) * (x[0] - x[1]))
            * m(0.5, i * 0.5 * (lam[0] + lam[1]) * (x[0] + x[1]))
            * m(2.0, i * 0.5 * (lam[2] - lam[3]) * (x[2] - x[3]))
            * m(1.0, i * 0.5 * (lam[2] + lam[3]) * (x[2] + x[3]));
        assert!((b.value(&x).unwrap() - expect).norm() < 1e-14);
    }

    #[test]
    fn a_type_on_the_diagonal_is_a_plane_wave() {
        let lam = [1.0, 2.0, -1.0, 0.0];
        let f = MultivarEigenfunction::a_type(vec![0.5, 1.5], cv(&lam)).unwrap();
        let x = [0.7, 0.7, -1.3, -1.3];
        let phase: f64 = lam.iter().zip(&x).map(|(l, v)| l * v).sum();
        assert!((f.value(&x).unwrap() - Complex64::new(0.0, phase).exp()).norm() < 1e-15);
    }

    #[test]
    fn gradients_are_consistent() {
        let f = MultivarEigenfunction::b_type(vec![0.5, 1.0], vec![1.5, 2.0], cv(&[1.0, 2.0, -1.0, 0.5, 0.7])).unwrap();
        check_gradient(&f, &[0.3, -0.7, 1.1, 0.4, -0.2], 1e-6).unwrap();
        let k = KummerEigen { kappa: 1.5, lambda: 3.0 };
        let h = 1e-5;
        let fd = (k.value(1.0 + h).unwrap() - k.value(1.0 - h).unwrap()) / (2.0 * h);
        assert!((fd - k.derivative(1.0, 1).unwrap()).norm() < 1e-8);
    }

    #[test]
    fn shape_errors() {
        assert!(MultivarEigenfunction::a_type(vec![0.5], cv(&[1.0, 2.0, 3.0, 4.0])).is_err());
        assert!(MultivarEigenfunction::direct_product(vec![0.5], cv(&[1.0, 2.0])).is_err());
    }
}
