//! Random inputs and fault constructions for the suites.

use num_traits::{Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::poly::Monomial;
use crate::rational::{int, rat, Rational};
use crate::rootgeom::{
    build_subsystem_a, build_subsystem_b, build_subsystem_direct, OrthogonalSubsystem, RationalVector,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    A,
    B,
    Direct,
}

impl Family {
    pub fn name(self) -> &'static str {
        match self {
            Family::A => "A",
            Family::B => "B",
            Family::Direct => "direct",
        }
    }
}

/// p/q with q in 1..=max_den, uniform over the representable values in [lo, hi].
pub fn rational_in(rng: &mut ChaCha8Rng, lo: i64, hi: i64, max_den: i64) -> Rational {
    let q = rng.random_range(1..=max_den);
    let p = rng.random_range(lo * q..=hi * q);
    rat(p, q)
}

pub fn vector(rng: &mut ChaCha8Rng, dim: usize) -> RationalVector {
    loop {
        let v = RationalVector::new((0..dim).map(|_| rational_in(rng, -3, 3, 3)).collect()).expect("dim >= 1");
        if !v.is_zero() {
            return v;
        }
    }
}

pub fn pick<'a, T>(rng: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[rng.random_range(0..items.len())]
}

/// A monomial of total degree `degree` in `dim` variables, by scattering
/// the degree units over random coordinates.
pub fn monomial(rng: &mut ChaCha8Rng, dim: usize, degree: u32) -> Monomial {
    let mut e = vec![0u32; dim];
    for _ in 0..degree {
        e[rng.random_range(0..dim)] += 1;
    }
    Monomial::new(e)
}

pub fn rank(family: Family, dim: usize) -> usize {
    match family {
        Family::A => dim / 2,
        Family::B => 2 * (dim / 2),
        Family::Direct => dim,
    }
}

/// The subsystem of the given family with multiplicities in subsystem order.
pub fn subsystem(family: Family, dim: usize, kappas: Vec<Rational>) -> Result<OrthogonalSubsystem> {
    match family {
        Family::A => build_subsystem_a(dim, kappas),
        Family::B => {
            let plus = kappas.iter().step_by(2).cloned().collect();
            let minus = kappas.iter().skip(1).step_by(2).cloned().collect();
            build_subsystem_b(dim, plus, minus)
        }
        Family::Direct => build_subsystem_direct(dim, kappas),
    }
}

/// A or B type with 2 <= N <= max_dim, multiplicities from `kappa`.
pub fn random_subsystem(
    rng: &mut ChaCha8Rng,
    max_dim: usize,
    mut kappa: impl FnMut(&mut ChaCha8Rng) -> Rational,
) -> Result<(Family, OrthogonalSubsystem)> {
    if max_dim < 2 {
        let k = kappa(rng);
        return Ok((Family::Direct, build_subsystem_direct(1, vec![k])?));
    }
    let family = if rng.random_bool(0.5) { Family::A } else { Family::B };
    let dim = rng.random_range(2..=max_dim);
    let kappas = (0..rank(family, dim)).map(|_| kappa(rng)).collect();
    Ok((family, subsystem(family, dim, kappas)?))
}

pub fn with_first_kappa(s: &OrthogonalSubsystem, kappa: Rational) -> Result<OrthogonalSubsystem> {
    let mut k = s.kappas().to_vec();
    k[0] = kappa;
    s.with_kappas(k)
}

pub fn perturb_kappa(s: &OrthogonalSubsystem) -> Result<OrthogonalSubsystem> {
    with_first_kappa(s, &s.kappas()[0] + rat(1, 2))
}

pub fn drop_projection(s: &OrthogonalSubsystem) -> Result<OrthogonalSubsystem> {
    with_first_kappa(s, int(0))
}

/// alpha_1 + e_N / 3. The result may no longer be orthogonal, so it is
/// built without validation.
pub fn perturb_root(s: &OrthogonalSubsystem) -> OrthogonalSubsystem {
    let dim = s.dim();
    let mut roots = s.roots().to_vec();
    roots[0] = roots[0].add(&RationalVector::basis(dim, dim - 1).scale(&rat(1, 3))).expect("same dimension");
    OrthogonalSubsystem::new_unchecked(dim, roots, s.kappas().to_vec())
}

/// Whether alpha is a root of A_{N-1} (e_i - e_j) or B_N (+-e_i, +-e_i +- e_j).
pub fn root_system_member(family_b: bool, alpha: &RationalVector) -> bool {
    let nz: Vec<&Rational> = alpha.coords().iter().filter(|c| !c.is_zero()).collect();
    let unit = nz.iter().all(|c| c.abs() == int(1));
    if family_b {
        unit && (nz.len() == 1 || nz.len() == 2)
    } else {
        unit && nz.len() == 2 && (nz[0] + nz[1]).is_zero()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn draws_are_reproducible() {
        let mut a = ChaCha8Rng::seed_from_u64(7);
        let mut b = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            assert_eq!(vector(&mut a, 4), vector(&mut b, 4));
            let k = rational_in(&mut a, 0, 4, 6);
            assert!(k >= int(0) && k <= int(4));
            assert_eq!(k, rational_in(&mut b, 0, 4, 6));
        }
        assert_eq!(monomial(&mut a, 3, 5).degree(), 5);
    }

    #[test]
    fn faults_change_the_subsystem() {
        let s = subsystem(Family::B, 4, vec![int(1), rat(1, 2), int(2), int(3)]).unwrap();
        assert_eq!(s.roots()[1], RationalVector::from_ints(&[1, -1, 0, 0]));
        assert_eq!(perturb_kappa(&s).unwrap().kappas()[0], rat(3, 2));
        assert_eq!(drop_projection(&s).unwrap().kappas()[0], int(0));
        let p = perturb_root(&s);
        assert!(!root_system_member(true, &p.roots()[0]));
        assert!(s.roots().iter().all(|r| root_system_member(true, r)));
        assert!(root_system_member(false, &RationalVector::from_ints(&[0, 1, -1])));
        assert!(!root_system_member(false, &RationalVector::from_ints(&[1, 1, 0])));
    }
}
