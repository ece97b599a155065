//! Fixtures shared by the benchmarks.

use projdunkl_core::poly::{monomials_of_degree, MPoly};
use projdunkl_core::rational::{int, rat};
use projdunkl_core::rootgeom::{build_subsystem_a, build_subsystem_b, OrthogonalSubsystem, RationalVector};

/// B-type subsystem in dimension 6 with mixed multiplicities.
pub fn b6() -> OrthogonalSubsystem {
    build_subsystem_b(6, vec![rat(1, 2), int(1), rat(3, 2)], vec![int(2), rat(1, 3), int(1)]).expect("valid B6")
}

/// A-type subsystem in dimension 6.
pub fn a6() -> OrthogonalSubsystem {
    build_subsystem_a(6, vec![rat(1, 2), int(1), rat(7, 4)]).expect("valid A6")
}

pub fn direction(dim: usize) -> RationalVector {
    RationalVector::new((0..dim).map(|j| rat(2 * j as i64 - 3, 3)).collect()).expect("dim >= 1")
}

/// Sum of the first `count` monomials of the given degree.
pub fn poly_of_degree(dim: usize, degree: u32, count: usize) -> MPoly {
    let mut p = MPoly::zero(dim);
    for m in monomials_of_degree(dim, degree).into_iter().take(count) {
        p = &p + &MPoly::monomial(m, int(1));
    }
    p
}
