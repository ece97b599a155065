//! Coordinate operators T_i of the pair subsystems and the decompositions of
//! T_xi through them, written out independently of the generic operator.

use num_traits::Zero;

use super::ProjectionDunklOperator;
use crate::error::{check_dim, Error, Result};
use crate::poly::{divided_difference, MPoly};
use crate::rational::{int, Rational};
use crate::rootgeom::{alternating_sign, build_subsystem_a, decompose_xi, OrthogonalSubsystem, RationalVector};

fn pair_root(dim: usize, k: usize, sign: i64) -> RationalVector {
    let mut c = vec![int(0); dim];
    c[2 * k] = int(1);
    c[2 * k + 1] = int(sign);
    RationalVector::new(c).expect("nonempty")
}

fn require_a(subsystem: &OrthogonalSubsystem) -> Result<()> {
    let pairs = subsystem.dim() / 2;
    let reference = build_subsystem_a(subsystem.dim(), vec![int(0); pairs])?;
    if subsystem.roots() != reference.roots() {
        return Err(Error::SubsystemMismatch);
    }
    Ok(())
}

fn require_b(subsystem: &OrthogonalSubsystem) -> Result<()> {
    let dim = subsystem.dim();
    let expected: Vec<RationalVector> =
        (0..dim / 2).flat_map(|k| [pair_root(dim, k, 1), pair_root(dim, k, -1)]).collect();
    if dim < 2 || subsystem.roots() != expected.as_slice() {
        return Err(Error::SubsystemMismatch);
    }
    Ok(())
}

fn check_index(dim: usize, i: usize) -> Result<usize> {
    if i == 0 || i > 2 * (dim / 2) {
        return Err(Error::invalid(format!("index {i} out of range 1..={}", 2 * (dim / 2))));
    }
    Ok((i - 1) / 2)
}

/// T_i p = d_i p - (-1)^i kappa_k rho_k p with k = ceil(i/2), for the
/// subsystem {e_{2k-1} - e_{2k}}. `i` is 1-based.
pub fn t_coordinate_a(subsystem: &OrthogonalSubsystem, i: usize, p: &MPoly) -> Result<MPoly> {
    require_a(subsystem)?;
    check_dim(subsystem.dim(), p.dim())?;
    let k = check_index(subsystem.dim(), i)?;
    let rho = divided_difference(p, &subsystem.roots()[k])?;
    let c = alternating_sign(i) * &subsystem.kappas()[k];
    Ok(&p.partial(i - 1) + &rho.scale(&c))
}

/// T_i p = d_i p - (-1)^i kappa_k^- rho_k^- p + kappa_k^+ rho_k^+ p for the
/// subsystem {e_{2k-1} +/- e_{2k}} with interleaved roots. `i` is 1-based.
pub fn t_coordinate_b(subsystem: &OrthogonalSubsystem, i: usize, p: &MPoly) -> Result<MPoly> {
    require_b(subsystem)?;
    check_dim(subsystem.dim(), p.dim())?;
    let k = check_index(subsystem.dim(), i)?;
    let (plus, minus) = (&subsystem.roots()[2 * k], &subsystem.roots()[2 * k + 1]);
    let (kp, km) = (&subsystem.kappas()[2 * k], &subsystem.kappas()[2 * k + 1]);
    let mut out = p.partial(i - 1);
    out.add_scaled(&divided_difference(p, minus)?, &(alternating_sign(i) * km));
    out.add_scaled(&divided_difference(p, plus)?, kp);
    Ok(out)
}

/// sum_i (-1)^{i+1} xi_{ceil(i/2)} T_i p + d_{xi_hat} p, where
/// xi = sum_k xi_k (e_{2k-1} - e_{2k}) + xi_hat.
pub fn decomposition_a(subsystem: &OrthogonalSubsystem, xi: &RationalVector, p: &MPoly) -> Result<MPoly> {
    require_a(subsystem)?;
    let split = decompose_xi(xi, subsystem)?;
    let mut out = p.directional_derivative(&split.residual)?;
    for i in 1..=2 * (subsystem.dim() / 2) {
        let c = alternating_sign(i) * &split.coefficients[(i - 1) / 2];
        if !c.is_zero() {
            out.add_scaled(&t_coordinate_a(subsystem, i, p)?, &c);
        }
    }
    Ok(out)
}

/// sum_i (xi^+_k + (-1)^{i+1} xi^-_k) T_i p + eps xi_N d_N p with k = ceil(i/2)
/// and eps = 1 exactly when N is odd.
pub fn decomposition_b(subsystem: &OrthogonalSubsystem, xi: &RationalVector, p: &MPoly) -> Result<MPoly> {
    require_b(subsystem)?;
    let dim = subsystem.dim();
    let split = decompose_xi(xi, subsystem)?;
    let mut out = MPoly::zero(dim);
    for i in 1..=2 * (dim / 2) {
        let k = (i - 1) / 2;
        let c: Rational = &split.coefficients[2 * k] + alternating_sign(i) * &split.coefficients[2 * k + 1];
        if !c.is_zero() {
            out.add_scaled(&t_coordinate_b(subsystem, i, p)?, &c);
        }
    }
    if dim % 2 == 1 {
        out.add_scaled(&p.partial(dim - 1), &xi.coords()[dim - 1]);
    }
    Ok(out)
}

/// sum_i xi_i T_{alpha_i} p + d_{xi_hat} p for any subsystem.
pub fn decomposition_general(op: &ProjectionDunklOperator, p: &MPoly) -> Result<MPoly> {
    let subsystem = op.subsystem();
    let split = decompose_xi(op.xi(), subsystem)?;
    let mut out = p.directional_derivative(&split.residual)?;
    for (c, alpha) in split.coefficients.iter().zip(subsystem.roots()) {
        if c.is_zero() {
            continue;
        }
        let t_alpha = ProjectionDunklOperator::new(subsystem.clone(), alpha.clone())?;
        out.add_scaled(&t_alpha.apply_poly(p)?, c);
    }
    Ok(out)
}
