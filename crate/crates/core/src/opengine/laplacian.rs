//! Delta_kappa = sum_j T_j^2 for the coordinate subsystem {e_1, ..., e_N}.

use super::ProjectionDunklOperator;
use crate::error::{check_dim, Error, Result};
use crate::poly::{compose_linear, LinearMap, MPoly};
use crate::rational::{int, Rational};
use crate::rootgeom::{OrthogonalSubsystem, RationalVector};

fn require_coordinate(subsystem: &OrthogonalSubsystem) -> Result<()> {
    let dim = subsystem.dim();
    let coordinate = subsystem.rank() == dim
        && subsystem.roots().iter().enumerate().all(|(j, a)| *a == RationalVector::basis(dim, j));
    if !coordinate {
        return Err(Error::SubsystemMismatch);
    }
    Ok(())
}

/// sum_j T_j (T_j p) with the generic operator.
pub fn laplacian_double_application(subsystem: &OrthogonalSubsystem, p: &MPoly) -> Result<MPoly> {
    require_coordinate(subsystem)?;
    check_dim(subsystem.dim(), p.dim())?;
    let mut out = MPoly::zero(p.dim());
    for j in 0..subsystem.dim() {
        let t = ProjectionDunklOperator::coordinate(subsystem.clone(), j)?;
        out.add_scaled(&t.apply_poly(&t.apply_poly(p)?)?, &int(1));
    }
    Ok(out)
}

/// Delta p + sum_j [2 kappa_j x_j d_j p - (kappa_j^2 + kappa_j) x_j (d_j p)(tau_j x)
///                   + (kappa_j^2 - kappa_j) (p - p o tau_j)] / x_j^2.
///
/// The bracket is a polynomial multiple of x_j^2 only as a whole; an inexact
/// division means the identity failed.
pub fn laplacian_expanded(subsystem: &OrthogonalSubsystem, p: &MPoly) -> Result<MPoly> {
    require_coordinate(subsystem)?;
    let dim = subsystem.dim();
    check_dim(dim, p.dim())?;
    let mut out = MPoly::zero(dim);
    for (j, kappa) in subsystem.kappas().iter().enumerate() {
        let e = RationalVector::basis(dim, j);
        let tau = LinearMap::projection(&e)?;
        let xj = MPoly::var(dim, j);
        let dp = p.partial(j);
        out.add_scaled(&dp.partial(j), &int(1));

        let k2: Rational = kappa * kappa;
        let mut bracket = (&xj * &dp).scale(&(int(2) * kappa));
        bracket.add_scaled(&(&xj * &compose_linear(&dp, &tau)?), &-(&k2 + kappa));
        bracket.add_scaled(&p.checked_sub(&compose_linear(p, &tau)?)?, &(&k2 - kappa));
        let quotient = bracket
            .div_linear_form(&e)
            .and_then(|q| q.div_linear_form(&e))
            .map_err(|_| Error::Verification(format!("expanded Laplacian term {} is not a polynomial", j + 1)))?;
        out.add_scaled(&quotient, &int(1));
    }
    Ok(out)
}

/// Delta_kappa p by double application, cross-checked against the expanded
/// formula; disagreement is returned as [`Error::Verification`].
pub fn laplacian_direct(subsystem: &OrthogonalSubsystem, p: &MPoly) -> Result<MPoly> {
    let direct = laplacian_double_application(subsystem, p)?;
    let expanded = laplacian_expanded(subsystem, p)?;
    if direct != expanded {
        return Err(Error::Verification(format!(
            "double application gives {direct}, expanded formula gives {expanded}"
        )));
    }
    Ok(direct)
}
