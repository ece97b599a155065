//! The projection-type operators T_xi f = d_xi f + sum_i kappa_i <alpha_i, xi> rho_i f
//! with rho_i f(x) = (f(x) - f(tau_i x)) / <x, alpha_i>, exactly on polynomials
//! and numerically on test functions.

mod decompose;
mod laplacian;
mod onevar;

use num_complex::Complex64;
use num_traits::Zero;

use crate::error::{check_dim, Error, Result};
use crate::poly::{divided_difference_with, LinearMap, MPoly};
use crate::rational::{to_f64, Rational};
use crate::rootgeom::{OrthogonalSubsystem, RationalVector};
use crate::testfn::TestFunction;

pub use decompose::{decomposition_a, decomposition_b, decomposition_general, t_coordinate_a, t_coordinate_b};
pub use laplacian::{laplacian_direct, laplacian_double_application, laplacian_expanded};
pub use onevar::{one_var_t_numeric, one_var_t_poly, one_var_t_squared, one_var_t_twice, OneVarT};

/// Below this relative size of <x, alpha> the difference quotient is replaced
/// by its limit along the root direction.
pub const HYPERPLANE_THRESHOLD: f64 = 1e-8;

#[derive(Debug, Clone)]
pub struct ProjectionDunklOperator {
    subsystem: OrthogonalSubsystem,
    xi: RationalVector,
    projections: Vec<LinearMap>,
    /// kappa_i <alpha_i, xi>
    weights: Vec<Rational>,
}

impl ProjectionDunklOperator {
    pub fn new(subsystem: OrthogonalSubsystem, xi: RationalVector) -> Result<Self> {
        check_dim(subsystem.dim(), xi.dim())?;
        let mut projections = Vec::with_capacity(subsystem.rank());
        let mut weights = Vec::with_capacity(subsystem.rank());
        for (i, (alpha, kappa)) in subsystem.roots().iter().zip(subsystem.kappas()).enumerate() {
            if alpha.is_zero() {
                return Err(Error::ZeroRoot { index: i + 1 });
            }
            projections.push(LinearMap::projection(alpha)?);
            weights.push(kappa * alpha.dot_unchecked(&xi));
        }
        Ok(Self { subsystem, xi, projections, weights })
    }

    /// T_j = T_{e_j}, 0-based `j`.
    pub fn coordinate(subsystem: OrthogonalSubsystem, j: usize) -> Result<Self> {
        let dim = subsystem.dim();
        if j >= dim {
            return Err(Error::invalid(format!("coordinate {} out of range 1..={dim}", j + 1)));
        }
        Self::new(subsystem, RationalVector::basis(dim, j))
    }

    pub fn subsystem(&self) -> &OrthogonalSubsystem {
        &self.subsystem
    }

    pub fn xi(&self) -> &RationalVector {
        &self.xi
    }

    /// Exact T_xi p.
    pub fn apply_poly(&self, p: &MPoly) -> Result<MPoly> {
        check_dim(self.subsystem.dim(), p.dim())?;
        let mut out = p.directional_derivative(&self.xi)?;
        if p.is_zero() {
            return Ok(out);
        }
        for ((alpha, tau), w) in self.subsystem.roots().iter().zip(&self.projections).zip(&self.weights) {
            if w.is_zero() {
                continue;
            }
            out.add_scaled(&divided_difference_with(p, alpha, tau)?, w);
        }
        Ok(out)
    }

    /// T_xi f(x) from the values and gradient of f.
    pub fn apply_numeric(&self, f: &dyn TestFunction, x: &[f64]) -> Result<Complex64> {
        check_dim(self.subsystem.dim(), f.dim())?;
        check_dim(self.subsystem.dim(), x.len())?;
        let xi = self.xi.to_f64();
        let grad = f.gradient(x)?;
        let mut out: Complex64 = grad.iter().zip(&xi).map(|(g, v)| g * v).sum();
        let fx = f.value(x)?;
        let x_norm = x.iter().map(|v| v * v).sum::<f64>().sqrt();
        for (alpha, w) in self.subsystem.roots().iter().zip(&self.weights) {
            if w.is_zero() {
                continue;
            }
            let a = alpha.to_f64();
            let a_norm_sq: f64 = a.iter().map(|v| v * v).sum();
            let pair: f64 = a.iter().zip(x).map(|(u, v)| u * v).sum();
            let tau_x: Vec<f64> = x.iter().zip(&a).map(|(v, u)| v - pair / a_norm_sq * u).collect();
            let quotient = if pair.abs() < HYPERPLANE_THRESHOLD * x_norm * a_norm_sq.sqrt() {
                let g = f.gradient(&tau_x)?;
                g.iter().zip(&a).map(|(gi, u)| gi * u).sum::<Complex64>() / a_norm_sq
            } else {
                (fx - f.value(&tau_x)?) / pair
            };
            out += quotient * to_f64(w);
        }
        Ok(out)
    }
}

/// Exact T_xi p.
pub fn apply_t_poly(op: &ProjectionDunklOperator, p: &MPoly) -> Result<MPoly> {
    op.apply_poly(p)
}

/// Numeric T_xi f(x).
pub fn apply_t_numeric(op: &ProjectionDunklOperator, f: &dyn TestFunction, x: &[f64]) -> Result<Complex64> {
    op.apply_numeric(f, x)
}

/// T_xi T_eta p - T_eta T_xi p; both operators must share roots and multiplicities.
pub fn commutator_poly(op1: &ProjectionDunklOperator, op2: &ProjectionDunklOperator, p: &MPoly) -> Result<MPoly> {
    if op1.subsystem != op2.subsystem {
        return Err(Error::SubsystemMismatch);
    }
    commutator_unchecked(op1, op2, p)
}

/// The commutator without the shared-subsystem check, for fault injection.
pub fn commutator_unchecked(op1: &ProjectionDunklOperator, op2: &ProjectionDunklOperator, p: &MPoly) -> Result<MPoly> {
    let a = op1.apply_poly(&op2.apply_poly(p)?)?;
    let b = op2.apply_poly(&op1.apply_poly(p)?)?;
    a.checked_sub(&b)
}
