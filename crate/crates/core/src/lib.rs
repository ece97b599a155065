//! Projection-type Dunkl operators on orthogonal root subsystems: exact
//! polynomial algorithms, the intertwining operator, Kummer eigenfunctions
//! and the Kummer transform, with deterministic verification suites.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord, clippy::needless_range_loop)]

pub mod error;
pub mod gamma_ratio;
pub mod intertwine;
pub mod kummer;
pub mod opengine;
pub mod poly;
pub mod precision;
pub mod quadrature;
pub mod rational;
pub mod rootgeom;
pub mod testfn;
pub mod transform;
pub mod verify;

pub use error::{Error, Result};
pub use gamma_ratio::{GammaPoly, GammaRatio};
pub use intertwine::{chi_poly_scaled, ScaledChi};
pub use kummer::{bold_m, kummer_m, KummerParams};
pub use opengine::{apply_t_numeric, apply_t_poly, commutator_poly, ProjectionDunklOperator};
pub use poly::{parse_poly, LinearMap, MPoly, Monomial};
pub use precision::Precision;
pub use rational::Rational;
pub use rootgeom::{OrthogonalSubsystem, RationalVector};
pub use testfn::{TestFunction, Univariate};
pub use transform::TransformRequest;
pub use verify::{run_suites, SuiteConfig, VerificationReport};
