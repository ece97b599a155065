//! Exact sparse multivariate polynomials over Q and the divided differences
//! built on them.

mod linear;
mod mpoly;
mod ops;
mod parse;

pub use linear::{compose_linear, LinearMap};
pub use mpoly::{monomials_of_degree, monomials_up_to, MPoly, Monomial};
pub(crate) use ops::divided_difference_with;
pub use ops::{classical_dunkl, divided_difference, reflection_difference};
pub use parse::parse_poly;
