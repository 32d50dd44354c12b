//! Scalar numerics shared across the crate: bisection root finding,
//! adaptive Simpson quadrature, and forward-mode derivatives via
//! truncated Taylor series.

mod bisect;
mod jet;
mod quad;

pub use bisect::{bisect, bisect_predicate, count_sign_changes};
pub use jet::Jet;
pub use quad::adaptive_simpson;
