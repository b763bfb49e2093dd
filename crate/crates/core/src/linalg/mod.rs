//! Exact linear algebra over the rationals.

mod matrix;
mod poly;

pub use matrix::{as_integer, solve_in_span, RationalMatrix, SpanSolver};
pub(crate) use matrix::sign_to_rational;
pub use poly::{IntPolynomial, RationalPolynomial};
