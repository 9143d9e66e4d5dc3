//! Exact arithmetic: rationals, multivariate polynomials, rational
//! functions and small dense matrices over them.

mod field;
mod gcd;
mod matrix;
mod poly;

pub use field::{sum, ScalarField};
pub use gcd::{content_in, gcd};
pub use matrix::{rational_identity, rational_rank, signature, SquareMatrix};
pub use poly::{fmt_rational, Monomial, Polynomial, Vars};

pub type Rational = num_rational::BigRational;

/// Shorthand for the rational `n/d`.
pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(n.into(), d.into())
}
