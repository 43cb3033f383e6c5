//! Exact arithmetic: rationals, prime fields, dense polynomials and matrices.

mod field;
pub mod integer;
mod matrix;
mod poly;

pub use field::{is_rational_square, rational_to_integer, Field, FieldTag, PrimeField, Rationals};
pub use matrix::{span_rank, Matrix, Solution};
pub use poly::{interpolate, Poly};

pub type QPoly = Poly<Rationals>;
pub type QMatrix = Matrix<Rationals>;

/// Shorthand for an integer-valued rational.
pub fn rat(n: i64) -> num_rational::BigRational {
    num_rational::BigRational::from_integer(n.into())
}

/// Shorthand for `n / d`.
pub fn ratio(n: i64, d: i64) -> num_rational::BigRational {
    num_rational::BigRational::new(n.into(), d.into())
}
