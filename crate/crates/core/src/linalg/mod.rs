//! Exact rational linear algebra: matrices, canonical subspaces, Gram-weighted
//! orthogonality and congruence inertia.
//!
//! Every value here is an immutable exact object; no tolerances exist. Zero-dimensional
//! spaces and empty matrices are ordinary values.

mod inertia;
mod inner;
mod matrix;
mod subspace;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use inertia::{congruence_signature, Inertia};
pub use inner::{orth, InnerProduct, Orth};
pub use matrix::{Echelon, RationalMatrix};
pub use subspace::{meet_join, Subspace};

/// The scalar field of the whole crate.
pub type Rational = BigRational;

/// Integer shorthand for building rationals in literals and tests.
pub fn q(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n/d` shorthand. Panics if `d == 0`.
pub fn qq(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p/q"` or `"p"`; rejects zero denominators.
pub fn parse_rational(s: &str) -> Result<Rational, LinalgError> {
    s.trim().parse::<Rational>().map_err(|_| LinalgError::BadRational(s.to_string()))
}

/// Canonical text form: `"p"` when the denominator is 1, otherwise `"p/q"` in lowest terms.
pub fn format_rational(x: &Rational) -> String {
    x.to_string()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LinalgError {
    #[error("dimension mismatch in {context}: expected {expected}, found {found}")]
    DimensionMismatch { context: &'static str, expected: usize, found: usize },
    #[error("matrix is not symmetric")]
    NotSymmetric,
    #[error("gram matrix is not positive definite (LDLt pivot {pivot} is {value})")]
    NotPositiveDefinite { pivot: usize, value: String },
    #[error("matrix is singular")]
    Singular,
    #[error("not a rational number: {0:?}")]
    BadRational(String),
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_roundtrip() {
        for s in ["0", "-3", "7/2", "-1/9"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(format_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }
}
