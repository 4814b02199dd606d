//! The free associative algebra ℚ⟨x1, …, xm⟩: words under deglex order and
//! sparse polynomials with exact rational coefficients.

mod polynomial;
mod text;
mod word;

use num_bigint::BigInt;
use num_rational::BigRational;
use thiserror::Error;

pub use polynomial::Polynomial;
pub use text::{format_polynomial, format_polynomial_with, format_scalar, format_word, parse_polynomial, parse_word, Notation};
pub use word::{deglex_compare, find_factor, find_overlaps, GeneratorIndex, Overlap, Word};

pub(crate) use polynomial::add_into;

/// Coefficient field.
pub type Scalar = BigRational;

/// `numer / denom` as a [`Scalar`].
pub fn rat(numer: i64, denom: i64) -> Scalar {
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeAlgError {
    #[error("operation undefined on the zero polynomial")]
    ZeroPolynomial,
    #[error("parse error at byte {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("generator x{letter} outside alphabet of size {alphabet}")]
    LetterOutOfRange { letter: usize, alphabet: usize },
}
