//! Universal associative envelopes of (n+1)-dimensional n-Lie algebras,
//! computed with noncommutative Gröbner bases in the free associative algebra.

pub mod freealg;
pub mod rewrite;
pub mod nlie;
pub mod envelope;
pub mod repro;
