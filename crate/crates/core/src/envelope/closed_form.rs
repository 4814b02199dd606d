//! Explicit Gröbner bases of the envelope ideal for even arity.

use crate::freealg::{Polynomial, Word};
use crate::nlie::{envelope_generator_list, envelope_sign, omit, signed_permutation_sum, AlgebraLabel, NLieAlgebra};
use crate::rewrite::{is_groebner, reduce, GeneratorSet};

use super::EnvelopeError;

/// Shape of the closed-form basis for an even-arity algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClosedFormKind {
    /// The simple algebra: the original generators are already a basis.
    SimpleEven,
    /// Abelian, 1a, 2a and r: the original generators are already a basis.
    Unchanged,
    /// `{G_1, H_2, …, H_n, G_{n+1}, x_{n+1}x_1 − x_1x_{n+1}}`.
    Case1b,
    /// `{G_1, G_2, K_3, …, K_{n+1}, x_2x_1 − x_1x_2}`.
    Case2b,
}

pub fn closed_form_kind(algebra: &NLieAlgebra) -> Result<ClosedFormKind, EnvelopeError> {
    let n = algebra.arity();
    if n % 2 == 1 {
        return Err(EnvelopeError::NoClosedForm { n });
    }
    Ok(match algebra.label().ok_or(EnvelopeError::UnknownCase)? {
        AlgebraLabel::Simple => ClosedFormKind::SimpleEven,
        AlgebraLabel::Abelian | AlgebraLabel::OneA | AlgebraLabel::TwoA | AlgebraLabel::R { .. } => {
            ClosedFormKind::Unchanged
        }
        AlgebraLabel::OneB => ClosedFormKind::Case1b,
        AlgebraLabel::TwoB { .. } => ClosedFormKind::Case2b,
    })
}

/// Signed sum over orderings of `x_1, …, x̂_i, …, x_{n+1}` in which `x_p`
/// and `x_q` are not adjacent.
fn separated_sum(m: usize, i: usize, p: usize, q: usize) -> Polynomial {
    signed_permutation_sum(&omit(m, i), |word| {
        !word.windows(2).any(|pair| (pair[0] == p && pair[1] == q) || (pair[0] == q && pair[1] == p))
    })
}

/// `H_i = (−1)^{⌊n/2⌋} Σ ε(σ) x_σ` over orderings keeping `x_1` and
/// `x_{n+1}` apart, for `2 ≤ i ≤ n`.
pub fn h_generator(n: usize, i: usize) -> Polynomial {
    separated_sum(n + 1, i, 1, n + 1).scale(&envelope_sign(n))
}

/// `K_i = −(−1)^{⌊n/2⌋} Σ ε(σ) x_σ` over orderings keeping `x_1` and `x_2`
/// apart, for `3 ≤ i ≤ n+1`.
pub fn k_generator(n: usize, i: usize) -> Polynomial {
    separated_sum(n + 1, i, 1, 2).scale(&-envelope_sign(n))
}

/// `x_p x_q − x_q x_p`.
fn commutator(p: usize, q: usize) -> Polynomial {
    &Polynomial::from_word(Word::new([p, q])) - &Polynomial::from_word(Word::new([q, p]))
}

/// The members of the closed-form basis, before sorting.
pub fn closed_form_members(algebra: &NLieAlgebra) -> Result<Vec<Polynomial>, EnvelopeError> {
    let kind = closed_form_kind(algebra)?;
    let n = algebra.arity();
    let m = n + 1;
    let mut gens = envelope_generator_list(algebra);
    match kind {
        ClosedFormKind::SimpleEven | ClosedFormKind::Unchanged => {}
        ClosedFormKind::Case1b => {
            for i in 2..=n {
                gens[i - 1] = h_generator(n, i);
            }
            gens.push(commutator(m, 1));
        }
        ClosedFormKind::Case2b => {
            for i in 3..=m {
                gens[i - 1] = k_generator(n, i);
            }
            gens.push(commutator(2, 1));
        }
    }
    Ok(gens)
}

pub fn closed_form_basis(algebra: &NLieAlgebra) -> Result<GeneratorSet, EnvelopeError> {
    Ok(GeneratorSet::new(closed_form_members(algebra)?)?)
}

/// The closed-form set is self-reduced, passes the composition criterion,
/// and contains the original generators in its ideal.
pub fn verify_closed_form(algebra: &NLieAlgebra) -> Result<bool, EnvelopeError> {
    let basis = closed_form_basis(algebra)?;
    if !basis.is_self_reduced() || !is_groebner(&basis).is_groebner {
        return Ok(false);
    }
    Ok(envelope_generator_list(algebra).iter().all(|g| reduce(g, &basis).is_zero()))
}
