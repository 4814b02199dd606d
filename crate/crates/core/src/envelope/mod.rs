//! The universal associative envelope `F⟨x_1, …, x_{n+1}⟩ / ⟨G_1, …, G_{n+1}⟩`
//! of an (n+1)-dimensional n-ary algebra: Gröbner bases, normal words and
//! arithmetic on canonical representatives.

mod automaton;
mod closed_form;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::freealg::{format_polynomial_with, Notation, Polynomial, Word};
use crate::nlie::{alt_polynomial, envelope_generators, nff_normal_form, omit, rank, sum_of_squares, AlgebraLabel, NLieAlgebra};
use crate::rewrite::{complete, is_groebner, reduce, CompletionOutcome, EngineConfig, GeneratorSet, RewriteError};

pub use automaton::FactorAutomaton;
pub use closed_form::{
    closed_form_basis, closed_form_kind, closed_form_members, h_generator, k_generator, verify_closed_form,
    ClosedFormKind,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnvelopeError {
    #[error("no closed-form basis for odd arity n = {n}")]
    NoClosedForm { n: usize },
    #[error("algebra carries no classification label")]
    UnknownCase,
    #[error("the generator set is not a Gröbner basis; only trace data is available")]
    BasisIncomplete,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

/// An algebra together with the (possibly partial) Gröbner basis of its
/// envelope ideal.
#[derive(Clone, Debug)]
pub struct Envelope {
    algebra: NLieAlgebra,
    basis: CompletionOutcome,
    leading_monomials: Vec<Word>,
    automaton: Option<FactorAutomaton>,
}

impl Envelope {
    fn from_outcome(algebra: NLieAlgebra, basis: CompletionOutcome) -> Self {
        let leading_monomials: Vec<Word> = basis.basis().leading_monomials().into_iter().cloned().collect();
        let automaton = basis.is_completed().then(|| {
            let patterns: Vec<&Word> = leading_monomials.iter().collect();
            FactorAutomaton::new(algebra.dimension(), &patterns)
        });
        Envelope { algebra, basis, leading_monomials, automaton }
    }

    /// Uses the closed-form basis for labelled even-arity algebras and runs
    /// completion on the original generators otherwise.
    pub fn build(algebra: &NLieAlgebra, cfg: &EngineConfig) -> Result<Self, EnvelopeError> {
        match closed_form_basis(algebra) {
            Ok(basis) => Ok(Self::from_outcome(algebra.clone(), CompletionOutcome::Completed { basis, log: Vec::new() })),
            Err(EnvelopeError::NoClosedForm { .. } | EnvelopeError::UnknownCase) => Self::complete(algebra, cfg),
            Err(e) => Err(e),
        }
    }

    /// Runs completion on `{G_1, …, G_{n+1}}`.
    pub fn complete(algebra: &NLieAlgebra, cfg: &EngineConfig) -> Result<Self, EnvelopeError> {
        let outcome = complete(&envelope_generators(algebra), cfg)?;
        Ok(Self::from_outcome(algebra.clone(), outcome))
    }

    /// Accepts an arbitrary generator set after checking the composition
    /// criterion.
    pub fn with_basis(algebra: &NLieAlgebra, basis: GeneratorSet) -> Result<Self, EnvelopeError> {
        if !is_groebner(&basis).is_groebner {
            return Err(EnvelopeError::BasisIncomplete);
        }
        Ok(Self::from_outcome(algebra.clone(), CompletionOutcome::Completed { basis, log: Vec::new() }))
    }

    pub fn algebra(&self) -> &NLieAlgebra {
        &self.algebra
    }

    pub fn outcome(&self) -> &CompletionOutcome {
        &self.basis
    }

    pub fn basis(&self) -> &GeneratorSet {
        self.basis.basis()
    }

    pub fn leading_monomials(&self) -> &[Word] {
        &self.leading_monomials
    }

    pub fn is_completed(&self) -> bool {
        self.basis.is_completed()
    }

    fn automaton(&self) -> Result<&FactorAutomaton, EnvelopeError> {
        self.automaton.as_ref().ok_or(EnvelopeError::BasisIncomplete)
    }

    fn completed_basis(&self) -> Result<&GeneratorSet, EnvelopeError> {
        self.automaton()?;
        Ok(self.basis())
    }
}

/// Whether `w` has no leading monomial of the basis as a factor.
pub fn is_normal_word(w: &Word, envelope: &Envelope) -> Result<bool, EnvelopeError> {
    Ok(envelope.automaton()?.accepts(w))
}

/// Normal words of exactly `degree` letters in deglex order.
pub fn enumerate_normal_words(envelope: &Envelope, degree: usize) -> Result<Vec<Word>, EnvelopeError> {
    Ok(envelope.automaton()?.words(degree))
}

/// Number of normal words of each degree `0..=max_degree`, by transfer
/// counting on the factor automaton.
pub fn count_normal_words(envelope: &Envelope, max_degree: usize) -> Result<Vec<u64>, EnvelopeError> {
    Ok(envelope.automaton()?.counts(max_degree))
}

/// Same counts by testing every word of each degree against every leading
/// monomial.
pub fn count_normal_words_brute_force(envelope: &Envelope, max_degree: usize) -> Result<Vec<u64>, EnvelopeError> {
    envelope.automaton()?;
    let m = envelope.algebra.dimension();
    let lms = &envelope.leading_monomials;
    Ok((0..=max_degree)
        .map(|d| {
            let total = m.pow(d as u32);
            (0..total)
                .into_par_iter()
                .filter(|&code| {
                    let word = word_from_index(code, m, d);
                    lms.iter().all(|lm| !word.contains_factor(lm))
                })
                .count() as u64
        })
        .collect())
}

/// The `code`-th word of degree `d` over `m` letters in deglex order.
fn word_from_index(mut code: usize, m: usize, d: usize) -> Word {
    let mut letters = vec![0usize; d];
    for slot in letters.iter_mut().rev() {
        *slot = code % m + 1;
        code /= m;
    }
    Word::new(letters)
}

/// Canonical representative of `f` in the envelope.
pub fn envelope_reduce(f: &Polynomial, envelope: &Envelope) -> Result<Polynomial, EnvelopeError> {
    Ok(reduce(f, envelope.completed_basis()?))
}

/// Product of two canonical representatives.
pub fn envelope_multiply(f: &Polynomial, g: &Polynomial, envelope: &Envelope) -> Result<Polynomial, EnvelopeError> {
    envelope_reduce(&(f * g), envelope)
}

/// For every ascending tuple omitting one index, the alternating sum of the
/// images reduces to the image of the bracket.
pub fn verify_envelope_property(envelope: &Envelope) -> Result<bool, EnvelopeError> {
    let basis = envelope.completed_basis()?;
    let m = envelope.algebra.dimension();
    Ok((1..=m).into_par_iter().all(|i| {
        let alt = alt_polynomial(&omit(m, i)).expect("distinct indices");
        reduce(&alt, basis) == reduce(&envelope.algebra.y_polynomial(i), basis)
    }))
}

/// Each `x_i` is its own normal form and the images of `x_1, …, x_{n+1}` are
/// linearly independent.
pub fn verify_injectivity(envelope: &Envelope) -> Result<bool, EnvelopeError> {
    let basis = envelope.completed_basis()?;
    let m = envelope.algebra.dimension();
    let images: Vec<Polynomial> = (1..=m).map(|i| reduce(&Polynomial::letter(i), basis)).collect();
    if images.iter().enumerate().any(|(k, img)| img != &Polynomial::letter(k + 1)) {
        return Ok(false);
    }
    let mut support: Vec<Word> = images.iter().flat_map(|p| p.support().cloned()).collect();
    support.sort();
    support.dedup();
    let rows = images
        .iter()
        .map(|p| support.iter().map(|w| p.coefficient(w)).collect())
        .collect();
    Ok(rank(rows) == m)
}

/// `Σ x_i²`, which lies in the envelope ideal of the simple algebra for odd
/// arity and obstructs the original generators from being a Gröbner basis.
pub fn odd_case_obstruction(algebra: &NLieAlgebra) -> Result<Polynomial, EnvelopeError> {
    let n = algebra.arity();
    if n.is_multiple_of(2) {
        return Err(EnvelopeError::Precondition(format!("arity must be odd, got {n}")));
    }
    let simple = crate::nlie::simple_algebra(n).map_err(|e| EnvelopeError::Precondition(e.to_string()))?;
    if algebra.structure() != simple.structure() {
        return Err(EnvelopeError::Precondition("algebra is not the simple algebra".into()));
    }
    let squares = sum_of_squares(algebra.dimension());
    let nff = nff_normal_form(algebra).make_monic().expect("nonzero for odd arity");
    assert_eq!(nff, squares, "closed-form normal form disagrees with the sum of squares");
    Ok(squares)
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EnvelopeChecks {
    pub groebner: bool,
    pub envelope_property: Option<bool>,
    pub injectivity: Option<bool>,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct EnvelopeReport {
    pub algebra_label: String,
    pub n: usize,
    pub basis: Vec<String>,
    pub normal_word_counts: Vec<u64>,
    pub checks: EnvelopeChecks,
}

/// Summary of an envelope; a capped envelope reports its partial basis with
/// no counts and no envelope checks.
pub fn envelope_report(envelope: &Envelope, max_degree: usize, notation: Notation) -> Result<EnvelopeReport, EnvelopeError> {
    let algebra_label = envelope.algebra.label().map_or_else(|| "custom".to_string(), AlgebraLabel::to_string);
    let basis = envelope.basis().members().iter().map(|g| format_polynomial_with(g, notation)).collect();
    let checks = if envelope.is_completed() {
        EnvelopeChecks {
            groebner: is_groebner(envelope.basis()).is_groebner,
            envelope_property: Some(verify_envelope_property(envelope)?),
            injectivity: Some(verify_injectivity(envelope)?),
        }
    } else {
        EnvelopeChecks { groebner: false, envelope_property: None, injectivity: None }
    };
    let normal_word_counts =
        if envelope.is_completed() { count_normal_words(envelope, max_degree)? } else { Vec::new() };
    Ok(EnvelopeReport { algebra_label, n: envelope.algebra.arity(), basis, normal_word_counts, checks })
}
