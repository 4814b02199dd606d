//! Noncommutative division with remainder.

use std::collections::BTreeMap;

use num_traits::Zero;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::GeneratorSet;
use crate::freealg::{add_into, Polynomial, Scalar, Word};

/// How a reducible polynomial picks its next rewrite.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
#[derive(Default)]
pub enum Strategy {
    /// Rewrite the deglex-greatest reducible monomial, using the generator
    /// with the deglex-greatest leading monomial that divides it, at its
    /// leftmost occurrence. Ties between equal leading monomials go to the
    /// generator listed first.
    #[default]
    GreatestLeftmost,
    /// Uniformly random choice of reducible monomial, generator and
    /// occurrence. Only meaningful modulo a Gröbner basis, where the result
    /// does not depend on the choices.
    Randomized { seed: u64 },
}


/// One rewrite `f ← f − coefficient · left · g · right`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    pub generator: usize,
    pub position: usize,
    pub coefficient: Scalar,
    pub left: Word,
    pub right: Word,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionTrace {
    pub steps: Vec<ReductionStep>,
}

impl ReductionTrace {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// `Σ coefficient · left · g · right` over all steps: the ideal element
    /// that was subtracted from the input.
    pub fn ideal_element(&self, set: &GeneratorSet) -> Polynomial {
        let mut acc = Polynomial::zero();
        for step in &self.steps {
            acc.add_scaled_product(&step.coefficient, &step.left, set.get(step.generator), &step.right);
        }
        acc
    }

    /// Re-applies the steps to `f`; for the trace of `normal_form(f, set)`
    /// this reproduces the normal form exactly.
    pub fn replay(&self, f: &Polynomial, set: &GeneratorSet) -> Polynomial {
        f.sub(&self.ideal_element(set))
    }
}

/// Normal form of `f` modulo `set` under the default strategy, with trace.
pub fn normal_form(f: &Polynomial, set: &GeneratorSet) -> (Polynomial, ReductionTrace) {
    normal_form_with(f, set, Strategy::GreatestLeftmost)
}

pub fn normal_form_with(f: &Polynomial, set: &GeneratorSet, strategy: Strategy) -> (Polynomial, ReductionTrace) {
    let gens: Vec<&Polynomial> = set.members().iter().collect();
    let mut steps = Vec::new();
    let nf = match strategy {
        Strategy::GreatestLeftmost => reduce_greatest(f, &gens, Some(&mut steps)),
        Strategy::Randomized { seed } => reduce_randomized(f, &gens, seed, &mut steps),
    };
    (nf, ReductionTrace { steps })
}

/// Normal form without recording a trace.
pub fn reduce(f: &Polynomial, set: &GeneratorSet) -> Polynomial {
    let gens: Vec<&Polynomial> = set.members().iter().collect();
    reduce_greatest(f, &gens, None)
}

pub(crate) fn reduce_by(f: &Polynomial, gens: &[&Polynomial], strategy: Strategy) -> Polynomial {
    match strategy {
        Strategy::GreatestLeftmost => reduce_greatest(f, gens, None),
        Strategy::Randomized { seed } => reduce_randomized(f, gens, seed, &mut Vec::new()),
    }
}

/// Generator with the greatest leading monomial dividing `word`, and the
/// leftmost position of that monomial in `word`.
fn pick_reducer(word: &Word, gens: &[&Polynomial]) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize, &Word)> = None;
    for (i, g) in gens.iter().enumerate() {
        let lm = g.leading_monomial().expect("generators are nonzero");
        if lm.degree() > word.degree() {
            continue;
        }
        if let Some(pos) = word.find_first(lm) {
            if best.is_none_or(|(_, _, b)| lm > b) {
                best = Some((i, pos, lm));
            }
        }
    }
    best.map(|(i, pos, _)| (i, pos))
}

fn reduce_greatest(f: &Polynomial, gens: &[&Polynomial], mut trace: Option<&mut Vec<ReductionStep>>) -> Polynomial {
    let mut remaining: BTreeMap<Word, Scalar> = f.clone().into_map();
    let mut result: BTreeMap<Word, Scalar> = BTreeMap::new();
    // Rewriting only introduces smaller words, so the largest remaining word
    // is always the deglex-greatest reducible monomial of the running
    // polynomial once it is found reducible.
    while let Some((word, coeff)) = remaining.pop_last() {
        let Some((gi, pos)) = pick_reducer(&word, gens) else {
            result.insert(word, coeff);
            continue;
        };
        let g = gens[gi];
        let lm_len = g.leading_monomial().expect("nonzero").degree();
        let left = word.subword(0, pos);
        let right = word.subword(pos + lm_len, word.degree());
        for (w, c) in g.terms().skip(1) {
            add_into(&mut remaining, w.wrap(&left, &right), -(&coeff * c));
        }
        if let Some(steps) = trace.as_deref_mut() {
            steps.push(ReductionStep { generator: gi, position: pos, coefficient: coeff, left, right });
        }
    }
    Polynomial::from_map(result)
}

fn reduce_randomized(f: &Polynomial, gens: &[&Polynomial], seed: u64, steps: &mut Vec<ReductionStep>) -> Polynomial {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut current = f.clone();
    loop {
        let reducible: Vec<Word> = current
            .support()
            .filter(|w| pick_reducer(w, gens).is_some())
            .cloned()
            .collect();
        let Some(word) = reducible.choose(&mut rng).cloned() else {
            return current;
        };
        let mut candidates = Vec::new();
        for (gi, g) in gens.iter().enumerate() {
            let lm = g.leading_monomial().expect("nonzero");
            for (left, right) in word.factor_occurrences(lm) {
                candidates.push((gi, left, right));
            }
        }
        let (gi, left, right) = candidates.swap_remove(rng.gen_range(0..candidates.len()));
        let coeff = current.coefficient(&word);
        debug_assert!(!coeff.is_zero());
        let neg = -coeff.clone();
        current.add_scaled_product(&neg, &left, gens[gi], &right);
        steps.push(ReductionStep { generator: gi, position: left.degree(), coefficient: coeff, left, right });
    }
}

/// Whether no monomial of `f` has a leading monomial of `set` as a factor.
pub fn is_normal(f: &Polynomial, set: &GeneratorSet) -> bool {
    let gens: Vec<&Polynomial> = set.members().iter().collect();
    f.support().all(|w| pick_reducer(w, &gens).is_none())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn degree_one_is_already_normal() {
        let set = GeneratorSet::new([p("x2*x1 - x1*x2"), p("x3*x3 - x1")]).unwrap();
        let (nf, trace) = normal_form(&p("x1"), &set);
        assert_eq!(nf, p("x1"));
        assert!(trace.is_empty());
    }

    #[test]
    fn commutation_sorts_words() {
        let set = GeneratorSet::new([p("x2*x1 - x1*x2")]).unwrap();
        let f = p("x2*x2*x1 + 3*x2*x1*x2");
        let (nf, trace) = normal_form(&f, &set);
        assert_eq!(nf, p("4*x1*x2*x2"));
        assert_eq!(trace.replay(&f, &set), nf);
    }

    #[test]
    fn randomized_agrees_on_groebner_set() {
        let set = GeneratorSet::new([p("x2*x1 - x1*x2"), p("x3*x1 - x1*x3"), p("x3*x2 - x2*x3")]).unwrap();
        let f = p("x3*x2*x1*x3 - 2*x2*x3*x1 + x1");
        let (expected, _) = normal_form(&f, &set);
        for seed in 0..20 {
            let (got, trace) = normal_form_with(&f, &set, Strategy::Randomized { seed });
            assert_eq!(got, expected);
            assert_eq!(trace.replay(&f, &set), got);
        }
    }

    #[test]
    fn prefers_greatest_leading_monomial_then_leftmost() {
        // both x2 and x2*x2 divide x2*x2; the longer one wins
        let set = GeneratorSet::new([p("x2 - x1"), p("x2*x2 - x3")]).unwrap();
        let (_, trace) = normal_form(&p("x2*x2"), &set);
        assert_eq!(set.get(trace.steps[0].generator), &p("x2*x2 - x3"));
        let set = GeneratorSet::new([p("x2 - x1")]).unwrap();
        let (nf, trace) = normal_form(&p("x2*x2"), &set);
        assert_eq!(trace.steps[0].position, 0);
        assert_eq!(nf, p("x1*x1"));
    }
}
