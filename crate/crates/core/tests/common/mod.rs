#![allow(dead_code)]

use nlie_envelope::freealg::{rat, Polynomial, Word};
use proptest::prelude::*;

pub fn word(alphabet: usize, max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(1..=alphabet, 0..=max_len).prop_map(Word::new)
}

pub fn coefficient() -> impl Strategy<Value = nlie_envelope::freealg::Scalar> {
    (-5i64..=5, 1i64..=3).prop_map(|(p, q)| rat(p, q))
}

pub fn polynomial(alphabet: usize, max_len: usize, max_terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec((word(alphabet, max_len), coefficient()), 0..=max_terms).prop_map(Polynomial::from_terms)
}

/// All words of exactly `degree` letters over `alphabet` letters.
pub fn all_words(alphabet: usize, degree: usize) -> Vec<Word> {
    let mut out = vec![Vec::new()];
    for _ in 0..degree {
        out = out
            .into_iter()
            .flat_map(|w: Vec<usize>| {
                (1..=alphabet).map(move |a| {
                    let mut next = w.clone();
                    next.push(a);
                    next
                })
            })
            .collect();
    }
    out.into_iter().map(Word::new).collect()
}
