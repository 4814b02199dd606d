//! Words over a finite ordered alphabet `x1 < x2 < ... < xm`.

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::FreeAlgError;

/// A single generator `x_i`, 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct GeneratorIndex(u8);

impl GeneratorIndex {
    /// Largest supported alphabet.
    pub const MAX: usize = u8::MAX as usize;

    pub fn new(value: usize, alphabet: usize) -> Result<Self, FreeAlgError> {
        if value == 0 || value > alphabet || value > Self::MAX {
            return Err(FreeAlgError::LetterOutOfRange { letter: value, alphabet });
        }
        Ok(GeneratorIndex(value as u8))
    }

    pub fn value(self) -> usize {
        self.0 as usize
    }
}

/// A monomial of the free associative algebra: a finite, possibly empty,
/// sequence of generators.
///
/// `Ord` is the degree-lexicographic order: shorter words are smaller, and
/// words of equal length compare at their first differing letter.
#[derive(Clone, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Word(Vec<u8>);

/// One way of gluing two words along a common nonempty border:
/// `p = v·w` and `q = w·u`, so that `p·u = v·q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Overlap {
    pub w: Word,
    pub u: Word,
    pub v: Word,
}

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// Builds a word from 1-based letter values. Panics on 0 or values above 255;
    /// use [`Word::checked`] for untrusted input.
    pub fn new(letters: impl IntoIterator<Item = usize>) -> Self {
        Word(
            letters
                .into_iter()
                .map(|l| {
                    assert!((1..=GeneratorIndex::MAX).contains(&l), "letter {l} out of range");
                    l as u8
                })
                .collect(),
        )
    }

    pub fn checked(letters: &[usize], alphabet: usize) -> Result<Self, FreeAlgError> {
        letters
            .iter()
            .map(|&l| GeneratorIndex::new(l, alphabet).map(|g| g.0))
            .collect::<Result<Vec<_>, _>>()
            .map(Word)
    }

    pub fn letter(index: usize) -> Self {
        Word::new([index])
    }

    pub(crate) fn from_raw(raw: Vec<u8>) -> Self {
        Word(raw)
    }

    pub fn letters(&self) -> &[u8] {
        &self.0
    }

    pub fn generators(&self) -> impl Iterator<Item = GeneratorIndex> + '_ {
        self.0.iter().map(|&l| GeneratorIndex(l))
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Largest letter value used, 0 for the empty word.
    pub fn max_letter(&self) -> usize {
        self.0.iter().copied().max().unwrap_or(0) as usize
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut raw = Vec::with_capacity(self.0.len() + other.0.len());
        raw.extend_from_slice(&self.0);
        raw.extend_from_slice(&other.0);
        Word(raw)
    }

    /// `left · self · right`.
    pub fn wrap(&self, left: &Word, right: &Word) -> Word {
        let mut raw = Vec::with_capacity(left.0.len() + self.0.len() + right.0.len());
        raw.extend_from_slice(&left.0);
        raw.extend_from_slice(&self.0);
        raw.extend_from_slice(&right.0);
        Word(raw)
    }

    pub fn subword(&self, start: usize, end: usize) -> Word {
        Word(self.0[start..end].to_vec())
    }

    /// Position of the leftmost occurrence of `factor` in `self`.
    pub fn find_first(&self, factor: &Word) -> Option<usize> {
        let n = factor.0.len();
        if n > self.0.len() {
            return None;
        }
        if n == 0 {
            return Some(0);
        }
        self.0.windows(n).position(|win| win == factor.0.as_slice())
    }

    pub fn contains_factor(&self, factor: &Word) -> bool {
        self.find_first(factor).is_some()
    }

    /// Every `(left, right)` with `left · factor · right == self`, ordered by
    /// position from left to right.
    pub fn factor_occurrences(&self, factor: &Word) -> Vec<(Word, Word)> {
        let n = factor.0.len();
        if n > self.0.len() {
            return Vec::new();
        }
        (0..=self.0.len() - n)
            .filter(|&i| self.0[i..i + n] == factor.0[..])
            .map(|i| (self.subword(0, i), self.subword(i + n, self.0.len())))
            .collect()
    }
}

/// Deglex comparison, exposed as a free function for symmetry with the other
/// word operations.
pub fn deglex_compare(u: &Word, v: &Word) -> Ordering {
    u.cmp(v)
}

/// All occurrences of `u` inside `v` as `(left, right)` pairs.
pub fn find_factor(u: &Word, v: &Word) -> Vec<(Word, Word)> {
    v.factor_occurrences(u)
}

/// All decompositions `p = v·w`, `q = w·u` with `w` nonempty and `u`, `v`
/// proper, ordered by increasing border length. The caller is expected to
/// have ruled out `p` being a factor of `q` and vice versa.
pub fn find_overlaps(p: &Word, q: &Word) -> Vec<Overlap> {
    let limit = p.degree().min(q.degree());
    (1..limit)
        .filter(|&k| p.0[p.0.len() - k..] == q.0[..k])
        .map(|k| Overlap {
            w: q.subword(0, k),
            u: q.subword(k, q.degree()),
            v: p.subword(0, p.degree() - k),
        })
        .collect()
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Word({})", self)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::text::format_word(self, super::Notation::Indexed))
    }
}
