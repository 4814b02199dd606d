//! Sparse noncommutative polynomials with exact rational coefficients.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{FreeAlgError, Scalar, Word};

/// An element of the free associative algebra over ℚ.
///
/// Terms live in a map keyed by [`Word`], whose order is deglex, so the
/// leading monomial is the last key. Zero coefficients are never stored.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Polynomial {
    terms: BTreeMap<Word, Scalar>,
}

impl Polynomial {
    pub fn zero() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }

    pub fn one() -> Self {
        Self::monomial(Word::empty(), Scalar::one())
    }

    pub fn monomial(word: Word, coeff: Scalar) -> Self {
        let mut p = Self::zero();
        p.add_term(word, coeff);
        p
    }

    pub fn from_word(word: Word) -> Self {
        Self::monomial(word, Scalar::one())
    }

    /// The generator `x_i` as a degree-one polynomial.
    pub fn letter(index: usize) -> Self {
        Self::from_word(Word::letter(index))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Word, Scalar)>) -> Self {
        let mut p = Self::zero();
        for (w, c) in terms {
            p.add_term(w, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of terms with nonzero coefficient.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Highest degree among the terms; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.terms.keys().next_back().map(Word::degree)
    }

    pub fn max_letter(&self) -> usize {
        self.terms.keys().map(Word::max_letter).max().unwrap_or(0)
    }

    pub fn coefficient(&self, word: &Word) -> Scalar {
        self.terms.get(word).cloned().unwrap_or_else(Scalar::zero)
    }

    /// Terms in reverse deglex order, leading term first.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Word, &Scalar)> + ExactSizeIterator {
        self.terms.iter().rev()
    }

    pub fn support(&self) -> impl Iterator<Item = &Word> {
        self.terms.keys().rev()
    }

    pub(crate) fn into_map(self) -> BTreeMap<Word, Scalar> {
        self.terms
    }

    pub(crate) fn from_map(terms: BTreeMap<Word, Scalar>) -> Self {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        Polynomial { terms }
    }

    /// Adds `coeff · word` in place, pruning the entry if it cancels.
    pub fn add_term(&mut self, word: Word, coeff: Scalar) {
        add_into(&mut self.terms, word, coeff);
    }

    pub fn leading_monomial(&self) -> Result<&Word, FreeAlgError> {
        self.terms.keys().next_back().ok_or(FreeAlgError::ZeroPolynomial)
    }

    pub fn leading_coefficient(&self) -> Result<&Scalar, FreeAlgError> {
        self.terms.values().next_back().ok_or(FreeAlgError::ZeroPolynomial)
    }

    pub fn leading_term(&self) -> Result<(&Word, &Scalar), FreeAlgError> {
        self.terms.iter().next_back().ok_or(FreeAlgError::ZeroPolynomial)
    }

    pub fn is_monic(&self) -> bool {
        self.leading_coefficient().map(One::is_one).unwrap_or(false)
    }

    /// Divides through by the leading coefficient.
    pub fn make_monic(&self) -> Result<Polynomial, FreeAlgError> {
        let lc = self.leading_coefficient()?.clone();
        if lc.is_one() {
            return Ok(self.clone());
        }
        let inv = lc.recip();
        Ok(self.scale(&inv))
    }

    pub fn scale(&self, c: &Scalar) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero();
        }
        Polynomial {
            terms: self.terms.iter().map(|(w, a)| (w.clone(), a * c)).collect(),
        }
    }

    /// `left · self · right` for words `left`, `right`.
    pub fn mul_word(&self, left: &Word, right: &Word) -> Polynomial {
        // Wrapping by fixed words is injective, so no coefficients collide.
        Polynomial {
            terms: self
                .terms
                .iter()
                .map(|(w, c)| (w.wrap(left, right), c.clone()))
                .collect(),
        }
    }

    pub fn add(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.terms.clone();
        for (w, c) in &other.terms {
            add_into(&mut out, w.clone(), c.clone());
        }
        Polynomial { terms: out }
    }

    pub fn sub(&self, other: &Polynomial) -> Polynomial {
        let mut out = self.terms.clone();
        for (w, c) in &other.terms {
            add_into(&mut out, w.clone(), -c.clone());
        }
        Polynomial { terms: out }
    }

    pub fn mul(&self, other: &Polynomial) -> Polynomial {
        let mut out = BTreeMap::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                add_into(&mut out, a.concat(b), ca * cb);
            }
        }
        Polynomial { terms: out }
    }

    /// `self += coeff · left · other · right`.
    pub fn add_scaled_product(&mut self, coeff: &Scalar, left: &Word, other: &Polynomial, right: &Word) {
        for (w, c) in &other.terms {
            add_into(&mut self.terms, w.wrap(left, right), coeff * c);
        }
    }

    /// Words of the support whose every letter is at most `alphabet`.
    pub fn fits_alphabet(&self, alphabet: usize) -> bool {
        self.max_letter() <= alphabet
    }
}

pub(crate) fn add_into(map: &mut BTreeMap<Word, Scalar>, word: Word, coeff: Scalar) {
    if coeff.is_zero() {
        return;
    }
    use std::collections::btree_map::Entry;
    match map.entry(word) {
        Entry::Vacant(e) => {
            e.insert(coeff);
        }
        Entry::Occupied(mut e) => {
            *e.get_mut() += coeff;
            if e.get().is_zero() {
                e.remove();
            }
        }
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({})", self)
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::format_polynomial(self))
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::add(self, rhs)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::sub(self, rhs)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        Polynomial::mul(self, rhs)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        self.scale(&-Scalar::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(mut self, rhs: Polynomial) -> Polynomial {
        for (w, c) in rhs.terms {
            add_into(&mut self.terms, w, c);
        }
        self
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(mut self, rhs: Polynomial) -> Polynomial {
        for (w, c) in rhs.terms {
            add_into(&mut self.terms, w, -c);
        }
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::{parse_polynomial, rat};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s).unwrap()
    }

    #[test]
    fn ring_examples() {
        assert_eq!(&p("x1 - x2") + &p("x2"), p("x1"));
        assert_eq!(&p("x1 + x2") * &p("x1"), p("x1*x1 + x2*x1"));
        assert!((&p("x1") - &p("x1")).is_zero());
    }

    #[test]
    fn mul_word_of_g4() {
        let g4 = p("cba - cab - bca + bac + acb - abc + d");
        let got = g4.mul_word(&Word::letter(4), &Word::empty());
        assert_eq!(got, p("dcba - dcab - dbca + dbac + dacb - dabc + dd"));
        assert_eq!(got.len(), 7);
    }

    #[test]
    fn leading_data() {
        let g1 = p("dcb - dbc - cdb + cbd + bdc - bcd - a");
        assert_eq!(g1.leading_monomial().unwrap(), &Word::new([4, 3, 2]));
        let x1 = p("x1");
        assert_eq!(x1.leading_monomial().unwrap(), &Word::letter(1));
        assert_eq!(x1.leading_coefficient().unwrap(), &rat(1, 1));
        assert_eq!(p("-2*x2*x1 + 2*x1*x2").make_monic().unwrap(), p("x2*x1 - x1*x2"));
        assert_eq!(Polynomial::zero().leading_monomial(), Err(FreeAlgError::ZeroPolynomial));
        assert_eq!(Polynomial::zero().make_monic(), Err(FreeAlgError::ZeroPolynomial));
    }

    #[test]
    fn terms_listed_leading_first() {
        let f = p("x1 + x3*x3 + x2*x4");
        let words: Vec<_> = f.support().cloned().collect();
        assert_eq!(words, vec![Word::new([3, 3]), Word::new([2, 4]), Word::letter(1)]);
    }
}
