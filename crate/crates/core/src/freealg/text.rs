//! Text form of polynomials.
//!
//! ```text
//! polynomial := ["+" | "-"] term (("+" | "-") term)* | "0"
//! term       := coeff ["*"] word | coeff | word
//! coeff      := integer ["/" positive-integer]
//! word       := factor (["*"] factor)* | "1"
//! factor     := generator ["^" power]
//! generator  := "x" index | letter            (a = x1, b = x2, ...)
//! ```
//!
//! A lowercase `x` immediately followed by a digit is always an indexed
//! generator; any other lowercase letter is an alias.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{FreeAlgError, Polynomial, Scalar, Word};

/// How generators are spelled when formatting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Notation {
    /// `x4^2*x3*x1`
    Indexed,
    /// `d^2ca`; falls back to indexed for letters beyond `z`.
    Letters,
}

pub fn parse_polynomial(text: &str) -> Result<Polynomial, FreeAlgError> {
    Parser::new(text).polynomial()
}

pub fn parse_word(text: &str) -> Result<Word, FreeAlgError> {
    let mut parser = Parser::new(text);
    parser.skip_ws();
    if parser.peek() == Some(b'1') {
        parser.pos += 1;
        parser.expect_end()?;
        return Ok(Word::empty());
    }
    let word = parser.word()?;
    parser.expect_end()?;
    Ok(word)
}

/// Canonical indexed form, leading term first.
pub fn format_polynomial(f: &Polynomial) -> String {
    format_polynomial_with(f, Notation::Indexed)
}

pub fn format_polynomial_with(f: &Polynomial, notation: Notation) -> String {
    if f.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (word, coeff)) in f.terms().enumerate() {
        let negative = coeff.is_negative();
        match (i, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        let magnitude = coeff.abs();
        if word.is_empty() {
            out.push_str(&format_scalar(&magnitude));
        } else {
            if !magnitude.is_one() {
                out.push_str(&format_scalar(&magnitude));
                out.push('*');
            }
            out.push_str(&format_word(word, notation));
        }
    }
    out
}

pub fn format_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

pub fn format_word(word: &Word, notation: Notation) -> String {
    if word.is_empty() {
        return "1".to_string();
    }
    let letters_ok = notation == Notation::Letters && word.max_letter() <= 26;
    let mut parts: Vec<String> = Vec::new();
    let raw = word.letters();
    let mut i = 0;
    while i < raw.len() {
        let mut j = i;
        while j < raw.len() && raw[j] == raw[i] {
            j += 1;
        }
        let base = if letters_ok {
            ((b'a' + raw[i] - 1) as char).to_string()
        } else {
            format!("x{}", raw[i])
        };
        parts.push(if j - i > 1 { format!("{base}^{}", j - i) } else { base });
        i = j;
    }
    if letters_ok {
        parts.concat()
    } else {
        parts.join("*")
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str) -> Self {
        Parser { src: text.as_bytes(), pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> FreeAlgError {
        FreeAlgError::Parse { position: self.pos, message: message.into() }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn peek_at(&self, offset: usize) -> Option<u8> {
        self.src.get(self.pos + offset).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn expect_end(&mut self) -> Result<(), FreeAlgError> {
        self.skip_ws();
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected character '{}'", c as char))),
        }
    }

    fn at_generator(&self) -> bool {
        matches!(self.peek(), Some(c) if c.is_ascii_lowercase())
    }

    fn polynomial(&mut self) -> Result<Polynomial, FreeAlgError> {
        let mut result = Polynomial::zero();
        self.skip_ws();
        if self.peek().is_none() {
            return Err(self.error("empty input"));
        }
        let mut first = true;
        loop {
            self.skip_ws();
            let negative = match self.peek() {
                Some(b'+') => {
                    self.pos += 1;
                    false
                }
                Some(b'-') => {
                    self.pos += 1;
                    true
                }
                None => break,
                _ if first => false,
                Some(c) => return Err(self.error(format!("expected '+' or '-', found '{}'", c as char))),
            };
            first = false;
            self.skip_ws();
            let (word, coeff) = self.term()?;
            result.add_term(word, if negative { -coeff } else { coeff });
        }
        Ok(result)
    }

    fn term(&mut self) -> Result<(Word, Scalar), FreeAlgError> {
        if matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            let coeff = self.coefficient()?;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                if self.peek() == Some(b'1') && !self.at_digit_after(1) {
                    self.pos += 1;
                    return Ok((Word::empty(), coeff));
                }
                return Ok((self.word()?, coeff));
            }
            if self.at_generator() {
                return Ok((self.word()?, coeff));
            }
            return Ok((Word::empty(), coeff));
        }
        if self.at_generator() {
            return Ok((self.word()?, Scalar::one()));
        }
        Err(match self.peek() {
            Some(c) => self.error(format!("expected a term, found '{}'", c as char)),
            None => self.error("expected a term, found end of input"),
        })
    }

    fn at_digit_after(&self, offset: usize) -> bool {
        matches!(self.peek_at(offset), Some(c) if c.is_ascii_digit())
    }

    fn integer(&mut self) -> Result<BigInt, FreeAlgError> {
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected digits"));
        }
        let digits = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        Ok(digits.parse().expect("ascii digits parse"))
    }

    fn small_integer(&mut self) -> Result<usize, FreeAlgError> {
        let at = self.pos;
        let value = self.integer()?;
        usize::try_from(value).map_err(|_| FreeAlgError::Parse { position: at, message: "number too large".into() })
    }

    fn coefficient(&mut self) -> Result<Scalar, FreeAlgError> {
        let numer = self.integer()?;
        if self.peek() == Some(b'/') {
            self.pos += 1;
            let at = self.pos;
            let denom = self.integer()?;
            if denom.is_zero() {
                return Err(FreeAlgError::Parse { position: at, message: "zero denominator".into() });
            }
            return Ok(Scalar::new(numer, denom));
        }
        Ok(Scalar::from_integer(numer))
    }

    fn word(&mut self) -> Result<Word, FreeAlgError> {
        let mut raw: Vec<u8> = Vec::new();
        loop {
            let (letter, power) = self.factor()?;
            raw.extend(std::iter::repeat_n(letter, power));
            let save = self.pos;
            self.skip_ws();
            if self.peek() == Some(b'*') {
                self.pos += 1;
                self.skip_ws();
                if !self.at_generator() {
                    return Err(self.error("expected a generator after '*'"));
                }
                continue;
            }
            self.pos = save;
            if self.at_generator() {
                continue;
            }
            break;
        }
        Ok(Word::from_raw(raw))
    }

    fn factor(&mut self) -> Result<(u8, usize), FreeAlgError> {
        let at = self.pos;
        let c = self.peek().ok_or_else(|| self.error("expected a generator"))?;
        let letter = if c == b'x' && self.at_digit_after(1) {
            self.pos += 1;
            let index = self.small_integer()?;
            if index == 0 || index > u8::MAX as usize {
                return Err(FreeAlgError::Parse { position: at, message: format!("generator index {index} out of range") });
            }
            index as u8
        } else if c.is_ascii_lowercase() {
            self.pos += 1;
            c - b'a' + 1
        } else {
            return Err(self.error(format!("expected a generator, found '{}'", c as char)));
        };
        let mut power = 1;
        if self.peek() == Some(b'^') {
            self.pos += 1;
            let at = self.pos;
            power = self.small_integer()?;
            if power == 0 {
                return Err(FreeAlgError::Parse { position: at, message: "exponent must be positive".into() });
            }
        }
        Ok((letter, power))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::rat;

    #[test]
    fn parse_examples() {
        let f = parse_polynomial("x4*x3*x2 - x1").unwrap();
        assert_eq!(f.len(), 2);
        assert_eq!(f.coefficient(&Word::new([4, 3, 2])), rat(1, 1));
        assert_eq!(f.coefficient(&Word::letter(1)), rat(-1, 1));
        let g = parse_polynomial("3/2*x1").unwrap();
        assert_eq!(g, Polynomial::monomial(Word::letter(1), rat(3, 2)));
    }

    #[test]
    fn format_examples() {
        let n = parse_polynomial("d^2 + c^2 + b^2 + a^2").unwrap();
        assert_eq!(format_polynomial(&n), "x4^2 + x3^2 + x2^2 + x1^2");
        assert_eq!(format_polynomial_with(&n, Notation::Letters), "d^2 + c^2 + b^2 + a^2");
        let p = parse_polynomial("-2 da + 2ad + c^3b").unwrap();
        assert_eq!(format_polynomial_with(&p, Notation::Letters), "c^3b - 2*da + 2*ad");
        assert_eq!(format_polynomial(&Polynomial::zero()), "0");
        assert_eq!(format_polynomial(&parse_polynomial("-7/3 + x2").unwrap()), "x2 - 7/3");
    }

    #[test]
    fn alias_and_indexed_agree() {
        assert_eq!(parse_polynomial("dcb - a").unwrap(), parse_polynomial("x4*x3*x2 - x1").unwrap());
        assert_eq!(parse_polynomial("x12x3").unwrap(), parse_polynomial("x12*x3").unwrap());
        assert_eq!(parse_polynomial("2*1").unwrap(), parse_polynomial("2").unwrap());
        assert_eq!(parse_word("1").unwrap(), Word::empty());
        assert_eq!(parse_word("x2^3*x1").unwrap(), Word::new([2, 2, 2, 1]));
    }

    #[test]
    fn parse_errors_carry_position() {
        for bad in ["", "x1 +", "x1 x2 ++ x3", "3/0*x1", "x0", "x1^0", "x1 * 2", "#"] {
            let err = parse_polynomial(bad).unwrap_err();
            assert!(matches!(err, FreeAlgError::Parse { .. }), "{bad}: {err:?}");
        }
        match parse_polynomial("x1 + %").unwrap_err() {
            FreeAlgError::Parse { position, .. } => assert_eq!(position, 5),
            other => panic!("{other:?}"),
        }
    }
}
