//! The embedded reference trace and its integrity check.

use std::collections::BTreeMap;

use serde::Deserialize;
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::freealg::{parse_polynomial, parse_word, Polynomial, Word};

pub const GOLDEN_TOML: &str = include_str!("../../data/l4_golden.toml");
pub const GOLDEN_SHA256: &str = "013d4b2bc87079b3d992894211f2a55760f7a566db620fe337a2f5e037112d91";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GoldenError {
    #[error("golden data checksum mismatch: pinned {expected}, file hashes to {actual}")]
    Checksum { expected: String, actual: String },
    #[error("golden data is not valid TOML: {0}")]
    Toml(String),
    #[error("golden entry {name}: {message}")]
    Entry { name: String, message: String },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawGolden {
    polynomials: BTreeMap<String, String>,
    leading_monomials: BTreeMap<String, String>,
    terms: BTreeMap<String, usize>,
    rounds: Vec<RawRound>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRound {
    round: usize,
    compositions: Vec<RawComposition>,
    #[serde(default)]
    vanish: Vec<String>,
    #[serde(default)]
    reduced: Vec<RawReduced>,
    basis_after: Option<Vec<String>>,
    new_compositions: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComposition {
    g: String,
    u: String,
    v: String,
    h: String,
    terms: Option<usize>,
    normal_form: Option<String>,
    normal_form_terms: Option<usize>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReduced {
    from: String,
    to: String,
}

/// `g·u − v·h` with generators referred to by name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenComposition {
    pub g: String,
    pub u: Word,
    pub v: Word,
    pub h: String,
    pub terms: Option<usize>,
    pub normal_form: Option<String>,
    pub normal_form_terms: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenRound {
    pub round: usize,
    pub compositions: Vec<GoldenComposition>,
    /// Adjoined normal forms that self-reduction removes.
    pub vanish: Vec<String>,
    /// `(before, after)` names of adjoined normal forms changed by
    /// self-reduction.
    pub reduced: Vec<(String, String)>,
    pub basis_after: Option<Vec<String>>,
    pub new_compositions: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GoldenData {
    pub polynomials: BTreeMap<String, Polynomial>,
    /// Leading monomials of every named polynomial, including those only
    /// known by their leading monomial.
    pub leading_monomials: BTreeMap<String, Word>,
    pub terms: BTreeMap<String, usize>,
    pub rounds: Vec<GoldenRound>,
}

pub fn sha256_hex(text: &str) -> String {
    hex::encode(Sha256::digest(text.as_bytes()))
}

/// Loads the embedded file after checking it against the pinned hash.
pub fn load_golden() -> Result<GoldenData, GoldenError> {
    let actual = sha256_hex(GOLDEN_TOML);
    if actual != GOLDEN_SHA256 {
        return Err(GoldenError::Checksum { expected: GOLDEN_SHA256.to_string(), actual });
    }
    parse_golden(GOLDEN_TOML)
}

fn entry_error(name: &str, message: impl ToString) -> GoldenError {
    GoldenError::Entry { name: name.to_string(), message: message.to_string() }
}

pub fn parse_golden(text: &str) -> Result<GoldenData, GoldenError> {
    let raw: RawGolden = toml::from_str(text).map_err(|e| GoldenError::Toml(e.to_string()))?;
    let mut polynomials = BTreeMap::new();
    let mut leading_monomials = BTreeMap::new();
    for (name, body) in &raw.polynomials {
        let p = parse_polynomial(body).map_err(|e| entry_error(name, e))?;
        let lm = p.leading_monomial().map_err(|e| entry_error(name, e))?.clone();
        if !p.is_monic() {
            return Err(entry_error(name, "not monic"));
        }
        leading_monomials.insert(name.clone(), lm);
        polynomials.insert(name.clone(), p);
    }
    for (name, body) in &raw.leading_monomials {
        let w = parse_word(body).map_err(|e| entry_error(name, e))?;
        if leading_monomials.insert(name.clone(), w).is_some() {
            return Err(entry_error(name, "given both as a polynomial and as a leading monomial"));
        }
    }
    let known = |name: &str| -> Result<String, GoldenError> {
        if leading_monomials.contains_key(name) {
            Ok(name.to_string())
        } else {
            Err(entry_error(name, "unknown name"))
        }
    };
    let mut rounds = Vec::new();
    for r in raw.rounds {
        let mut compositions = Vec::new();
        for c in r.compositions {
            compositions.push(GoldenComposition {
                g: known(&c.g)?,
                u: parse_word(&c.u).map_err(|e| entry_error(&c.g, e))?,
                v: parse_word(&c.v).map_err(|e| entry_error(&c.h, e))?,
                h: known(&c.h)?,
                terms: c.terms,
                normal_form: c.normal_form.as_deref().map(known).transpose()?,
                normal_form_terms: c.normal_form_terms,
            });
        }
        rounds.push(GoldenRound {
            round: r.round,
            compositions,
            vanish: r.vanish.iter().map(|n| known(n)).collect::<Result<_, _>>()?,
            reduced: r
                .reduced
                .iter()
                .map(|x| Ok((known(&x.from)?, known(&x.to)?)))
                .collect::<Result<_, GoldenError>>()?,
            basis_after: r
                .basis_after
                .map(|names| names.iter().map(|n| known(n)).collect::<Result<_, _>>())
                .transpose()?,
            new_compositions: r.new_compositions,
        });
    }
    Ok(GoldenData { polynomials, leading_monomials, terms: raw.terms, rounds })
}

impl GoldenData {
    pub fn polynomial(&self, name: &str) -> Option<&Polynomial> {
        self.polynomials.get(name)
    }

    pub fn leading_monomial(&self, name: &str) -> &Word {
        &self.leading_monomials[name]
    }
}
