//! JSON algebra files: `{arity, dimension, y: [[rational, …], …], label?}`.
//!
//! Rationals are written as JSON integers or as strings `"p"` / `"p/q"`. The
//! optional label is a case name (`simple`, `abelian`, `1a`, `1b`, `2a`,
//! `2b`, `r`); `2b` takes a `beta` field and `r` an `r` field.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{AlgebraLabel, NLieAlgebra, NLieError};
use crate::freealg::{format_scalar, Scalar};

#[derive(Debug, Error)]
pub enum AlgebraFileError {
    #[error("malformed algebra file: {0}")]
    Json(#[from] serde_json::Error),
    #[error("bad rational '{0}'")]
    Rational(String),
    #[error("unknown case label '{0}'")]
    Label(String),
    #[error("dimension {dimension} does not match arity {arity} + 1")]
    Dimension { arity: usize, dimension: usize },
    #[error(transparent)]
    Algebra(#[from] NLieError),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum RationalRepr {
    Int(i64),
    Text(String),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub arity: usize,
    pub dimension: usize,
    pub y: Vec<Vec<RationalRepr>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub beta: Option<RationalRepr>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<usize>,
}

pub fn parse_rational(text: &str) -> Option<Scalar> {
    let text = text.trim();
    match text.split_once('/') {
        Some((p, q)) => {
            let p = p.trim().parse().ok()?;
            let q: num_bigint::BigInt = q.trim().parse().ok()?;
            if q == 0.into() {
                return None;
            }
            Some(Scalar::new(p, q))
        }
        None => Some(Scalar::from_integer(text.parse().ok()?)),
    }
}

impl RationalRepr {
    fn to_scalar(&self) -> Result<Scalar, AlgebraFileError> {
        match self {
            RationalRepr::Int(i) => Ok(Scalar::from_integer((*i).into())),
            RationalRepr::Text(t) => parse_rational(t).ok_or_else(|| AlgebraFileError::Rational(t.clone())),
        }
    }

    fn from_scalar(c: &Scalar) -> Self {
        if c.is_integer() {
            if let Ok(i) = i64::try_from(c.numer().clone()) {
                return RationalRepr::Int(i);
            }
        }
        RationalRepr::Text(format_scalar(c))
    }
}

impl AlgebraFile {
    pub fn from_json(text: &str) -> Result<NLieAlgebra, AlgebraFileError> {
        let file: AlgebraFile = serde_json::from_str(text)?;
        file.into_algebra()
    }

    pub fn into_algebra(self) -> Result<NLieAlgebra, AlgebraFileError> {
        if self.dimension != self.arity + 1 {
            return Err(AlgebraFileError::Dimension { arity: self.arity, dimension: self.dimension });
        }
        let table = self
            .y
            .iter()
            .map(|row| row.iter().map(RationalRepr::to_scalar).collect::<Result<Vec<_>, _>>())
            .collect::<Result<Vec<_>, _>>()?;
        let label = match self.label.as_deref() {
            None => None,
            Some(name) => Some(label_from_parts(name, self.beta.as_ref(), self.r)?),
        };
        Ok(NLieAlgebra::new(self.arity, table, label)?)
    }

    pub fn from_algebra(algebra: &NLieAlgebra) -> Self {
        let (label, beta, r) = match algebra.label() {
            None => (None, None, None),
            Some(AlgebraLabel::TwoB { beta }) => (Some("2b".to_string()), Some(RationalRepr::from_scalar(beta)), None),
            Some(AlgebraLabel::R { r }) => (Some("r".to_string()), None, Some(*r)),
            Some(other) => (Some(other.case_name().to_string()), None, None),
        };
        AlgebraFile {
            arity: algebra.arity(),
            dimension: algebra.dimension(),
            y: algebra
                .structure()
                .iter()
                .map(|row| row.iter().map(RationalRepr::from_scalar).collect())
                .collect(),
            label,
            beta,
            r,
        }
    }

    pub fn to_json(algebra: &NLieAlgebra) -> String {
        serde_json::to_string_pretty(&Self::from_algebra(algebra)).expect("serializable")
    }
}

fn label_from_parts(name: &str, beta: Option<&RationalRepr>, r: Option<usize>) -> Result<AlgebraLabel, AlgebraFileError> {
    Ok(match name {
        "simple" => AlgebraLabel::Simple,
        "abelian" | "0" => AlgebraLabel::Abelian,
        "1a" => AlgebraLabel::OneA,
        "1b" => AlgebraLabel::OneB,
        "2a" => AlgebraLabel::TwoA,
        "2b" => AlgebraLabel::TwoB {
            beta: beta.ok_or_else(|| AlgebraFileError::Label("2b without beta".into()))?.to_scalar()?,
        },
        "r" => AlgebraLabel::R { r: r.ok_or_else(|| AlgebraFileError::Label("r without r".into()))? },
        other => return Err(AlgebraFileError::Label(other.to_string())),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::freealg::rat;
    use crate::nlie::{classified_algebra, simple_algebra};

    #[test]
    fn round_trips_presets() {
        for algebra in [
            simple_algebra(3).unwrap(),
            classified_algebra(&AlgebraLabel::TwoB { beta: rat(3, 2) }, 4).unwrap(),
            classified_algebra(&AlgebraLabel::R { r: 3 }, 4).unwrap(),
        ] {
            let text = AlgebraFile::to_json(&algebra);
            assert_eq!(AlgebraFile::from_json(&text).unwrap(), algebra);
        }
    }

    #[test]
    fn rejects_bad_files() {
        assert!(AlgebraFile::from_json(r#"{"arity":3,"dimension":5,"y":[]}"#).is_err());
        assert!(AlgebraFile::from_json(r#"{"arity":2,"dimension":3,"y":[[1,0,0],[0,1,0]]}"#).is_err());
        assert!(AlgebraFile::from_json(r#"{"arity":2,"dimension":3,"y":[["1/0",0,0],[0,1,0],[0,0,1]]}"#).is_err());
        let ok = AlgebraFile::from_json(r#"{"arity":2,"dimension":3,"y":[["-1/2",0,0],[0,1,0],[0,0,1]]}"#).unwrap();
        assert_eq!(ok.structure_vector(1)[0], rat(-1, 2));
    }
}
