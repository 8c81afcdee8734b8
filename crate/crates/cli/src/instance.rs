//! Instance files: UTF-8 JSON with exact rational coordinates.
//!
//! ```json
//! {"p":2,"points":[{"id":"a","y":["1","3"]},{"id":"b","y":["1/2","7"]}]}
//! ```
//!
//! Coordinates are `"int"` or `"int/int"` strings, never floats, and are
//! stored in canonical reduced form, so `"4/2"` round-trips as `"2"`.

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};
use thiserror::Error;
use wsdec_core::{ModelError, OutcomePoint, OutcomeSet, QVector, Rational};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct InstanceDocument {
    pub p: usize,
    pub points: Vec<PointRecord>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PointRecord {
    pub id: String,
    pub y: Vec<String>,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("invalid JSON: {0}")]
    Json(String),
    #[error("duplicate id: {0}")]
    DuplicateId(String),
    #[error("empty point id")]
    EmptyId,
    #[error("p must be at least 2, found {0}")]
    BadDimension(usize),
    #[error("instance has no points")]
    NoPoints,
    #[error("point {id}: expected {expected} objective values, found {found}")]
    RaggedVector {
        id: String,
        expected: usize,
        found: usize,
    },
    #[error("point {id}, coordinate {index}: zero denominator")]
    ZeroDenominator { id: String, index: usize },
    #[error("point {id}, coordinate {index}: malformed rational {text:?}")]
    BadRational {
        id: String,
        index: usize,
        text: String,
    },
}

#[derive(Debug, PartialEq, Eq)]
enum RationalParse {
    ZeroDenominator,
    Malformed,
}

/// Parse `"int"` or `"int/int"` into a canonical rational.
fn parse_rational(text: &str) -> Result<Rational, RationalParse> {
    let (num_text, den_text) = match text.split_once('/') {
        Some((n, d)) => (n, Some(d)),
        None => (text, None),
    };
    let numer: BigInt = num_text.parse().map_err(|_| RationalParse::Malformed)?;
    let denom: BigInt = match den_text {
        Some(d) => d.parse().map_err(|_| RationalParse::Malformed)?,
        None => BigInt::from(1),
    };
    if denom == BigInt::from(0) {
        return Err(RationalParse::ZeroDenominator);
    }
    Ok(Rational::new(numer, denom))
}

fn from_document(doc: &InstanceDocument) -> Result<OutcomeSet, ParseError> {
    if doc.p < 2 {
        return Err(ParseError::BadDimension(doc.p));
    }
    if doc.points.is_empty() {
        return Err(ParseError::NoPoints);
    }
    let mut points = Vec::with_capacity(doc.points.len());
    for record in &doc.points {
        if record.id.is_empty() {
            return Err(ParseError::EmptyId);
        }
        if record.y.len() != doc.p {
            return Err(ParseError::RaggedVector {
                id: record.id.clone(),
                expected: doc.p,
                found: record.y.len(),
            });
        }
        let mut entries = Vec::with_capacity(doc.p);
        for (index, text) in record.y.iter().enumerate() {
            let value = parse_rational(text).map_err(|e| match e {
                RationalParse::ZeroDenominator => ParseError::ZeroDenominator {
                    id: record.id.clone(),
                    index: index + 1,
                },
                RationalParse::Malformed => ParseError::BadRational {
                    id: record.id.clone(),
                    index: index + 1,
                    text: text.clone(),
                },
            })?;
            entries.push(value);
        }
        points.push(OutcomePoint::new(record.id.clone(), QVector::new(entries)));
    }
    OutcomeSet::new(doc.p, points).map_err(|e| match e {
        ModelError::DuplicateId(id) => ParseError::DuplicateId(id),
        other => ParseError::Json(other.to_string()),
    })
}

/// Parse an instance document. Structural errors name the offending field.
pub fn parse_instance(text: &str) -> Result<OutcomeSet, ParseError> {
    let doc: InstanceDocument =
        serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    from_document(&doc)
}

pub fn to_document(set: &OutcomeSet) -> InstanceDocument {
    InstanceDocument {
        p: set.p(),
        points: set
            .points()
            .iter()
            .map(|pt| PointRecord {
                id: pt.id().to_string(),
                y: pt.vector().iter().map(|e| e.to_string()).collect(),
            })
            .collect(),
    }
}

/// Compact single-line JSON with a trailing newline.
pub fn serialize_instance(set: &OutcomeSet) -> String {
    let mut text =
        serde_json::to_string(&to_document(set)).expect("instance documents always serialise");
    text.push('\n');
    text
}
