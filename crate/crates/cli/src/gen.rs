//! Deterministic random instance generation.
//!
//! Coordinates are drawn point by point, coordinate by coordinate, from a
//! splitmix64 stream (see `wsdec_core::rng` for the exact algorithm), so a
//! seed reproduces an instance bit-exactly anywhere. Positive instances
//! draw uniformly from [1, max_coord], signed ones from
//! [−max_coord, max_coord]; ids are `x0 … x(n−1)`.

use thiserror::Error;
use wsdec_core::rng::SplitMix64;
use wsdec_core::{OutcomePoint, OutcomeSet, QVector};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GenError {
    #[error("n must be at least 1")]
    BadCount,
    #[error("p must be at least 2")]
    BadDimension,
    #[error("max coordinate must be between 1 and {0}")]
    BadBound(i64),
}

const MAX_COORD_LIMIT: i64 = 1 << 31;

pub fn generate(
    seed: u64,
    n: usize,
    p: usize,
    max_coord: i64,
    positive: bool,
) -> Result<OutcomeSet, GenError> {
    if n < 1 {
        return Err(GenError::BadCount);
    }
    if p < 2 {
        return Err(GenError::BadDimension);
    }
    if !(1..=MAX_COORD_LIMIT).contains(&max_coord) {
        return Err(GenError::BadBound(MAX_COORD_LIMIT));
    }
    let mut rng = SplitMix64::new(seed);
    let points = (0..n)
        .map(|i| {
            let coords: Vec<i64> = (0..p)
                .map(|_| {
                    if positive {
                        1 + rng.uniform_below(max_coord as u64) as i64
                    } else {
                        -max_coord + rng.uniform_below(2 * max_coord as u64 + 1) as i64
                    }
                })
                .collect();
            OutcomePoint::new(format!("x{i}"), QVector::from_ints(&coords))
        })
        .collect();
    Ok(OutcomeSet::new(p, points).expect("generated instances are well-formed"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_arguments() {
        let a = generate(7, 5, 2, 100, true).unwrap();
        let b = generate(7, 5, 2, 100, true).unwrap();
        assert_eq!(a, b);
        let c = generate(8, 5, 2, 100, true).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn positive_instances_stay_positive() {
        let set = generate(33, 40, 3, 50, true).unwrap();
        for pt in set.points() {
            for e in pt.vector().iter() {
                assert!(*e >= wsdec_core::int(1));
                assert!(*e <= wsdec_core::int(50));
            }
        }
    }

    #[test]
    fn signed_instances_stay_in_range() {
        let set = generate(9, 40, 2, 10, false).unwrap();
        for pt in set.points() {
            for e in pt.vector().iter() {
                assert!(*e >= wsdec_core::int(-10) && *e <= wsdec_core::int(10));
            }
        }
    }

    #[test]
    fn ids_are_indexed() {
        let set = generate(1, 3, 2, 5, true).unwrap();
        let ids: Vec<&str> = set.points().iter().map(|p| p.id()).collect();
        assert_eq!(ids, vec!["x0", "x1", "x2"]);
    }

    #[test]
    fn bounds_are_validated() {
        assert_eq!(generate(1, 0, 2, 5, true), Err(GenError::BadCount));
        assert_eq!(generate(1, 3, 1, 5, true), Err(GenError::BadDimension));
        assert_eq!(
            generate(1, 3, 2, 0, true),
            Err(GenError::BadBound(MAX_COORD_LIMIT))
        );
    }
}
