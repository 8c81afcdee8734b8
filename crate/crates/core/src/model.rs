//! Finite multi-objective instances: identified outcome vectors, dominance
//! comparison, Pareto filtering, and weight vectors on the standard simplex.
//!
//! All objectives are minimised. Ids are opaque labels standing in for the
//! preimage solutions; nothing here ever needs more of the feasible set
//! than identity.

use std::collections::BTreeSet;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::QVector;
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ModelError {
    #[error("instance needs at least 2 objectives, found {0}")]
    TooFewObjectives(usize),
    #[error("instance has no points")]
    NoPoints,
    #[error("empty point id")]
    EmptyId,
    #[error("duplicate id: {0}")]
    DuplicateId(String),
    #[error("point {id}: expected {expected} objective values, found {found}")]
    WrongDimension {
        id: String,
        expected: usize,
        found: usize,
    },
    #[error("weight vector entries must be nonnegative")]
    NegativeWeight,
    #[error("weight vector entries must sum to 1")]
    WeightSumNotOne,
    #[error("weight vector must not be empty")]
    EmptyWeight,
}

/// An identified outcome vector. The id stands in for a solution with this
/// image.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomePoint {
    id: String,
    y: QVector,
}

impl OutcomePoint {
    pub fn new(id: impl Into<String>, y: QVector) -> Self {
        Self { id: id.into(), y }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn vector(&self) -> &QVector {
        &self.y
    }
}

/// A finite outcome set in `p ≥ 2` objectives, ids pairwise distinct.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutcomeSet {
    p: usize,
    points: Vec<OutcomePoint>,
}

impl OutcomeSet {
    pub fn new(p: usize, points: Vec<OutcomePoint>) -> Result<Self, ModelError> {
        if p < 2 {
            return Err(ModelError::TooFewObjectives(p));
        }
        if points.is_empty() {
            return Err(ModelError::NoPoints);
        }
        let mut seen = BTreeSet::new();
        for pt in &points {
            if pt.id.is_empty() {
                return Err(ModelError::EmptyId);
            }
            if !seen.insert(pt.id.clone()) {
                return Err(ModelError::DuplicateId(pt.id.clone()));
            }
            if pt.y.len() != p {
                return Err(ModelError::WrongDimension {
                    id: pt.id.clone(),
                    expected: p,
                    found: pt.y.len(),
                });
            }
        }
        Ok(Self { p, points })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn points(&self) -> &[OutcomePoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: points is nonempty
    }

    pub fn find(&self, id: &str) -> Option<&OutcomePoint> {
        self.points.iter().find(|pt| pt.id == id)
    }

    /// Whether some point carries exactly this vector.
    pub fn contains_vector(&self, y: &QVector) -> bool {
        self.points.iter().any(|pt| pt.y == *y)
    }
}

/// A point of the standard weight simplex: nonnegative entries with sum 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WeightVector(QVector);

impl WeightVector {
    pub fn new(lambda: QVector) -> Result<Self, ModelError> {
        if lambda.is_empty() {
            return Err(ModelError::EmptyWeight);
        }
        if lambda.iter().any(|e| e < &Rational::zero()) {
            return Err(ModelError::NegativeWeight);
        }
        if !lambda.sum().is_one() {
            return Err(ModelError::WeightSumNotOne);
        }
        Ok(Self(lambda))
    }

    /// The barycentre `(1/p, …, 1/p)`.
    pub fn uniform(p: usize) -> Self {
        let w = Rational::new(1.into(), (p as i64).into());
        Self(QVector::new(vec![w; p]))
    }

    pub fn as_qvector(&self) -> &QVector {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: nonempty
    }

    pub fn is_strictly_positive(&self) -> bool {
        self.0.iter().all(|e| e > &Rational::zero())
    }
}

/// Component-wise dominance comparison between two vectors of equal length.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DominanceRelation {
    Equal,
    /// Strictly smaller in every component.
    StrictlyDominates,
    /// Smaller-or-equal everywhere and strictly smaller somewhere (⪇),
    /// but not strictly smaller everywhere.
    Dominates,
    DominatedStrictlyBy,
    DominatedBy,
    Incomparable,
}

/// Compare two outcome vectors component-wise. Exactly one variant holds.
pub fn compare(y: &QVector, y2: &QVector) -> DominanceRelation {
    assert_eq!(y.len(), y2.len(), "dominance comparison length mismatch");
    let mut less = 0usize;
    let mut greater = 0usize;
    let mut equal = 0usize;
    for (a, b) in y.iter().zip(y2.iter()) {
        match a.cmp(b) {
            std::cmp::Ordering::Less => less += 1,
            std::cmp::Ordering::Greater => greater += 1,
            std::cmp::Ordering::Equal => equal += 1,
        }
    }
    match (less > 0, greater > 0) {
        (false, false) => DominanceRelation::Equal,
        (true, false) => {
            if equal == 0 {
                DominanceRelation::StrictlyDominates
            } else {
                DominanceRelation::Dominates
            }
        }
        (false, true) => {
            if equal == 0 {
                DominanceRelation::DominatedStrictlyBy
            } else {
                DominanceRelation::DominatedBy
            }
        }
        (true, true) => DominanceRelation::Incomparable,
    }
}

/// `a ⪇ b`: smaller-or-equal everywhere and not equal.
pub fn dominates(a: &QVector, b: &QVector) -> bool {
    matches!(
        compare(a, b),
        DominanceRelation::StrictlyDominates | DominanceRelation::Dominates
    )
}

/// The points whose vectors no other point's vector ⪇-dominates, in input
/// order. Duplicates of the same vector are all retained: a vector never
/// dominates its equal.
pub fn pareto_filter(set: &OutcomeSet) -> Vec<OutcomePoint> {
    set.points()
        .iter()
        .filter(|pt| {
            !set.points()
                .iter()
                .any(|other| dominates(other.vector(), pt.vector()))
        })
        .cloned()
        .collect()
}

/// Group ids by exact vector equality, in order of first occurrence.
pub fn distinct_vectors(set: &OutcomeSet) -> Vec<(QVector, Vec<String>)> {
    let mut groups: Vec<(QVector, Vec<String>)> = Vec::new();
    for pt in set.points() {
        match groups.iter_mut().find(|(v, _)| v == pt.vector()) {
            Some((_, ids)) => ids.push(pt.id().to_string()),
            None => groups.push((pt.vector().clone(), vec![pt.id().to_string()])),
        }
    }
    groups
}

#[cfg(test)]
pub(crate) mod fixtures {
    use super::*;

    pub fn set(p: usize, pts: &[(&str, &[i64])]) -> OutcomeSet {
        OutcomeSet::new(
            p,
            pts.iter()
                .map(|(id, y)| OutcomePoint::new(*id, QVector::from_ints(y)))
                .collect(),
        )
        .unwrap()
    }

    /// a=(1,3), b=(2,2), c=(3,1), d=(3,3); b on the segment between a and c.
    pub fn fixture_a() -> OutcomeSet {
        set(
            2,
            &[
                ("a", &[1, 3]),
                ("b", &[2, 2]),
                ("c", &[3, 1]),
                ("d", &[3, 3]),
            ],
        )
    }

    /// u=(1,4), v=(4,1), w=(3,3); w non-dominated but never weighted-sum optimal.
    pub fn fixture_b() -> OutcomeSet {
        set(2, &[("u", &[1, 4]), ("v", &[4, 1]), ("w", &[3, 3])])
    }

    /// The three unit vectors in three objectives.
    pub fn fixture_c3() -> OutcomeSet {
        set(
            3,
            &[("y1", &[1, 0, 0]), ("y2", &[0, 1, 0]), ("y3", &[0, 0, 1])],
        )
    }

    /// (1,3), (1,2), (2,1); lexicographic minimum for the identity is (1,2).
    pub fn fixture_d() -> OutcomeSet {
        set(2, &[("a", &[1, 3]), ("b", &[1, 2]), ("c", &[2, 1])])
    }

    /// (0,3), (1,1), (3,0); the outer components are disjoint.
    pub fn fixture_e() -> OutcomeSet {
        set(2, &[("a", &[0, 3]), ("b", &[1, 1]), ("c", &[3, 0])])
    }
}
