//! Component-wise approximation factors and certificates.
//!
//! For strictly positive minimisation instances, any weighted-sum optimum at
//! the reciprocal weight `λ_i ∝ 1/t_i` of a target t approximates t with a
//! factor vector α that has a unit entry and `Σ_{α_i>1} α_i ≤ p`. Certifying
//! a candidate set means exhibiting such an α for every outcome vector.
//! Every qualifying α is component-wise dominated by a factor vector with
//! `Σ_{α_i>1} α_i = p`, so the certificate is sound for that factor set.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::QVector;
use crate::model::{OutcomePoint, OutcomeSet, WeightVector};
use crate::rational::Rational;
use crate::scalarize::weighted_sum_argmin;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ApproxError {
    #[error("approximation requires strictly positive outcome vectors")]
    NonPositive,
    #[error("target vector does not occur in the outcome set")]
    TargetNotInSet,
    #[error("candidate list is empty")]
    NoCandidates,
    #[error("unknown candidate id: {0}")]
    UnknownCandidate(String),
}

/// Component-wise approximation factors, every entry ≥ 1.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct FactorVector(QVector);

impl FactorVector {
    pub fn new(alpha: QVector) -> Option<Self> {
        let one = Rational::one();
        if alpha.iter().any(|a| *a < one) {
            return None;
        }
        Some(Self(alpha))
    }

    pub fn as_qvector(&self) -> &QVector {
        &self.0
    }

    pub fn max_entry(&self) -> &Rational {
        self.0.iter().max().expect("factor vectors are nonempty")
    }

    pub fn has_unit_entry(&self) -> bool {
        self.0.iter().any(|a| a.is_one())
    }

    /// `Σ_{α_i > 1} α_i`, exactly.
    pub fn sum_above_one(&self) -> Rational {
        let one = Rational::one();
        let mut acc = Rational::zero();
        for a in self.0.iter() {
            if *a > one {
                acc += a;
            }
        }
        acc
    }

    /// Unit entry present and `Σ_{α_i>1} α_i ≤ p`: dominated by a factor
    /// vector of the tight factor set, hence certifying.
    pub fn qualifies(&self, p: usize) -> bool {
        self.has_unit_entry() && self.sum_above_one() <= Rational::from_integer((p as i64).into())
    }
}

fn strictly_positive(y: &QVector) -> bool {
    y.iter().all(|e| *e > Rational::zero())
}

fn set_strictly_positive(set: &OutcomeSet) -> bool {
    set.points().iter().all(|pt| strictly_positive(pt.vector()))
}

/// The weight with entries proportional to the reciprocals of `y`,
/// normalised onto the simplex. Requires `y > 0`.
pub fn reciprocal_weight(y: &QVector) -> Result<WeightVector, ApproxError> {
    if !strictly_positive(y) {
        return Err(ApproxError::NonPositive);
    }
    let reciprocals: Vec<Rational> = y.iter().map(|e| e.recip()).collect();
    let total: Rational = {
        let mut acc = Rational::zero();
        for r in &reciprocals {
            acc += r;
        }
        acc
    };
    let entries: Vec<Rational> = reciprocals.iter().map(|r| r / &total).collect();
    Ok(WeightVector::new(QVector::new(entries)).expect("normalised reciprocals sum to one"))
}

/// `α_i = max(1, witness_i / target_i)`, exactly. Requires both > 0.
pub fn factor(witness: &QVector, target: &QVector) -> Result<FactorVector, ApproxError> {
    assert_eq!(witness.len(), target.len(), "factor length mismatch");
    if !strictly_positive(witness) || !strictly_positive(target) {
        return Err(ApproxError::NonPositive);
    }
    let one = Rational::one();
    let entries: Vec<Rational> = witness
        .iter()
        .zip(target.iter())
        .map(|(w, t)| {
            let ratio = w / t;
            if ratio > one {
                ratio
            } else {
                one.clone()
            }
        })
        .collect();
    Ok(FactorVector(QVector::new(entries)))
}

/// The reciprocal-weight approximation of one target point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointApproximation {
    pub witness: OutcomePoint,
    pub alpha: FactorVector,
    pub lambda: WeightVector,
}

/// Approximate `target` by a weighted-sum optimum at its reciprocal weight.
/// Among the tied optima the one minimising the largest factor entry wins,
/// ties broken by id.
pub fn approximate_point(
    set: &OutcomeSet,
    target: &QVector,
) -> Result<PointApproximation, ApproxError> {
    if !set_strictly_positive(set) {
        return Err(ApproxError::NonPositive);
    }
    if !set.contains_vector(target) {
        return Err(ApproxError::TargetNotInSet);
    }
    let lambda = reciprocal_weight(target)?;
    let argmin = weighted_sum_argmin(set, &lambda);
    let best = argmin
        .iter()
        .map(|pt| {
            let alpha = factor(pt.vector(), target).expect("positive data");
            (pt.clone(), alpha)
        })
        .min_by(|(pa, aa), (pb, ab)| {
            aa.max_entry()
                .cmp(ab.max_entry())
                .then_with(|| pa.id().cmp(pb.id()))
        })
        .expect("argmin nonempty");
    Ok(PointApproximation {
        witness: best.0,
        alpha: best.1,
        lambda,
    })
}

/// One certificate entry: the chosen witness, its factor vector, and the
/// reciprocal weight it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateEntry {
    pub witness_id: String,
    pub alpha: FactorVector,
    pub weight_used: WeightVector,
}

/// Per-target witnesses showing the candidate set approximates the whole
/// instance with factors from the p-bounded factor set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproximationCertificate {
    pub entries: BTreeMap<String, CertificateEntry>,
    pub bound_p: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ApproximationOutcome {
    Certificate(ApproximationCertificate),
    /// First target (in input order) no candidate qualifies for.
    Counterexample {
        target_id: String,
    },
}

/// Try to certify that `candidates` approximate every point of the set:
/// each target needs a candidate whose factor vector has a unit entry and
/// `Σ_{α_i>1} α_i ≤ p`. Among qualifying candidates the one minimising the
/// largest factor entry wins, ties broken by id.
pub fn verify_a_approximation(
    candidates: &[String],
    set: &OutcomeSet,
) -> Result<ApproximationOutcome, ApproxError> {
    if candidates.is_empty() {
        return Err(ApproxError::NoCandidates);
    }
    if !set_strictly_positive(set) {
        return Err(ApproxError::NonPositive);
    }
    let candidate_points: Vec<&OutcomePoint> = candidates
        .iter()
        .map(|id| {
            set.find(id)
                .ok_or_else(|| ApproxError::UnknownCandidate(id.clone()))
        })
        .collect::<Result<_, _>>()?;

    let p = set.p();
    let mut entries = BTreeMap::new();
    for target in set.points() {
        let lambda = reciprocal_weight(target.vector())?;
        let best = candidate_points
            .iter()
            .filter_map(|cand| {
                let alpha = factor(cand.vector(), target.vector()).expect("positive data");
                alpha.qualifies(p).then_some((*cand, alpha))
            })
            .min_by(|(pa, aa), (pb, ab)| {
                aa.max_entry()
                    .cmp(ab.max_entry())
                    .then_with(|| pa.id().cmp(pb.id()))
            });
        let Some((witness, alpha)) = best else {
            return Ok(ApproximationOutcome::Counterexample {
                target_id: target.id().to_string(),
            });
        };
        entries.insert(
            target.id().to_string(),
            CertificateEntry {
                witness_id: witness.id().to_string(),
                alpha,
                weight_used: lambda,
            },
        );
    }
    Ok(ApproximationOutcome::Certificate(
        ApproximationCertificate {
            entries,
            bound_p: p,
        },
    ))
}

/// One violation of the single-objective guarantee.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstObjectiveViolation {
    pub optimum_id: String,
    pub other_id: String,
}

/// Every weighted-sum optimum at a nonzero weight is at least as good as
/// every other point in some objective.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FirstObjectiveReport {
    pub checked_pairs: usize,
    pub violations: Vec<FirstObjectiveViolation>,
}

impl FirstObjectiveReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check that every weighted-sum optimum 1-approximates every point in at
/// least one objective. Violations are recorded, never expected.
pub fn first_objective_check(set: &OutcomeSet, lambda: &WeightVector) -> FirstObjectiveReport {
    let optima = weighted_sum_argmin(set, lambda);
    let mut checked_pairs = 0;
    let mut violations = Vec::new();
    for opt in &optima {
        for other in set.points() {
            checked_pairs += 1;
            let fine = opt
                .vector()
                .iter()
                .zip(other.vector().iter())
                .any(|(a, b)| a <= b);
            if !fine {
                violations.push(FirstObjectiveViolation {
                    optimum_id: opt.id().to_string(),
                    other_id: other.id().to_string(),
                });
            }
        }
    }
    FirstObjectiveReport {
        checked_pairs,
        violations,
    }
}
