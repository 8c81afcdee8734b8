//! Weighted-sum and lexicographic scalarisation, and the support
//! classification of outcome vectors.
//!
//! Classification works on distinct vectors. A vector is `Dominated` if some
//! other vector ⪇-dominates it. A non-dominated vector is `ExtremeSupported`
//! when a strictly positive weight makes it the unique weighted-sum optimum;
//! that is decided by maximising the margin δ subject to
//!
//! ```text
//! λᵀ(y′ − y) ≥ δ   for every other non-dominated distinct vector y′,
//! λ_i ≥ δ,   Σ λ_i = 1,
//! ```
//!
//! with `ExtremeSupported ⇔ δ* > 0`. Restricting the first family to
//! non-dominated vectors loses nothing: a dominated y′ satisfies
//! `λᵀy′ ≥ λᵀy″` against one of its dominators y″ for any λ ≥ 0, so its
//! constraint is implied. δ is bounded above by the rows `λ_i ≥ δ`, so the
//! LP is never unbounded. A non-extreme vector is `SupportedNonextreme`
//! when the same system is feasible with δ dropped from the point rows,
//! i.e. when some weight makes it optimal at all; otherwise it is
//! `NondominatedUnsupported`.

use itertools::Itertools;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{QMatrix, QVector};
use crate::lp::{lp_solve, LpProblem, LpResult};
use crate::model::{distinct_vectors, dominates, OutcomePoint, OutcomeSet, WeightVector};
use crate::rational::Rational;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ScalarizeError {
    #[error("vector does not occur in the outcome set")]
    VectorNotInSet,
    #[error("operation requires exactly 2 objectives, instance has {0}")]
    NotBiobjective(usize),
    #[error("permutation enumeration is capped at 6 objectives, instance has {0}")]
    TooManyObjectives(usize),
    #[error("invalid permutation of the objectives")]
    BadPermutation,
}

/// Support status of a distinct outcome vector. The four classes partition
/// the distinct vectors of any instance.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SupportClass {
    Dominated,
    NondominatedUnsupported,
    SupportedNonextreme,
    ExtremeSupported,
}

impl SupportClass {
    pub fn is_supported(self) -> bool {
        matches!(
            self,
            SupportClass::SupportedNonextreme | SupportClass::ExtremeSupported
        )
    }
}

/// A distinct vector together with all ids sharing it, its class, and a
/// certifying weight when one exists (strictly positive for
/// `ExtremeSupported`, inside the vector's weight set component for
/// `SupportedNonextreme`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassifiedOutcome {
    pub vector: QVector,
    pub ids: Vec<String>,
    pub class: SupportClass,
    pub witness: Option<WeightVector>,
}

/// Classification of every distinct vector, in order of first occurrence.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub outcomes: Vec<ClassifiedOutcome>,
}

impl Classification {
    pub fn extreme_supported(&self) -> Vec<&ClassifiedOutcome> {
        self.outcomes
            .iter()
            .filter(|o| o.class == SupportClass::ExtremeSupported)
            .collect()
    }

    pub fn extreme_supported_vectors(&self) -> Vec<QVector> {
        self.extreme_supported()
            .iter()
            .map(|o| o.vector.clone())
            .collect()
    }

    /// Vectors classified supported (extreme or not).
    pub fn supported_vectors(&self) -> Vec<QVector> {
        self.outcomes
            .iter()
            .filter(|o| o.class.is_supported())
            .map(|o| o.vector.clone())
            .collect()
    }

    pub fn class_of(&self, y: &QVector) -> Option<SupportClass> {
        self.outcomes
            .iter()
            .find(|o| &o.vector == y)
            .map(|o| o.class)
    }
}

/// All points attaining `min λᵀy` over the set, in input order.
pub fn weighted_sum_argmin(set: &OutcomeSet, lambda: &WeightVector) -> Vec<OutcomePoint> {
    assert_eq!(
        lambda.len(),
        set.p(),
        "weight length does not match instance dimension"
    );
    let values: Vec<Rational> = set
        .points()
        .iter()
        .map(|pt| lambda.as_qvector().dot(pt.vector()))
        .collect();
    let best = values.iter().min().expect("nonempty set").clone();
    set.points()
        .iter()
        .zip(values.iter())
        .filter(|(_, v)| **v == best)
        .map(|(pt, _)| pt.clone())
        .collect()
}

/// A permutation of the objective indices (0-based).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(order: Vec<usize>) -> Result<Self, ScalarizeError> {
        let p = order.len();
        let mut seen = vec![false; p];
        for &i in &order {
            if i >= p || seen[i] {
                return Err(ScalarizeError::BadPermutation);
            }
            seen[i] = true;
        }
        Ok(Self(order))
    }

    pub fn identity(p: usize) -> Self {
        Self((0..p).collect())
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    /// All permutations of `{0, …, p−1}` in lexicographic order.
    pub fn all(p: usize) -> Vec<Permutation> {
        (0..p).permutations(p).map(Permutation).collect()
    }

    pub fn apply(&self, y: &QVector) -> Vec<Rational> {
        self.0.iter().map(|&i| y[i].clone()).collect()
    }
}

/// Lexicographic minimum after permuting the objectives.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexOptimum {
    /// Canonical representative: smallest id among the tied points.
    pub representative: OutcomePoint,
    /// All points carrying the lexicographically minimal permuted vector,
    /// in input order.
    pub ties: Vec<OutcomePoint>,
}

/// Minimise under coordinate-by-coordinate comparison of the permuted
/// vectors. Ties are exactly the points with an identical vector.
pub fn lex_argmin(set: &OutcomeSet, sigma: &Permutation) -> LexOptimum {
    assert_eq!(
        sigma.indices().len(),
        set.p(),
        "permutation length does not match instance dimension"
    );
    let keys: Vec<Vec<Rational>> = set
        .points()
        .iter()
        .map(|pt| sigma.apply(pt.vector()))
        .collect();
    let best = keys.iter().min().expect("nonempty set").clone();
    let ties: Vec<OutcomePoint> = set
        .points()
        .iter()
        .zip(keys.iter())
        .filter(|(_, k)| **k == best)
        .map(|(pt, _)| pt.clone())
        .collect();
    let representative = ties
        .iter()
        .min_by(|a, b| a.id().cmp(b.id()))
        .expect("ties nonempty")
        .clone();
    LexOptimum {
        representative,
        ties,
    }
}

/// Yes/No answer with a certifying weight.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportWitness {
    Yes(WeightVector),
    No,
}

impl SupportWitness {
    pub fn witness(&self) -> Option<&WeightVector> {
        match self {
            SupportWitness::Yes(w) => Some(w),
            SupportWitness::No => None,
        }
    }
}

/// The non-dominated distinct vectors of the set.
fn nondominated_distinct(groups: &[(QVector, Vec<String>)]) -> Vec<QVector> {
    groups
        .iter()
        .filter(|(v, _)| !groups.iter().any(|(o, _)| dominates(o, v)))
        .map(|(v, _)| v.clone())
        .collect()
}

/// Margin LP over variables (λ_1, …, λ_p, δ): maximise δ subject to
/// λᵀ(y′−y) ≥ δ·(margin) for the given rivals, λ_i ≥ δ, Σλ = 1. With
/// `margin_on_rivals` false the rival rows use 0 instead of δ, which turns
/// the LP into the supportedness test with an interior-most witness.
fn margin_lp(p: usize, y: &QVector, rivals: &[&QVector], margin_on_rivals: bool) -> LpProblem {
    let n = p + 1;
    let one = Rational::from_integer(1.into());
    let mut rows = Vec::with_capacity(rivals.len() + p);
    for rival in rivals {
        // δ·(margin) − λᵀ(y′−y) ≤ 0
        let diff = rival.sub(y);
        let mut row: Vec<Rational> = diff.neg().entries().to_vec();
        row.push(if margin_on_rivals {
            one.clone()
        } else {
            Rational::zero()
        });
        rows.push(QVector::new(row));
    }
    for i in 0..p {
        // δ − λ_i ≤ 0
        let mut row = vec![Rational::zero(); n];
        row[i] = -one.clone();
        row[p] = one.clone();
        rows.push(QVector::new(row));
    }
    let mut objective = vec![Rational::zero(); n];
    objective[p] = one.clone();
    let mut normalisation = vec![one.clone(); p];
    normalisation.push(Rational::zero());
    LpProblem::new(
        QVector::new(objective),
        QMatrix::from_rows(rows, n),
        QVector::zeros(rivals.len() + p),
        QMatrix::from_rows(vec![QVector::new(normalisation)], n),
        QVector::new(vec![one]),
    )
}

fn weight_from_lp_solution(solution: &QVector, p: usize) -> WeightVector {
    let entries: Vec<Rational> = (0..p).map(|i| solution[i].clone()).collect();
    WeightVector::new(QVector::new(entries)).expect("LP solution satisfies simplex rows exactly")
}

/// Does a strictly positive weight make `y` the unique weighted-sum
/// optimum? Exact-equal vectors are merged before the test.
pub fn is_extreme_supported(
    set: &OutcomeSet,
    y: &QVector,
) -> Result<SupportWitness, ScalarizeError> {
    if !set.contains_vector(y) {
        return Err(ScalarizeError::VectorNotInSet);
    }
    let groups = distinct_vectors(set);
    let nondom = nondominated_distinct(&groups);
    let rivals: Vec<&QVector> = nondom.iter().filter(|v| *v != y).collect();
    let lp = margin_lp(set.p(), y, &rivals, true);
    match lp_solve(&lp) {
        LpResult::Optimal { solution, value } => {
            if value > Rational::zero() {
                Ok(SupportWitness::Yes(weight_from_lp_solution(
                    &solution,
                    set.p(),
                )))
            } else {
                Ok(SupportWitness::No)
            }
        }
        // Feasible for δ small enough, bounded by δ ≤ λ_i ≤ 1.
        other => unreachable!("margin LP cannot be {other:?}"),
    }
}

/// Is some weight optimal for `y`, i.e. is the weight set component of `y`
/// nonempty? The witness maximises the smallest weight entry.
pub fn is_supported(set: &OutcomeSet, y: &QVector) -> Result<SupportWitness, ScalarizeError> {
    if !set.contains_vector(y) {
        return Err(ScalarizeError::VectorNotInSet);
    }
    let groups = distinct_vectors(set);
    let nondom = nondominated_distinct(&groups);
    let rivals: Vec<&QVector> = nondom.iter().filter(|v| *v != y).collect();
    let lp = margin_lp(set.p(), y, &rivals, false);
    // λ ≥ 0 is relaxed to λ_i ≥ δ, so feasibility of the LP alone is not
    // enough: the component is nonempty exactly when the best minimum
    // entry is nonnegative.
    match lp_solve(&lp) {
        LpResult::Optimal { solution, value } if value >= Rational::zero() => Ok(
            SupportWitness::Yes(weight_from_lp_solution(&solution, set.p())),
        ),
        LpResult::Optimal { .. } | LpResult::Infeasible => Ok(SupportWitness::No),
        LpResult::Unbounded => unreachable!("supportedness LP is bounded by the simplex rows"),
    }
}

/// Classify every distinct vector. Dominated vectors are settled by
/// pairwise comparison; the rest get the margin LP and, if the margin is
/// not positive, the supportedness LP.
pub fn classify(set: &OutcomeSet) -> Classification {
    let groups = distinct_vectors(set);
    let dominated: Vec<bool> = groups
        .iter()
        .map(|(v, _)| groups.iter().any(|(o, _)| dominates(o, v)))
        .collect();
    let nondom: Vec<QVector> = groups
        .iter()
        .zip(dominated.iter())
        .filter(|(_, d)| !**d)
        .map(|((v, _), _)| v.clone())
        .collect();

    let p = set.p();
    let outcomes = groups
        .iter()
        .zip(dominated.iter())
        .map(|((vector, ids), is_dominated)| {
            if *is_dominated {
                return ClassifiedOutcome {
                    vector: vector.clone(),
                    ids: ids.clone(),
                    class: SupportClass::Dominated,
                    witness: None,
                };
            }
            let rivals: Vec<&QVector> = nondom.iter().filter(|v| *v != vector).collect();
            let margin = margin_lp(p, vector, &rivals, true);
            if let LpResult::Optimal { solution, value } = lp_solve(&margin) {
                if value > Rational::zero() {
                    return ClassifiedOutcome {
                        vector: vector.clone(),
                        ids: ids.clone(),
                        class: SupportClass::ExtremeSupported,
                        witness: Some(weight_from_lp_solution(&solution, p)),
                    };
                }
            }
            let support = margin_lp(p, vector, &rivals, false);
            match lp_solve(&support) {
                LpResult::Optimal { solution, value } if value >= Rational::zero() => {
                    ClassifiedOutcome {
                        vector: vector.clone(),
                        ids: ids.clone(),
                        class: SupportClass::SupportedNonextreme,
                        witness: Some(weight_from_lp_solution(&solution, p)),
                    }
                }
                _ => ClassifiedOutcome {
                    vector: vector.clone(),
                    ids: ids.clone(),
                    class: SupportClass::NondominatedUnsupported,
                    witness: None,
                },
            }
        })
        .collect();
    Classification { outcomes }
}

/// Independent oracle for two objectives: the extreme-supported vectors are
/// the corners of the lower-left convex chain of the non-dominated distinct
/// vectors. Sorting by the first coordinate makes the second strictly
/// decrease; a strict-turn hull scan then drops collinear interior points.
pub fn esn_oracle_2d(set: &OutcomeSet) -> Result<Vec<QVector>, ScalarizeError> {
    if set.p() != 2 {
        return Err(ScalarizeError::NotBiobjective(set.p()));
    }
    let groups = distinct_vectors(set);
    let mut nondom = nondominated_distinct(&groups);
    nondom.sort();

    let cross = |a: &QVector, b: &QVector, c: &QVector| -> Rational {
        let abx = &b[0] - &a[0];
        let aby = &b[1] - &a[1];
        let acx = &c[0] - &a[0];
        let acy = &c[1] - &a[1];
        &abx * &acy - &aby * &acx
    };

    let mut hull: Vec<QVector> = Vec::new();
    for q in nondom {
        while hull.len() >= 2
            && cross(&hull[hull.len() - 2], &hull[hull.len() - 1], &q) <= Rational::zero()
        {
            hull.pop();
        }
        hull.push(q);
    }
    Ok(hull)
}

/// One permutation's lexicographic optimum and its class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexEsnRecord {
    pub permutation: Permutation,
    pub optimum: LexOptimum,
    pub class: SupportClass,
}

impl LexEsnRecord {
    pub fn holds(&self) -> bool {
        self.class == SupportClass::ExtremeSupported
    }
}

/// For every permutation of the objectives, record the lexicographic
/// optimum and its support class. The optimum must always come out
/// `ExtremeSupported`; anything else is a falsification record. Capped at
/// 6 objectives to bound the factorial enumeration.
pub fn check_lex_is_esn(set: &OutcomeSet) -> Result<Vec<LexEsnRecord>, ScalarizeError> {
    if set.p() > 6 {
        return Err(ScalarizeError::TooManyObjectives(set.p()));
    }
    let classification = classify(set);
    Ok(Permutation::all(set.p())
        .into_iter()
        .map(|sigma| {
            let optimum = lex_argmin(set, &sigma);
            let class = classification
                .class_of(optimum.representative.vector())
                .expect("lex optimum is in the set");
            LexEsnRecord {
                permutation: sigma,
                optimum,
                class,
            }
        })
        .collect())
}

/// Check a classified witness against its defining inequalities, over all
/// distinct vectors (not just the rows the LP saw).
pub fn witness_is_valid(set: &OutcomeSet, outcome: &ClassifiedOutcome) -> bool {
    let Some(witness) = &outcome.witness else {
        return true;
    };
    let lambda = witness.as_qvector();
    let own = lambda.dot(&outcome.vector);
    let groups = distinct_vectors(set);
    match outcome.class {
        SupportClass::ExtremeSupported => {
            witness.is_strictly_positive()
                && groups
                    .iter()
                    .filter(|(v, _)| *v != outcome.vector)
                    .all(|(v, _)| lambda.dot(v) > own)
        }
        SupportClass::SupportedNonextreme => groups.iter().all(|(v, _)| lambda.dot(v) >= own),
        _ => true,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::fixtures::*;
    use crate::model::{compare, pareto_filter, DominanceRelation, OutcomePoint};
    use crate::rational::{int, rat};
    use crate::rng::SplitMix64;

    fn qv(values: &[i64]) -> QVector {
        QVector::from_ints(values)
    }

    fn weight(entries: &[Rational]) -> WeightVector {
        WeightVector::new(QVector::new(entries.to_vec())).unwrap()
    }

    fn ids(points: &[OutcomePoint]) -> Vec<String> {
        points.iter().map(|p| p.id().to_string()).collect()
    }

    #[test]
    fn argmin_fixture_a_examples() {
        let set = fixture_a();
        let half = weight(&[rat(1, 2), rat(1, 2)]);
        assert_eq!(ids(&weighted_sum_argmin(&set, &half)), vec!["a", "b", "c"]);
        let e1 = weight(&[int(1), int(0)]);
        assert_eq!(ids(&weighted_sum_argmin(&set, &e1)), vec!["a"]);
    }

    #[test]
    fn argmin_single_point() {
        let s = set(2, &[("only", &[4, 7])]);
        let lambda = weight(&[rat(1, 3), rat(2, 3)]);
        assert_eq!(ids(&weighted_sum_argmin(&s, &lambda)), vec!["only"]);
    }

    #[test]
    fn lex_examples() {
        let d = fixture_d();
        let id2 = Permutation::identity(2);
        assert_eq!(lex_argmin(&d, &id2).representative.vector(), &qv(&[1, 2]));

        let a = fixture_a();
        assert_eq!(lex_argmin(&a, &id2).representative.id(), "a");
        let swapped = Permutation::new(vec![1, 0]).unwrap();
        assert_eq!(lex_argmin(&a, &swapped).representative.id(), "c");
    }

    #[test]
    fn lex_ties_share_the_vector() {
        let s = set(2, &[("b", &[1, 2]), ("a", &[1, 2]), ("c", &[2, 2])]);
        let optimum = lex_argmin(&s, &Permutation::identity(2));
        assert_eq!(optimum.representative.id(), "a");
        assert_eq!(ids(&optimum.ties), vec!["b", "a"]);
    }

    /// Sort oracle: the lex minimum must equal the head of the list sorted
    /// by permuted tuples.
    #[test]
    fn lex_matches_sort_oracle_on_random_instances() {
        let mut rng = SplitMix64::new(11);
        for _ in 0..200 {
            let p = 2 + rng.uniform_below(2) as usize;
            let n = 1 + rng.uniform_below(12) as usize;
            let points: Vec<OutcomePoint> = (0..n)
                .map(|i| {
                    let coords: Vec<i64> =
                        (0..p).map(|_| 1 + rng.uniform_below(5) as i64).collect();
                    OutcomePoint::new(format!("x{i}"), QVector::from_ints(&coords))
                })
                .collect();
            let s = OutcomeSet::new(p, points).unwrap();
            for sigma in Permutation::all(p) {
                let mut sorted: Vec<Vec<Rational>> = s
                    .points()
                    .iter()
                    .map(|pt| sigma.apply(pt.vector()))
                    .collect();
                sorted.sort();
                let optimum = lex_argmin(&s, &sigma);
                assert_eq!(sigma.apply(optimum.representative.vector()), sorted[0]);
            }
        }
    }

    #[test]
    fn extreme_supported_fixture_a() {
        let set = fixture_a();
        match is_extreme_supported(&set, &qv(&[1, 3])).unwrap() {
            SupportWitness::Yes(w) => {
                assert!(w.is_strictly_positive());
                let lam = w.as_qvector();
                let own = lam.dot(&qv(&[1, 3]));
                for other in [&qv(&[2, 2]), &qv(&[3, 1]), &qv(&[3, 3])] {
                    assert!(lam.dot(other) > own);
                }
            }
            SupportWitness::No => panic!("(1,3) should be extreme supported"),
        }
        assert_eq!(
            is_extreme_supported(&set, &qv(&[2, 2])).unwrap(),
            SupportWitness::No
        );
    }

    #[test]
    fn extreme_supported_single_point() {
        let s = set(3, &[("only", &[2, 5, 7])]);
        match is_extreme_supported(&s, &qv(&[2, 5, 7])).unwrap() {
            SupportWitness::Yes(w) => assert_eq!(w, WeightVector::uniform(3)),
            SupportWitness::No => panic!("single point must be extreme supported"),
        }
    }

    #[test]
    fn vector_not_in_set_is_rejected() {
        let set = fixture_a();
        assert_eq!(
            is_extreme_supported(&set, &qv(&[9, 9])),
            Err(ScalarizeError::VectorNotInSet)
        );
        assert_eq!(
            is_supported(&set, &qv(&[9, 9])),
            Err(ScalarizeError::VectorNotInSet)
        );
    }

    #[test]
    fn supported_fixture_examples() {
        let b = fixture_b();
        assert_eq!(is_supported(&b, &qv(&[3, 3])).unwrap(), SupportWitness::No);

        let a = fixture_a();
        match is_supported(&a, &qv(&[2, 2])).unwrap() {
            SupportWitness::Yes(w) => assert_eq!(w, weight(&[rat(1, 2), rat(1, 2)])),
            SupportWitness::No => panic!("(2,2) should be supported"),
        }

        let single = set(2, &[("only", &[1, 1])]);
        assert!(matches!(
            is_supported(&single, &qv(&[1, 1])).unwrap(),
            SupportWitness::Yes(_)
        ));
    }

    /// Coarse sweep over λ₁ = k/100: (3,3) never attains the weighted-sum
    /// minimum of fixture B anywhere on the grid.
    #[test]
    fn fixture_b_sweep_never_supports_w() {
        let u = qv(&[1, 4]);
        let v = qv(&[4, 1]);
        let w = qv(&[3, 3]);
        for k in 0..=100i64 {
            let lam = QVector::new(vec![rat(k, 100), rat(100 - k, 100)]);
            let best = lam.dot(&u).min(lam.dot(&v));
            assert!(best < lam.dot(&w));
        }
    }

    #[test]
    fn classify_fixtures() {
        let a = classify(&fixture_a());
        let classes: Vec<SupportClass> = a.outcomes.iter().map(|o| o.class).collect();
        assert_eq!(
            classes,
            vec![
                SupportClass::ExtremeSupported,
                SupportClass::SupportedNonextreme,
                SupportClass::ExtremeSupported,
                SupportClass::Dominated,
            ]
        );

        let b = classify(&fixture_b());
        let classes: Vec<SupportClass> = b.outcomes.iter().map(|o| o.class).collect();
        assert_eq!(
            classes,
            vec![
                SupportClass::ExtremeSupported,
                SupportClass::ExtremeSupported,
                SupportClass::NondominatedUnsupported,
            ]
        );

        let c3 = classify(&fixture_c3());
        assert!(c3
            .outcomes
            .iter()
            .all(|o| o.class == SupportClass::ExtremeSupported));
    }

    #[test]
    fn classify_witnesses_are_valid() {
        for s in [
            fixture_a(),
            fixture_b(),
            fixture_c3(),
            fixture_d(),
            fixture_e(),
        ] {
            let classification = classify(&s);
            for outcome in &classification.outcomes {
                assert!(
                    witness_is_valid(&s, outcome),
                    "bad witness for {:?}",
                    outcome
                );
            }
        }
    }

    #[test]
    fn oracle_fixture_examples() {
        assert_eq!(
            esn_oracle_2d(&fixture_a()).unwrap(),
            vec![qv(&[1, 3]), qv(&[3, 1])]
        );
        assert_eq!(
            esn_oracle_2d(&fixture_b()).unwrap(),
            vec![qv(&[1, 4]), qv(&[4, 1])]
        );
        let single = set(2, &[("only", &[2, 9])]);
        assert_eq!(esn_oracle_2d(&single).unwrap(), vec![qv(&[2, 9])]);
        assert_eq!(
            esn_oracle_2d(&fixture_c3()),
            Err(ScalarizeError::NotBiobjective(3))
        );
    }

    #[test]
    fn oracle_keeps_strict_corners_only() {
        assert_eq!(
            esn_oracle_2d(&fixture_e()).unwrap(),
            vec![qv(&[0, 3]), qv(&[1, 1]), qv(&[3, 0])]
        );
        // Fixture D: (1,3) is dominated, (1,2) and (2,1) remain.
        assert_eq!(
            esn_oracle_2d(&fixture_d()).unwrap(),
            vec![qv(&[1, 2]), qv(&[2, 1])]
        );
    }

    fn random_positive_set(
        rng: &mut SplitMix64,
        p: usize,
        n_max: u64,
        coord_max: u64,
    ) -> OutcomeSet {
        let n = 1 + rng.uniform_below(n_max) as usize;
        let points = (0..n)
            .map(|i| {
                let coords: Vec<i64> = (0..p)
                    .map(|_| 1 + rng.uniform_below(coord_max) as i64)
                    .collect();
                OutcomePoint::new(format!("x{i}"), QVector::from_ints(&coords))
            })
            .collect();
        OutcomeSet::new(p, points).unwrap()
    }

    #[test]
    fn classification_matches_hull_oracle() {
        let mut rng = SplitMix64::new(2024);
        for _ in 0..300 {
            let s = random_positive_set(&mut rng, 2, 40, 100);
            let classification = classify(&s);
            for outcome in &classification.outcomes {
                assert!(witness_is_valid(&s, outcome));
            }
            let mut via_lp = classification.extreme_supported_vectors();
            via_lp.sort();
            let via_hull = {
                let mut h = esn_oracle_2d(&s).unwrap();
                h.sort();
                h
            };
            assert_eq!(via_lp, via_hull);
        }
    }

    #[test]
    fn lex_optimum_is_extreme_supported_on_fixtures_and_random() {
        for s in [fixture_a(), fixture_d()] {
            for record in check_lex_is_esn(&s).unwrap() {
                assert!(record.holds());
            }
        }
        let single = set(2, &[("only", &[3, 4])]);
        for record in check_lex_is_esn(&single).unwrap() {
            assert!(record.holds());
        }
        let mut rng = SplitMix64::new(99);
        for _ in 0..60 {
            let p = 2 + rng.uniform_below(3) as usize;
            let s = random_positive_set(&mut rng, p, 15, 8);
            for record in check_lex_is_esn(&s).unwrap() {
                assert!(record.holds(), "violated on {:?}", s);
            }
        }
    }

    /// Brute-force side of the extreme point characterisation for small p:
    /// y is expressible iff it is a convex combination of the other
    /// distinct vectors plus a nonnegative vector.
    fn expressible(s: &OutcomeSet, y: &QVector) -> bool {
        let others: Vec<QVector> = distinct_vectors(s)
            .into_iter()
            .map(|(v, _)| v)
            .filter(|v| v != y)
            .collect();
        if others.is_empty() {
            return false;
        }
        let p = s.p();
        let k = others.len();
        // variables: μ_1..μ_k, r_1..r_p
        let n = k + p;
        let mut eq_rows = Vec::new();
        let mut eq_rhs = Vec::new();
        for i in 0..p {
            let mut row = vec![Rational::zero(); n];
            for (j, other) in others.iter().enumerate() {
                row[j] = other[i].clone();
            }
            row[k + i] = int(1);
            eq_rows.push(QVector::new(row));
            eq_rhs.push(y[i].clone());
        }
        let mut sum_row = vec![int(1); k];
        sum_row.extend(vec![Rational::zero(); p]);
        eq_rows.push(QVector::new(sum_row));
        eq_rhs.push(int(1));
        let ineq_rows: Vec<QVector> = (0..n).map(|j| QVector::unit(n, j).neg()).collect();
        let lp = LpProblem::new(
            QVector::zeros(n),
            QMatrix::from_rows(ineq_rows, n),
            QVector::zeros(n),
            QMatrix::from_rows(eq_rows, n),
            QVector::new(eq_rhs),
        );
        lp_solve(&lp).is_optimal()
    }

    #[test]
    fn extreme_point_characterisation_both_directions() {
        let mut rng = SplitMix64::new(4242);
        for _ in 0..80 {
            let p = 2 + rng.uniform_below(2) as usize;
            let s = random_positive_set(&mut rng, p, 12, 6);
            let classification = classify(&s);
            for outcome in &classification.outcomes {
                let is_esn = outcome.class == SupportClass::ExtremeSupported;
                assert_eq!(
                    is_esn,
                    !expressible(&s, &outcome.vector),
                    "characterisation failed for {:?} in {:?}",
                    outcome.vector,
                    s
                );
            }
        }
    }

    fn in_convex_hull_of(y: &QVector, hull: &[QVector], p: usize) -> bool {
        let k = hull.len();
        let mut eq_rows = Vec::new();
        let mut eq_rhs = Vec::new();
        for i in 0..p {
            let row: Vec<Rational> = hull.iter().map(|v| v[i].clone()).collect();
            eq_rows.push(QVector::new(row));
            eq_rhs.push(y[i].clone());
        }
        eq_rows.push(QVector::new(vec![int(1); k]));
        eq_rhs.push(int(1));
        let ineq_rows: Vec<QVector> = (0..k).map(|j| QVector::unit(k, j).neg()).collect();
        let lp = LpProblem::new(
            QVector::zeros(k),
            QMatrix::from_rows(ineq_rows, k),
            QVector::zeros(k),
            QMatrix::from_rows(eq_rows, k),
            QVector::new(eq_rhs),
        );
        lp_solve(&lp).is_optimal()
    }

    /// Supported vectors are non-dominated, and every vector supported by a
    /// strictly positive weight is a convex combination of the extreme
    /// supported ones. The positivity guard matters: with boundary weights
    /// allowed, a vector like (4,4,0) among {(0,6,0), (6,0,0), (5,5,0)} is
    /// supported only at (0,0,1) and lies outside the hull of the extreme
    /// supported vectors. At two objectives no such vector exists, so there
    /// the inclusion is checked for every supported vector.
    #[test]
    fn supported_chain_inclusions() {
        let mut rng = SplitMix64::new(31337);
        for _ in 0..80 {
            let p = 2 + rng.uniform_below(2) as usize;
            let s = random_positive_set(&mut rng, p, 15, 10);
            let classification = classify(&s);
            let pareto: Vec<QVector> = pareto_filter(&s)
                .iter()
                .map(|pt| pt.vector().clone())
                .collect();
            let esn = classification.extreme_supported_vectors();
            for outcome in &classification.outcomes {
                if !outcome.class.is_supported() {
                    continue;
                }
                assert!(pareto.contains(&outcome.vector));
                let positive_witness = outcome
                    .witness
                    .as_ref()
                    .is_some_and(WeightVector::is_strictly_positive);
                if p == 2 || positive_witness {
                    assert!(
                        in_convex_hull_of(&outcome.vector, &esn, p),
                        "{:?} (witness {:?}) is not in the convex hull of the extreme supported vectors",
                        outcome.vector,
                        outcome.witness
                    );
                }
            }
        }
    }

    /// Boundary-supported vectors in three objectives can escape the hull
    /// of the extreme supported vectors; pin one such instance.
    #[test]
    fn boundary_supported_vector_outside_esn_hull() {
        let s = set(
            3,
            &[
                ("a", &[0, 6, 0]),
                ("b", &[6, 0, 0]),
                ("c", &[5, 5, 0]),
                ("y", &[4, 4, 0]),
            ],
        );
        let classification = classify(&s);
        assert_eq!(
            classification.class_of(&qv(&[4, 4, 0])),
            Some(SupportClass::SupportedNonextreme)
        );
        assert_eq!(
            classification.class_of(&qv(&[5, 5, 0])),
            Some(SupportClass::Dominated)
        );
        let esn = classification.extreme_supported_vectors();
        assert_eq!(esn, vec![qv(&[0, 6, 0]), qv(&[6, 0, 0])]);
        assert!(!in_convex_hull_of(&qv(&[4, 4, 0]), &esn, 3));
        // Its component is the single boundary weight (0,0,1).
        let w = classification
            .outcomes
            .iter()
            .find(|o| o.vector == qv(&[4, 4, 0]))
            .and_then(|o| o.witness.clone())
            .expect("supported vector carries a witness");
        assert_eq!(w.as_qvector(), &QVector::new(vec![int(0), int(0), int(1)]));
    }

    #[test]
    fn dominated_vector_is_never_extreme_supported() {
        let s = fixture_a();
        assert_eq!(
            is_extreme_supported(&s, &qv(&[3, 3])).unwrap(),
            SupportWitness::No
        );
        assert_eq!(
            compare(&qv(&[2, 2]), &qv(&[3, 3])),
            DominanceRelation::StrictlyDominates
        );
    }

    #[test]
    fn all_identical_vectors_collapse_to_one_extreme_class() {
        let s = set(2, &[("a", &[2, 2]), ("b", &[2, 2]), ("c", &[2, 2])]);
        let classification = classify(&s);
        assert_eq!(classification.outcomes.len(), 1);
        assert_eq!(
            classification.outcomes[0].class,
            SupportClass::ExtremeSupported
        );
        assert_eq!(classification.outcomes[0].ids, vec!["a", "b", "c"]);
    }
}
