//! Weight set components as explicit polytopes.
//!
//! The component of an outcome vector y is the set of simplex weights for
//! which y is weighted-sum optimal. Its H-representation only needs
//! inequalities against the extreme supported vectors:
//!
//! ```text
//! Λ(y) = { λ : λ ≥ 0,  Σλ = 1,  (y − y′)ᵀλ ≤ 0 for extreme supported y′ ≠ y }
//! ```
//!
//! Vertices are enumerated by brute-force active sets (every choice of p−1
//! inequalities turned into equalities together with the normalisation),
//! which is exact and plenty at desk scale. The affine dimension comes from
//! the rank of the implicit equality system, with implicit equalities found
//! by slack-maximising LPs.

use itertools::Itertools;
use num_traits::Zero;
use thiserror::Error;

use crate::linalg::{matrix_rank, solve_linear_system, LinearSolve, QMatrix, QVector};
use crate::lp::{lp_solve, LpProblem, LpResult};
use crate::model::{OutcomeSet, WeightVector};
use crate::rational::{int, Rational};
use crate::rng::SplitMix64;
use crate::scalarize::{
    classify, is_extreme_supported, weighted_sum_argmin, Classification, SupportClass,
    SupportWitness,
};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum WeightSetError {
    #[error("vector does not occur in the outcome set")]
    VectorNotInSet,
    #[error("components belong to instances with different dimensions")]
    DimensionMismatch,
    #[error("coverage check needs at least one sample")]
    NoSamples,
}

/// One halfspace `normal·λ ≤ offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Halfspace {
    pub normal: QVector,
    pub offset: Rational,
}

/// The weight set component of an outcome vector, as halfspaces over the
/// weight simplex. The normalisation `Σλ = 1` is part of every component
/// and kept implicit; `halfspaces` holds the nonnegativity rows followed by
/// the rows against the extreme supported vectors. Vertices and dimension
/// are filled in by [`decompose`] (or explicitly) and `None` until then.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightSetComponent {
    owner: QVector,
    owner_ids: Vec<String>,
    halfspaces: Vec<Halfspace>,
    vertices: Option<Vec<WeightVector>>,
    dim: Option<i64>,
}

impl WeightSetComponent {
    pub fn owner(&self) -> &QVector {
        &self.owner
    }

    pub fn owner_ids(&self) -> &[String] {
        &self.owner_ids
    }

    pub fn halfspaces(&self) -> &[Halfspace] {
        &self.halfspaces
    }

    pub fn p(&self) -> usize {
        self.owner.len()
    }

    /// Cached vertex list, present after [`WeightSetComponent::with_geometry`].
    pub fn cached_vertices(&self) -> Option<&[WeightVector]> {
        self.vertices.as_deref()
    }

    /// Cached dimension, present after [`WeightSetComponent::with_geometry`].
    pub fn cached_dim(&self) -> Option<i64> {
        self.dim
    }

    /// Exact halfspace evaluation; the simplex rows are guaranteed by the
    /// `WeightVector` type.
    pub fn contains(&self, lambda: &WeightVector) -> bool {
        assert_eq!(lambda.len(), self.p(), "weight length mismatch");
        self.halfspaces
            .iter()
            .all(|h| h.normal.dot(lambda.as_qvector()) <= h.offset)
    }

    /// Same component with vertices and dimension computed and stored.
    pub fn with_geometry(mut self) -> Self {
        self.vertices = Some(vertices(&self));
        self.dim = Some(dimension(&self));
        self
    }
}

/// Build a component from explicit rival vectors (no classification).
fn component_against(
    owner: QVector,
    owner_ids: Vec<String>,
    rivals: &[QVector],
) -> WeightSetComponent {
    let p = owner.len();
    let mut halfspaces: Vec<Halfspace> = (0..p)
        .map(|i| Halfspace {
            normal: QVector::unit(p, i).neg(),
            offset: Rational::zero(),
        })
        .collect();
    for rival in rivals {
        if *rival == owner {
            continue;
        }
        halfspaces.push(Halfspace {
            normal: owner.sub(rival),
            offset: Rational::zero(),
        });
    }
    WeightSetComponent {
        owner,
        owner_ids,
        halfspaces,
        vertices: None,
        dim: None,
    }
}

/// The weight set component of `y`, with inequalities against the extreme
/// supported vectors of the set. Classifies internally.
pub fn component(set: &OutcomeSet, y: &QVector) -> Result<WeightSetComponent, WeightSetError> {
    if !set.contains_vector(y) {
        return Err(WeightSetError::VectorNotInSet);
    }
    let classification = classify(set);
    Ok(component_for(y, &classification))
}

/// Same as [`component`] with a precomputed classification.
pub fn component_for(y: &QVector, classification: &Classification) -> WeightSetComponent {
    let ids = classification
        .outcomes
        .iter()
        .find(|o| &o.vector == y)
        .map(|o| o.ids.clone())
        .unwrap_or_default();
    let esn = classification.extreme_supported_vectors();
    component_against(y.clone(), ids, &esn)
}

/// Exact vertex enumeration: every choice of p−1 halfspaces turned to
/// equalities together with `Σλ = 1`; unique, feasible solutions are the
/// vertices. Deduplicated and sorted lexicographically by entries.
pub fn vertices(c: &WeightSetComponent) -> Vec<WeightVector> {
    let p = c.p();
    let m = c.halfspaces.len();
    let mut found: Vec<WeightVector> = Vec::new();
    for subset in (0..m).combinations(p - 1) {
        let mut rows: Vec<QVector> = subset
            .iter()
            .map(|&i| c.halfspaces[i].normal.clone())
            .collect();
        let mut rhs: Vec<Rational> = subset
            .iter()
            .map(|&i| c.halfspaces[i].offset.clone())
            .collect();
        rows.push(QVector::ones(p));
        rhs.push(int(1));
        let system = QMatrix::from_rows(rows, p);
        let LinearSolve::Solution {
            particular,
            nullspace,
        } = solve_linear_system(&system, &QVector::new(rhs))
        else {
            continue;
        };
        if !nullspace.is_empty() {
            continue;
        }
        let feasible = c
            .halfspaces
            .iter()
            .all(|h| h.normal.dot(&particular) <= h.offset);
        if !feasible {
            continue;
        }
        let w = WeightVector::new(particular).expect("active-set solution lies on the simplex");
        if !found.contains(&w) {
            found.push(w);
        }
    }
    found.sort();
    found
}

/// LP over the raw weight variables: maximise `objective·λ` subject to the
/// component's halfspaces and the normalisation.
fn lp_over_component(c: &WeightSetComponent, objective: QVector) -> LpResult {
    let p = c.p();
    let rows: Vec<QVector> = c.halfspaces.iter().map(|h| h.normal.clone()).collect();
    let rhs: Vec<Rational> = c.halfspaces.iter().map(|h| h.offset.clone()).collect();
    lp_solve(&LpProblem::new(
        objective,
        QMatrix::from_rows(rows, p),
        QVector::new(rhs),
        QMatrix::from_rows(vec![QVector::ones(p)], p),
        QVector::new(vec![int(1)]),
    ))
}

/// Affine dimension of the component: −1 when empty, otherwise
/// `p − rank(implicit equality system incl. the normalisation)`.
///
/// A single uniform-slack LP (maximise δ with `normal·λ + δ ≤ offset`)
/// settles the common cases: infeasible means empty, positive margin means
/// nothing is forced. Otherwise only the rows tight at the LP's optimiser
/// are candidates and each gets its own slack-maximising LP.
pub fn dimension(c: &WeightSetComponent) -> i64 {
    let p = c.p();
    let n = p + 1;
    let one = int(1);
    let mut rows = Vec::with_capacity(c.halfspaces.len());
    let mut rhs = Vec::with_capacity(c.halfspaces.len());
    for h in &c.halfspaces {
        let mut row: Vec<Rational> = h.normal.entries().to_vec();
        row.push(one.clone());
        rows.push(QVector::new(row));
        rhs.push(h.offset.clone());
    }
    let mut objective = vec![Rational::zero(); n];
    objective[p] = one.clone();
    let mut normalisation = vec![one.clone(); p];
    normalisation.push(Rational::zero());
    let uniform = lp_solve(&LpProblem::new(
        QVector::new(objective),
        QMatrix::from_rows(rows, n),
        QVector::new(rhs),
        QMatrix::from_rows(vec![QVector::new(normalisation)], n),
        QVector::new(vec![one]),
    ));
    // δ is free, so the slack LP is always feasible; the polytope is empty
    // exactly when even the best uniform margin is negative.
    let (solution, margin) = match uniform {
        LpResult::Optimal { solution, value } => (solution, value),
        other => unreachable!("slack LP cannot be {other:?}"),
    };
    if margin < Rational::zero() {
        return -1;
    }
    if margin > Rational::zero() {
        return (p as i64) - 1;
    }

    let witness = QVector::new((0..p).map(|i| solution[i].clone()).collect());
    let mut forced_rows: Vec<QVector> = Vec::new();
    for h in &c.halfspaces {
        if h.normal.dot(&witness) < h.offset {
            continue; // slack at the witness, not an implicit equality
        }
        let best = lp_over_component(c, h.normal.neg());
        let LpResult::Optimal { value, .. } = best else {
            unreachable!("component is nonempty here");
        };
        if -value == h.offset {
            forced_rows.push(h.normal.clone());
        }
    }
    forced_rows.push(QVector::ones(p));
    (p as i64) - matrix_rank(&QMatrix::from_rows(forced_rows, p)) as i64
}

/// Intersection of two components and whether it is a common face.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CommonFace {
    pub intersection: WeightSetComponent,
    pub is_face_of_both: bool,
}

/// Intersect `c1` with the hyperplane on which both owners score equally.
fn restrict_to_equality(c: &WeightSetComponent, diff: &QVector) -> WeightSetComponent {
    let mut halfspaces = c.halfspaces.clone();
    halfspaces.push(Halfspace {
        normal: diff.clone(),
        offset: Rational::zero(),
    });
    halfspaces.push(Halfspace {
        normal: diff.neg(),
        offset: Rational::zero(),
    });
    WeightSetComponent {
        owner: c.owner.clone(),
        owner_ids: c.owner_ids.clone(),
        halfspaces,
        vertices: None,
        dim: None,
    }
}

/// The intersection of two weight set components of the same instance,
/// which equals each component restricted to the hyperplane where the two
/// owners are equally good. `is_face_of_both` verifies that computationally:
/// the separating inequality must be valid for each component and the two
/// restrictions and the plain intersection must agree as polytopes
/// (identical vertex sets). Empty intersections are vacuously faces.
pub fn common_face(
    c1: &WeightSetComponent,
    c2: &WeightSetComponent,
) -> Result<CommonFace, WeightSetError> {
    if c1.p() != c2.p() {
        return Err(WeightSetError::DimensionMismatch);
    }
    let diff = c1.owner.sub(&c2.owner); // (y − y′)

    // max (y − y′)ᵀλ over c1 must be ≤ 0, and symmetrically for c2.
    let valid_for = |c: &WeightSetComponent, objective: QVector| -> bool {
        match lp_over_component(c, objective) {
            LpResult::Optimal { value, .. } => value <= Rational::zero(),
            LpResult::Infeasible => true,
            LpResult::Unbounded => unreachable!("component LPs are bounded"),
        }
    };
    let valid = valid_for(c1, diff.clone()) && valid_for(c2, diff.neg());

    let restricted1 = restrict_to_equality(c1, &diff);
    let restricted2 = restrict_to_equality(c2, &diff);
    let mut both = c1.clone();
    both.owner_ids = c1
        .owner_ids
        .iter()
        .chain(c2.owner_ids.iter())
        .cloned()
        .sorted()
        .dedup()
        .collect();
    // Identical rows (the shared nonnegativity block, repeated rivals) are
    // redundant and only inflate the active-set enumeration.
    for h in c2.halfspaces.iter() {
        if !both.halfspaces.contains(h) {
            both.halfspaces.push(h.clone());
        }
    }

    let v1 = vertices(&restricted1);
    let v2 = vertices(&restricted2);
    let v_both = vertices(&both);
    let is_face_of_both = valid && v1 == v2 && v1 == v_both;

    let intersection = WeightSetComponent {
        owner: both.owner.clone(),
        owner_ids: both.owner_ids.clone(),
        halfspaces: both.halfspaces.clone(),
        vertices: Some(v_both),
        dim: Some(dimension(&both)),
    };
    Ok(CommonFace {
        intersection,
        is_face_of_both,
    })
}

/// The weight set decomposition: one full-dimensional cell per extreme
/// supported vector, plus the deduplicated union of all cell vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    set: OutcomeSet,
    cells: Vec<WeightSetComponent>,
    extreme_weights: Vec<WeightVector>,
}

impl Decomposition {
    pub fn set(&self) -> &OutcomeSet {
        &self.set
    }

    pub fn cells(&self) -> &[WeightSetComponent] {
        &self.cells
    }

    pub fn extreme_weights(&self) -> &[WeightVector] {
        &self.extreme_weights
    }
}

/// Decompose the weight simplex: a cell for every extreme supported vector,
/// each with vertices and dimension computed.
pub fn decompose(set: &OutcomeSet) -> Decomposition {
    let classification = classify(set);
    let cells: Vec<WeightSetComponent> = classification
        .outcomes
        .iter()
        .filter(|o| o.class == SupportClass::ExtremeSupported)
        .map(|o| component_for(&o.vector, &classification).with_geometry())
        .collect();
    let extreme_weights: Vec<WeightVector> = cells
        .iter()
        .flat_map(|c| c.cached_vertices().expect("geometry computed").to_vec())
        .sorted()
        .dedup()
        .collect();
    Decomposition {
        set: set.clone(),
        cells,
        extreme_weights,
    }
}

/// One failed coverage sample.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CoverageFailure {
    /// The sampled weight was in no cell.
    NoCell { lambda: WeightVector },
    /// A cell contained the weight but its owner was not weighted-sum
    /// optimal there.
    OwnerNotOptimal {
        lambda: WeightVector,
        owner: QVector,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoverageReport {
    pub samples: usize,
    pub seed: u64,
    pub failures: Vec<CoverageFailure>,
}

impl CoverageReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Draw a weight: p integers uniform on [0, 10^6], rejecting the all-zero
/// draw, normalised by their sum.
fn sample_weight(rng: &mut SplitMix64, p: usize) -> WeightVector {
    loop {
        let draws: Vec<u64> = (0..p).map(|_| rng.uniform_below(1_000_001)).collect();
        let total: u64 = draws.iter().sum();
        if total == 0 {
            continue;
        }
        let entries: Vec<Rational> = draws
            .iter()
            .map(|&d| Rational::new((d as i64).into(), (total as i64).into()))
            .collect();
        return WeightVector::new(QVector::new(entries)).expect("normalised draw is a weight");
    }
}

/// Sample random weights and check that each lies in at least one cell and
/// that every containing cell's owner attains the weighted-sum minimum
/// there. Failures are returned, not asserted.
pub fn check_coverage(
    d: &Decomposition,
    samples: usize,
    seed: u64,
) -> Result<CoverageReport, WeightSetError> {
    if samples == 0 {
        return Err(WeightSetError::NoSamples);
    }
    let mut rng = SplitMix64::new(seed);
    let p = d.set.p();
    let mut failures = Vec::new();
    for _ in 0..samples {
        let lambda = sample_weight(&mut rng, p);
        let optimal_vectors: Vec<QVector> = weighted_sum_argmin(&d.set, &lambda)
            .iter()
            .map(|pt| pt.vector().clone())
            .collect();
        let mut covered = false;
        for cell in &d.cells {
            if !cell.contains(&lambda) {
                continue;
            }
            covered = true;
            if !optimal_vectors.contains(cell.owner()) {
                failures.push(CoverageFailure::OwnerNotOptimal {
                    lambda: lambda.clone(),
                    owner: cell.owner().clone(),
                });
            }
        }
        if !covered {
            failures.push(CoverageFailure::NoCell { lambda });
        }
    }
    Ok(CoverageReport {
        samples,
        seed,
        failures,
    })
}

/// Necessity of one extreme supported vector: a strictly positive weight in
/// its cell and in no other vector's component.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessityRecord {
    pub owner: QVector,
    pub witness: Option<WeightVector>,
    pub in_own_cell: bool,
    /// The owner is the unique weighted-sum optimal vector at the witness,
    /// hence the witness is outside every other component.
    pub uniquely_optimal: bool,
    /// Direct halfspace check against the other cells.
    pub outside_other_cells: bool,
}

impl NecessityRecord {
    pub fn holds(&self) -> bool {
        self.witness.is_some()
            && self.in_own_cell
            && self.uniquely_optimal
            && self.outside_other_cells
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NecessityReport {
    pub records: Vec<NecessityRecord>,
}

impl NecessityReport {
    pub fn passed(&self) -> bool {
        self.records.iter().all(NecessityRecord::holds)
    }
}

/// For every extreme supported vector, exhibit a strictly positive weight
/// covered by its cell and by no other vector's component (the margin-LP
/// witness), and verify both memberships exactly.
pub fn check_necessity(d: &Decomposition) -> NecessityReport {
    let records = d
        .cells
        .iter()
        .map(|cell| {
            let witness = match is_extreme_supported(&d.set, cell.owner()) {
                Ok(SupportWitness::Yes(w)) => Some(w),
                _ => None,
            };
            let Some(w) = witness.clone() else {
                return NecessityRecord {
                    owner: cell.owner().clone(),
                    witness: None,
                    in_own_cell: false,
                    uniquely_optimal: false,
                    outside_other_cells: false,
                };
            };
            let in_own_cell = cell.contains(&w);
            let optimal: Vec<QVector> = weighted_sum_argmin(&d.set, &w)
                .iter()
                .map(|pt| pt.vector().clone())
                .collect();
            let uniquely_optimal = optimal.iter().all(|v| v == cell.owner());
            let outside_other_cells = d
                .cells
                .iter()
                .filter(|other| other.owner() != cell.owner())
                .all(|other| !other.contains(&w));
            NecessityRecord {
                owner: cell.owner().clone(),
                witness,
                in_own_cell,
                uniquely_optimal,
                outside_other_cells,
            }
        })
        .collect();
    NecessityReport { records }
}

/// Vector-level comparison of the supported set with what the extreme
/// weights recover.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryReport {
    /// Union over the extreme weights of (weighted-sum argmin ∩ Pareto set),
    /// sorted and deduplicated.
    pub recovered: Vec<QVector>,
    /// Vectors classified supported (extreme or not), sorted.
    pub supported: Vec<QVector>,
}

impl RecoveryReport {
    pub fn passed(&self) -> bool {
        self.recovered == self.supported
    }
}

/// Solving the weighted sums only at the extreme weights of the cells must
/// recover exactly the supported vectors.
pub fn recover_supported(d: &Decomposition) -> RecoveryReport {
    let pareto: Vec<QVector> = crate::model::pareto_filter(&d.set)
        .iter()
        .map(|pt| pt.vector().clone())
        .collect();
    let mut recovered: Vec<QVector> = Vec::new();
    for lambda in &d.extreme_weights {
        for pt in weighted_sum_argmin(&d.set, lambda) {
            if pareto.contains(pt.vector()) && !recovered.contains(pt.vector()) {
                recovered.push(pt.vector().clone());
            }
        }
    }
    recovered.sort();
    let mut supported = classify(&d.set).supported_vectors();
    supported.sort();
    RecoveryReport {
        recovered,
        supported,
    }
}

/// Membership in the component against the extreme supported vectors must
/// coincide with optimality against the whole set. Used by tests.
pub fn membership_matches_argmin(
    set: &OutcomeSet,
    c: &WeightSetComponent,
    lambda: &WeightVector,
) -> bool {
    let own = lambda.as_qvector().dot(c.owner());
    let optimal_everywhere = set
        .points()
        .iter()
        .all(|pt| own <= lambda.as_qvector().dot(pt.vector()));
    c.contains(lambda) == optimal_everywhere
}
