//! Exact-arithmetic toolkit for finite multi-objective minimisation instances.
//!
//! Everything operates on explicitly listed outcome vectors with arbitrary
//! precision rational coordinates. The crate provides:
//!
//! * a small exact kernel: rational vectors/matrices, linear system solving,
//!   and a deterministic simplex LP solver ([`lp`], [`linalg`]),
//! * dominance comparison and Pareto filtering ([`model`]),
//! * weighted-sum and lexicographic scalarisation plus the LP-based support
//!   classification of every outcome vector ([`scalarize`]),
//! * weight set components as explicit polytopes, their vertices, dimensions,
//!   common faces, and the decomposition of the whole weight simplex
//!   ([`weightset`]),
//! * component-wise approximation factors and certificates showing that the
//!   supported points approximate every outcome ([`approx`]).
//!
//! No floating point is used anywhere in a computational path.

pub mod approx;
pub mod linalg;
pub mod lp;
pub mod model;
pub mod rational;
pub mod rng;
pub mod scalarize;
pub mod weightset;

pub use linalg::{LinearSolve, QMatrix, QVector};
pub use lp::{lp_solve, LpProblem, LpResult};
pub use model::{
    compare, distinct_vectors, pareto_filter, DominanceRelation, ModelError, OutcomePoint,
    OutcomeSet, WeightVector,
};
pub use rational::{int, rat, Rational};
pub use scalarize::{classify, Classification, ClassifiedOutcome, SupportClass};
pub use weightset::{decompose, Decomposition, WeightSetComponent};
