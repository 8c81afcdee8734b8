//! Exact linear programming over the rationals.
//!
//! Maximise `cᵀx` subject to `A x ≤ b` and `E x = d` with `x` free.
//! Free variables are split into nonnegative differences internally; the
//! solver is a dense two-phase primal simplex with Bland's anti-cycling
//! rule, so every call is deterministic and every returned optimum is
//! exact. Problem sizes here are desk scale; no sparse machinery.

use num_traits::Zero;

use crate::linalg::{QMatrix, QVector};
use crate::rational::Rational;

/// `maximize objectiveᵀx  s.t.  ineq_lhs·x ≤ ineq_rhs,  eq_lhs·x = eq_rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpProblem {
    pub objective: QVector,
    pub ineq_lhs: QMatrix,
    pub ineq_rhs: QVector,
    pub eq_lhs: QMatrix,
    pub eq_rhs: QVector,
}

impl LpProblem {
    pub fn new(
        objective: QVector,
        ineq_lhs: QMatrix,
        ineq_rhs: QVector,
        eq_lhs: QMatrix,
        eq_rhs: QVector,
    ) -> Self {
        let n = objective.len();
        assert!(n > 0, "LP needs at least one variable");
        assert_eq!(ineq_lhs.n_cols(), n, "inequality column count mismatch");
        assert_eq!(eq_lhs.n_cols(), n, "equality column count mismatch");
        assert_eq!(ineq_lhs.n_rows(), ineq_rhs.len(), "inequality rhs mismatch");
        assert_eq!(eq_lhs.n_rows(), eq_rhs.len(), "equality rhs mismatch");
        Self {
            objective,
            ineq_lhs,
            ineq_rhs,
            eq_lhs,
            eq_rhs,
        }
    }

    pub fn n_vars(&self) -> usize {
        self.objective.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpResult {
    Optimal { solution: QVector, value: Rational },
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn is_optimal(&self) -> bool {
        matches!(self, LpResult::Optimal { .. })
    }
}

/// Dense simplex tableau in canonical form: the column of every basic
/// variable is a unit column and all right-hand sides are nonnegative.
struct Tableau {
    rows: Vec<Vec<Rational>>,
    rhs: Vec<Rational>,
    basis: Vec<usize>,
    /// Reduced cost rows with their objective values, updated on every
    /// pivot. Index 0 is the phase-1 row when present, the original
    /// objective is last.
    costs: Vec<(Vec<Rational>, Rational)>,
}

impl Tableau {
    fn pivot(&mut self, pr: usize, pc: usize) {
        let piv = self.rows[pr][pc].clone();
        debug_assert!(!piv.is_zero(), "pivot on zero entry");
        let inv = piv.recip();
        for e in self.rows[pr].iter_mut() {
            if !e.is_zero() {
                *e *= &inv;
            }
        }
        self.rhs[pr] *= &inv;

        let prow = std::mem::take(&mut self.rows[pr]);
        let prhs = self.rhs[pr].clone();
        for (r, row) in self.rows.iter_mut().enumerate() {
            if r == pr {
                continue;
            }
            let f = row[pc].clone();
            if f.is_zero() {
                continue;
            }
            for (e, pe) in row.iter_mut().zip(prow.iter()) {
                if !pe.is_zero() {
                    *e -= &f * pe;
                }
            }
            self.rhs[r] -= &f * &prhs;
        }
        for (cost, value) in self.costs.iter_mut() {
            let f = cost[pc].clone();
            if f.is_zero() {
                continue;
            }
            for (e, pe) in cost.iter_mut().zip(prow.iter()) {
                if !pe.is_zero() {
                    *e -= &f * pe;
                }
            }
            *value += &f * &prhs;
        }
        self.rows[pr] = prow;
        self.basis[pr] = pc;
    }

    /// Maximise the cost row `cost_idx` with Bland's rule. Columns at or
    /// beyond `banned_from` may never enter the basis. Returns false when
    /// the problem is unbounded in the current phase.
    fn run_simplex(&mut self, cost_idx: usize, banned_from: usize) -> bool {
        loop {
            let entering = {
                let cost = &self.costs[cost_idx].0;
                (0..banned_from).find(|&j| cost[j] > Rational::zero())
            };
            let Some(pc) = entering else {
                return true;
            };

            let mut leaving: Option<(usize, Rational)> = None;
            for r in 0..self.rows.len() {
                let coeff = &self.rows[r][pc];
                if *coeff <= Rational::zero() {
                    continue;
                }
                let ratio = &self.rhs[r] / coeff;
                match &leaving {
                    None => leaving = Some((r, ratio)),
                    Some((best_r, best)) => {
                        if ratio < *best || (ratio == *best && self.basis[r] < self.basis[*best_r])
                        {
                            leaving = Some((r, ratio));
                        }
                    }
                }
            }
            let Some((pr, _)) = leaving else {
                return false;
            };
            self.pivot(pr, pc);
        }
    }
}

/// Solve the LP exactly. Ties are broken by Bland's smallest-index rule,
/// so identical problems always return identical results.
pub fn lp_solve(problem: &LpProblem) -> LpResult {
    let n = problem.n_vars();
    let m1 = problem.ineq_lhs.n_rows();
    let m2 = problem.eq_lhs.n_rows();
    let m = m1 + m2;

    // Columns: u (n), v (n), slacks (m1), artificials appended on demand.
    let slack_start = 2 * n;
    let art_start = 2 * n + m1;

    let mut rows: Vec<Vec<Rational>> = Vec::with_capacity(m);
    let mut rhs: Vec<Rational> = Vec::with_capacity(m);
    for i in 0..m1 {
        let a = problem.ineq_lhs.row(i);
        let mut row = vec![Rational::zero(); art_start];
        for j in 0..n {
            row[j] = a[j].clone();
            row[n + j] = -a[j].clone();
        }
        row[slack_start + i] = Rational::from_integer(1.into());
        rows.push(row);
        rhs.push(problem.ineq_rhs[i].clone());
    }
    for i in 0..m2 {
        let e = problem.eq_lhs.row(i);
        let mut row = vec![Rational::zero(); art_start];
        for j in 0..n {
            row[j] = e[j].clone();
            row[n + j] = -e[j].clone();
        }
        rows.push(row);
        rhs.push(problem.eq_rhs[i].clone());
    }

    // Normalise right-hand sides and pick the initial basis: unflipped
    // inequality rows use their slack, everything else gets an artificial.
    let mut basis = vec![0usize; m];
    let mut artificial_rows = Vec::new();
    for r in 0..m {
        if rhs[r] < Rational::zero() {
            for e in rows[r].iter_mut() {
                if !e.is_zero() {
                    *e = -e.clone();
                }
            }
            rhs[r] = -rhs[r].clone();
            artificial_rows.push(r);
        } else if r < m1 {
            basis[r] = slack_start + r;
        } else {
            artificial_rows.push(r);
        }
    }
    let n_art = artificial_rows.len();
    let total_cols = art_start + n_art;
    for (k, &r) in artificial_rows.iter().enumerate() {
        for (rr, row) in rows.iter_mut().enumerate() {
            row.resize(total_cols, Rational::zero());
            if rr == r {
                row[art_start + k] = Rational::from_integer(1.into());
            }
        }
        basis[r] = art_start + k;
    }
    if n_art == 0 {
        for row in rows.iter_mut() {
            row.resize(total_cols, Rational::zero());
        }
    }

    // Phase-2 cost row: the original objective on the split variables.
    // Initial basic columns (slacks, artificials) all cost zero, so the
    // row starts out already priced.
    let mut obj_row = vec![Rational::zero(); total_cols];
    for j in 0..n {
        obj_row[j] = problem.objective[j].clone();
        obj_row[n + j] = -problem.objective[j].clone();
    }

    let mut tableau = Tableau {
        rows,
        rhs,
        basis,
        costs: Vec::new(),
    };

    if n_art > 0 {
        // Phase-1 cost: maximise −Σ artificials, priced out against the
        // initial basis (each basic artificial contributes its row).
        let mut phase1 = vec![Rational::zero(); total_cols];
        for k in 0..n_art {
            phase1[art_start + k] = -Rational::from_integer(1.into());
        }
        let mut phase1_value = Rational::zero();
        for &r in &artificial_rows {
            for (e, re) in phase1.iter_mut().zip(tableau.rows[r].iter()) {
                if !re.is_zero() {
                    *e += re;
                }
            }
            phase1_value -= &tableau.rhs[r];
        }
        tableau.costs.push((phase1, phase1_value));
        tableau.costs.push((obj_row, Rational::zero()));

        let finished = tableau.run_simplex(0, art_start);
        debug_assert!(finished, "phase 1 is bounded by construction");
        if tableau.costs[0].1 < Rational::zero() {
            return LpResult::Infeasible;
        }

        // Pivot leftover artificials out of the basis; rows that cannot
        // pivot are redundant and get dropped.
        let mut r = 0;
        while r < tableau.rows.len() {
            if tableau.basis[r] >= art_start {
                let pc = (0..art_start).find(|&j| !tableau.rows[r][j].is_zero());
                match pc {
                    Some(pc) => tableau.pivot(r, pc),
                    None => {
                        tableau.rows.remove(r);
                        tableau.rhs.remove(r);
                        tableau.basis.remove(r);
                        continue;
                    }
                }
            }
            r += 1;
        }
        tableau.costs.remove(0);
    } else {
        tableau.costs.push((obj_row, Rational::zero()));
    }

    if !tableau.run_simplex(0, art_start) {
        return LpResult::Unbounded;
    }

    let mut split = vec![Rational::zero(); 2 * n];
    for (r, &b) in tableau.basis.iter().enumerate() {
        if b < 2 * n {
            split[b] = tableau.rhs[r].clone();
        }
    }
    let solution = QVector::new((0..n).map(|j| &split[j] - &split[n + j]).collect());
    let value = problem.objective.dot(&solution);
    LpResult::Optimal { solution, value }
}
