//! Revised simplex solvers for `min c^T x` subject to row constraints and `x >= 0`.
//!
//! Two routes share one result type:
//!
//! * [`Algorithm::PrimalTwoPhase`]: textbook bounded revised simplex on the
//!   standard-form augmentation (slacks for `<=`, surpluses and artificials
//!   for `>=`), LU-factorised basis with product-form updates, Dantzig
//!   pricing and a Bland fallback. Works on any explicit LP.
//! * [`Algorithm::DualLazyRows`]: dual revised simplex started from the
//!   all-slack basis, which is dual feasible whenever `c >= 0`. Only the
//!   small core `rows(T) x cols(S)` of tight rows against basic structurals is
//!   ever factorised, and the remaining rows are priced through
//!   [`LinearProgram::activities`], so they never need to be materialised.
//!   This is the route used for [`crate::lp_model::FrontierLp`].

mod dense;
mod dual;
mod primal;

use serde::{Deserialize, Serialize};

use crate::lp_model::FrontierLp;

/// Row sense.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sense {
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "=")]
    Eq,
}

impl Sense {
    pub fn token(&self) -> &'static str {
        match self {
            Sense::Le => "<=",
            Sense::Ge => ">=",
            Sense::Eq => "=",
        }
    }

    pub fn parse(s: &str) -> Option<Sense> {
        match s {
            "<=" => Some(Sense::Le),
            ">=" => Some(Sense::Ge),
            "=" | "==" => Some(Sense::Eq),
            _ => None,
        }
    }

    /// Violation of `activity (sense) rhs`, zero when satisfied.
    pub fn violation(&self, activity: f64, rhs: f64) -> f64 {
        match self {
            Sense::Le => (activity - rhs).max(0.0),
            Sense::Ge => (rhs - activity).max(0.0),
            Sense::Eq => (activity - rhs).abs(),
        }
    }
}

/// Row-oriented view of an LP with nonnegative variables.
pub trait LinearProgram: Sync {
    fn n_vars(&self) -> usize;
    fn n_rows(&self) -> usize;
    fn cost(&self, j: usize) -> f64;
    fn sense(&self, r: usize) -> Sense;
    fn rhs(&self, r: usize) -> f64;
    /// Calls `f(j, a_rj)` for the nonzeros of row `r`.
    fn for_each_entry(&self, r: usize, f: &mut dyn FnMut(usize, f64));

    /// Row activities `A x` for a point whose nonzeros are listed in `support`.
    fn activities(&self, x: &[f64], support: &[usize], out: &mut [f64]) {
        let _ = support;
        for (r, slot) in out.iter_mut().enumerate().take(self.n_rows()) {
            let mut acc = 0.0;
            self.for_each_entry(r, &mut |j, a| acc += a * x[j]);
            *slot = acc;
        }
    }

    /// Whether row `r` is implied by other rows, so that a solver may leave
    /// it out while other rows are still violated.
    fn implied(&self, r: usize) -> bool {
        let _ = r;
        false
    }
}

/// One explicit constraint row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseRow {
    pub entries: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

/// An explicit sparse LP: `min c^T x` subject to rows and `x >= 0`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SparseLp {
    pub cost: Vec<f64>,
    pub rows: Vec<SparseRow>,
}

impl SparseLp {
    pub fn new(cost: Vec<f64>) -> Self {
        SparseLp { cost, rows: Vec::new() }
    }

    pub fn add_row(&mut self, entries: Vec<(usize, f64)>, sense: Sense, rhs: f64) -> &mut Self {
        self.rows.push(SparseRow { entries, sense, rhs });
        self
    }

    /// Copies any LP into explicit form.
    pub fn from_lp<L: LinearProgram + ?Sized>(lp: &L) -> Self {
        let cost = (0..lp.n_vars()).map(|j| lp.cost(j)).collect();
        let rows = (0..lp.n_rows())
            .map(|r| {
                let mut entries = Vec::new();
                lp.for_each_entry(r, &mut |j, a| entries.push((j, a)));
                SparseRow {
                    entries,
                    sense: lp.sense(r),
                    rhs: lp.rhs(r),
                }
            })
            .collect();
        SparseLp { cost, rows }
    }
}

impl LinearProgram for SparseLp {
    fn n_vars(&self) -> usize {
        self.cost.len()
    }

    fn n_rows(&self) -> usize {
        self.rows.len()
    }

    fn cost(&self, j: usize) -> f64 {
        self.cost[j]
    }

    fn sense(&self, r: usize) -> Sense {
        self.rows[r].sense
    }

    fn rhs(&self, r: usize) -> f64 {
        self.rows[r].rhs
    }

    fn for_each_entry(&self, r: usize, f: &mut dyn FnMut(usize, f64)) {
        for &(j, a) in &self.rows[r].entries {
            f(j, a);
        }
    }
}

/// Which simplex variant to run.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Algorithm {
    /// Dual route when `c >= 0` and there are no equality rows, primal otherwise.
    #[default]
    Auto,
    PrimalTwoPhase,
    DualLazyRows,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveOptions {
    /// Absolute tolerance on row residuals.
    pub tol_feas: f64,
    /// Tolerance on reduced costs.
    pub tol_opt: f64,
    pub max_iters: usize,
    pub algorithm: Algorithm,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            tol_feas: 1e-8,
            tol_opt: 1e-9,
            max_iters: 1_000_000,
            algorithm: Algorithm::Auto,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Optimal,
    Infeasible,
    Unbounded,
    IterationLimit,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolveResult {
    pub status: Status,
    /// Primal solution, present iff optimal.
    pub alpha: Option<Vec<f64>>,
    pub objective: f64,
    pub iterations: usize,
    /// Largest row or bound violation at the returned point.
    pub max_residual: f64,
    /// Nonzero row multipliers `u` with `c - A^T u >= 0`, `u >= 0` on `>=`
    /// rows and `u <= 0` on `<=` rows; `rhs^T u` equals the objective.
    pub duals: Vec<(usize, f64)>,
    /// Most violated rows when infeasible, `(row, violation)`.
    pub infeasible_rows: Vec<(usize, f64)>,
    pub algorithm: Algorithm,
}

impl SolveResult {
    pub fn is_optimal(&self) -> bool {
        self.status == Status::Optimal
    }
}

/// Solves `lp` with the variant chosen by `opts.algorithm`.
pub fn solve<L: LinearProgram + ?Sized>(lp: &L, opts: &SolveOptions) -> SolveResult {
    let algorithm = match opts.algorithm {
        Algorithm::Auto => {
            if dual_start_available(lp) {
                Algorithm::DualLazyRows
            } else {
                Algorithm::PrimalTwoPhase
            }
        }
        a => a,
    };
    let mut out = match algorithm {
        Algorithm::DualLazyRows if dual_start_available(lp) => dual::solve(lp, opts),
        _ => primal::solve(lp, opts),
    };
    if out.status == Status::Optimal {
        debug_assert!(out.alpha.is_some());
    }
    out.algorithm = if algorithm == Algorithm::DualLazyRows && dual_start_available(lp) {
        Algorithm::DualLazyRows
    } else {
        Algorithm::PrimalTwoPhase
    };
    out
}

/// Whether the all-slack basis is dual feasible.
pub fn dual_start_available<L: LinearProgram + ?Sized>(lp: &L) -> bool {
    (0..lp.n_vars()).all(|j| lp.cost(j) >= 0.0) && (0..lp.n_rows()).all(|r| lp.sense(r) != Sense::Eq)
}

/// Largest row violation and negative part of `x`.
pub fn max_violation<L: LinearProgram + ?Sized>(lp: &L, x: &[f64]) -> f64 {
    let support: Vec<usize> = (0..x.len()).filter(|&j| x[j] != 0.0).collect();
    let mut act = vec![0.0; lp.n_rows()];
    lp.activities(x, &support, &mut act);
    let rows = (0..lp.n_rows())
        .map(|r| lp.sense(r).violation(act[r], lp.rhs(r)))
        .fold(0.0, f64::max);
    let bounds = x.iter().fold(0.0_f64, |m, &v| m.max(-v));
    rows.max(bounds)
}

/// Outcome of [`solve_with_relaxation`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RelaxedSolve {
    pub result: SolveResult,
    pub relaxation_level: u32,
    /// Curvature right-hand side of the LP that produced `result`.
    pub curvature_rhs: f64,
}

/// Solves `lp`; on infeasibility retries with the curvature bound set to
/// `second_deriv_bound * factor^level`, `level = 1..=max_steps`.
///
/// A level that stops without a verdict ([`Status::IterationLimit`], which
/// includes numerical breakdown of the dual route) is relaxed as well, since
/// the dual route cannot always certify infeasibility of a badly
/// conditioned level. Covering and bin rows are never relaxed.
pub fn solve_with_relaxation(
    lp: &FrontierLp,
    opts: &SolveOptions,
    factor: f64,
    max_steps: u32,
) -> RelaxedSolve {
    let mut result = solve(lp, opts);
    log::debug!("relaxation level 0: {:?} after {} iterations", result.status, result.iterations);
    let mut level = 0;
    let mut rhs = lp.curvature_rhs();
    while matches!(result.status, Status::Infeasible | Status::IterationLimit) && level < max_steps {
        level += 1;
        rhs = lp.meta().second_deriv_bound * factor.powi(level as i32);
        let relaxed = lp.with_curvature_rhs(rhs);
        result = solve(&relaxed, opts);
        log::debug!(
            "relaxation level {level}: curvature rhs {rhs:e}, {:?} after {} iterations",
            result.status,
            result.iterations
        );
    }
    RelaxedSolve {
        result,
        relaxation_level: level,
        curvature_rhs: rhs,
    }
}
