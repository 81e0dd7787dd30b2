//! Dual simplex over lazily priced rows.
//!
//! Every row is brought to the form `g_r x >= h_r` (a `<=` row is negated)
//! with slack `s_r = g_r x - h_r`. The basis is described by the tight rows
//! `T` (nonbasic slacks) and basic structurals `S`, always of equal length,
//! so the only matrix ever factorised is `M = G[T, S]`.
//!
//! Pricing runs over a working set of rows whose columns are cached. When
//! the working set is satisfied, one full pass over the problem adds the
//! most violated remaining rows; the solve ends when that pass finds none.

use super::dense::Lu;
use super::{Algorithm, LinearProgram, Sense, SolveOptions, SolveResult, Status};

/// Cap on consecutive degenerate pivots before switching to Bland's rule.
const DEGENERATE_CAP: usize = 5000;
/// Number of violated rows reported on infeasibility.
const REPORTED_ROWS: usize = 10;
/// Relative pivot tolerances of the ratio test, tried in turn until one
/// admits a candidate.
const PIVOT_TOLS: [f64; 3] = [1e-8, 1e-10, 1e-12];
/// Largest cost shift applied to an entering structural with a negative
/// reduced cost.
const SHIFT_CAP: f64 = 1e-7;
/// Dual infeasibility above which a drop of the objective counts towards
/// `MAX_REGRESSIONS`.
const BREAKDOWN_DUAL_TOL: f64 = 1e-6;
/// Objective drops tolerated before the solve is abandoned.
const MAX_REGRESSIONS: usize = 20;
/// Lower bound on rows added to the working set per full pass.
const MIN_BATCH: usize = 64;

enum Leaving {
    Row(usize),
    Structural(usize),
}

#[derive(Clone, Copy)]
enum Entering {
    Structural(usize),
    Slack(usize),
}

/// Rows being priced, with their entries cached by column.
struct WorkingSet {
    rows: Vec<usize>,
    norms: Vec<f64>,
    member: Vec<bool>,
    cols: Vec<Vec<(u32, f64)>>,
}

impl WorkingSet {
    fn new(n: usize, m: usize) -> Self {
        WorkingSet {
            rows: Vec::new(),
            norms: Vec::new(),
            member: vec![false; m],
            cols: vec![Vec::new(); n],
        }
    }

    /// Adds row `r` scaled to unit Euclidean norm, `sigma` being its sign.
    /// Returns the norm.
    fn add<L: LinearProgram + ?Sized>(&mut self, lp: &L, r: usize, sigma: f64) -> f64 {
        let mut sq = 0.0;
        lp.for_each_entry(r, &mut |_, v| sq += v * v);
        let norm = if sq > 0.0 { sq.sqrt() } else { 1.0 };
        let q = self.rows.len() as u32;
        self.rows.push(r);
        self.member[r] = true;
        self.norms.push(norm);
        let cols = &mut self.cols;
        let g = sigma / norm;
        lp.for_each_entry(r, &mut |j, v| cols[j].push((q, g * v)));
        norm
    }

    /// `g_r x` for every working row, given `x` supported on `basic`.
    fn activities(&self, x: &[f64], basic: &[usize], out: &mut Vec<f64>) {
        out.clear();
        out.resize(self.rows.len(), 0.0);
        for &j in basic {
            let xj = x[j];
            if xj != 0.0 {
                for &(q, g) in &self.cols[j] {
                    out[q as usize] += g * xj;
                }
            }
        }
    }
}

pub(super) fn solve<L: LinearProgram + ?Sized>(lp: &L, opts: &SolveOptions) -> SolveResult {
    let n = lp.n_vars();
    let m = lp.n_rows();
    let sigma: Vec<f64> = (0..m)
        .map(|r| if lp.sense(r) == Sense::Le { -1.0 } else { 1.0 })
        .collect();
    let h: Vec<f64> = (0..m).map(|r| sigma[r] * lp.rhs(r)).collect();
    // Working rows are scaled to unit norm; `sg` and `hs` hold the scaled
    // sign and right-hand side.
    let mut sg = sigma.clone();
    let mut hs = h.clone();
    let cost: Vec<f64> = (0..n).map(|j| lp.cost(j)).collect();
    // Duals and reduced costs use the shifted costs; the objective and the
    // result use the true ones.
    let mut shifted = cost.clone();
    let bound_tol = 1e-2 * opts.tol_feas;
    let degenerate_limit = (3 * (m + n)).min(DEGENERATE_CAP);
    let batch = n.max(MIN_BATCH);

    let mut work = WorkingSet::new(n, m);
    let mut tight: Vec<usize> = Vec::new();
    let mut basic: Vec<usize> = Vec::new();
    let mut pos_in_s: Vec<Option<usize>> = vec![None; n];
    let mut row_tight = vec![false; m];
    let mut x = vec![0.0; n];
    let mut act = Vec::new();
    let mut full_act = vec![0.0; m];
    let mut degenerate = 0usize;
    let mut bland = false;
    let mut iterations = 0usize;
    // Basis before the last pivot and the entering key, restored when the
    // new core turns out singular; `banned` keys are then skipped.
    let mut undo: Option<(Vec<usize>, Vec<usize>, usize)> = None;
    let mut banned: Vec<usize> = Vec::new();
    let mut restored = false;
    let mut best_objective = 0.0_f64;
    let mut regressions = 0usize;

    let finish = |status: Status, x: Vec<f64>, iterations: usize, duals: Vec<(usize, f64)>, rows: Vec<(usize, f64)>| {
        build_result(lp, &cost, status, x, iterations, duals, rows)
    };

    loop {
        let k = tight.len();
        for (b, &j) in basic.iter().enumerate() {
            pos_in_s[j] = Some(b);
        }
        let mut core = vec![0.0; k * k];
        for (a, &r) in tight.iter().enumerate() {
            let s = sg[r];
            lp.for_each_entry(r, &mut |j, v| {
                if let Some(b) = pos_in_s[j] {
                    core[a * k + b] += s * v;
                }
            });
        }
        let lu = match Lu::factor(core, k) {
            Some(lu) => {
                if restored {
                    restored = false;
                } else {
                    banned.clear();
                }
                lu
            }
            None => {
                let Some((t, b, key)) = undo.take() else {
                    log::warn!("dual simplex: singular core of size {k}");
                    return finish(Status::IterationLimit, vec![], iterations, vec![], vec![]);
                };
                log::debug!("dual simplex: singular core of size {k}, reverting the last pivot");
                for &j in &basic {
                    pos_in_s[j] = None;
                }
                for &r in &tight {
                    row_tight[r] = false;
                }
                tight = t;
                basic = b;
                for &r in &tight {
                    row_tight[r] = true;
                }
                banned.push(key);
                restored = true;
                continue;
            }
        };
        let mut xs: Vec<f64> = tight.iter().map(|&r| hs[r]).collect();
        lu.solve(&mut xs);
        for v in x.iter_mut() {
            *v = 0.0;
        }
        for (b, &j) in basic.iter().enumerate() {
            x[j] = xs[b];
        }
        let mut y: Vec<f64> = basic.iter().map(|&j| shifted[j]).collect();
        lu.solve_transpose(&mut y);
        work.activities(&x, &basic, &mut act);

        let objective: f64 = basic.iter().map(|&j| cost[j] * x[j]).sum();

        let leaving = choose_leaving(&xs, &basic, &work.rows, &act, &work.norms, &lu, &hs, &row_tight, bound_tol, opts.tol_feas, bland);
        let (leaving, infeasibility) = match leaving {
            Some(l) => l,
            None => {
                lp.activities(&x, &basic, &mut full_act);
                let violated = |keep_implied: bool| -> Vec<(usize, f64)> {
                    (0..m)
                        .filter(|&r| !work.member[r] && (keep_implied || !lp.implied(r)))
                        .map(|r| (r, h[r] - sigma[r] * full_act[r]))
                        .filter(|&(_, v)| v > opts.tol_feas)
                        .collect()
                };
                let mut fresh = violated(false);
                if fresh.is_empty() {
                    fresh = violated(true);
                }
                if fresh.is_empty() {
                    let duals = tight
                        .iter()
                        .zip(&y)
                        .map(|(&r, &v)| (r, sg[r] * v.max(0.0)))
                        .filter(|&(_, u)| u != 0.0)
                        .collect();
                    return finish(Status::Optimal, x, iterations, duals, vec![]);
                }
                fresh.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
                fresh.truncate(batch);
                log::trace!(
                    "dual simplex: adding {} rows to a working set of {}",
                    fresh.len(),
                    work.rows.len()
                );
                for &(r, _) in &fresh {
                    let norm = work.add(lp, r, sigma[r]);
                    sg[r] = sigma[r] / norm;
                    hs[r] = h[r] / norm;
                }
                for &j in &basic {
                    pos_in_s[j] = None;
                }
                continue;
            }
        };
        if iterations >= opts.max_iters {
            return finish(Status::IterationLimit, vec![], iterations, vec![], vec![]);
        }

        // Tableau row of the leaving variable: rho over structurals and
        // `coef` over the slacks of tight rows.
        let mut rho = vec![0.0; n];
        let coef = match leaving {
            Leaving::Row(r) => {
                let s = sg[r];
                let mut w = vec![0.0; k];
                lp.for_each_entry(r, &mut |j, v| {
                    rho[j] += s * v;
                    if let Some(b) = pos_in_s[j] {
                        w[b] += s * v;
                    }
                });
                lu.solve_transpose(&mut w);
                w
            }
            Leaving::Structural(p) => {
                let mut e = vec![0.0; k];
                e[p] = 1.0;
                lu.solve_transpose(&mut e);
                e
            }
        };
        let mut reduced = shifted.clone();
        for (a, &r) in tight.iter().enumerate() {
            let (wa, ya, s) = (coef[a], y[a], sg[r]);
            if wa == 0.0 && ya == 0.0 {
                continue;
            }
            lp.for_each_entry(r, &mut |j, v| {
                let g = s * v;
                rho[j] -= wa * g;
                reduced[j] -= ya * g;
            });
        }

        // The dual objective never decreases in exact arithmetic. Drops with
        // materially infeasible duals mean the core has lost all accuracy;
        // drops with feasible duals are transient primal error.
        if objective < best_objective - 1e-2 * best_objective.abs().max(1.0) {
            let dual_infeasibility = (0..n)
                .filter(|&j| pos_in_s[j].is_none())
                .map(|j| -reduced[j])
                .chain(y.iter().map(|&v| -v))
                .fold(0.0_f64, f64::max);
            if dual_infeasibility > BREAKDOWN_DUAL_TOL {
                regressions += 1;
                if regressions > MAX_REGRESSIONS {
                    log::warn!("dual simplex: numerical breakdown with a core of size {k}");
                    return finish(Status::IterationLimit, vec![], iterations, vec![], vec![]);
                }
            }
        }
        best_objective = best_objective.max(objective);

        let entering = PIVOT_TOLS.iter().find_map(|&piv| {
            ratio_test(&rho, &reduced, &coef, &y, &pos_in_s, &tight, n, opts.tol_opt, bland, piv, &banned)
        });
        let (entering, theta) = match entering {
            Some(e) => e,
            None if !banned.is_empty() => {
                log::warn!("dual simplex: no stable entering candidate");
                return finish(Status::IterationLimit, vec![], iterations, vec![], vec![]);
            }
            None => {
                lp.activities(&x, &basic, &mut full_act);
                let mut rows = violated_rows(&full_act, &sigma, &h, opts.tol_feas);
                if let Leaving::Row(r) = leaving {
                    if !rows.iter().any(|&(q, _)| q == r) {
                        rows.insert(0, (r, h[r] - sigma[r] * full_act[r]));
                    }
                }
                return finish(Status::Infeasible, vec![], iterations, vec![], rows);
            }
        };

        for &j in &basic {
            pos_in_s[j] = None;
        }
        let key = match entering {
            Entering::Structural(j) => {
                // the new core's duals then match the clamped step
                if reduced[j] < 0.0 {
                    shifted[j] -= reduced[j];
                }
                j
            }
            Entering::Slack(a) => n + tight[a],
        };
        undo = Some((tight.clone(), basic.clone(), key));
        match (leaving, entering) {
            (Leaving::Row(r), Entering::Structural(j)) => {
                tight.push(r);
                basic.push(j);
                row_tight[r] = true;
            }
            (Leaving::Row(r), Entering::Slack(a)) => {
                row_tight[tight[a]] = false;
                tight[a] = r;
                row_tight[r] = true;
            }
            (Leaving::Structural(p), Entering::Structural(j)) => {
                basic[p] = j;
            }
            (Leaving::Structural(p), Entering::Slack(a)) => {
                row_tight[tight[a]] = false;
                tight.swap_remove(a);
                basic.swap_remove(p);
            }
        }
        iterations += 1;
        if iterations % 1000 == 0 {
            log::trace!(
                "dual simplex: iteration {iterations}, core {}, working set {}",
                tight.len(),
                work.rows.len()
            );
        }
        if theta * infeasibility <= 1e-14 {
            degenerate += 1;
            if degenerate > degenerate_limit && !bland {
                log::debug!("dual simplex: switching to Bland's rule after {degenerate} degenerate pivots");
                bland = true;
            }
        } else {
            degenerate = 0;
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn choose_leaving(
    xs: &[f64],
    basic: &[usize],
    rows: &[usize],
    act: &[f64],
    row_norm: &[f64],
    lu: &Lu,
    h: &[f64],
    row_tight: &[bool],
    bound_tol: f64,
    row_tol: f64,
    bland: bool,
) -> Option<(Leaving, f64)> {
    let mut best: Option<(Leaving, f64)> = None;
    if bland {
        // Lowest global index: structurals first, then rows.
        let mut low: Option<(usize, usize)> = None;
        for (p, (&v, &j)) in xs.iter().zip(basic).enumerate() {
            if v < -bound_tol && low.map_or(true, |(lj, _)| j < lj) {
                low = Some((j, p));
            }
        }
        if let Some((_, p)) = low {
            return Some((Leaving::Structural(p), -xs[p]));
        }
        let mut low: Option<(usize, f64)> = None;
        for (q, (&r, &a)) in rows.iter().zip(act).enumerate() {
            let viol = h[r] - a;
            if !row_tight[r] && viol * row_norm[q] > row_tol && low.map_or(true, |(lr, _)| r < lr) {
                low = Some((r, viol));
            }
        }
        return low.map(|(r, v)| (Leaving::Row(r), v));
    }
    // Violations are compared after scaling by the norm of the
    // corresponding row of the basis inverse: `||M^-T e_p||` for a basic
    // structural, and 1 for a row since working rows have unit norm.
    let mut score = 0.0;
    for (p, &v) in xs.iter().enumerate() {
        if v < -bound_tol {
            let mut e = vec![0.0; xs.len()];
            e[p] = 1.0;
            lu.solve_transpose(&mut e);
            let w = e.iter().map(|b| b * b).sum::<f64>().sqrt().max(1e-300);
            let sc = -v / w;
            if best.is_none() || sc > score {
                best = Some((Leaving::Structural(p), -v));
                score = sc;
            }
        }
    }
    for (q, (&r, &a)) in rows.iter().zip(act).enumerate() {
        let viol = h[r] - a;
        if viol * row_norm[q] > row_tol && !row_tight[r] {
            let sc = viol;
            if best.is_none() || sc > score {
                best = Some((Leaving::Row(r), viol));
                score = sc;
            }
        }
    }
    best
}

/// Harris two-pass dual ratio test, or the textbook minimum ratio with
/// lowest-index ties under Bland's rule.
#[allow(clippy::too_many_arguments)]
fn ratio_test(
    rho: &[f64],
    reduced: &[f64],
    coef: &[f64],
    y: &[f64],
    pos_in_s: &[Option<usize>],
    tight: &[usize],
    n: usize,
    tol_opt: f64,
    bland: bool,
    piv_rel: f64,
    banned: &[usize],
) -> Option<(Entering, f64)> {
    let scale = rho
        .iter()
        .enumerate()
        .filter(|(j, _)| pos_in_s[*j].is_none())
        .map(|(_, v)| v.abs())
        .chain(coef.iter().map(|v| v.abs()))
        .fold(1.0_f64, f64::max);
    let piv_tol = piv_rel * scale;
    // (entering, key, clamped reduced cost, pivot, raw reduced cost)
    let mut cands: Vec<(Entering, usize, f64, f64, f64)> = Vec::new();
    for j in 0..n {
        if pos_in_s[j].is_none() && rho[j] > piv_tol && !banned.contains(&j) {
            cands.push((Entering::Structural(j), j, reduced[j].max(0.0), rho[j], reduced[j]));
        }
    }
    for (a, &w) in coef.iter().enumerate() {
        if w > piv_tol && !banned.contains(&(n + tight[a])) {
            cands.push((Entering::Slack(a), n + tight[a], y[a].max(0.0), w, y[a]));
        }
    }
    if cands.is_empty() {
        return None;
    }
    if bland {
        let theta = cands.iter().map(|c| c.2 / c.3).fold(f64::INFINITY, f64::min);
        let pick = cands
            .iter()
            .filter(|c| c.2 / c.3 <= theta * (1.0 + 1e-12) + 1e-300)
            .min_by_key(|c| c.1)?;
        return Some((pick.0, pick.2 / pick.3));
    }
    // Harris: the first pass bounds the step with every reduced cost
    // allowed to go `tol_opt` negative, the second takes the largest pivot
    // among candidates within that bound.
    let theta_max = cands
        .iter()
        .map(|c| (c.2 + tol_opt) / c.3)
        .fold(f64::INFINITY, f64::min);
    let within: Vec<_> = cands.iter().filter(|c| c.2 / c.3 <= theta_max).collect();
    // Duals are recomputed from the new core, so a negative reduced cost
    // over a small pivot moves them by d/alpha rather than zero. Structurals
    // within the shift cap get their cost shifted instead.
    let pick = within
        .iter()
        .filter(|c| c.4 / c.3 >= -theta_max || (c.1 < n && c.4 >= -SHIFT_CAP))
        .max_by(|a, b| a.3.total_cmp(&b.3).then(b.1.cmp(&a.1)))
        .or_else(|| within.iter().max_by(|a, b| (a.4 / a.3).total_cmp(&(b.4 / b.3)).then(b.1.cmp(&a.1))));
    pick.map(|c| (c.0, c.2 / c.3))
}

fn violated_rows(act: &[f64], sigma: &[f64], h: &[f64], tol: f64) -> Vec<(usize, f64)> {
    let mut rows: Vec<(usize, f64)> = (0..act.len())
        .map(|r| (r, h[r] - sigma[r] * act[r]))
        .filter(|&(_, v)| v > tol)
        .collect();
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    rows.truncate(REPORTED_ROWS);
    rows
}

fn build_result<L: LinearProgram + ?Sized>(
    lp: &L,
    cost: &[f64],
    status: Status,
    mut x: Vec<f64>,
    iterations: usize,
    duals: Vec<(usize, f64)>,
    infeasible_rows: Vec<(usize, f64)>,
) -> SolveResult {
    if status != Status::Optimal {
        return SolveResult {
            status,
            alpha: None,
            objective: f64::NAN,
            iterations,
            max_residual: f64::NAN,
            duals,
            infeasible_rows,
            algorithm: Algorithm::DualLazyRows,
        };
    }
    for v in x.iter_mut() {
        if *v < 0.0 {
            *v = 0.0;
        }
    }
    let objective = x.iter().zip(cost).map(|(a, c)| a * c).sum();
    let max_residual = super::max_violation(lp, &x);
    SolveResult {
        status,
        alpha: Some(x),
        objective,
        iterations,
        max_residual,
        duals,
        infeasible_rows,
        algorithm: Algorithm::DualLazyRows,
    }
}
