//! Two-phase primal revised simplex on explicit columns.

use super::dense::Lu;
use super::{Algorithm, LinearProgram, Sense, SolveOptions, SolveResult, Status};

const REFACTOR_EVERY: usize = 100;
const GROWTH_LIMIT: f64 = 1e10;
/// Relative pivot tolerances, tightened each time a refactor fails.
const PIVOT_TOLS: [f64; 3] = [1e-9, 1e-7, 1e-5];
const REPORTED_ROWS: usize = 10;

enum Outcome {
    Optimal,
    Unbounded,
    IterationLimit,
    Singular,
}

struct Tableau {
    m: usize,
    cols: Vec<Vec<(usize, f64)>>,
    b: Vec<f64>,
    artificial: Vec<bool>,
    basis: Vec<usize>,
    is_basic: Vec<bool>,
    xb: Vec<f64>,
    lu: Lu,
    /// Product-form updates `(pivot position, eta column)`.
    etas: Vec<(usize, Vec<f64>)>,
    iterations: usize,
    /// Basis at the last successful refactor.
    checkpoint: Vec<usize>,
    piv_level: usize,
}

impl Tableau {
    fn refactor(&mut self) -> bool {
        let m = self.m;
        let mut dense = vec![0.0; m * m];
        for (p, &j) in self.basis.iter().enumerate() {
            for &(r, v) in &self.cols[j] {
                dense[r * m + p] = v;
            }
        }
        match Lu::factor(dense, m) {
            Some(lu) => {
                self.lu = lu;
                self.etas.clear();
                let mut xb = self.b.clone();
                self.lu.solve(&mut xb);
                self.xb = xb;
                self.checkpoint.clone_from(&self.basis);
                true
            }
            None => false,
        }
    }

    fn ftran(&self, v: &mut [f64]) {
        self.lu.solve(v);
        for (p, eta) in &self.etas {
            let xp = v[*p];
            if xp == 0.0 {
                continue;
            }
            for (i, e) in eta.iter().enumerate() {
                if i == *p {
                    v[i] = e * xp;
                } else {
                    v[i] += e * xp;
                }
            }
        }
    }

    fn btran(&self, v: &mut [f64]) {
        for (p, eta) in self.etas.iter().rev() {
            v[*p] = eta.iter().zip(v.iter()).map(|(e, y)| e * y).sum();
        }
        self.lu.solve_transpose(v);
    }

    /// Returns to the checkpoint basis with a stricter pivot tolerance.
    fn recover(&mut self) -> bool {
        if self.piv_level + 1 >= PIVOT_TOLS.len() {
            return false;
        }
        self.piv_level += 1;
        log::debug!(
            "primal simplex: singular basis, restarting from checkpoint with pivot tolerance {:e}",
            PIVOT_TOLS[self.piv_level]
        );
        for &j in &self.basis {
            self.is_basic[j] = false;
        }
        self.basis.clone_from(&self.checkpoint);
        for &j in &self.basis {
            self.is_basic[j] = true;
        }
        self.refactor()
    }

    fn column(&self, j: usize) -> Vec<f64> {
        let mut v = vec![0.0; self.m];
        for &(r, a) in &self.cols[j] {
            v[r] = a;
        }
        v
    }

    fn pivot(&mut self, p: usize, q: usize, d: &[f64]) -> bool {
        let dp = d[p];
        let theta = self.xb[p] / dp;
        for (i, x) in self.xb.iter_mut().enumerate() {
            if i != p {
                *x -= theta * d[i];
            }
        }
        self.xb[p] = theta;
        let eta: Vec<f64> = d
            .iter()
            .enumerate()
            .map(|(i, &v)| if i == p { 1.0 / dp } else { -v / dp })
            .collect();
        let growth = eta.iter().fold(0.0_f64, |m, v| m.max(v.abs()));
        self.is_basic[self.basis[p]] = false;
        self.is_basic[q] = true;
        self.basis[p] = q;
        self.etas.push((p, eta));
        if self.etas.len() >= REFACTOR_EVERY || growth > GROWTH_LIMIT {
            return self.refactor();
        }
        true
    }

    fn duals(&self, cost: &[f64]) -> Vec<f64> {
        let mut y: Vec<f64> = self.basis.iter().map(|&j| cost[j]).collect();
        self.btran(&mut y);
        y
    }

    fn reduced_cost(&self, j: usize, cost: &[f64], y: &[f64]) -> f64 {
        cost[j] - self.cols[j].iter().map(|&(r, a)| y[r] * a).sum::<f64>()
    }

    fn run(&mut self, cost: &[f64], allow_artificial: bool, opts: &SolveOptions) -> Outcome {
        let total = self.cols.len();
        let degenerate_limit = 3 * (self.m + total);
        let mut degenerate = 0usize;
        let mut bland = false;
        loop {
            let y = self.duals(cost);
            let mut dmin = -opts.tol_opt;
            let mut reduced = vec![0.0; total];
            for j in 0..total {
                if self.is_basic[j] || (!allow_artificial && self.artificial[j]) {
                    continue;
                }
                reduced[j] = self.reduced_cost(j, cost, &y);
                dmin = dmin.min(reduced[j]);
            }
            let threshold = if bland { -opts.tol_opt } else { dmin + opts.tol_opt };
            let entering = (0..total).find(|&j| {
                !self.is_basic[j]
                    && (allow_artificial || !self.artificial[j])
                    && reduced[j] < -opts.tol_opt
                    && reduced[j] <= threshold
            });
            let q = match entering {
                None => return Outcome::Optimal,
                Some(q) => q,
            };
            if self.iterations >= opts.max_iters {
                return Outcome::IterationLimit;
            }
            let mut d = self.column(q);
            self.ftran(&mut d);
            let scale = d.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
            let piv_tol = PIVOT_TOLS[self.piv_level] * scale;
            let mut leave: Option<(usize, f64)> = None;
            for (i, &di) in d.iter().enumerate() {
                if di <= piv_tol {
                    continue;
                }
                let ratio = self.xb[i].max(0.0) / di;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((p, best)) => {
                        let tie = (ratio - best).abs() <= 1e-12 * best.max(1.0);
                        if ratio < best && !tie {
                            Some((i, ratio))
                        } else if tie && self.basis[i] < self.basis[p] {
                            Some((i, ratio.min(best)))
                        } else {
                            Some((p, best))
                        }
                    }
                };
            }
            let (p, theta) = match leave {
                None => return Outcome::Unbounded,
                Some(l) => l,
            };
            if self.xb[p] < 0.0 {
                self.xb[p] = 0.0;
            }
            self.iterations += 1;
            if !self.pivot(p, q, &d) {
                if self.recover() {
                    continue;
                }
                return Outcome::Singular;
            }
            if theta <= 1e-14 {
                degenerate += 1;
                if degenerate > degenerate_limit {
                    bland = true;
                }
            } else {
                degenerate = 0;
            }
        }
    }

    /// Pivots zero-valued artificials out of the basis where possible.
    fn drive_out_artificials(&mut self) -> bool {
        for p in 0..self.m {
            if !self.artificial[self.basis[p]] {
                continue;
            }
            let mut e = vec![0.0; self.m];
            e[p] = 1.0;
            self.btran(&mut e);
            let pick = (0..self.cols.len()).find(|&j| {
                !self.is_basic[j]
                    && !self.artificial[j]
                    && self.cols[j].iter().map(|&(r, a)| e[r] * a).sum::<f64>().abs() > 1e-9
            });
            if let Some(q) = pick {
                let mut d = self.column(q);
                self.ftran(&mut d);
                self.xb[p] = 0.0;
                if !self.pivot(p, q, &d) {
                    return false;
                }
            }
        }
        true
    }
}

pub(super) fn solve<L: LinearProgram + ?Sized>(lp: &L, opts: &SolveOptions) -> SolveResult {
    let n = lp.n_vars();
    let m = lp.n_rows();
    let mut cols: Vec<Vec<(usize, f64)>> = vec![Vec::new(); n];
    let mut b = vec![0.0; m];
    let mut flip = vec![false; m];
    for r in 0..m {
        let rhs = lp.rhs(r);
        flip[r] = rhs < 0.0;
        let s = if flip[r] { -1.0 } else { 1.0 };
        b[r] = s * rhs;
        lp.for_each_entry(r, &mut |j, a| {
            if a == 0.0 {
                return;
            }
            match cols[j].last_mut() {
                Some(last) if last.0 == r => last.1 += s * a,
                _ => cols[j].push((r, s * a)),
            }
        });
    }
    let mut artificial = vec![false; n];
    let mut basis = vec![0; m];
    for r in 0..m {
        let sense = match (lp.sense(r), flip[r]) {
            (Sense::Le, true) => Sense::Ge,
            (Sense::Ge, true) => Sense::Le,
            (s, _) => s,
        };
        if sense == Sense::Ge {
            cols.push(vec![(r, -1.0)]);
            artificial.push(false);
        }
        cols.push(vec![(r, 1.0)]);
        artificial.push(sense != Sense::Le);
        basis[r] = cols.len() - 1;
    }
    let total = cols.len();
    let mut is_basic = vec![false; total];
    for &j in &basis {
        is_basic[j] = true;
    }
    let mut t = Tableau {
        m,
        cols,
        b,
        artificial,
        basis,
        is_basic,
        xb: vec![],
        lu: Lu::factor(vec![], 0).expect("empty factorisation"),
        etas: vec![],
        iterations: 0,
        checkpoint: vec![],
        piv_level: 0,
    };
    if !t.refactor() {
        return failure(Status::IterationLimit, 0, vec![]);
    }

    let cost1: Vec<f64> = (0..total).map(|j| if t.artificial[j] { 1.0 } else { 0.0 }).collect();
    if t.artificial.iter().any(|&a| a) {
        match t.run(&cost1, true, opts) {
            Outcome::Optimal => {}
            Outcome::IterationLimit | Outcome::Singular => {
                return failure(Status::IterationLimit, t.iterations, vec![]);
            }
            Outcome::Unbounded => unreachable!("phase one objective is bounded below"),
        }
        let infeas: f64 = t
            .basis
            .iter()
            .zip(&t.xb)
            .filter(|(j, _)| t.artificial[**j])
            .map(|(_, v)| v.max(0.0))
            .sum();
        let bscale = t.b.iter().fold(1.0_f64, |m, v| m.max(v.abs()));
        if infeas > opts.tol_feas * bscale {
            let x = structural_values(&t, n);
            return failure(Status::Infeasible, t.iterations, violated_rows(lp, &x, opts.tol_feas));
        }
        if !t.drive_out_artificials() {
            return failure(Status::IterationLimit, t.iterations, vec![]);
        }
    }

    let cost2: Vec<f64> = (0..total).map(|j| if j < n { lp.cost(j) } else { 0.0 }).collect();
    match t.run(&cost2, false, opts) {
        Outcome::Optimal => {}
        Outcome::Unbounded => return failure(Status::Unbounded, t.iterations, vec![]),
        Outcome::IterationLimit | Outcome::Singular => {
            return failure(Status::IterationLimit, t.iterations, vec![]);
        }
    }
    if !t.etas.is_empty() && !t.refactor() {
        return failure(Status::IterationLimit, t.iterations, vec![]);
    }
    let x = structural_values(&t, n);
    let y = t.duals(&cost2);
    let duals = y
        .iter()
        .enumerate()
        .map(|(r, &v)| (r, if flip[r] { -v } else { v }))
        .filter(|&(_, u)| u.abs() > 1e-14)
        .collect();
    let objective = x.iter().enumerate().map(|(j, v)| v * lp.cost(j)).sum();
    let max_residual = super::max_violation(lp, &x);
    SolveResult {
        status: Status::Optimal,
        alpha: Some(x),
        objective,
        iterations: t.iterations,
        max_residual,
        duals,
        infeasible_rows: vec![],
        algorithm: Algorithm::PrimalTwoPhase,
    }
}

fn structural_values(t: &Tableau, n: usize) -> Vec<f64> {
    let mut x = vec![0.0; n];
    for (&j, &v) in t.basis.iter().zip(&t.xb) {
        if j < n {
            x[j] = v.max(0.0);
        }
    }
    x
}

fn violated_rows<L: LinearProgram + ?Sized>(lp: &L, x: &[f64], tol: f64) -> Vec<(usize, f64)> {
    let support: Vec<usize> = (0..x.len()).filter(|&j| x[j] != 0.0).collect();
    let mut act = vec![0.0; lp.n_rows()];
    lp.activities(x, &support, &mut act);
    let mut rows: Vec<(usize, f64)> = (0..lp.n_rows())
        .map(|r| (r, lp.sense(r).violation(act[r], lp.rhs(r))))
        .filter(|&(_, v)| v > tol)
        .collect();
    rows.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    rows.truncate(REPORTED_ROWS);
    rows
}

fn failure(status: Status, iterations: usize, infeasible_rows: Vec<(usize, f64)>) -> SolveResult {
    SolveResult {
        status,
        alpha: None,
        objective: f64::NAN,
        iterations,
        max_residual: f64::NAN,
        duals: vec![],
        infeasible_rows,
        algorithm: Algorithm::PrimalTwoPhase,
    }
}
