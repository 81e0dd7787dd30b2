//! Fitting the LP estimator and working with the fitted frontier.

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::frontier::{FrontierFn, SampleSet};
use crate::kernel::{Bandwidth, KernelSpec};
use crate::lp_model::{self, FeasibilityReport, LpConstants, RowCounts};
use crate::quadrature;
use crate::simplex::{self, Algorithm, SolveOptions, Status};

/// Grid size used by [`EstimatorModel::lemma_diagnostics`].
pub const DIAGNOSTIC_GRID: usize = 2000;
/// Tolerance of the post-solve feasibility check.
pub const FEASIBILITY_TOL: f64 = 1e-7;

/// `h = min(h1 (log n / n)^(1/(1+beta)), 0.49)`.
pub fn schedule_bandwidth(n: usize, beta: f64, h1: f64) -> Result<Bandwidth> {
    Bandwidth::schedule(n, beta, h1)
}

/// Inputs of [`fit`] other than the data and the kernel.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitConfig {
    pub beta: f64,
    pub l_beta: f64,
    pub f_max: f64,
    pub h1: f64,
    /// Defaults to `8 f_max`.
    pub c_alpha: Option<f64>,
    pub solve: SolveOptions,
    pub relax_factor: f64,
    pub relax_steps: u32,
    /// Threads for the LP build (see [`crate::parallel::map`]).
    pub threads: usize,
}

impl FitConfig {
    pub fn new(beta: f64, l_beta: f64, f_max: f64) -> Self {
        FitConfig {
            beta,
            l_beta,
            f_max,
            h1: 1.0,
            c_alpha: None,
            solve: SolveOptions::default(),
            relax_factor: 2.0,
            relax_steps: 6,
            threads: 0,
        }
    }

    pub fn c_alpha(&self) -> f64 {
        self.c_alpha.unwrap_or(8.0 * self.f_max)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FitDiagnostics {
    pub relaxation_level: u32,
    pub curvature_rhs: f64,
    pub iterations: usize,
    pub algorithm: Algorithm,
    pub support_size: usize,
    pub counts: RowCounts,
    pub feasibility: FeasibilityReport,
    /// `log N / (N h^(1+beta))`.
    pub realised_ratio: f64,
    pub bandwidth_clamped: bool,
    pub warnings: Vec<String>,
}

/// Fitted frontier `f(x) = sum_k alpha_k K_h(x, X_k)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ModelRecord", into = "ModelRecord")]
pub struct EstimatorModel {
    bandwidth: Bandwidth,
    kernel: KernelSpec,
    c_alpha: f64,
    l_beta: f64,
    f_max: f64,
    alphas: Vec<f64>,
    xs: Vec<f64>,
    ys: Vec<f64>,
    objective: f64,
    diagnostics: Option<FitDiagnostics>,
    support: Vec<usize>,
}

#[derive(Serialize, Deserialize)]
struct ModelRecord {
    n: usize,
    h: f64,
    h1: f64,
    beta: f64,
    #[serde(rename = "C_alpha")]
    c_alpha: f64,
    l_beta: f64,
    f_max: f64,
    kernel_degree: u32,
    alphas: Vec<f64>,
    xs: Vec<f64>,
    ys: Vec<f64>,
    objective: f64,
    diagnostics: Option<FitDiagnostics>,
}

impl From<EstimatorModel> for ModelRecord {
    fn from(m: EstimatorModel) -> Self {
        ModelRecord {
            n: m.xs.len(),
            h: m.bandwidth.h(),
            h1: m.bandwidth.h1(),
            beta: m.bandwidth.beta(),
            c_alpha: m.c_alpha,
            l_beta: m.l_beta,
            f_max: m.f_max,
            kernel_degree: m.kernel.degree(),
            alphas: m.alphas,
            xs: m.xs,
            ys: m.ys,
            objective: m.objective,
            diagnostics: m.diagnostics,
        }
    }
}

impl TryFrom<ModelRecord> for EstimatorModel {
    type Error = Error;

    fn try_from(r: ModelRecord) -> Result<Self> {
        if r.alphas.len() != r.n || r.xs.len() != r.n || r.ys.len() != r.n {
            return param(format!(
                "model arrays disagree with n = {}: {} alphas, {} xs, {} ys",
                r.n,
                r.alphas.len(),
                r.xs.len(),
                r.ys.len()
            ));
        }
        let bandwidth = Bandwidth::new(r.h, r.h1, r.beta)?;
        let kernel = KernelSpec::with_degree(r.kernel_degree)?;
        let mut m = EstimatorModel::from_parts(kernel, bandwidth, r.xs, r.ys, r.alphas)?;
        m.c_alpha = r.c_alpha;
        m.l_beta = r.l_beta;
        m.f_max = r.f_max;
        m.objective = r.objective;
        m.diagnostics = r.diagnostics;
        Ok(m)
    }
}

/// Schedules `h`, builds and solves the LP and validates the solution.
pub fn fit(sample: &SampleSet, kernel: &KernelSpec, cfg: &FitConfig) -> Result<EstimatorModel> {
    let n = sample.n();
    if n < 2 {
        return param(format!("fit needs at least two observations, got {n}"));
    }
    if !(cfg.f_max > 0.0 && cfg.f_max.is_finite()) {
        return param(format!("f_max = {} must be positive", cfg.f_max));
    }
    let bw = schedule_bandwidth(n, cfg.beta, cfg.h1)?;
    let consts = LpConstants {
        l_beta: cfg.l_beta,
        c_alpha: cfg.c_alpha(),
        f_max: cfg.f_max,
    };
    let lp = lp_model::build_lp_with_threads(sample, kernel, &bw, &consts, cfg.threads)?;
    let relaxed = simplex::solve_with_relaxation(&lp, &cfg.solve, cfg.relax_factor, cfg.relax_steps);
    let result = relaxed.result;
    match result.status {
        Status::Optimal => {}
        Status::Infeasible => {
            return Err(Error::Infeasible {
                relaxation_level: relaxed.relaxation_level,
                rows: result.infeasible_rows,
            })
        }
        other => return Err(Error::Solver(other)),
    }
    let alphas = result.alpha.expect("optimal result carries a solution");
    let final_lp = if relaxed.relaxation_level > 0 {
        lp.with_curvature_rhs(relaxed.curvature_rhs)
    } else {
        lp.clone()
    };
    let feasibility = lp_model::validate_solution(&final_lp, &alphas, FEASIBILITY_TOL)?;
    if !feasibility.pass {
        log::warn!("post-solve validation failed: max violation {:e}", feasibility.max_violation);
    }
    let nf = n as f64;
    let mut model = EstimatorModel::from_parts(
        kernel.clone(),
        bw,
        sample.xs().to_vec(),
        sample.ys().to_vec(),
        alphas,
    )?;
    model.c_alpha = consts.c_alpha;
    model.l_beta = cfg.l_beta;
    model.f_max = cfg.f_max;
    model.objective = result.objective;
    model.diagnostics = Some(FitDiagnostics {
        relaxation_level: relaxed.relaxation_level,
        curvature_rhs: relaxed.curvature_rhs,
        iterations: result.iterations,
        algorithm: result.algorithm,
        support_size: model.support.len(),
        counts: lp.meta().counts,
        feasibility,
        realised_ratio: nf.ln() / (nf * bw.h().powf(1.0 + bw.beta())),
        bandwidth_clamped: bw.clamped(),
        warnings: lp.meta().warnings.clone(),
    });
    Ok(model)
}

impl EstimatorModel {
    /// A model from explicit coefficients; `objective` is set to `sum alpha`.
    pub fn from_parts(
        kernel: KernelSpec,
        bandwidth: Bandwidth,
        xs: Vec<f64>,
        ys: Vec<f64>,
        alphas: Vec<f64>,
    ) -> Result<Self> {
        if xs.len() != alphas.len() || ys.len() != alphas.len() {
            return param("abscissas, ordinates and coefficients must have equal length");
        }
        if let Some(a) = alphas.iter().find(|a| !(**a >= -1e-9 && a.is_finite())) {
            return param(format!("coefficient {a} must be finite and nonnegative"));
        }
        if let Some(x) = xs.iter().find(|x| !(**x >= 0.0 && **x <= 1.0)) {
            return param(format!("abscissa {x} outside [0, 1]"));
        }
        let support = (0..alphas.len()).filter(|&k| alphas[k] != 0.0).collect();
        Ok(EstimatorModel {
            bandwidth,
            kernel,
            c_alpha: 0.0,
            l_beta: 0.0,
            f_max: 0.0,
            objective: alphas.iter().sum(),
            alphas,
            xs,
            ys,
            diagnostics: None,
            support,
        })
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn h(&self) -> f64 {
        self.bandwidth.h()
    }

    pub fn bandwidth(&self) -> &Bandwidth {
        &self.bandwidth
    }

    pub fn kernel(&self) -> &KernelSpec {
        &self.kernel
    }

    pub fn alphas(&self) -> &[f64] {
        &self.alphas
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn c_alpha(&self) -> f64 {
        self.c_alpha
    }

    pub fn l_beta(&self) -> f64 {
        self.l_beta
    }

    pub fn f_max(&self) -> f64 {
        self.f_max
    }

    /// Optimal LP objective `J*`.
    pub fn objective(&self) -> f64 {
        self.objective
    }

    pub fn diagnostics(&self) -> Option<&FitDiagnostics> {
        self.diagnostics.as_ref()
    }

    /// Indices with nonzero coefficient.
    pub fn support(&self) -> &[usize] {
        &self.support
    }

    /// `d^order f / dx^order` at `x`; `x` outside `[0, 1]` is clamped.
    pub fn eval(&self, x: f64, order: usize) -> Result<f64> {
        if order > 2 {
            return param(format!("estimate derivative order {order} exceeds 2"));
        }
        let x = if (0.0..=1.0).contains(&x) {
            x
        } else {
            log::warn!("evaluation point {x} clamped into [0, 1]");
            x.clamp(0.0, 1.0)
        };
        Ok(self.raw(x, order))
    }

    #[inline]
    fn raw(&self, x: f64, order: usize) -> f64 {
        let h = self.bandwidth.h();
        self.support
            .iter()
            .map(|&k| self.alphas[k] * self.kernel.periodic(h, x - self.xs[k], order))
            .sum()
    }

    /// Kernel breakpoints `X_k - h, X_k, X_k + h` (mod 1) over the support.
    fn breakpoints(&self) -> Vec<f64> {
        let h = self.bandwidth.h();
        let mut bps: Vec<f64> = self
            .support
            .iter()
            .flat_map(|&k| [self.xs[k] - h, self.xs[k], self.xs[k] + h])
            .map(|c| c - c.floor())
            .collect();
        bps.sort_by(f64::total_cmp);
        bps
    }

    /// `sum alpha_k`.
    pub fn alpha_sum(&self) -> f64 {
        self.alphas.iter().sum()
    }

    /// `integral_0^1 f` by breakpoint-aligned Simpson.
    pub fn surface(&self) -> f64 {
        if self.support.is_empty() {
            return 0.0;
        }
        let f = |x: f64| self.raw(x, 0);
        quadrature::simpson_aligned(&f, 0.0, 1.0, &self.breakpoints(), self.bandwidth.h() / 512.0)
    }

    /// `integral_0^1 |f_hat - f|`.
    ///
    /// Panels are split at the kernel breakpoints, at the kinks of `f` and
    /// at the sign changes of `f_hat - f`, located by bisection; each piece
    /// is integrated by adaptive Simpson.
    pub fn l1_error(&self, frontier: &FrontierFn) -> f64 {
        let g = |x: f64| self.raw(x, 0) - frontier.value(x);
        abs_integral(&g, &self.breakpoints(), frontier.kinks(), 1e-7)
    }

    /// Largest cover violation `Y_j - f(X_i) - (X_j - X_i) f'(X_i)` over all
    /// pairs at periodic distance at most `h`, evaluated from the model.
    pub fn cover_violation(&self) -> f64 {
        let h = self.bandwidth.h();
        let n = self.n();
        let mut worst = f64::NEG_INFINITY;
        for i in 0..n {
            let v = self.raw(self.xs[i], 0);
            let g = self.raw(self.xs[i], 1);
            for (j, d) in lp_model::neighbours(&self.xs, h, i) {
                worst = worst.max(self.ys[j] - (v + d * g));
            }
        }
        worst.max(0.0)
    }

    /// Evaluates the derivative bounds and the upper- and lower-bound
    /// quantities of the fit against a known frontier.
    pub fn lemma_diagnostics(&self, frontier: &FrontierFn) -> LemmaDiagnostics {
        let n = self.n() as f64;
        let h = self.bandwidth.h();
        let beta = self.bandwidth.beta();
        let sup = self.kernel.sup_constants();
        let grid: Vec<f64> = (0..DIAGNOSTIC_GRID)
            .map(|i| i as f64 / (DIAGNOSTIC_GRID - 1) as f64)
            .collect();
        let (mut d1, mut d2, mut short, mut fmin) = (0.0_f64, 0.0_f64, 0.0_f64, f64::INFINITY);
        for &x in &grid {
            let v = self.raw(x, 0);
            d1 = d1.max(self.raw(x, 1).abs());
            d2 = d2.max(self.raw(x, 2).abs());
            short = short.max(frontier.value(x) - v);
            fmin = fmin.min(v);
        }
        let log_ratio = if n > 1.0 { n.ln() / n } else { 0.0 };
        let lip_bound = 3.0 * self.c_alpha * sup.k1_max / h;
        let curv_bound = 4.0 * self.l_beta * sup.k2_max * log_ratio / h.powi(3);
        let c_x = 5.0 * frontier.f_max() / frontier.f_min();
        let lb_const = 2.0 * frontier.c_f() / frontier.f_min()
            + 2.0 * self.l_beta * sup.k2_max
            + 4.0 * self.c_alpha * sup.k1_max * c_x;
        let lower = -(2.0 * self.l_beta / beta * h.powf(beta) + lb_const * log_ratio / h);
        let surface = self.surface();
        let alpha_sum = self.alpha_sum();
        let cover = self.cover_violation();
        let gap = self.objective - frontier.c_f();
        let inf_diff = -short;
        LemmaDiagnostics {
            grid_size: DIAGNOSTIC_GRID,
            lipschitz: BoundCheck::upper(d1, lip_bound + 1e-9),
            curvature: BoundCheck::upper(d2, curv_bound),
            lower_bound: BoundCheck::lower(inf_diff, lower),
            shortfall: short.max(0.0),
            objective_gap: gap,
            empirical_gamma: gap / h.powf(beta),
            realised_ratio: log_ratio / h.powf(1.0 + beta),
            surface: SurfaceCheck {
                surface,
                alpha_sum,
                pass: (surface - alpha_sum).abs() <= 1e-6 * alpha_sum.max(1.0),
            },
            min_estimate: fmin,
            nonnegative: fmin >= -1e-12,
            cover_violation: cover,
            cover_pass: cover <= FEASIBILITY_TOL,
            relaxation_level: self.diagnostics.as_ref().map_or(0, |d| d.relaxation_level),
        }
    }
}

/// `integral |g|` over `[0, 1]`, split at `bps`, `kinks` and sign changes.
fn abs_integral<G: Fn(f64) -> f64>(g: &G, bps: &[f64], kinks: &[f64], tol: f64) -> f64 {
    const SCAN: usize = 32;
    let mut all: Vec<f64> = bps.iter().chain(kinks).copied().collect();
    all.sort_by(f64::total_cmp);
    let cuts = quadrature::segment_cuts(0.0, 1.0, &all);
    let abs = |x: f64| g(x).abs();
    let mut total = 0.0;
    for w in cuts.windows(2) {
        let (a, b) = (w[0], w[1]);
        let mut pieces = vec![a];
        let step = (b - a) / SCAN as f64;
        let mut prev_x = a;
        let mut prev = g(a);
        for s in 1..=SCAN {
            let x = if s == SCAN { b } else { a + step * s as f64 };
            let v = g(x);
            if prev != 0.0 && v != 0.0 && (prev < 0.0) != (v < 0.0) {
                pieces.push(bisect_sign(g, prev_x, x, prev));
            }
            prev_x = x;
            prev = v;
        }
        pieces.push(b);
        for p in pieces.windows(2) {
            let share = tol * (p[1] - p[0]);
            total += quadrature::adaptive_simpson(&abs, p[0], p[1], share.max(1e-15), 40);
        }
    }
    total
}

fn bisect_sign<G: Fn(f64) -> f64>(g: &G, mut lo: f64, mut hi: f64, g_lo: f64) -> f64 {
    let neg = g_lo < 0.0;
    while hi - lo > 1e-10 {
        let mid = 0.5 * (lo + hi);
        if (g(mid) < 0.0) == neg {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundCheck {
    pub value: f64,
    pub bound: f64,
    pub pass: bool,
}

impl BoundCheck {
    fn upper(value: f64, bound: f64) -> Self {
        BoundCheck {
            value,
            bound,
            pass: value <= bound,
        }
    }

    fn lower(value: f64, bound: f64) -> Self {
        BoundCheck {
            value,
            bound,
            pass: value >= bound,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SurfaceCheck {
    pub surface: f64,
    pub alpha_sum: f64,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LemmaDiagnostics {
    pub grid_size: usize,
    /// `sup |f'|` against `3 C_alpha K'_max / h`; a hard bound.
    pub lipschitz: BoundCheck,
    /// `sup |f''|` against `4 L_beta K''_max log N / (N h^3)`; asymptotic.
    pub curvature: BoundCheck,
    /// `inf (f_hat - f)` against the pointwise lower bound; asymptotic.
    pub lower_bound: BoundCheck,
    /// `sup (f - f_hat)_+` on the grid.
    pub shortfall: f64,
    /// `J* - C_f`.
    pub objective_gap: f64,
    /// `(J* - C_f) / h^beta`.
    pub empirical_gamma: f64,
    /// `log N / (N h^(1+beta))`.
    pub realised_ratio: f64,
    pub surface: SurfaceCheck,
    pub min_estimate: f64,
    pub nonnegative: bool,
    pub cover_violation: f64,
    pub cover_pass: bool,
    pub relaxation_level: u32,
}

impl LemmaDiagnostics {
    /// The checks that must hold for every fit.
    pub fn hard_pass(&self) -> bool {
        self.lipschitz.pass && self.surface.pass && self.nonnegative && self.cover_pass
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn single(x: f64, h: f64) -> EstimatorModel {
        EstimatorModel::from_parts(
            KernelSpec::default_kernel(),
            Bandwidth::fixed(h).unwrap(),
            vec![x],
            vec![0.0],
            vec![1.0],
        )
        .unwrap()
    }

    #[test]
    fn schedule_example() {
        let bw = schedule_bandwidth(1600, 2.0, 1.0).unwrap();
        let want = (1600f64.ln() / 1600.0).cbrt();
        assert!((bw.h() - want).abs() < 1e-15);
        assert!((bw.h() - 0.1665).abs() < 1e-4);
        assert!(schedule_bandwidth(2, 2.0, 10.0).unwrap().clamped());
        assert!(schedule_bandwidth(1, 2.0, 1.0).is_err());
        for n in [100usize, 1000, 10_000] {
            let a = schedule_bandwidth(n, 2.0, 1.0).unwrap().h();
            let b = schedule_bandwidth(4 * n, 2.0, 1.0).unwrap().h();
            assert!(b < a);
        }
    }

    #[test]
    fn zero_model_is_zero() {
        let m = EstimatorModel::from_parts(
            KernelSpec::default_kernel(),
            Bandwidth::fixed(0.1).unwrap(),
            vec![0.2, 0.7],
            vec![0.1, 0.1],
            vec![0.0, 0.0],
        )
        .unwrap();
        for order in 0..3 {
            assert_eq!(m.eval(0.3, order).unwrap(), 0.0);
        }
        assert_eq!(m.surface(), 0.0);
        let f = FrontierFn::constant(2.0).unwrap();
        assert!((m.l1_error(&f) - 2.0).abs() < 1e-9);
        let d = m.lemma_diagnostics(&f);
        assert_eq!(d.lipschitz.value, 0.0);
        assert_eq!(d.curvature.value, 0.0);
        assert!(d.lipschitz.pass && d.curvature.pass);
    }

    #[test]
    fn single_kernel_peak_and_mass() {
        let m = single(0.5, 0.1);
        let c = m.kernel().normalization();
        assert!((m.eval(0.5, 0).unwrap() - c / 0.1).abs() < 1e-12);
        assert!((m.surface() - 1.0).abs() < 1e-9);
        // wrap-around copy integrates to one as well
        let m = single(0.02, 0.1);
        assert!((m.surface() - 1.0).abs() < 1e-9);
        assert!(m.eval(2.0, 3).is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        let m = EstimatorModel::from_parts(
            KernelSpec::default_kernel(),
            Bandwidth::fixed(0.12).unwrap(),
            vec![0.05, 0.3, 0.33, 0.8, 0.97],
            vec![0.0; 5],
            vec![0.2, 0.1, 0.4, 0.3, 0.25],
        )
        .unwrap();
        let mut state = 12345u64;
        for _ in 0..100 {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let x = 0.01 + 0.98 * (state >> 11) as f64 / (1u64 << 53) as f64;
            let step = 1e-6;
            for order in 1..3 {
                let fd = (m.eval(x + step, order - 1).unwrap() - m.eval(x - step, order - 1).unwrap()) / (2.0 * step);
                let an = m.eval(x, order).unwrap();
                assert!((fd - an).abs() <= 1e-5 * an.abs().max(1.0), "order {order} at {x}: {fd} vs {an}");
            }
        }
    }

    #[test]
    fn l1_error_of_frontier_against_itself_vanishes() {
        // f_hat - f with f_hat = f is zero; emulate by a model matching a
        // constant through a second frontier of the same shape
        let f = FrontierFn::constant(1.5).unwrap();
        let g = |x: f64| f.value(x) - f.value(x);
        assert_eq!(abs_integral(&g, &[0.3, 0.6], &[], 1e-7), 0.0);
    }

    #[test]
    fn l1_error_matches_riemann_oracle() {
        let m = EstimatorModel::from_parts(
            KernelSpec::default_kernel(),
            Bandwidth::fixed(0.2).unwrap(),
            vec![0.1, 0.35, 0.6, 0.85],
            vec![0.0; 4],
            vec![0.25, 0.25, 0.25, 0.25],
        )
        .unwrap();
        let f = FrontierFn::sine(1.0, 0.5).unwrap();
        let fast = m.l1_error(&f);
        let n = 1_000_000;
        let slow: f64 = (0..n)
            .map(|i| {
                let x = (i as f64 + 0.5) / n as f64;
                (m.raw(x, 0) - f.value(x)).abs()
            })
            .sum::<f64>()
            / n as f64;
        assert!((fast - slow).abs() < 1e-5, "{fast} vs {slow}");
    }

    #[test]
    fn fit_rejects_single_observation() {
        let s = SampleSet::from_unsorted(vec![(0.5, 0.5)], None).unwrap();
        let cfg = FitConfig::new(2.0, 1.0, 1.0);
        assert!(matches!(fit(&s, &KernelSpec::default_kernel(), &cfg), Err(Error::Parameter(_))));
    }

    #[test]
    fn duplicate_pair_is_solvable() {
        let s = SampleSet::from_unsorted(vec![(0.4, 0.8), (0.4, 0.8)], None).unwrap();
        let cfg = FitConfig::new(2.0, 1.0, 1.0);
        let m = fit(&s, &KernelSpec::default_kernel(), &cfg).unwrap();
        assert!(m.eval(0.4, 0).unwrap() >= 0.8 - 1e-7);
        assert!(m.cover_violation() <= 1e-7);
    }

    #[test]
    fn json_round_trip() {
        let f = FrontierFn::sine(1.0, 0.5).unwrap();
        let s = f.sample_uniform(60, 3).unwrap();
        let cfg = FitConfig::new(2.0, f.l_beta(), f.f_max());
        let m = fit(&s, &KernelSpec::default_kernel(), &cfg).unwrap();
        let text = serde_json::to_string(&m).unwrap();
        assert!(text.contains("\"C_alpha\""));
        let back: EstimatorModel = serde_json::from_str(&text).unwrap();
        assert_eq!(back, m);
    }
}
