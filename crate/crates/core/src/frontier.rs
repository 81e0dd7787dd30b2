//! Ground-truth periodic frontiers and the exact sampler of points
//! uniformly distributed under them.

use std::f64::consts::TAU;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::quadrature;

/// Hölder coefficient used for the constant frontier, whose true value is 0.
pub const CONSTANT_L_BETA: f64 = 1e-6;

/// Shape and parameters of a frontier.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum FrontierKind {
    /// `f(x) = value`.
    Constant { value: f64 },
    /// `f(x) = a0 + a1 sin(2 pi x)`.
    Sine { a0: f64, a1: f64 },
    /// `f(x) = a0 + a1 sin(2 pi x) + a2 cos(4 pi x)`.
    SumOfSines { a0: f64, a1: f64, a2: f64 },
    /// Periodic piecewise-linear interpolation of tabulated values.
    UserTable {
        xs: Vec<f64>,
        values: Vec<f64>,
        l_beta: f64,
    },
}

impl FrontierKind {
    fn name(&self) -> &'static str {
        match self {
            FrontierKind::Constant { .. } => "constant",
            FrontierKind::Sine { .. } => "sine",
            FrontierKind::SumOfSines { .. } => "sum-of-sines",
            FrontierKind::UserTable { .. } => "user-table",
        }
    }
}

/// A 1-periodic frontier together with its smoothness and range constants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FrontierFn {
    kind: FrontierKind,
    f_min: f64,
    f_max: f64,
    l_beta: f64,
    beta: f64,
    c_f: f64,
}

impl FrontierFn {
    pub fn constant(value: f64) -> Result<Self> {
        Self::from_kind(FrontierKind::Constant { value })
    }

    pub fn sine(a0: f64, a1: f64) -> Result<Self> {
        Self::from_kind(FrontierKind::Sine { a0, a1 })
    }

    pub fn sum_of_sines(a0: f64, a1: f64, a2: f64) -> Result<Self> {
        Self::from_kind(FrontierKind::SumOfSines { a0, a1, a2 })
    }

    /// Tabulated frontier on knots in `[0, 1)`; `l_beta` must be supplied.
    pub fn user_table(xs: Vec<f64>, values: Vec<f64>, l_beta: f64) -> Result<Self> {
        Self::from_kind(FrontierKind::UserTable { xs, values, l_beta })
    }

    /// Builds the frontier with `beta = 2`, deriving its constants.
    pub fn from_kind(kind: FrontierKind) -> Result<Self> {
        let mut f = FrontierFn {
            kind,
            f_min: 0.0,
            f_max: 0.0,
            l_beta: 0.0,
            beta: 2.0,
            c_f: 0.0,
        };
        match &f.kind {
            FrontierKind::Constant { value } => {
                if !(*value > 0.0 && value.is_finite()) {
                    return param(format!("constant frontier {value} must be positive"));
                }
                f.f_min = *value;
                f.f_max = *value;
                f.c_f = *value;
                f.l_beta = CONSTANT_L_BETA;
            }
            FrontierKind::Sine { a0, a1 } => {
                if !(a0.is_finite() && a1.is_finite() && *a0 > a1.abs()) {
                    return param(format!("sine frontier needs a0 > |a1| (a0 = {a0}, a1 = {a1})"));
                }
                f.f_min = a0 - a1.abs();
                f.f_max = a0 + a1.abs();
                f.c_f = *a0;
                f.l_beta = a1.abs() * TAU * TAU;
            }
            FrontierKind::SumOfSines { a0, .. } => {
                let a0 = *a0;
                let (lo, hi) = f.extremes(0);
                if !(lo > 0.0) {
                    return param(format!("sum-of-sines frontier reaches {lo} <= 0"));
                }
                f.f_min = lo;
                f.f_max = hi;
                f.c_f = a0;
                let (lo2, hi2) = f.extremes(2);
                f.l_beta = lo2.abs().max(hi2.abs());
            }
            FrontierKind::UserTable { xs, values, l_beta } => {
                validate_table(xs, values)?;
                if !(*l_beta > 0.0 && l_beta.is_finite()) {
                    return param("user-table frontier needs a positive l_beta");
                }
                f.f_min = values.iter().copied().fold(f64::INFINITY, f64::min);
                f.f_max = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
                f.l_beta = *l_beta;
                let n = xs.len();
                f.c_f = (0..n)
                    .map(|k| {
                        let (x1, v1) = if k + 1 < n {
                            (xs[k + 1], values[k + 1])
                        } else {
                            (xs[0] + 1.0, values[0])
                        };
                        0.5 * (values[k] + v1) * (x1 - xs[k])
                    })
                    .sum();
            }
        }
        Ok(f)
    }

    /// Re-derives the Hölder coefficient of `f'` for exponent `beta - 1`.
    ///
    /// For `beta = 2` this is `sup |f''|`; below 2 it is the largest
    /// difference quotient `|f'(x) - f'(y)| / d(x, y)^(beta - 1)` over a grid,
    /// with `d` the periodic distance. Tabulated frontiers keep their value.
    pub fn with_beta(mut self, beta: f64) -> Result<Self> {
        if !(beta > 1.0 && beta <= 2.0) {
            return param(format!("smoothness beta = {beta} must lie in (1, 2]"));
        }
        self.beta = beta;
        match self.kind {
            FrontierKind::Constant { .. } | FrontierKind::UserTable { .. } => {}
            _ if beta == 2.0 => {
                let (lo, hi) = self.extremes(2);
                self.l_beta = lo.abs().max(hi.abs());
            }
            _ => {
                const GRID: usize = 512;
                let slopes: Vec<f64> = (0..GRID)
                    .map(|i| self.smooth_derivative(i as f64 / GRID as f64, 1))
                    .collect();
                let mut best = 0.0_f64;
                for i in 0..GRID {
                    for j in (i + 1)..GRID {
                        let gap = (j - i) as f64 / GRID as f64;
                        let d = gap.min(1.0 - gap);
                        best = best.max((slopes[i] - slopes[j]).abs() / d.powf(beta - 1.0));
                    }
                }
                self.l_beta = best;
            }
        }
        Ok(self)
    }

    pub fn kind(&self) -> &FrontierKind {
        &self.kind
    }

    pub fn f_min(&self) -> f64 {
        self.f_min
    }

    pub fn f_max(&self) -> f64 {
        self.f_max
    }

    /// Hölder coefficient of `f'` with exponent `beta - 1`.
    pub fn l_beta(&self) -> f64 {
        self.l_beta
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// `C_f = integral_0^1 f`.
    pub fn c_f(&self) -> f64 {
        self.c_f
    }

    /// Lipschitz constant of `f`, `max |f'|`, on a dense grid.
    pub fn lipschitz(&self) -> f64 {
        match &self.kind {
            FrontierKind::UserTable { xs, values, .. } => {
                let n = xs.len();
                (0..n)
                    .map(|k| {
                        let (x1, v1) = if k + 1 < n {
                            (xs[k + 1], values[k + 1])
                        } else {
                            (xs[0] + 1.0, values[0])
                        };
                        ((v1 - values[k]) / (x1 - xs[k])).abs()
                    })
                    .fold(0.0, f64::max)
            }
            _ => {
                let (lo, hi) = self.extremes(1);
                lo.abs().max(hi.abs())
            }
        }
    }

    /// `f`, `f'` or `f''` at `x` (reduced modulo 1).
    pub fn eval(&self, x: f64, order: usize) -> Result<f64> {
        if order > 2 {
            return param(format!("frontier derivative order {order} exceeds 2"));
        }
        if let FrontierKind::UserTable { xs, values, .. } = &self.kind {
            if order > 0 {
                return Err(Error::UnsupportedDerivative {
                    kind: self.kind.name(),
                    order,
                });
            }
            return Ok(interpolate(xs, values, x - x.floor()));
        }
        Ok(self.smooth_derivative(x, order))
    }

    /// `f(x)`; infallible for every kind.
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        match &self.kind {
            FrontierKind::UserTable { xs, values, .. } => interpolate(xs, values, x - x.floor()),
            _ => self.smooth_derivative(x, 0),
        }
    }

    /// Knots where the frontier is not smooth (tabulated kind only).
    pub fn kinks(&self) -> &[f64] {
        match &self.kind {
            FrontierKind::UserTable { xs, .. } => xs,
            _ => &[],
        }
    }

    /// Distribution function of the abscissa, `integral_0^x f / C_f`.
    pub fn abscissa_cdf(&self, x: f64) -> f64 {
        let x = x.clamp(0.0, 1.0);
        let f = |u: f64| self.value(u);
        quadrature::simpson_aligned(&f, 0.0, x, self.kinks(), 1.0 / 2048.0) / self.c_f
    }

    fn smooth_derivative(&self, x: f64, order: usize) -> f64 {
        let x = x - x.floor();
        match self.kind {
            FrontierKind::Constant { value } => {
                if order == 0 {
                    value
                } else {
                    0.0
                }
            }
            FrontierKind::Sine { a0, a1 } => harmonic(a0, a1, 0.0, x, order),
            FrontierKind::SumOfSines { a0, a1, a2 } => harmonic(a0, a1, a2, x, order),
            FrontierKind::UserTable { .. } => unreachable!("tabulated frontier has no analytic derivative"),
        }
    }

    /// `(min, max)` of `f^(order)` over a period: grid search polished by
    /// bisection on the next derivative.
    fn extremes(&self, order: usize) -> (f64, f64) {
        const GRID: usize = 8192;
        let g = |x: f64| self.smooth_derivative(x, order);
        let dg = |x: f64| self.smooth_derivative(x, order + 1);
        let at = |i: usize| i as f64 / GRID as f64;
        let (mut imin, mut imax) = (0, 0);
        let (mut vmin, mut vmax) = (f64::INFINITY, f64::NEG_INFINITY);
        for i in 0..GRID {
            let v = g(at(i));
            if v < vmin {
                vmin = v;
                imin = i;
            }
            if v > vmax {
                vmax = v;
                imax = i;
            }
        }
        for (i, is_max) in [(imin, false), (imax, true)] {
            let a = at(i) - 1.0 / GRID as f64;
            let b = at(i) + 1.0 / GRID as f64;
            if let Some(r) = bisect_root(&dg, a, b) {
                let v = g(r);
                if is_max {
                    vmax = vmax.max(v);
                } else {
                    vmin = vmin.min(v);
                }
            }
        }
        (vmin, vmax)
    }

    /// Draws `n` points uniformly on the region under the frontier.
    ///
    /// Points are proposed in the box `[0,1] x [0, f_max]` and kept when
    /// `y <= f(x)`; the accepted pairs are then ordered by abscissa.
    pub fn sample_uniform(&self, n: usize, seed: u64) -> Result<SampleSet> {
        if n < 1 {
            return param("sample size must be at least 1");
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let acceptance = self.c_f / self.f_max;
        let max_attempts = (1e4 * n as f64 / acceptance).ceil() as u64;
        let mut pairs = Vec::with_capacity(n);
        let mut draws = 0u64;
        while pairs.len() < n {
            if draws >= max_attempts {
                return Err(Error::SamplingFailure {
                    attempts: draws,
                    accepted: pairs.len(),
                });
            }
            draws += 1;
            let x: f64 = rng.gen();
            let y: f64 = rng.gen::<f64>() * self.f_max;
            if y <= self.value(x) {
                pairs.push((x, y));
            }
        }
        let mut s = SampleSet::from_unsorted(pairs, Some(seed))?;
        s.draws = draws;
        s.spacing.bound = Some(spacing_bound(s.n(), self.f_min, self.f_max));
        Ok(s)
    }
}

fn harmonic(a0: f64, a1: f64, a2: f64, x: f64, order: usize) -> f64 {
    let (s1, c1) = (TAU * x).sin_cos();
    let (s2, c2) = (2.0 * TAU * x).sin_cos();
    let w1 = TAU;
    let w2 = 2.0 * TAU;
    match order {
        0 => a0 + a1 * s1 + a2 * c2,
        1 => a1 * w1 * c1 - a2 * w2 * s2,
        2 => -a1 * w1 * w1 * s1 - a2 * w2 * w2 * c2,
        _ => -a1 * w1.powi(3) * c1 + a2 * w2.powi(3) * s2,
    }
}

fn validate_table(xs: &[f64], values: &[f64]) -> Result<()> {
    if xs.len() != values.len() || xs.len() < 2 {
        return param("user table needs at least two (x, value) pairs of equal length");
    }
    if xs.iter().any(|x| !(*x >= 0.0 && *x < 1.0)) {
        return param("user table knots must lie in [0, 1)");
    }
    if xs.windows(2).any(|w| w[1] <= w[0]) {
        return param("user table knots must be strictly increasing");
    }
    if values.iter().any(|v| !(*v > 0.0 && v.is_finite())) {
        return param("user table values must be positive");
    }
    Ok(())
}

fn interpolate(xs: &[f64], values: &[f64], x: f64) -> f64 {
    let n = xs.len();
    let k = xs.partition_point(|&k| k <= x);
    let (x0, v0, x1, v1) = if k == 0 {
        (xs[n - 1] - 1.0, values[n - 1], xs[0], values[0])
    } else if k == n {
        (xs[n - 1], values[n - 1], xs[0] + 1.0, values[0])
    } else {
        (xs[k - 1], values[k - 1], xs[k], values[k])
    };
    v0 + (v1 - v0) * (x - x0) / (x1 - x0)
}

fn bisect_root<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Option<f64> {
    let (mut a, mut b) = (a, b);
    let mut fa = f(a);
    let fb = f(b);
    if fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// `C_X log n / n` with `C_X = 5 f_max / f_min`.
pub fn spacing_bound(n: usize, f_min: f64, f_max: f64) -> f64 {
    let nf = n as f64;
    5.0 * f_max / f_min * nf.ln() / nf
}

/// Largest abscissa gap, with `X_0 = 0` and `X_{N+1} = 1` appended.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpacingStats {
    pub max_gap: f64,
    /// `C_X log N / N` when the generating frontier is known.
    pub bound: Option<f64>,
}

/// Observations ordered by abscissa.
#[derive(Clone, Debug, PartialEq)]
pub struct SampleSet {
    xs: Vec<f64>,
    ys: Vec<f64>,
    seed: Option<u64>,
    draws: u64,
    spacing: SpacingStats,
}

impl SampleSet {
    /// Validates and sorts pairs by abscissa; pairs stay matched.
    pub fn from_unsorted(mut pairs: Vec<(f64, f64)>, seed: Option<u64>) -> Result<Self> {
        if pairs.is_empty() {
            return param("sample set is empty");
        }
        for (k, &(x, y)) in pairs.iter().enumerate() {
            if !(x >= 0.0 && x <= 1.0) {
                return param(format!("observation {k}: x = {x} outside [0, 1]"));
            }
            if !(y >= 0.0 && y.is_finite()) {
                return param(format!("observation {k}: y = {y} must be finite and nonnegative"));
            }
        }
        pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
        let (xs, ys): (Vec<f64>, Vec<f64>) = pairs.into_iter().unzip();
        let draws = xs.len() as u64;
        let spacing = SpacingStats {
            max_gap: max_gap(&xs),
            bound: None,
        };
        Ok(SampleSet {
            xs,
            ys,
            seed,
            draws,
            spacing,
        })
    }

    pub fn n(&self) -> usize {
        self.xs.len()
    }

    pub fn xs(&self) -> &[f64] {
        &self.xs
    }

    pub fn ys(&self) -> &[f64] {
        &self.ys
    }

    pub fn seed(&self) -> Option<u64> {
        self.seed
    }

    /// Box proposals consumed by the sampler (equals `n` for loaded data).
    pub fn draws(&self) -> u64 {
        self.draws
    }

    pub fn spacing(&self) -> &SpacingStats {
        &self.spacing
    }

    /// Observation at a periodically extended index.
    ///
    /// Index `i` in `[-n, 2n)` maps to `i mod n`, with the abscissa shifted
    /// by the number of whole periods crossed.
    pub fn extended(&self, i: i64) -> (f64, f64) {
        let n = self.n() as i64;
        let k = i.rem_euclid(n);
        let shift = i.div_euclid(n) as f64;
        (self.xs[k as usize] + shift, self.ys[k as usize])
    }

    /// `max X_i - 1`.
    pub fn x_minus(&self) -> f64 {
        self.xs[self.n() - 1] - 1.0
    }

    /// `min X_i + 1`.
    pub fn x_plus(&self) -> f64 {
        self.xs[0] + 1.0
    }

    /// Every `y` lies under `f` at its abscissa.
    pub fn is_under(&self, f: &FrontierFn) -> bool {
        self.xs.iter().zip(&self.ys).all(|(&x, &y)| y <= f.value(x))
    }
}

fn max_gap(xs: &[f64]) -> f64 {
    let mut prev = 0.0;
    let mut best = 0.0_f64;
    for &x in xs.iter().chain(std::iter::once(&1.0)) {
        best = best.max(x - prev);
        prev = x;
    }
    best
}

/// Outcome of comparing the largest gap with `C_X log N / N`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SpacingCheck {
    pub max_gap: f64,
    pub bound: f64,
    pub pass: bool,
}

/// Diagnostic only: the bound is asymptotic.
pub fn max_spacing_check(s: &SampleSet, f: &FrontierFn) -> Result<SpacingCheck> {
    if s.n() < 2 {
        return param("spacing check needs at least two observations");
    }
    let bound = spacing_bound(s.n(), f.f_min(), f.f_max());
    let gap = s.spacing().max_gap;
    Ok(SpacingCheck {
        max_gap: gap,
        bound,
        pass: gap <= bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_and_sine_values() {
        let c = FrontierFn::constant(2.0).unwrap();
        assert_eq!(c.eval(0.37, 0).unwrap(), 2.0);
        let s = FrontierFn::sine(1.0, 0.5).unwrap();
        assert_eq!(s.eval(0.0, 0).unwrap(), 1.0);
        assert_eq!(s.f_max(), 1.5);
        assert_eq!(s.f_min(), 0.5);
        assert_eq!(s.c_f(), 1.0);
    }

    #[test]
    fn sine_l_beta_matches_grid_sup_of_second_derivative() {
        let s = FrontierFn::sine(1.0, 0.5).unwrap();
        // oracle: brute-force grid search of |f''|
        let grid_sup = (0..100_000)
            .map(|i| s.eval(i as f64 / 100_000.0, 2).unwrap().abs())
            .fold(0.0, f64::max);
        assert!((s.l_beta() - grid_sup).abs() < 1e-6);
        assert!((s.l_beta() - 0.5 * TAU * TAU).abs() < 1e-12);
        let again = s.with_beta(2.0).unwrap();
        assert!((again.l_beta() - 0.5 * TAU * TAU).abs() < 1e-9);
    }

    #[test]
    fn sum_of_sines_constants() {
        let f = FrontierFn::sum_of_sines(2.0, 0.5, 0.25).unwrap();
        let grid: Vec<f64> = (0..200_000).map(|i| f.value(i as f64 / 200_000.0)).collect();
        let lo = grid.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = grid.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        assert!((f.f_min() - lo).abs() < 1e-8);
        assert!((f.f_max() - hi).abs() < 1e-8);
        let cf = quadrature::simpson(&|x| f.value(x), 0.0, 1.0, 4096);
        assert!((f.c_f() - cf).abs() < 1e-10);
    }

    #[test]
    fn periodicity() {
        let f = FrontierFn::sum_of_sines(2.0, 0.5, 0.25).unwrap();
        for i in 0..100 {
            let x = i as f64 / 100.0;
            assert!((f.value(x) - f.value(x + 1.0)).abs() < 1e-12);
            assert!((f.value(x) - f.value(x - 3.0)).abs() < 1e-12);
        }
    }

    #[test]
    fn holder_bound_holds_on_sampled_pairs() {
        let f = FrontierFn::sum_of_sines(2.0, 0.5, 0.25).unwrap().with_beta(1.5).unwrap();
        for i in 0..200 {
            for j in 0..200 {
                let (x, y) = (i as f64 / 200.0 + 0.001, j as f64 / 200.0);
                let d = (x - y).abs();
                if d > 0.0 && d <= 0.5 {
                    let lhs = (f.eval(x, 1).unwrap() - f.eval(y, 1).unwrap()).abs();
                    assert!(lhs <= f.l_beta() * d.powf(0.5) * (1.0 + 1e-3) + 1e-9);
                }
            }
        }
    }

    #[test]
    fn table_rejects_derivatives() {
        let f = FrontierFn::user_table(vec![0.0, 0.5], vec![1.0, 2.0], 10.0).unwrap();
        assert!(matches!(f.eval(0.2, 1), Err(Error::UnsupportedDerivative { .. })));
        assert!((f.eval(0.25, 0).unwrap() - 1.5).abs() < 1e-15);
        assert!((f.eval(0.75, 0).unwrap() - 1.5).abs() < 1e-15);
        assert!((f.c_f() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn invalid_frontiers() {
        assert!(FrontierFn::sine(0.5, 0.5).is_err());
        assert!(FrontierFn::constant(-1.0).is_err());
        assert!(FrontierFn::sum_of_sines(0.3, 0.5, 0.0).is_err());
    }

    #[test]
    fn sampler_is_deterministic_and_ordered() {
        let f = FrontierFn::sine(1.0, 0.5).unwrap();
        let a = f.sample_uniform(500, 11).unwrap();
        let b = f.sample_uniform(500, 11).unwrap();
        assert_eq!(a, b);
        assert!(a.xs().windows(2).all(|w| w[0] <= w[1]));
        assert!(a.is_under(&f));
        let c = f.sample_uniform(500, 12).unwrap();
        assert_ne!(a.xs(), c.xs());
    }

    #[test]
    fn acceptance_rates() {
        let c = FrontierFn::constant(2.0).unwrap();
        let s = c.sample_uniform(100_000, 3).unwrap();
        assert!((s.n() as f64 / s.draws() as f64 - 1.0).abs() <= 0.01);
        let f = FrontierFn::sine(1.0, 0.5).unwrap();
        let s = f.sample_uniform(100_000, 3).unwrap();
        let rate = s.n() as f64 / s.draws() as f64;
        assert!((rate - 1.0 / 1.5).abs() <= 0.01, "{rate}");
    }

    #[test]
    fn extended_index_shifts_by_period() {
        let f = FrontierFn::sine(1.0, 0.5).unwrap();
        let s = f.sample_uniform(20, 5).unwrap();
        let n = s.n() as i64;
        for i in -n..n {
            let (x0, y0) = s.extended(i);
            let (x1, y1) = s.extended(i + n);
            assert_eq!(y0, y1);
            assert!((x1 - x0 - 1.0).abs() <= 1e-15);
        }
        assert_eq!(s.extended(0).0, s.xs()[0]);
        assert_eq!(s.extended(-1).0, s.xs()[19] - 1.0);
        assert_eq!(s.x_minus(), s.xs()[19] - 1.0);
    }

    #[test]
    fn spacing_bound_at_two_points() {
        let f = FrontierFn::sine(1.0, 0.5).unwrap();
        let s = f.sample_uniform(2, 1).unwrap();
        let chk = max_spacing_check(&s, &f).unwrap();
        assert!((chk.bound - 5.0 * 3.0 * 2f64.ln() / 2.0).abs() < 1e-15);
        let one = f.sample_uniform(1, 1).unwrap();
        assert!(max_spacing_check(&one, &f).is_err());
    }

    #[test]
    fn spacing_passes_for_large_constant_samples() {
        let f = FrontierFn::constant(2.0).unwrap();
        let passes = (0..100)
            .filter(|&seed| {
                let s = f.sample_uniform(10_000, seed).unwrap();
                max_spacing_check(&s, &f).unwrap().pass
            })
            .count();
        assert_eq!(passes, 100);
    }

    #[test]
    fn spacing_passes_for_sine_at_1600() {
        let f = FrontierFn::sine(1.0, 0.5).unwrap();
        let passes = (0..50)
            .filter(|&seed| {
                let s = f.sample_uniform(1600, 1000 + seed).unwrap();
                max_spacing_check(&s, &f).unwrap().pass
            })
            .count();
        assert!(passes as f64 / 50.0 >= 0.95, "{passes}");
    }

    #[test]
    fn rejects_out_of_range_observations() {
        assert!(SampleSet::from_unsorted(vec![(1.2, 0.1)], None).is_err());
        assert!(SampleSet::from_unsorted(vec![(0.2, -0.1)], None).is_err());
        assert!(SampleSet::from_unsorted(vec![], None).is_err());
    }
}
