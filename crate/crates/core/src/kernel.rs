//! Compact-support smoothing kernel and its periodic rescaling.
//!
//! The base density is `K(t) = c (1 - t^2)^p` on `[-1, 1]`. Derivatives are
//! kept in factored form `K^(k)(t) = (1 - t^2)^(p-k) q_k(t)`, which makes
//! `K >= 0` hold exactly in floating point, makes every derivative up to
//! order `p - 1` vanish exactly at `t = +-1`, and preserves the even/odd
//! symmetry of each derivative bit for bit.

use serde::{Deserialize, Serialize};

use crate::error::{param, Result};
use crate::quadrature;

/// Highest derivative order available through the public API.
pub const MAX_ORDER: usize = 4;

/// Degree of the default kernel `(1 - t^2)^5`.
pub const DEFAULT_DEGREE: u32 = 5;

/// Sup-norms of `|K^(k)|` over `[-1, 1]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SupConstants {
    pub k_max: f64,
    pub k1_max: f64,
    pub k2_max: f64,
    pub k3_max: f64,
    pub k4_max: f64,
}

impl SupConstants {
    pub fn get(&self, order: usize) -> f64 {
        match order {
            0 => self.k_max,
            1 => self.k1_max,
            2 => self.k2_max,
            3 => self.k3_max,
            _ => self.k4_max,
        }
    }
}

/// Base kernel `K(t) = c (1 - t^2)^degree`; immutable once built.
#[derive(Clone, Debug, PartialEq)]
pub struct KernelSpec {
    degree: u32,
    normalization: f64,
    // q_k in ascending powers of t, k = 0..=MAX_ORDER + 1
    factors: Vec<Vec<f64>>,
    sup: SupConstants,
}

impl KernelSpec {
    /// The default kernel `c (1 - t^2)^5`.
    pub fn default_kernel() -> Self {
        Self::with_degree(DEFAULT_DEGREE).expect("default kernel satisfies its invariants")
    }

    /// Kernel `c (1 - t^2)^degree`. Degrees below 5 are rejected because the
    /// fourth derivative would not be continuous at the support boundary.
    pub fn with_degree(degree: u32) -> Result<Self> {
        if degree < 5 {
            return param(format!(
                "kernel degree {degree} is not four times continuously differentiable (need >= 5)"
            ));
        }
        let normalization = 1.0 / bump_integral(degree);
        let mut factors = vec![vec![normalization]];
        for k in 0..=MAX_ORDER {
            let next = next_factor(&factors[k], degree as usize - k);
            factors.push(next);
        }
        let mut spec = KernelSpec {
            degree,
            normalization,
            factors,
            sup: SupConstants {
                k_max: 0.0,
                k1_max: 0.0,
                k2_max: 0.0,
                k3_max: 0.0,
                k4_max: 0.0,
            },
        };
        spec.sup = SupConstants {
            k_max: spec.sup_norm(0),
            k1_max: spec.sup_norm(1),
            k2_max: spec.sup_norm(2),
            k3_max: spec.sup_norm(3),
            k4_max: spec.sup_norm(4),
        };
        spec.verify_invariants()?;
        Ok(spec)
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The constant `c` with `c * integral (1 - t^2)^p dt = 1`.
    pub fn normalization(&self) -> f64 {
        self.normalization
    }

    pub fn sup_constants(&self) -> &SupConstants {
        &self.sup
    }

    /// `d^order K / dt^order` at `t`; zero outside the open support.
    pub fn eval(&self, t: f64, order: usize) -> Result<f64> {
        if order > MAX_ORDER {
            return param(format!("kernel derivative order {order} exceeds {MAX_ORDER}"));
        }
        Ok(self.derivative(t, order))
    }

    #[inline]
    pub(crate) fn derivative(&self, t: f64, order: usize) -> f64 {
        if !(t.abs() < 1.0) {
            return 0.0;
        }
        let u = (1.0 - t) * (1.0 + t);
        let power = self.degree as i32 - order as i32;
        u.powi(power) * eval_parity(&self.factors[order], t, order % 2 == 1)
    }

    /// `d^order/dx^order` of the periodic kernel `K_h(x, t)` written in terms
    /// of the difference `delta = x - t`.
    ///
    /// For `0 < h < 1/2` at most one of the three shifted copies is nonzero.
    #[inline]
    pub(crate) fn periodic(&self, h: f64, delta: f64, order: usize) -> f64 {
        let scale = h.powi(-(1 + order as i32));
        let mut acc = 0.0;
        for shift in [-1.0, 0.0, 1.0] {
            let z = (delta + shift) / h;
            if z.abs() < 1.0 {
                acc += self.derivative(z, order);
            }
        }
        acc * scale
    }

    /// Grid search over `[-1, 1]` polished by bisection on the next derivative.
    fn sup_norm(&self, order: usize) -> f64 {
        const GRID: usize = 20_000;
        let at = |i: usize| -1.0 + 2.0 * i as f64 / GRID as f64;
        let mut best = 0.0_f64;
        let mut best_i = 0;
        for i in 0..=GRID {
            let v = self.derivative(at(i), order).abs();
            if v > best {
                best = v;
                best_i = i;
            }
        }
        let lo = at(best_i.saturating_sub(1));
        let hi = at((best_i + 1).min(GRID));
        let slope = |t: f64| self.derivative(t, order + 1);
        for (a, b) in [(lo, at(best_i)), (at(best_i), hi)] {
            if let Some(root) = bisect(&slope, a, b) {
                best = best.max(self.derivative(root, order).abs());
            }
        }
        best
    }

    /// Normalisation, centring, boundary smoothness and sign checks.
    pub fn verify_invariants(&self) -> Result<()> {
        let f0 = |t: f64| self.derivative(t, 0);
        let f1 = |t: f64| t * self.derivative(t, 0);
        let mass = quadrature::simpson_aligned(&f0, -1.0, 1.0, &[0.0], 1.0 / 1024.0);
        let moment = quadrature::simpson_aligned(&f1, -1.0, 1.0, &[0.0], 1.0 / 1024.0);
        if (mass - 1.0).abs() > 1e-10 {
            return param(format!("kernel integrates to {mass}, not 1"));
        }
        if moment.abs() > 1e-12 {
            return param(format!("kernel first moment is {moment}, not 0"));
        }
        for order in 0..=MAX_ORDER {
            for edge in [-1.0_f64, 1.0] {
                let u = (1.0 - edge) * (1.0 + edge);
                let v = u.powi(self.degree as i32 - order as i32)
                    * eval_parity(&self.factors[order], edge, order % 2 == 1);
                if v != 0.0 {
                    return param(format!("K^({order}) does not vanish at {edge}"));
                }
            }
        }
        Ok(())
    }
}

/// `integral_{-1}^{1} (1 - t^2)^p dt` via `I_p = I_{p-1} * 2p / (2p + 1)`.
fn bump_integral(p: u32) -> f64 {
    (1..=p).fold(2.0, |acc, m| acc * (2 * m) as f64 / (2 * m + 1) as f64)
}

/// `q_{k+1} = -2 m t q_k + (1 - t^2) q_k'` where `m` is the current power of `(1 - t^2)`.
fn next_factor(q: &[f64], m: usize) -> Vec<f64> {
    let mut out = vec![0.0; q.len() + 1];
    for (i, &a) in q.iter().enumerate() {
        out[i + 1] -= 2.0 * m as f64 * a;
        if i >= 1 {
            let da = i as f64 * a;
            out[i - 1] += da;
            out[i + 1] -= da;
        }
    }
    while out.len() > 1 && *out.last().unwrap() == 0.0 {
        out.pop();
    }
    out
}

/// Horner in `t^2` over the coefficients of matching parity.
#[inline]
fn eval_parity(coeffs: &[f64], t: f64, odd: bool) -> f64 {
    let s = t * t;
    let start = usize::from(odd);
    let mut acc = 0.0;
    let mut i = start + 2 * ((coeffs.len().saturating_sub(1 + start)) / 2);
    loop {
        acc = acc * s + coeffs.get(i).copied().unwrap_or(0.0);
        if i < 2 {
            break;
        }
        i -= 2;
    }
    if odd {
        acc * t
    } else {
        acc
    }
}

fn bisect<F: Fn(f64) -> f64>(f: &F, mut a: f64, mut b: f64) -> Option<f64> {
    let mut fa = f(a);
    let fb = f(b);
    if fa == 0.0 {
        return Some(a);
    }
    if fb == 0.0 {
        return Some(b);
    }
    if fa.signum() == fb.signum() {
        return None;
    }
    for _ in 0..200 {
        let m = 0.5 * (a + b);
        if m <= a || m >= b {
            break;
        }
        let fm = f(m);
        if fm == 0.0 {
            return Some(m);
        }
        if fm.signum() == fa.signum() {
            a = m;
            fa = fm;
        } else {
            b = m;
        }
    }
    Some(0.5 * (a + b))
}

/// Bandwidth `h` together with the schedule parameters that produced it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bandwidth {
    h: f64,
    h1: f64,
    beta: f64,
    clamped: bool,
}

/// Upper clamp applied by [`Bandwidth::schedule`].
pub const MAX_BANDWIDTH: f64 = 0.49;

impl Bandwidth {
    /// A bandwidth given directly; `h1` is recorded as `h` and `beta` as 2.
    pub fn fixed(h: f64) -> Result<Self> {
        Self::new(h, h, 2.0)
    }

    pub fn new(h: f64, h1: f64, beta: f64) -> Result<Self> {
        if !(h > 0.0 && h < 0.5) {
            return param(format!("bandwidth h = {h} must lie in (0, 1/2)"));
        }
        if !(h1 > 0.0 && h1.is_finite()) {
            return param(format!("bandwidth prefactor h1 = {h1} must be positive"));
        }
        if !(beta > 1.0 && beta <= 2.0) {
            return param(format!("smoothness beta = {beta} must lie in (1, 2]"));
        }
        Ok(Bandwidth {
            h,
            h1,
            beta,
            clamped: false,
        })
    }

    /// `h = min(h1 (log n / n)^(1/(1+beta)), 0.49)`.
    pub fn schedule(n: usize, beta: f64, h1: f64) -> Result<Self> {
        if n < 2 {
            return param(format!("bandwidth schedule needs n >= 2, got {n}"));
        }
        if !(beta > 1.0 && beta <= 2.0) {
            return param(format!("smoothness beta = {beta} must lie in (1, 2]"));
        }
        if !(h1 > 0.0 && h1.is_finite()) {
            return param(format!("bandwidth prefactor h1 = {h1} must be positive"));
        }
        let nf = n as f64;
        let raw = h1 * (nf.ln() / nf).powf(1.0 / (1.0 + beta));
        let clamped = raw > MAX_BANDWIDTH;
        Ok(Bandwidth {
            h: raw.min(MAX_BANDWIDTH),
            h1,
            beta,
            clamped,
        })
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn h1(&self) -> f64 {
        self.h1
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// Whether the schedule hit [`MAX_BANDWIDTH`].
    pub fn clamped(&self) -> bool {
        self.clamped
    }
}

/// `d^x_order/dx^x_order K_h(x, t)` for `x, t` in `[-h, 1 + h]`.
pub fn eval_kh(spec: &KernelSpec, bw: &Bandwidth, x: f64, t: f64, x_order: usize) -> Result<f64> {
    if x_order > MAX_ORDER {
        return param(format!("kernel derivative order {x_order} exceeds {MAX_ORDER}"));
    }
    let h = bw.h();
    for (name, v) in [("x", x), ("t", t)] {
        if !(v >= -h && v <= 1.0 + h) {
            return param(format!("{name} = {v} outside [-h, 1 + h]"));
        }
    }
    Ok(spec.periodic(h, x - t, x_order))
}

/// Largest deviations from the four integral identities of `K_h`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct BochnerReport {
    pub h: f64,
    pub grid_size: usize,
    /// `max_x |int_0^1 K_h(x,u) du - 1|`, `x` in `[0, 1]`.
    pub unit_mass_u: f64,
    /// `max_x |int_0^1 (u - x) K_h(x,u) du|`, `x` in `[h, 1 - h]`.
    pub first_moment_u: f64,
    /// `max_u |int_0^1 K_h(x,u) dx - 1|`, `u` in `[0, 1]`.
    pub unit_mass_x: f64,
    /// `max_u |int_0^1 (x - u) K_h(x,u) dx|`, `u` in `[0, 1]`.
    pub first_moment_x: f64,
    /// The same first moment restricted to `u` in `[h, 1 - h]`.
    pub first_moment_x_interior: f64,
}

impl BochnerReport {
    /// Largest of the four stated deviations.
    pub fn max_deviation(&self) -> f64 {
        self.unit_mass_u
            .max(self.first_moment_u)
            .max(self.unit_mass_x)
            .max(self.first_moment_x)
    }
}

/// Panels used per breakpoint segment in the identity checks.
const IDENTITY_PANELS: usize = 1024;

/// Checks the unit-mass and zero-first-moment identities of `K_h` on a grid.
pub fn check_bochner_identities(
    spec: &KernelSpec,
    bw: &Bandwidth,
    grid_size: usize,
) -> Result<BochnerReport> {
    if grid_size < 10 {
        return param(format!("identity grid needs at least 10 points, got {grid_size}"));
    }
    let h = bw.h();
    let grid: Vec<f64> = (0..grid_size)
        .map(|i| i as f64 / (grid_size - 1) as f64)
        .collect();
    let rows = crate::parallel::map(grid.len(), 0, |i| {
        let p = grid[i];
        let cuts = kernel_cuts(p, h);
        let max_panel = h / IDENTITY_PANELS as f64;
        // integrate over u with x = p fixed
        let mass_u = quadrature::simpson_aligned(&|u| spec.periodic(h, p - u, 0), 0.0, 1.0, &cuts, max_panel);
        let moment_u = quadrature::simpson_aligned(
            &|u| (u - p) * spec.periodic(h, p - u, 0),
            0.0,
            1.0,
            &cuts,
            max_panel,
        );
        // integrate over x with u = p fixed
        let mass_x = quadrature::simpson_aligned(&|x| spec.periodic(h, x - p, 0), 0.0, 1.0, &cuts, max_panel);
        let moment_x = quadrature::simpson_aligned(
            &|x| (x - p) * spec.periodic(h, x - p, 0),
            0.0,
            1.0,
            &cuts,
            max_panel,
        );
        (p, mass_u, moment_u, mass_x, moment_x)
    });
    let interior = |p: f64| p >= h && p <= 1.0 - h;
    let mut report = BochnerReport {
        h,
        grid_size,
        unit_mass_u: 0.0,
        first_moment_u: 0.0,
        unit_mass_x: 0.0,
        first_moment_x: 0.0,
        first_moment_x_interior: 0.0,
    };
    for (p, mass_u, moment_u, mass_x, moment_x) in rows {
        report.unit_mass_u = report.unit_mass_u.max((mass_u - 1.0).abs());
        report.unit_mass_x = report.unit_mass_x.max((mass_x - 1.0).abs());
        report.first_moment_x = report.first_moment_x.max(moment_x.abs());
        if interior(p) {
            report.first_moment_u = report.first_moment_u.max(moment_u.abs());
            report.first_moment_x_interior = report.first_moment_x_interior.max(moment_x.abs());
        }
    }
    Ok(report)
}

/// Breakpoints `p - h, p, p + h` reduced into `[0, 1]`.
fn kernel_cuts(p: f64, h: f64) -> Vec<f64> {
    [p - h, p, p + h]
        .into_iter()
        .map(|c| c - c.floor())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn binomial(n: u64, k: u64) -> f64 {
        (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
    }

    #[test]
    fn normalization_matches_expanded_integral() {
        // oracle: integrate the binomial expansion term by term
        let integral: f64 = (0..=5u64)
            .map(|m| binomial(5, m) * (-1.0f64).powi(m as i32) * 2.0 / (2 * m + 1) as f64)
            .sum();
        let spec = KernelSpec::default_kernel();
        assert!((spec.normalization() - 1.0 / integral).abs() < 1e-14);
        // closed form 2^11 (5!)^2 / 11!
        let closed = 2048.0 * 14400.0 / 39_916_800.0;
        assert!((integral - closed).abs() < 1e-15);
        assert!((spec.normalization() - 1.353_515_625).abs() < 1e-12);
    }

    #[test]
    fn outside_support_is_zero() {
        let spec = KernelSpec::default_kernel();
        for order in 0..=4 {
            assert_eq!(spec.eval(2.0, order).unwrap(), 0.0);
            assert_eq!(spec.eval(-1.0, order).unwrap(), 0.0);
            assert_eq!(spec.eval(1.0, order).unwrap(), 0.0);
        }
    }

    #[test]
    fn symmetric_peak_has_zero_slope() {
        let spec = KernelSpec::default_kernel();
        assert_eq!(spec.eval(0.0, 1).unwrap(), 0.0);
        assert_eq!(spec.eval(0.0, 3).unwrap(), 0.0);
    }

    #[test]
    fn value_at_half() {
        let spec = KernelSpec::default_kernel();
        let c = spec.normalization();
        let direct = c * 0.75f64.powi(5);
        assert!((spec.eval(0.5, 0).unwrap() - direct).abs() < 1e-15);
    }

    #[test]
    fn invalid_order_is_rejected() {
        let spec = KernelSpec::default_kernel();
        assert!(spec.eval(0.1, 5).is_err());
    }

    #[test]
    fn low_degree_is_rejected() {
        assert!(KernelSpec::with_degree(4).is_err());
        assert!(KernelSpec::with_degree(7).is_ok());
    }

    #[test]
    fn derivatives_match_expanded_polynomial() {
        // oracle: differentiate the expanded polynomial c * sum C(5,m) (-1)^m t^(2m)
        let spec = KernelSpec::default_kernel();
        let c = spec.normalization();
        let mut coeffs = vec![0.0; 11];
        for m in 0..=5u64 {
            coeffs[2 * m as usize] = c * binomial(5, m) * (-1.0f64).powi(m as i32);
        }
        for order in 0..=4 {
            for &t in &[-0.9, -0.37, 0.0, 0.12, 0.5, 0.88] {
                let mut v = 0.0;
                for (p, &a) in coeffs.iter().enumerate() {
                    if p >= order {
                        let fall: f64 = (0..order).map(|q| (p - q) as f64).product();
                        v += a * fall * f64::powi(t, (p - order) as i32);
                    }
                }
                let got = spec.eval(t, order).unwrap();
                assert!((got - v).abs() < 1e-9 * (1.0 + v.abs()), "order {order} t {t}: {got} vs {v}");
            }
        }
    }

    #[test]
    fn second_derivative_peak_is_at_origin() {
        let spec = KernelSpec::default_kernel();
        let k2 = spec.sup_constants().k2_max;
        assert!((k2 - 10.0 * spec.normalization()).abs() < 1e-12);
        assert!((spec.sup_constants().k_max - spec.normalization()).abs() < 1e-15);
    }

    #[test]
    fn periodic_kernel_examples() {
        let spec = KernelSpec::default_kernel();
        let bw = Bandwidth::fixed(0.05).unwrap();
        let c = spec.normalization();
        let at_center = eval_kh(&spec, &bw, 0.5, 0.5, 0).unwrap();
        assert!((at_center - c / 0.05).abs() < 1e-12);
        assert_eq!(eval_kh(&spec, &bw, 0.5, 0.6, 0).unwrap(), 0.0);
        // wrap-around: 0.01 - 0.99 + 1 = 0.02 = 0.4 h
        let wrapped = eval_kh(&spec, &bw, 0.01, 0.99, 0).unwrap();
        let direct = spec.eval((0.01 - 0.99 + 1.0) / 0.05, 0).unwrap() / 0.05;
        assert!((wrapped - direct).abs() < 1e-12 * direct);
        assert!(eval_kh(&spec, &bw, 1.2, 0.5, 0).is_err());
    }

    #[test]
    fn bandwidth_schedule_values() {
        let bw = Bandwidth::schedule(1600, 2.0, 1.0).unwrap();
        let direct = (1600f64.ln() / 1600.0).cbrt();
        assert!((bw.h() - direct).abs() < 1e-15);
        assert!((bw.h() - 0.1665).abs() < 1e-3);
        assert!(!bw.clamped());
        let clamped = Bandwidth::schedule(2, 2.0, 10.0).unwrap();
        assert_eq!(clamped.h(), MAX_BANDWIDTH);
        assert!(clamped.clamped());
        assert!(Bandwidth::schedule(1, 2.0, 1.0).is_err());
        assert!(Bandwidth::schedule(10, 2.5, 1.0).is_err());
        for n in [3usize, 10, 100, 1000] {
            let a = Bandwidth::schedule(n, 2.0, 1.0).unwrap().h();
            let b = Bandwidth::schedule(4 * n, 2.0, 1.0).unwrap().h();
            assert!(b <= a);
            let nf = n as f64;
            let ratio = ((4.0 * nf).ln() / (4.0 * nf) * nf / nf.ln()).cbrt();
            assert!(ratio < 1.0);
        }
    }

    #[test]
    fn bochner_identities_at_tenth() {
        let spec = KernelSpec::default_kernel();
        let bw = Bandwidth::fixed(0.1).unwrap();
        let r = check_bochner_identities(&spec, &bw, 101).unwrap();
        assert!(r.unit_mass_u <= 1e-8, "{r:?}");
        assert!(r.first_moment_u <= 1e-8, "{r:?}");
        assert!(r.unit_mass_x <= 1e-8, "{r:?}");
        assert!(r.first_moment_x_interior <= 1e-8, "{r:?}");
        assert!(check_bochner_identities(&spec, &bw, 5).is_err());
    }

    #[test]
    fn first_moment_near_edge_is_not_zero() {
        // at x = h/2 the shifted copy contributes; the identity is only claimed on [h, 1-h]
        let spec = KernelSpec::default_kernel();
        let h = 0.1;
        let x = h / 2.0;
        let cuts = kernel_cuts(x, h);
        let m = quadrature::simpson_aligned(&|u| (u - x) * spec.periodic(h, x - u, 0), 0.0, 1.0, &cuts, h / 512.0);
        assert!(m.abs() > 1e-3);
    }
}
