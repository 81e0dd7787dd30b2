//! Simpson-rule quadrature for piecewise-smooth integrands.

/// Composite Simpson rule on `[a, b]` with `panels` subintervals (rounded up to even).
pub fn simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, panels: usize) -> f64 {
    let n = panels.max(2).next_multiple_of(2);
    let step = (b - a) / n as f64;
    let mut acc = f(a) + f(b);
    for k in 1..n {
        let w = if k % 2 == 1 { 4.0 } else { 2.0 };
        acc += w * f(a + step * k as f64);
    }
    acc * step / 3.0
}

/// Composite Simpson over `[a, b]` split at `breakpoints`.
///
/// Every segment between consecutive breakpoints gets at least two panels
/// and no panel is wider than `max_panel`. Breakpoints outside `[a, b]` are
/// ignored.
pub fn simpson_aligned<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    max_panel: f64,
) -> f64 {
    let cuts = segment_cuts(a, b, breakpoints);
    cuts.windows(2)
        .map(|w| {
            let len = w[1] - w[0];
            let panels = ((len / max_panel).ceil() as usize).max(2);
            simpson(f, w[0], w[1], panels)
        })
        .sum()
}

/// Sorted, deduplicated cut points `a = c0 < c1 < ... < cm = b`.
pub fn segment_cuts(a: f64, b: f64, breakpoints: &[f64]) -> Vec<f64> {
    let mut cuts: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|&p| p > a && p < b)
        .collect();
    cuts.push(a);
    cuts.push(b);
    cuts.sort_by(f64::total_cmp);
    cuts.dedup_by(|x, y| (*x - *y).abs() <= 1e-15);
    cuts
}

/// Adaptive Simpson with Richardson correction; absolute tolerance `tol`.
pub fn adaptive_simpson<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, tol: f64, max_depth: u32) -> f64 {
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let m = 0.5 * (a + b);
    let fm = f(m);
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    recurse(f, a, b, fa, fm, fb, whole, tol, max_depth)
}

#[allow(clippy::too_many_arguments)]
fn recurse<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    fa: f64,
    fm: f64,
    fb: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let m = 0.5 * (a + b);
    let lm = 0.5 * (a + m);
    let rm = 0.5 * (m + b);
    let flm = f(lm);
    let frm = f(rm);
    let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    recurse(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1)
        + recurse(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn simpson_is_exact_for_cubics() {
        let f = |x: f64| 3.0 * x * x * x - x + 2.0;
        let exact = 0.75 * 16.0 - 2.0 + 4.0;
        assert!((simpson(&f, 0.0, 2.0, 2) - exact).abs() < 1e-13);
    }

    #[test]
    fn odd_panel_count_is_rounded_up() {
        let f = |x: f64| x.sin();
        let a = simpson(&f, 0.0, 1.0, 7);
        let b = simpson(&f, 0.0, 1.0, 8);
        assert_eq!(a, b);
    }

    #[test]
    fn aligned_rule_resolves_kinks() {
        let f = |x: f64| (x - 0.3).abs();
        let v = simpson_aligned(&f, 0.0, 1.0, &[0.3], 0.1);
        assert!((v - (0.045 + 0.245)).abs() < 1e-14);
    }

    #[test]
    fn adaptive_meets_tolerance() {
        let f = |x: f64| (10.0 * x).exp();
        let exact = ((10.0f64).exp() - 1.0) / 10.0;
        let v = adaptive_simpson(&f, 0.0, 1.0, 1e-9, 40);
        assert!((v - exact).abs() < 1e-8);
    }

    #[test]
    fn cuts_drop_outside_points_and_duplicates() {
        let c = segment_cuts(0.0, 1.0, &[-0.2, 0.5, 0.5, 1.3, 0.25]);
        assert_eq!(c, vec![0.0, 0.25, 0.5, 1.0]);
    }
}
