//! The frontier linear program.
//!
//! Variables are the kernel weights `alpha_k >= 0`, one per observation, and
//! the objective is `sum alpha_k`. Rows come in four families, stored in this
//! order:
//!
//! 1. cover `(i, j)` for every pair at periodic distance `|X_j - X_i| <= h`:
//!    `f(X_i) + (X_j - X_i) f'(X_i) >= Y_j`;
//! 2. `curv+ (i)`: `f''(X_i) <= B`;
//! 3. `curv- (i)`: `-f''(X_i) <= B`;
//! 4. `bin (m)`: the weights in `[m / m_h, (m + 1) / m_h)` sum to at most `C_alpha h`,
//!
//! where `f = sum alpha_k K_h(., X_k)` and `B = 2 L_beta K''_max log N / (N h^3)`.
//!
//! Cover rows are never materialised. The LP keeps a kernel band: for each
//! `i`, the observations within `h` of `X_i` together with `K_h`, `dK_h/dx`
//! and `d2K_h/dx2` at `X_i`. Every row is generated from it on demand.

use std::fmt;
use std::io::{BufRead, Write};
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::frontier::SampleSet;
use crate::kernel::{Bandwidth, KernelSpec};
use crate::parallel;
use crate::simplex::{LinearProgram, Sense, SparseLp};

/// Curvature bounds above this are flagged as uninformative.
pub const CURVATURE_WARN_LIMIT: f64 = 1e12;

/// Smoothness and mass constants entering the rows.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpConstants {
    pub l_beta: f64,
    pub c_alpha: f64,
    pub f_max: f64,
}

impl LpConstants {
    /// `C_alpha = 8 f_max`.
    pub fn with_default_mass(l_beta: f64, f_max: f64) -> Self {
        LpConstants {
            l_beta,
            c_alpha: 8.0 * f_max,
            f_max,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum RowKind {
    Cover { i: usize, j: usize },
    CurvaturePlus { i: usize },
    CurvatureMinus { i: usize },
    Bin { m: usize },
}

impl fmt::Display for RowKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RowKind::Cover { i, j } => write!(f, "cover/{i}/{j}"),
            RowKind::CurvaturePlus { i } => write!(f, "curv+/{i}"),
            RowKind::CurvatureMinus { i } => write!(f, "curv-/{i}"),
            RowKind::Bin { m } => write!(f, "bin/{m}"),
        }
    }
}

impl FromStr for RowKind {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts: Vec<&str> = s.split('/').collect();
        let idx = |k: usize| -> std::result::Result<usize, String> {
            parts
                .get(k)
                .ok_or_else(|| format!("row kind `{s}` is missing an index"))?
                .parse()
                .map_err(|_| format!("bad index in row kind `{s}`"))
        };
        let kind = match parts[0] {
            "cover" if parts.len() == 3 => RowKind::Cover { i: idx(1)?, j: idx(2)? },
            "curv+" if parts.len() == 2 => RowKind::CurvaturePlus { i: idx(1)? },
            "curv-" if parts.len() == 2 => RowKind::CurvatureMinus { i: idx(1)? },
            "bin" if parts.len() == 2 => RowKind::Bin { m: idx(1)? },
            _ => return Err(format!("unknown row kind `{s}`")),
        };
        Ok(kind)
    }
}

/// A materialised row.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConstraintRow {
    pub kind: RowKind,
    pub entries: Vec<(usize, f64)>,
    pub sense: Sense,
    pub rhs: f64,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RowCounts {
    pub cover: usize,
    pub curvature: usize,
    pub bin: usize,
}

impl RowCounts {
    pub fn total(&self) -> usize {
        self.cover + self.curvature + self.bin
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LpMeta {
    pub h: f64,
    pub c_alpha: f64,
    /// Nominal curvature bound `2 L_beta K''_max log N / (N h^3)`.
    pub second_deriv_bound: f64,
    pub m_h: usize,
    pub counts: RowCounts,
    pub warnings: Vec<String>,
}

/// Neighbour `k` of a band row `i`, with the kernel and its first two
/// x-derivatives evaluated at `x = X_i`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub(crate) struct BandEntry {
    pub k: u32,
    /// Signed periodic offset `X_k - X_i`.
    pub offset: f64,
    pub k0: f64,
    pub k1: f64,
    pub k2: f64,
}

#[derive(Clone, Debug, PartialEq)]
struct Band {
    start: Vec<usize>,
    entries: Vec<BandEntry>,
}

impl Band {
    fn row(&self, i: usize) -> &[BandEntry] {
        &self.entries[self.start[i]..self.start[i + 1]]
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
struct Cover {
    i: u32,
    /// Absolute index of `j` in the band.
    slot: u32,
    rhs: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct FrontierLp {
    n: usize,
    band: Arc<Band>,
    covers: Arc<Vec<Cover>>,
    /// Cover rows lying strictly inside the upper hull of their group.
    implied: Arc<Vec<bool>>,
    curvature_rhs: Vec<f64>,
    bin_start: Vec<usize>,
    bin_rhs: Vec<f64>,
    meta: LpMeta,
}

/// Builds the LP on the global thread pool.
pub fn build_lp(sample: &SampleSet, kernel: &KernelSpec, bw: &Bandwidth, consts: &LpConstants) -> Result<FrontierLp> {
    build_lp_with_threads(sample, kernel, bw, consts, 0)
}

/// [`build_lp`] with an explicit thread count (see [`parallel::map`]).
pub fn build_lp_with_threads(
    sample: &SampleSet,
    kernel: &KernelSpec,
    bw: &Bandwidth,
    consts: &LpConstants,
    threads: usize,
) -> Result<FrontierLp> {
    let h = bw.h();
    if !(h > 0.0 && h < 0.5) {
        return param(format!("bandwidth h = {h} must lie in (0, 1/2)"));
    }
    if !(consts.l_beta >= 0.0 && consts.l_beta.is_finite()) {
        return param(format!("L_beta = {} must be finite and nonnegative", consts.l_beta));
    }
    if !(consts.c_alpha > 0.0 && consts.c_alpha.is_finite()) {
        return param(format!("C_alpha = {} must be positive", consts.c_alpha));
    }
    let n = sample.n();
    let xs = sample.xs();
    let ys = sample.ys();
    let mut warnings = Vec::new();
    if consts.c_alpha < 8.0 * consts.f_max {
        warnings.push(format!(
            "C_alpha = {} is below 8 f_max = {}",
            consts.c_alpha,
            8.0 * consts.f_max
        ));
    }

    let rows: Vec<Vec<BandEntry>> = parallel::map(n, threads, |i| band_row(kernel, xs, h, i));
    let mut start = Vec::with_capacity(n + 1);
    start.push(0);
    for r in &rows {
        start.push(start.last().unwrap() + r.len());
    }
    let entries: Vec<BandEntry> = rows.into_iter().flatten().collect();
    let band = Band { start, entries };

    let mut covers = Vec::with_capacity(band.entries.len());
    for i in 0..n {
        let base = band.start[i];
        let mut slots: Vec<usize> = (base..band.start[i + 1]).collect();
        slots.sort_by_key(|&s| band.entries[s].k);
        for s in slots {
            covers.push(Cover {
                i: i as u32,
                slot: s as u32,
                rhs: ys[band.entries[s].k as usize],
            });
        }
    }

    let nf = n as f64;
    let bound = 2.0 * consts.l_beta * kernel.sup_constants().k2_max * nf.ln() / (nf * h.powi(3));
    if bound > CURVATURE_WARN_LIMIT {
        warnings.push(format!("curvature bound {bound:e} exceeds {CURVATURE_WARN_LIMIT:e}"));
    }

    let m_h = (1.0 / h).floor() as usize;
    let mut bin_start = vec![0usize; m_h + 1];
    for &x in xs {
        bin_start[bin_of(x, m_h) + 1] += 1;
    }
    for m in 0..m_h {
        bin_start[m + 1] += bin_start[m];
    }

    let counts = RowCounts {
        cover: covers.len(),
        curvature: 2 * n,
        bin: m_h,
    };
    for w in &warnings {
        log::warn!("{w}");
    }
    let mut implied = vec![false; covers.len()];
    let mut lo = 0;
    while lo < covers.len() {
        let hi = group_end(&covers, lo);
        mark_implied(&band, &covers, lo..hi, &mut implied);
        lo = hi;
    }
    Ok(FrontierLp {
        n,
        band: Arc::new(band),
        covers: Arc::new(covers),
        implied: Arc::new(implied),
        curvature_rhs: vec![bound; 2 * n],
        bin_start,
        bin_rhs: vec![consts.c_alpha * h; m_h],
        meta: LpMeta {
            h,
            c_alpha: consts.c_alpha,
            second_deriv_bound: bound,
            m_h,
            counts,
            warnings,
        },
    })
}

fn group_end(covers: &[Cover], lo: usize) -> usize {
    let i = covers[lo].i;
    lo + covers[lo..].iter().take_while(|c| c.i == i).count()
}

/// The cover rows of one `i` read `v + d_j g >= Y_j`, affine in the offset
/// `d_j`. A row whose point `(d_j, Y_j)` lies on or below the upper concave
/// hull of the group follows from its two hull neighbours.
fn mark_implied(band: &Band, covers: &[Cover], range: std::ops::Range<usize>, implied: &mut [bool]) {
    let mut pts: Vec<(f64, f64, usize)> = range
        .clone()
        .map(|r| (band.entries[covers[r].slot as usize].offset, covers[r].rhs, r))
        .collect();
    pts.sort_by(|a, b| a.0.total_cmp(&b.0).then(b.1.total_cmp(&a.1)).then(a.2.cmp(&b.2)));
    for r in range {
        implied[r] = true;
    }
    let mut hull: Vec<(f64, f64, usize)> = Vec::new();
    for (t, &p) in pts.iter().enumerate() {
        if t > 0 && pts[t - 1].0 == p.0 {
            continue;
        }
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b.0 - a.0) * (p.1 - a.1) - (b.1 - a.1) * (p.0 - a.0) >= 0.0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    for &(_, _, r) in &hull {
        implied[r] = false;
    }
}

/// Bin index of an abscissa, with `x = 1` assigned to the last bin.
pub fn bin_of(x: f64, m_h: usize) -> usize {
    ((x * m_h as f64).floor() as usize).min(m_h - 1)
}

fn band_row(kernel: &KernelSpec, xs: &[f64], h: f64, i: usize) -> Vec<BandEntry> {
    neighbours(xs, h, i)
        .into_iter()
        .map(|(k, offset)| BandEntry {
            k: k as u32,
            offset,
            k0: kernel.periodic(h, -offset, 0),
            k1: kernel.periodic(h, -offset, 1),
            k2: kernel.periodic(h, -offset, 2),
        })
        .collect()
}

/// Indices `k` with `X_k` within periodic distance `h` of `X_i`, paired with
/// the signed offset `X_k - X_i`, ordered by offset. `xs` must be sorted.
pub fn neighbours(xs: &[f64], h: f64, i: usize) -> Vec<(usize, f64)> {
    let n = xs.len();
    let mut back = Vec::new();
    let mut taken = 0;
    let mut k = i;
    while taken + 1 < n {
        k = if k == 0 { n - 1 } else { k - 1 };
        let wraps = if k > i { -1.0 } else { 0.0 };
        let offset = (xs[k] - xs[i]) + wraps;
        if offset < -h {
            break;
        }
        back.push((k, offset));
        taken += 1;
    }
    let mut row: Vec<(usize, f64)> = back.into_iter().rev().collect();
    row.push((i, 0.0));
    let mut k = i;
    while taken + 1 < n {
        k = (k + 1) % n;
        let wraps = if k < i { 1.0 } else { 0.0 };
        let offset = (xs[k] - xs[i]) + wraps;
        if offset > h {
            break;
        }
        row.push((k, offset));
        taken += 1;
    }
    row
}

impl FrontierLp {
    pub fn meta(&self) -> &LpMeta {
        &self.meta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Largest curvature right-hand side currently in force.
    pub fn curvature_rhs(&self) -> f64 {
        self.curvature_rhs.iter().copied().fold(f64::NEG_INFINITY, f64::max).max(0.0)
    }

    /// Copy with every curvature row bounded by `rhs`.
    pub fn with_curvature_rhs(&self, rhs: f64) -> FrontierLp {
        let mut lp = self.clone();
        lp.curvature_rhs.iter_mut().for_each(|v| *v = rhs);
        lp
    }

    /// Overrides the right-hand side of row `r`.
    pub fn set_rhs(&mut self, r: usize, rhs: f64) -> Result<()> {
        if !rhs.is_finite() {
            return param(format!("rhs {rhs} must be finite"));
        }
        let c = self.covers.len();
        let n = self.n;
        match r {
            _ if r < c => {
                Arc::make_mut(&mut self.covers)[r].rhs = rhs;
                let i = self.covers[r].i;
                let lo = self.covers[..r].iter().rev().take_while(|cv| cv.i == i).count();
                let lo = r - lo;
                let hi = group_end(&self.covers, lo);
                let implied: &mut Vec<bool> = Arc::make_mut(&mut self.implied);
                mark_implied(&self.band, &self.covers, lo..hi, implied);
            }
            _ if r < c + 2 * n => self.curvature_rhs[r - c] = rhs,
            _ if r < self.n_rows() => self.bin_rhs[r - c - 2 * n] = rhs,
            _ => return param(format!("row {r} out of range ({} rows)", self.n_rows())),
        }
        Ok(())
    }

    pub fn row_kind(&self, r: usize) -> RowKind {
        let c = self.covers.len();
        let n = self.n;
        if r < c {
            let cv = self.covers[r];
            RowKind::Cover {
                i: cv.i as usize,
                j: self.band.entries[cv.slot as usize].k as usize,
            }
        } else if r < c + n {
            RowKind::CurvaturePlus { i: r - c }
        } else if r < c + 2 * n {
            RowKind::CurvatureMinus { i: r - c - n }
        } else {
            RowKind::Bin { m: r - c - 2 * n }
        }
    }

    pub fn row(&self, r: usize) -> ConstraintRow {
        let mut entries = Vec::new();
        self.for_each_entry(r, &mut |k, v| entries.push((k, v)));
        ConstraintRow {
            kind: self.row_kind(r),
            entries,
            sense: self.sense(r),
            rhs: self.rhs(r),
        }
    }

    /// Cover pairs as `(i, j, X_j - X_i)` in row order.
    pub fn cover_pairs(&self) -> impl Iterator<Item = (usize, usize, f64)> + '_ {
        self.covers.iter().map(move |cv| {
            let e = &self.band.entries[cv.slot as usize];
            (cv.i as usize, e.k as usize, e.offset)
        })
    }

    /// Estimate, slope and curvature at every `X_i`.
    fn local_fit(&self, x: &[f64], support: &[usize]) -> (Vec<f64>, Vec<f64>, Vec<f64>) {
        let n = self.n;
        let (mut v, mut g, mut c) = (vec![0.0; n], vec![0.0; n], vec![0.0; n]);
        for &k in support {
            let a = x[k];
            if a == 0.0 {
                continue;
            }
            // The band is symmetric: row k lists every i with X_k within h,
            // and the kernel is even in the offset while its slope is odd.
            for e in self.band.row(k) {
                let i = e.k as usize;
                v[i] += a * e.k0;
                g[i] -= a * e.k1;
                c[i] += a * e.k2;
            }
        }
        (v, g, c)
    }

    /// Writes the `frontier-lp v1` text form.
    pub fn write_text<W: Write>(&self, w: &mut W) -> Result<()> {
        write_text(self, |r| self.row_kind(r).to_string(), w)
    }
}

impl LinearProgram for FrontierLp {
    fn n_vars(&self) -> usize {
        self.n
    }

    fn n_rows(&self) -> usize {
        self.meta.counts.total()
    }

    fn cost(&self, _j: usize) -> f64 {
        1.0
    }

    fn sense(&self, r: usize) -> Sense {
        if r < self.covers.len() {
            Sense::Ge
        } else {
            Sense::Le
        }
    }

    fn rhs(&self, r: usize) -> f64 {
        let c = self.covers.len();
        if r < c {
            self.covers[r].rhs
        } else if r < c + 2 * self.n {
            self.curvature_rhs[r - c]
        } else {
            self.bin_rhs[r - c - 2 * self.n]
        }
    }

    fn for_each_entry(&self, r: usize, f: &mut dyn FnMut(usize, f64)) {
        let c = self.covers.len();
        let n = self.n;
        if r < c {
            let cv = self.covers[r];
            let d = self.band.entries[cv.slot as usize].offset;
            for e in self.band.row(cv.i as usize) {
                f(e.k as usize, e.k0 + d * e.k1);
            }
        } else if r < c + 2 * n {
            let (i, sign) = if r < c + n { (r - c, 1.0) } else { (r - c - n, -1.0) };
            for e in self.band.row(i) {
                f(e.k as usize, sign * e.k2);
            }
        } else {
            let m = r - c - 2 * n;
            for k in self.bin_start[m]..self.bin_start[m + 1] {
                f(k, 1.0);
            }
        }
    }

    fn activities(&self, x: &[f64], support: &[usize], out: &mut [f64]) {
        let (v, g, c) = self.local_fit(x, support);
        let mut r = 0;
        for cv in self.covers.iter() {
            let i = cv.i as usize;
            out[r] = v[i] + self.band.entries[cv.slot as usize].offset * g[i];
            r += 1;
        }
        for &ci in &c {
            out[r] = ci;
            r += 1;
        }
        for &ci in &c {
            out[r] = -ci;
            r += 1;
        }
        for m in 0..self.meta.m_h {
            out[r] = x[self.bin_start[m]..self.bin_start[m + 1]].iter().sum();
            r += 1;
        }
    }

    fn implied(&self, r: usize) -> bool {
        r < self.implied.len() && self.implied[r]
    }
}

/// Largest violation per row family for a candidate `alpha`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FeasibilityReport {
    pub tol: f64,
    pub max_cover_violation: f64,
    pub max_curvature_violation: f64,
    pub max_bin_violation: f64,
    pub min_alpha: f64,
    pub max_violation: f64,
    pub pass: bool,
}

pub fn validate_solution(lp: &FrontierLp, alpha: &[f64], tol: f64) -> Result<FeasibilityReport> {
    if alpha.len() != lp.n_vars() {
        return param(format!(
            "coefficient vector has length {}, expected {}",
            alpha.len(),
            lp.n_vars()
        ));
    }
    let support: Vec<usize> = (0..alpha.len()).filter(|&k| alpha[k] != 0.0).collect();
    let mut act = vec![0.0; lp.n_rows()];
    lp.activities(alpha, &support, &mut act);
    let mut fam = [0.0_f64; 3];
    for (r, &a) in act.iter().enumerate() {
        let v = lp.sense(r).violation(a, lp.rhs(r));
        let slot = match lp.row_kind(r) {
            RowKind::Cover { .. } => 0,
            RowKind::CurvaturePlus { .. } | RowKind::CurvatureMinus { .. } => 1,
            RowKind::Bin { .. } => 2,
        };
        fam[slot] = fam[slot].max(v);
    }
    let min_alpha = alpha.iter().copied().fold(f64::INFINITY, f64::min);
    let min_alpha = if alpha.is_empty() { 0.0 } else { min_alpha };
    let max_violation = fam.iter().copied().fold(0.0, f64::max).max(-min_alpha);
    Ok(FeasibilityReport {
        tol,
        max_cover_violation: fam[0],
        max_curvature_violation: fam[1],
        max_bin_violation: fam[2],
        min_alpha,
        max_violation,
        pass: fam.iter().all(|&v| v <= tol) && min_alpha >= -tol,
    })
}

/// An LP read from the text format: unit costs, labelled rows.
#[derive(Clone, Debug, PartialEq)]
pub struct TextLp {
    pub labels: Vec<String>,
    pub lp: SparseLp,
}

impl TextLp {
    pub fn write_text<W: Write>(&self, w: &mut W) -> Result<()> {
        write_text(&self.lp, |r| self.labels[r].clone(), w)
    }
}

fn write_text<L: LinearProgram + ?Sized, W: Write>(lp: &L, label: impl Fn(usize) -> String, w: &mut W) -> Result<()> {
    writeln!(w, "frontier-lp v1 {} {}", lp.n_vars(), lp.n_rows())?;
    let mut line = String::new();
    for r in 0..lp.n_rows() {
        use std::fmt::Write as _;
        line.clear();
        let _ = write!(line, "{} {} {:?}", label(r), lp.sense(r).token(), lp.rhs(r));
        lp.for_each_entry(r, &mut |k, v| {
            let _ = write!(line, " {k}:{v:?}");
        });
        writeln!(w, "{line}")?;
    }
    Ok(())
}

/// Parses the `frontier-lp v1` text format.
pub fn read_text<R: BufRead>(reader: R) -> Result<TextLp> {
    let perr = |line: usize, message: String| Error::Parse { line, message };
    let mut lines = reader.lines().enumerate();
    let (nvars, nrows) = loop {
        let (no, line) = match lines.next() {
            Some((no, l)) => (no + 1, l?),
            None => return Err(perr(1, "missing `frontier-lp v1` header".into())),
        };
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        let parts: Vec<&str> = t.split_whitespace().collect();
        if parts.len() != 4 || parts[0] != "frontier-lp" || parts[1] != "v1" {
            return Err(perr(no, format!("expected `frontier-lp v1 nvars nrows`, found `{t}`")));
        }
        let nv = parts[2].parse::<usize>().map_err(|_| perr(no, format!("bad variable count `{}`", parts[2])))?;
        let nr = parts[3].parse::<usize>().map_err(|_| perr(no, format!("bad row count `{}`", parts[3])))?;
        break (nv, nr);
    };
    let mut lp = SparseLp::new(vec![1.0; nvars]);
    let mut labels = Vec::with_capacity(nrows);
    let mut last = 1;
    for (no, line) in lines {
        let no = no + 1;
        last = no;
        let line = line?;
        let t = line.trim();
        if t.is_empty() {
            continue;
        }
        if labels.len() == nrows {
            return Err(perr(no, format!("more than the declared {nrows} rows")));
        }
        let mut parts = t.split_whitespace();
        let label = parts.next().unwrap().to_string();
        let sense_tok = parts.next().ok_or_else(|| perr(no, "missing sense".into()))?;
        let sense = Sense::parse(sense_tok).ok_or_else(|| perr(no, format!("bad sense `{sense_tok}`")))?;
        let rhs_tok = parts.next().ok_or_else(|| perr(no, "missing rhs".into()))?;
        let rhs = parse_finite(rhs_tok).ok_or_else(|| perr(no, format!("bad rhs `{rhs_tok}`")))?;
        let mut entries = Vec::new();
        for tok in parts {
            let (k, v) = tok
                .split_once(':')
                .ok_or_else(|| perr(no, format!("expected `index:value`, found `{tok}`")))?;
            let k: usize = k.parse().map_err(|_| perr(no, format!("bad index `{k}`")))?;
            if k >= nvars {
                return Err(perr(no, format!("index {k} out of range for {nvars} variables")));
            }
            let v = parse_finite(v).ok_or_else(|| perr(no, format!("bad coefficient `{v}`")))?;
            entries.push((k, v));
        }
        lp.add_row(entries, sense, rhs);
        labels.push(label);
    }
    if labels.len() != nrows {
        return Err(perr(last, format!("declared {nrows} rows, found {}", labels.len())));
    }
    Ok(TextLp { labels, lp })
}

fn parse_finite(s: &str) -> Option<f64> {
    s.parse::<f64>().ok().filter(|v| v.is_finite())
}
