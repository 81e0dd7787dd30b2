//! Monte Carlo convergence study of the L1 error.

use std::io::Write;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::estimator::{self, FitConfig};
use crate::frontier::{FrontierFn, FrontierKind};
use crate::kernel::KernelSpec;
use crate::parallel;

/// Largest tolerated share of failed fits at any sample size.
pub const MAX_FAILURE_SHARE: f64 = 0.2;
/// Replications required by [`StudyConfig::validate`].
pub const MIN_REPLICATIONS: usize = 3;
/// Sample sizes required for a rate fit.
pub const MIN_RATE_POINTS: usize = 4;

fn default_beta() -> f64 {
    2.0
}

fn default_h1() -> f64 {
    1.0
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StudyConfig {
    pub frontier: FrontierKind,
    #[serde(default = "default_beta")]
    pub beta: f64,
    /// Defaults to the frontier's own constant.
    #[serde(default)]
    pub l_beta: Option<f64>,
    #[serde(default)]
    pub f_max: Option<f64>,
    #[serde(default)]
    pub f_min: Option<f64>,
    pub n_grid: Vec<usize>,
    pub replications: usize,
    #[serde(default)]
    pub base_seed: u64,
    #[serde(default = "default_h1")]
    pub h1: f64,
    /// Defaults to `8 f_max`.
    #[serde(default)]
    pub c_alpha: Option<f64>,
    /// Worker threads; 0 uses every available core.
    #[serde(default)]
    pub parallelism: usize,
}

impl StudyConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_grid.is_empty() {
            return Err(Error::Parameter("n_grid is empty".into()));
        }
        if self.n_grid.iter().any(|&n| n < 2) {
            return Err(Error::Parameter("every n in n_grid must be at least 2".into()));
        }
        if self.n_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Parameter("n_grid must be strictly increasing".into()));
        }
        if self.replications < MIN_REPLICATIONS {
            return Err(Error::Parameter(format!(
                "replications = {} must be at least {MIN_REPLICATIONS}",
                self.replications
            )));
        }
        Ok(())
    }

    /// The frontier with `beta` applied and the constants used by the fits.
    fn resolve(&self) -> Result<(FrontierFn, f64, f64, f64, f64)> {
        let mut f = FrontierFn::from_kind(self.frontier.clone())?;
        if self.beta != f.beta() {
            f = f.with_beta(self.beta)?;
        }
        let l_beta = self.l_beta.unwrap_or(f.l_beta());
        let f_max = self.f_max.unwrap_or(f.f_max());
        let f_min = self.f_min.unwrap_or(f.f_min());
        let c_alpha = self.c_alpha.unwrap_or(8.0 * f_max);
        Ok((f, l_beta, f_max, f_min, c_alpha))
    }
}

/// Seed of replication `r` at sample size `n`.
pub fn replication_seed(base_seed: u64, n: usize, r: usize) -> u64 {
    base_seed ^ splitmix64(splitmix64(n as u64) ^ (r as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15))
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudyRow {
    pub n: usize,
    pub replication: usize,
    pub seed: u64,
    pub h: f64,
    pub ok: bool,
    pub l1_error: Option<f64>,
    /// `J* - C_f`.
    pub objective_gap: Option<f64>,
    /// `sup (f - f_hat)_+` on the diagnostic grid.
    pub shortfall: Option<f64>,
    pub relaxation_level: Option<u32>,
    pub iterations: Option<usize>,
    pub support_size: Option<usize>,
    /// `log N / (N h^(1+beta))`.
    pub realised_ratio: f64,
    pub lipschitz_pass: Option<bool>,
    pub surface_pass: Option<bool>,
    pub cover_pass: Option<bool>,
    pub curvature_pass: Option<bool>,
    pub lower_bound_pass: Option<bool>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SizeSummary {
    pub n: usize,
    pub h: f64,
    pub successes: usize,
    pub failures: usize,
    pub median_l1_error: Option<f64>,
    pub median_objective_gap: Option<f64>,
    pub median_shortfall: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub stderr: f64,
    pub r2: f64,
    pub points: usize,
}

/// Run-dependent values kept apart from the deterministic payload.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudyMeta {
    pub threads: usize,
    pub total_seconds: f64,
    /// Wall-clock seconds of each fit, aligned with `rows`.
    pub solve_time: Vec<f64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StudyReport {
    pub config: StudyConfig,
    pub l_beta: f64,
    pub f_max: f64,
    pub f_min: f64,
    pub c_alpha: f64,
    pub c_f: f64,
    pub rows: Vec<StudyRow>,
    pub summary: Vec<SizeSummary>,
    pub failures: usize,
    pub rate_fit: Option<RateFit>,
    pub theory_slope: f64,
    pub warnings: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<StudyMeta>,
}

pub fn run_study(cfg: &StudyConfig) -> Result<StudyReport> {
    cfg.validate()?;
    let started = Instant::now();
    let (frontier, l_beta, f_max, f_min, c_alpha) = cfg.resolve()?;
    let kernel = KernelSpec::default_kernel();
    let mut fit_cfg = FitConfig::new(cfg.beta, l_beta, f_max);
    fit_cfg.h1 = cfg.h1;
    fit_cfg.c_alpha = Some(c_alpha);
    fit_cfg.threads = 1;
    let jobs: Vec<(usize, usize)> = cfg
        .n_grid
        .iter()
        .flat_map(|&n| (0..cfg.replications).map(move |r| (n, r)))
        .collect();
    let threads = cfg.parallelism;
    let outcomes = parallel::map(jobs.len(), threads, |q| {
        let (n, r) = jobs[q];
        let t0 = Instant::now();
        let row = run_one(&frontier, &kernel, &fit_cfg, cfg, n, r);
        (row, t0.elapsed().as_secs_f64())
    });
    let (rows, times): (Vec<StudyRow>, Vec<f64>) = outcomes.into_iter().unzip();

    let mut summary = Vec::new();
    let mut warnings = Vec::new();
    for &n in &cfg.n_grid {
        let at: Vec<&StudyRow> = rows.iter().filter(|row| row.n == n).collect();
        let ok: Vec<&&StudyRow> = at.iter().filter(|row| row.ok).collect();
        let failures = at.len() - ok.len();
        if failures as f64 > MAX_FAILURE_SHARE * at.len() as f64 {
            return Err(Error::Study(format!(
                "{failures} of {} fits failed at n = {n}; first error: {}",
                at.len(),
                at.iter().find_map(|row| row.error.clone()).unwrap_or_default()
            )));
        }
        if failures > 0 {
            warnings.push(format!("{failures} failed fits at n = {n}"));
        }
        let col = |g: fn(&StudyRow) -> Option<f64>| median(ok.iter().filter_map(|row| g(row)).collect());
        summary.push(SizeSummary {
            n,
            h: at[0].h,
            successes: ok.len(),
            failures,
            median_l1_error: col(|r| r.l1_error),
            median_objective_gap: col(|r| r.objective_gap),
            median_shortfall: col(|r| r.shortfall),
        });
    }
    let points: Vec<(usize, f64)> = summary
        .iter()
        .filter_map(|s| s.median_l1_error.map(|e| (s.n, e)))
        .collect();
    let rate_fit = if points.len() >= MIN_RATE_POINTS {
        match fit_rate(&points) {
            Ok(fit) => Some(fit),
            Err(e) => {
                warnings.push(e.to_string());
                None
            }
        }
    } else {
        None
    };
    let failures = rows.iter().filter(|r| !r.ok).count();
    Ok(StudyReport {
        config: cfg.clone(),
        l_beta,
        f_max,
        f_min,
        c_alpha,
        c_f: frontier.c_f(),
        rows,
        summary,
        failures,
        rate_fit,
        theory_slope: cfg.beta / (1.0 + cfg.beta),
        warnings,
        meta: Some(StudyMeta {
            threads: if threads == 0 { parallel_width() } else { threads },
            total_seconds: started.elapsed().as_secs_f64(),
            solve_time: times,
        }),
    })
}

fn parallel_width() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get())
}

fn run_one(
    frontier: &FrontierFn,
    kernel: &KernelSpec,
    fit_cfg: &FitConfig,
    cfg: &StudyConfig,
    n: usize,
    r: usize,
) -> StudyRow {
    let seed = replication_seed(cfg.base_seed, n, r);
    let h = estimator::schedule_bandwidth(n, cfg.beta, cfg.h1).map_or(f64::NAN, |b| b.h());
    let nf = n as f64;
    let mut row = StudyRow {
        n,
        replication: r,
        seed,
        h,
        ok: false,
        l1_error: None,
        objective_gap: None,
        shortfall: None,
        relaxation_level: None,
        iterations: None,
        support_size: None,
        realised_ratio: nf.ln() / (nf * h.powf(1.0 + cfg.beta)),
        lipschitz_pass: None,
        surface_pass: None,
        cover_pass: None,
        curvature_pass: None,
        lower_bound_pass: None,
        error: None,
    };
    let model = frontier
        .sample_uniform(n, seed)
        .and_then(|s| estimator::fit(&s, kernel, fit_cfg));
    match model {
        Err(e) => row.error = Some(e.to_string()),
        Ok(m) => {
            let d = m.lemma_diagnostics(frontier);
            let fd = m.diagnostics();
            row.ok = true;
            row.l1_error = Some(m.l1_error(frontier));
            row.objective_gap = Some(d.objective_gap);
            row.shortfall = Some(d.shortfall);
            row.relaxation_level = fd.map(|x| x.relaxation_level);
            row.iterations = fd.map(|x| x.iterations);
            row.support_size = Some(m.support().len());
            row.lipschitz_pass = Some(d.lipschitz.pass);
            row.surface_pass = Some(d.surface.pass);
            row.cover_pass = Some(d.cover_pass);
            row.curvature_pass = Some(d.curvature.pass);
            row.lower_bound_pass = Some(d.lower_bound.pass);
        }
    }
    row
}

fn median(mut v: Vec<f64>) -> Option<f64> {
    if v.is_empty() {
        return None;
    }
    v.sort_by(f64::total_cmp);
    let m = v.len() / 2;
    Some(if v.len() % 2 == 1 { v[m] } else { 0.5 * (v[m - 1] + v[m]) })
}

/// Least squares of `log error` on `log(log n / n)`.
///
/// Nonpositive errors are dropped with a warning; at least four distinct
/// sample sizes must remain.
pub fn fit_rate(points: &[(usize, f64)]) -> Result<RateFit> {
    let mut xy = Vec::new();
    for &(n, e) in points {
        if !(e > 0.0 && e.is_finite()) || n < 2 {
            log::warn!("rate fit: dropping point n = {n}, error = {e}");
            continue;
        }
        let nf = n as f64;
        xy.push((n, (nf.ln() / nf).ln(), e.ln()));
    }
    let mut distinct: Vec<usize> = xy.iter().map(|p| p.0).collect();
    distinct.sort_unstable();
    distinct.dedup();
    if distinct.len() < MIN_RATE_POINTS {
        return Err(Error::Parameter(format!(
            "rate fit needs {MIN_RATE_POINTS} distinct sample sizes with positive error, got {}",
            distinct.len()
        )));
    }
    let m = xy.len() as f64;
    let mx = xy.iter().map(|p| p.1).sum::<f64>() / m;
    let my = xy.iter().map(|p| p.2).sum::<f64>() / m;
    let sxx: f64 = xy.iter().map(|p| (p.1 - mx).powi(2)).sum();
    let sxy: f64 = xy.iter().map(|p| (p.1 - mx) * (p.2 - my)).sum();
    let syy: f64 = xy.iter().map(|p| (p.2 - my).powi(2)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let sse: f64 = xy.iter().map(|p| (p.2 - intercept - slope * p.1).powi(2)).sum();
    let stderr = (sse / (m - 2.0) / sxx).sqrt();
    let r2 = if syy > 0.0 { 1.0 - sse / syy } else { 1.0 };
    Ok(RateFit {
        slope,
        intercept,
        stderr,
        r2,
        points: xy.len(),
    })
}

impl StudyReport {
    /// Drops the run-dependent metadata.
    pub fn without_meta(mut self) -> Self {
        self.meta = None;
        self
    }

    pub fn write_json<W: Write>(&self, w: W) -> Result<()> {
        serde_json::to_writer_pretty(w, self)?;
        Ok(())
    }

    /// One line per fit.
    pub fn write_csv<W: Write>(&self, w: W) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        for row in &self.rows {
            wtr.serialize(row).map_err(|e| Error::Study(e.to_string()))?;
        }
        wtr.flush()?;
        Ok(())
    }
}
