//! `frontier-lp`: sample, fit, solve and study the kernel LP frontier estimator.

use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use frontier_core::estimator::{self, FitConfig};
use frontier_core::frontier::FrontierFn;
use frontier_core::kernel::{check_bochner_identities, Bandwidth, KernelSpec};
use frontier_core::lp_model::{self, LpConstants};
use frontier_core::simplex::{self, Algorithm, SolveOptions};
use frontier_core::study::{self, StudyConfig};
use frontier_core::{io as fio, parallel};

/// Identity deviations above this are reported as failures by `check-kernel`.
const IDENTITY_TOL: f64 = 1e-8;

#[derive(Parser)]
#[command(name = "frontier-lp", version, about = "Kernel LP estimator of a periodic support frontier")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Draw points uniformly under a built-in frontier.
    Sample(SampleArgs),
    /// Fit the estimator to a sample file.
    Fit(FitArgs),
    /// Solve an LP in the `frontier-lp v1` text format.
    Solve(SolveArgs),
    /// Check the unit-mass and first-moment identities of the periodic kernel.
    CheckKernel(CheckKernelArgs),
    /// Run a Monte Carlo convergence study.
    Study(StudyArgs),
    /// Evaluate derivative and bound diagnostics of a fitted model.
    Diagnose(DiagnoseArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum FrontierName {
    Constant,
    Sine,
    SumOfSines,
}

#[derive(Args)]
struct FrontierArgs {
    /// Built-in frontier.
    #[arg(long, value_enum)]
    frontier: FrontierName,
    /// Level of the constant frontier.
    #[arg(long, default_value_t = 2.0)]
    value: f64,
    /// Offset a0 of the sine frontiers.
    #[arg(long, default_value_t = 1.0)]
    a0: f64,
    /// Amplitude a1 of sin(2 pi x).
    #[arg(long, default_value_t = 0.5)]
    a1: f64,
    /// Amplitude a2 of cos(4 pi x) (sum-of-sines only).
    #[arg(long, default_value_t = 0.25)]
    a2: f64,
}

impl FrontierArgs {
    fn build(&self) -> Result<FrontierFn> {
        let f = match self.frontier {
            FrontierName::Constant => FrontierFn::constant(self.value)?,
            FrontierName::Sine => FrontierFn::sine(self.a0, self.a1)?,
            FrontierName::SumOfSines => FrontierFn::sum_of_sines(self.a0, self.a1, self.a2)?,
        };
        Ok(f)
    }
}

#[derive(Args)]
struct SampleArgs {
    #[command(flatten)]
    frontier: FrontierArgs,
    /// Number of points.
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Output file (`.json` for JSON, CSV otherwise); stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct FitArgs {
    /// Sample file (`.json` or CSV with an `x,y` header).
    #[arg(long = "in")]
    input: PathBuf,
    /// Smoothness exponent in (1, 2].
    #[arg(long)]
    beta: f64,
    /// Hölder coefficient of the derivative.
    #[arg(long)]
    lbeta: f64,
    /// Upper bound of the frontier.
    #[arg(long)]
    fmax: f64,
    /// Bandwidth prefactor.
    #[arg(long, default_value_t = 1.0)]
    h1: f64,
    /// Coefficient mass cap; defaults to 8 fmax.
    #[arg(long)]
    calpha: Option<f64>,
    /// Model JSON output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// CSV of the fitted curve on a uniform grid.
    #[arg(long)]
    grid_out: Option<PathBuf>,
    /// Points on the `--grid-out` grid.
    #[arg(long, default_value_t = 1001)]
    grid_points: usize,
    /// Also write the LP in text form.
    #[arg(long)]
    lp_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgorithmName {
    Auto,
    Primal,
    Dual,
}

#[derive(Args)]
struct SolveArgs {
    /// LP file in the `frontier-lp v1` format.
    #[arg(long)]
    lp: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    algorithm: AlgorithmName,
    #[arg(long, default_value_t = 1e-8)]
    tol_feas: f64,
    #[arg(long, default_value_t = 1e-9)]
    tol_opt: f64,
    #[arg(long, default_value_t = 1_000_000)]
    max_iters: usize,
    /// Result JSON output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct CheckKernelArgs {
    /// Grid points per identity.
    #[arg(long, default_value_t = 101)]
    grid: usize,
    /// Bandwidths to check.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.05, 0.1, 0.2])]
    h: Vec<f64>,
    /// Exit with status 1 when a deviation exceeds 1e-8.
    #[arg(long)]
    strict: bool,
}

#[derive(Args)]
struct StudyArgs {
    /// Study configuration JSON.
    #[arg(long)]
    config: PathBuf,
    /// Report JSON output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Flat CSV of the per-fit rows.
    #[arg(long)]
    csv: Option<PathBuf>,
    /// Omit run-dependent metadata so reports compare byte for byte.
    #[arg(long)]
    no_meta: bool,
    /// Worker threads; overrides the config and FRONTIER_LP_THREADS.
    #[arg(long)]
    threads: Option<usize>,
}

#[derive(Args)]
struct DiagnoseArgs {
    /// Model JSON written by `fit`.
    #[arg(long)]
    model: PathBuf,
    #[command(flatten)]
    frontier: FrontierArgs,
    /// Report JSON output; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    parallel::configure_global(parallel::default_threads());
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}

fn run(cmd: Command) -> Result<()> {
    match cmd {
        Command::Sample(a) => sample(a),
        Command::Fit(a) => fit(a),
        Command::Solve(a) => solve(a),
        Command::CheckKernel(a) => check_kernel(a),
        Command::Study(a) => run_study(a),
        Command::Diagnose(a) => diagnose(a),
    }
}

/// Opens `path` for writing, or stdout.
fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("cannot create {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout())),
    })
}

fn write_json<T: serde::Serialize>(value: &T, path: Option<&Path>) -> Result<()> {
    let mut w = output(path)?;
    serde_json::to_writer_pretty(&mut w, value)?;
    writeln!(w)?;
    w.flush()?;
    Ok(())
}

fn sample(a: SampleArgs) -> Result<()> {
    let f = a.frontier.build()?;
    let s = f.sample_uniform(a.n, a.seed)?;
    match &a.out {
        Some(p) => fio::write_sample(&s, p).with_context(|| format!("cannot write {}", p.display()))?,
        None => {
            let mut w = output(None)?;
            fio::write_sample_csv(&s, &mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn fit(a: FitArgs) -> Result<()> {
    let s = fio::read_sample(&a.input).with_context(|| format!("cannot read {}", a.input.display()))?;
    let kernel = KernelSpec::default_kernel();
    let mut cfg = FitConfig::new(a.beta, a.lbeta, a.fmax);
    cfg.h1 = a.h1;
    cfg.c_alpha = a.calpha;
    if let Some(p) = &a.lp_out {
        let bw = Bandwidth::schedule(s.n(), a.beta, a.h1)?;
        let consts = LpConstants {
            l_beta: a.lbeta,
            c_alpha: cfg.c_alpha(),
            f_max: a.fmax,
        };
        let lp = lp_model::build_lp(&s, &kernel, &bw, &consts)?;
        let mut w = output(Some(p))?;
        lp.write_text(&mut w)?;
        w.flush()?;
    }
    let model = estimator::fit(&s, &kernel, &cfg)?;
    if let Some(p) = &a.grid_out {
        let mut w = output(Some(p))?;
        fio::write_grid_csv(&model, None, a.grid_points, &mut w)?;
        w.flush()?;
    }
    write_json(&model, a.out.as_deref())
}

fn solve(a: SolveArgs) -> Result<()> {
    let file = File::open(&a.lp).with_context(|| format!("cannot read {}", a.lp.display()))?;
    let text = lp_model::read_text(BufReader::new(file))?;
    let opts = SolveOptions {
        tol_feas: a.tol_feas,
        tol_opt: a.tol_opt,
        max_iters: a.max_iters,
        algorithm: match a.algorithm {
            AlgorithmName::Auto => Algorithm::Auto,
            AlgorithmName::Primal => Algorithm::PrimalTwoPhase,
            AlgorithmName::Dual => Algorithm::DualLazyRows,
        },
    };
    let result = simplex::solve(&text.lp, &opts);
    write_json(&result, a.out.as_deref())
}

fn check_kernel(a: CheckKernelArgs) -> Result<()> {
    let spec = KernelSpec::default_kernel();
    let mut worst = 0.0_f64;
    println!(
        "{:>6} {:>14} {:>14} {:>14} {:>14}  status",
        "h", "mass_u", "moment_u", "mass_x", "moment_x"
    );
    for &h in &a.h {
        let bw = Bandwidth::fixed(h)?;
        let r = check_bochner_identities(&spec, &bw, a.grid)?;
        let status = if r.max_deviation() <= IDENTITY_TOL { "pass" } else { "FAIL" };
        println!(
            "{:>6} {:>14.3e} {:>14.3e} {:>14.3e} {:>14.3e}  {status}",
            h, r.unit_mass_u, r.first_moment_u, r.unit_mass_x, r.first_moment_x
        );
        println!(
            "{:>6} moment_x restricted to [h, 1 - h]: {:.3e}",
            "", r.first_moment_x_interior
        );
        worst = worst.max(r.max_deviation());
    }
    if a.strict && worst > IDENTITY_TOL {
        bail!("largest identity deviation {worst:e} exceeds {IDENTITY_TOL:e}");
    }
    Ok(())
}

fn run_study(a: StudyArgs) -> Result<()> {
    let file = File::open(&a.config).with_context(|| format!("cannot read {}", a.config.display()))?;
    let mut cfg: StudyConfig = serde_json::from_reader(BufReader::new(file)).map_err(fio::json_error)?;
    if let Some(t) = a.threads {
        cfg.parallelism = t;
    } else if cfg.parallelism == 0 {
        cfg.parallelism = parallel::default_threads();
    }
    let mut report = study::run_study(&cfg)?;
    if a.no_meta {
        report = report.without_meta();
    }
    if let Some(p) = &a.csv {
        let mut w = output(Some(p))?;
        report.write_csv(&mut w)?;
        w.flush()?;
    }
    write_json(&report, a.out.as_deref())
}

fn diagnose(a: DiagnoseArgs) -> Result<()> {
    let model = fio::read_model(&a.model).with_context(|| format!("cannot read {}", a.model.display()))?;
    let f = a.frontier.build()?;
    let d = model.lemma_diagnostics(&f);
    let report = serde_json::json!({
        "l1_error": model.l1_error(&f),
        "hard_pass": d.hard_pass(),
        "diagnostics": d,
    });
    write_json(&report, a.out.as_deref())
}
