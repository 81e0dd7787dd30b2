//! Frontier estimation from points drawn uniformly under a 1-periodic curve.
//!
//! The estimate is a nonnegative combination of periodic compact-support
//! kernels centred on the sample abscissas. Its coefficients minimise the
//! enclosed area subject to local-linear covering constraints, a curvature
//! cap at every sample point and a coefficient-mass cap per bin. The crate
//! provides the kernel, ground-truth frontiers and an exact sampler, the LP
//! assembly, a revised simplex solver, the fitted model with its error
//! metrics, and a Monte Carlo study of the L1 convergence rate.
//!
//! ```no_run
//! use frontier_core::{estimator, frontier::FrontierFn, kernel::KernelSpec};
//!
//! let f = FrontierFn::sine(1.0, 0.5)?;
//! let sample = f.sample_uniform(400, 7)?;
//! let kernel = KernelSpec::default_kernel();
//! let cfg = estimator::FitConfig::new(2.0, f.l_beta(), f.f_max());
//! let model = estimator::fit(&sample, &kernel, &cfg)?;
//! println!("L1 error {}", model.l1_error(&f));
//! # Ok::<(), frontier_core::Error>(())
//! ```

pub mod error;
pub mod estimator;
pub mod frontier;
pub mod io;
pub mod kernel;
pub mod lp_model;
pub mod parallel;
pub mod quadrature;
pub mod simplex;
pub mod study;

pub use error::{Error, Result};
pub use estimator::{EstimatorModel, FitConfig};
pub use frontier::{FrontierFn, SampleSet};
pub use kernel::{Bandwidth, KernelSpec};
pub use lp_model::FrontierLp;
pub use simplex::{SolveOptions, SolveResult, Status};
pub use study::{StudyConfig, StudyReport};
