//! Lower-bound (`xmin`) estimation for discrete power-law tails.
//!
//! The crate provides the numerics of the discrete power law (Hurwitz zeta,
//! pmf, tail functions, α fitting), two goodness-of-fit distances, and three
//! ways to pick `xmin`:
//!
//! * [`scan_all`] evaluates the KS (or PMF) distance at every candidate and
//!   keeps the smallest;
//! * [`get_xmin`] starts from a guess and stops at the first clear minimum of
//!   the KS distance;
//! * [`get_xmin2`] does the same with the cheaper PMF distance.
//!
//! [`synth`] generates seeded test data and [`bench`] compares the estimators.

pub mod bench;
pub mod distance;
pub mod error;
pub mod estimators;
pub mod io;
pub mod mle;
pub mod model;
pub mod sample;
pub mod synth;
pub mod zeta;

pub use distance::{ks_distance, pmf_distance, DistanceKind};
pub use error::{Error, Result};
pub use estimators::{
    bootstrap_xmin, candidate_set, fast_scan, get_xmin, get_xmin2, run_until_rising, scan_all,
    start_candidate, Estimator, FastScanConfig, ScanTrace, TracePoint, XminEstimate,
};
pub use mle::{mle_alpha, AlphaFit, AlphaMode};
pub use model::{
    ccdf_continuous, ccdf_discrete, cdf_discrete, pdf_continuous, pmf, ModelKind, PowerLawModel,
};
pub use sample::Sample;
pub use zeta::{hurwitz_zeta, hurwitz_zeta_scaled, ZetaResult};
