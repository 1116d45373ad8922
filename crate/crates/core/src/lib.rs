//! Exact moments, explicit tail bounds and Monte Carlo verification for
//! Poisson U-statistics.
//!
//! The crate is organised bottom-up:
//!
//! - [`combinat`]: subpartitions of row diagrams and Stirling numbers.
//! - [`model`]: kernels, assumption parameter sets and their conversions.
//! - [`moments`]: exact centred moments and moment upper bounds.
//! - [`bounds`]: tail-bound rate functions and Poisson tail estimates.
//! - [`applications`]: presets for random geometric graphs and hyperplane processes.
//! - [`geometry`]: constant-curvature spaces, samplers and graph functionals.
//! - [`experiments`]: the Monte Carlo harness.

pub mod applications;
pub mod bounds;
pub mod combinat;
pub mod error;
pub mod experiments;
pub mod geometry;
pub mod model;
pub mod moments;
pub mod quad;
pub mod rng;
pub mod special;

pub use error::{Error, Result};

/// Version string embedded in every serialized report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");
