//! Kernel density estimation for nonnegative data with generalized-exponential,
//! gamma and inverse-Gaussian kernels, plus a Monte Carlo MISE harness.

pub mod error;
pub mod estimator;
pub mod kernels;
pub mod quad;
pub mod simulation;
pub mod specfun;

pub use error::{Error, Result};
pub use estimator::{estimate_density, Bandwidth, BandwidthMethod, DensityEstimate, Sample};
pub use kernels::{KernelId, PreparedKernel};
pub use simulation::{Configuration, TrueDensity};
