use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::Sample;
use crate::error::{Error, Result};
use crate::kernels::KernelId;
use crate::simulation::TrueDensity;
use crate::specfun::{EULER_GAMMA, TRIGAMMA_ONE};

const PI4: f64 = std::f64::consts::PI
    * std::f64::consts::PI
    * std::f64::consts::PI
    * std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum BandwidthMethod {
    Silverman,
    OptimalGe2,
    NumericGe,
    Fixed,
}

impl BandwidthMethod {
    pub fn name(self) -> &'static str {
        match self {
            BandwidthMethod::Silverman => "silverman",
            BandwidthMethod::OptimalGe2 => "optimal-ge2",
            BandwidthMethod::NumericGe => "numeric-ge",
            BandwidthMethod::Fixed => "fixed",
        }
    }
}

impl fmt::Display for BandwidthMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BandwidthMethod {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        [
            BandwidthMethod::Silverman,
            BandwidthMethod::OptimalGe2,
            BandwidthMethod::NumericGe,
            BandwidthMethod::Fixed,
        ]
        .into_iter()
        .find(|m| m.name() == s)
        .ok_or_else(|| format!("unknown bandwidth method {s:?}"))
    }
}

/// A positive bandwidth together with how it was chosen.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Bandwidth {
    pub b: f64,
    pub method: BandwidthMethod,
}

impl Bandwidth {
    pub fn new(b: f64, method: BandwidthMethod) -> Result<Self> {
        if b > 0.0 && b.is_finite() {
            Ok(Self { b, method })
        } else {
            Err(Error::InvalidBandwidth(b))
        }
    }

    pub fn fixed(b: f64) -> Result<Self> {
        Self::new(b, BandwidthMethod::Fixed)
    }
}

/// Maps a Gaussian-scale bandwidth onto the kernel's own scale: unchanged for
/// the GE family, squared for gamma and inverse-Gaussian kernels.
pub fn bandwidth_to_kernel_scale(h: f64, kernel: KernelId) -> f64 {
    if kernel.is_ge_family() {
        h
    } else {
        h * h
    }
}

/// Rule-of-thumb `h = 1.06 sigma n^{-1/5}` with `sigma = min(sd, IQR / 1.349)`.
///
/// A zero IQR (heavy ties) falls back to the standard deviation alone.
pub fn silverman_scale(sample: &Sample) -> Result<f64> {
    let sd = sample.std_dev();
    let iqr = sample.iqr() / 1.349;
    let sigma = if iqr > 0.0 { sd.min(iqr) } else { sd };
    if !(sigma > 0.0) {
        return Err(Error::DegenerateSample);
    }
    Ok(1.06 * sigma * (sample.len() as f64).powf(-0.2))
}

/// Silverman bandwidth on the scale appropriate to `kernel`.
pub fn silverman_bandwidth(sample: &Sample, kernel: KernelId) -> Result<Bandwidth> {
    let h = silverman_scale(sample)?;
    Bandwidth::new(bandwidth_to_kernel_scale(h, kernel), BandwidthMethod::Silverman)
}

/// Minimiser of the GE2 approximate MISE: `(9 / (pi^4 R))^{1/5} n^{-1/5}`,
/// where `R` is the roughness `int f''^2`.
pub fn optimal_bandwidth_ge2(roughness: f64, n: usize) -> Result<Bandwidth> {
    if !(roughness > 0.0 && roughness.is_finite()) {
        return Err(Error::Domain {
            function: "optimal_bandwidth_ge2",
            value: roughness,
            expected: "roughness > 0",
        });
    }
    let b = (9.0 / (PI4 * roughness)).powf(0.2) * (n as f64).powf(-0.2);
    Bandwidth::new(b, BandwidthMethod::OptimalGe2)
}

/// Density functionals in the GE approximate MISE.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MiseCoefficients {
    /// `int f' f''`
    pub a1: f64,
    /// `int f'^2`
    pub a2: f64,
}

/// GE approximate MISE `b^3 g (g^2 + pi^2/6) A1 + b^2 g^2 A2 + 1/(4bn)`.
pub fn ge_amise(b: f64, coeffs: MiseCoefficients, n: usize) -> f64 {
    let g = EULER_GAMMA;
    b * b * b * g * (g * g + TRIGAMMA_ONE) * coeffs.a1
        + b * b * g * g * coeffs.a2
        + 1.0 / (4.0 * b * n as f64)
}

/// GE2 approximate MISE `b^4 pi^4 / 144 R + 1/(4bn)`.
pub fn ge2_amise(b: f64, roughness: f64, n: usize) -> f64 {
    b.powi(4) * PI4 / 144.0 * roughness + 1.0 / (4.0 * b * n as f64)
}

/// Golden-section minimiser of [`ge_amise`] on `(0, b_max]`,
/// `b_max = 10 (4 A2 gamma^2 n)^{-1/3}`.
pub fn numeric_bandwidth_ge(coeffs: MiseCoefficients, n: usize) -> Result<Bandwidth> {
    if !(coeffs.a2 > 0.0 && coeffs.a2.is_finite()) {
        return Err(Error::Domain {
            function: "numeric_bandwidth_ge",
            value: coeffs.a2,
            expected: "A2 > 0",
        });
    }
    if !coeffs.a1.is_finite() {
        return Err(Error::Domain {
            function: "numeric_bandwidth_ge",
            value: coeffs.a1,
            expected: "finite A1",
        });
    }
    let g = EULER_GAMMA;
    let b_max = 10.0 * (4.0 * coeffs.a2 * g * g * n as f64).powf(-1.0 / 3.0);
    let objective = |b: f64| ge_amise(b, coeffs, n);

    let ratio = 0.5 * (5f64.sqrt() - 1.0);
    let (mut lo, mut hi) = (1e-9 * b_max, b_max);
    let mut c = hi - ratio * (hi - lo);
    let mut d = lo + ratio * (hi - lo);
    let (mut fc, mut fd) = (objective(c), objective(d));
    while hi - lo > 1e-8 * 0.5 * (lo + hi) {
        if fc < fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - ratio * (hi - lo);
            fc = objective(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + ratio * (hi - lo);
            fd = objective(d);
        }
    }
    let b = 0.5 * (lo + hi);
    if b >= b_max * (1.0 - 1e-6) {
        return Err(Error::Optimization(format!(
            "approximate MISE has no interior minimum below b_max = {b_max}"
        )));
    }
    Bandwidth::new(b, BandwidthMethod::NumericGe)
}

/// Gamma density matched to the sample's mean and variance.
pub fn gamma_reference(sample: &Sample) -> Result<TrueDensity> {
    let mean = sample.mean();
    let var = sample.variance();
    if !(var > 0.0) {
        return Err(Error::DegenerateSample);
    }
    TrueDensity::gamma(mean * mean / var, var / mean)
}

/// Bandwidth for `kernel` chosen by `method` from the sample alone.
///
/// The plug-in methods use a moment-matched gamma reference density and, like
/// the Silverman rule, square the GE-scale result for non-GE kernels.
pub fn select_bandwidth(
    sample: &Sample,
    kernel: KernelId,
    method: BandwidthMethod,
) -> Result<Bandwidth> {
    let n = sample.len();
    let h = match method {
        BandwidthMethod::Silverman => return silverman_bandwidth(sample, kernel),
        BandwidthMethod::OptimalGe2 => {
            let reference = gamma_reference(sample)?;
            optimal_bandwidth_ge2(reference.roughness()?, n)?.b
        }
        BandwidthMethod::NumericGe => {
            let reference = gamma_reference(sample)?;
            numeric_bandwidth_ge(reference.ge_mise_coefficients()?, n)?.b
        }
        BandwidthMethod::Fixed => {
            return Err(Error::InvalidConfig(
                "a fixed bandwidth needs an explicit value".into(),
            ))
        }
    };
    Bandwidth::new(bandwidth_to_kernel_scale(h, kernel), method)
}
