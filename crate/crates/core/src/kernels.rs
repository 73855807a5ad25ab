//! Asymmetric kernels on `(0, inf)`, evaluated as log densities.
//!
//! Every kernel is a density in the datum `z`, parameterised by the evaluation
//! point `x` and the bandwidth `b`:
//!
//! * `GE`: generalised exponential with shape `exp(x/b)` and scale `b`; its mode is `x`.
//! * `GE2`: generalised exponential with shape `psi^{-1}(x/b - gamma) - 1`; its mean is `x`.
//! * `Gam1`, `Gam2`: gamma kernels with shapes `x/b + 1` and the spliced `rho_b(x)`.
//! * `IG`, `RIG`: inverse Gaussian and reciprocal inverse Gaussian kernels.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::specfun::{self, EULER_GAMMA, TRIGAMMA_ONE};

const LN_2PI: f64 = 1.837_877_066_409_345_5;

/// Above this `x/b` the GE shape `exp(x/b)` is handled in the log domain only.
const GE_SHAPE_LOG_THRESHOLD: f64 = 700.0;

/// Above this `z/b`, `ln(1 - exp(-z/b))` uses its two-term expansion.
const GE_TAIL_THRESHOLD: f64 = 36.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelId {
    Ge,
    Ge2,
    Gam1,
    Gam2,
    Ig,
    Rig,
}

impl KernelId {
    pub const ALL: [KernelId; 6] = [
        KernelId::Ge,
        KernelId::Ge2,
        KernelId::Gam1,
        KernelId::Gam2,
        KernelId::Ig,
        KernelId::Rig,
    ];

    /// Kernels used when none are requested explicitly (IG is opt-in).
    pub const DEFAULT_SET: [KernelId; 5] = [
        KernelId::Ge,
        KernelId::Ge2,
        KernelId::Gam1,
        KernelId::Gam2,
        KernelId::Rig,
    ];

    /// Canonical lowercase name.
    pub fn name(self) -> &'static str {
        match self {
            KernelId::Ge => "ge",
            KernelId::Ge2 => "ge2",
            KernelId::Gam1 => "gam1",
            KernelId::Gam2 => "gam2",
            KernelId::Ig => "ig",
            KernelId::Rig => "rig",
        }
    }

    /// Display label used in result tables.
    pub fn label(self) -> &'static str {
        match self {
            KernelId::Ge => "GE",
            KernelId::Ge2 => "GE2",
            KernelId::Gam1 => "Gam1",
            KernelId::Gam2 => "Gam2",
            KernelId::Ig => "IG",
            KernelId::Rig => "RIG",
        }
    }

    /// Whether the bandwidth lives on the scale of a Gaussian bandwidth (GE family)
    /// rather than its square (gamma and inverse-Gaussian families).
    pub fn is_ge_family(self) -> bool {
        matches!(self, KernelId::Ge | KernelId::Ge2)
    }
}

impl fmt::Display for KernelId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UnknownKernel(pub String);

impl fmt::Display for UnknownKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "unknown kernel {:?} (expected one of ge, ge2, gam1, gam2, ig, rig)",
            self.0
        )
    }
}

impl std::error::Error for UnknownKernel {}

impl FromStr for KernelId {
    type Err = UnknownKernel;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        KernelId::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| UnknownKernel(s.to_string()))
    }
}

/// Evaluation location `x`, bandwidth `b` and datum `z`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KernelPoint {
    pub x: f64,
    pub b: f64,
    pub z: f64,
}

impl KernelPoint {
    pub fn new(x: f64, b: f64, z: f64) -> Self {
        Self { x, b, z }
    }
}

fn check_location(id: KernelId, x: f64, b: f64) -> Result<()> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::InvalidBandwidth(b));
    }
    let ok = if id == KernelId::Ge { x >= 0.0 } else { x > 0.0 };
    if !(ok && x.is_finite()) {
        return Err(Error::Domain {
            function: "log_kernel",
            value: x,
            expected: if id == KernelId::Ge {
                "evaluation point x >= 0"
            } else {
                "evaluation point x > 0"
            },
        });
    }
    if id == KernelId::Rig && x <= b {
        return Err(Error::BoundaryDegeneracy { x, b });
    }
    Ok(())
}

/// `ln K(z)` for the selected kernel.
pub fn log_kernel(id: KernelId, p: KernelPoint) -> Result<f64> {
    if !(p.z > 0.0 && p.z.is_finite()) {
        return Err(Error::Domain {
            function: "log_kernel",
            value: p.z,
            expected: "datum z > 0",
        });
    }
    Ok(PreparedKernel::new(id, p.x, p.b)?.ln_density(p.z))
}

/// GE2 shape `nu = psi^{-1}(x/b - gamma) - 1`, chosen so the kernel mean is `x`.
///
/// Overflows to infinity once `x/b` exceeds about 709; use the log form in that regime.
pub fn ge2_shape(x: f64, b: f64) -> Result<f64> {
    check_shape_args("ge2_shape", x, b)?;
    let y = x / b - EULER_GAMMA;
    if y > GE_SHAPE_LOG_THRESHOLD {
        return Ok(y.exp() - 0.5);
    }
    Ok(specfun::inverse_digamma(y)? - 1.0)
}

/// `ln nu(x/b)`, stable for arbitrarily large `x/b`.
pub fn ge2_log_shape(x: f64, b: f64) -> Result<f64> {
    Ok(ge2_parameters(x, b)?.ln_alpha)
}

/// Gam2 shape: `x/b` for `x >= 2b`, `(x/b)^2 / 4 + 1` below.
pub fn gam2_shape(x: f64, b: f64) -> Result<f64> {
    check_shape_args("gam2_shape", x, b)?;
    let r = x / b;
    Ok(if x >= 2.0 * b { r } else { 0.25 * r * r + 1.0 })
}

fn check_shape_args(function: &'static str, x: f64, b: f64) -> Result<()> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::InvalidBandwidth(b));
    }
    if !(x >= 0.0 && x.is_finite()) {
        return Err(Error::Domain {
            function,
            value: x,
            expected: "x >= 0",
        });
    }
    Ok(())
}

/// GE shape held as `ln(alpha)` together with `alpha - 1` (infinite when alpha overflows).
#[derive(Debug, Clone, Copy, PartialEq)]
struct GeShape {
    ln_alpha: f64,
    alpha_m1: f64,
}

impl GeShape {
    fn alpha_plus_one_digamma(&self) -> f64 {
        if self.alpha_m1.is_finite() && self.ln_alpha < 30.0 {
            specfun::digamma_unchecked(self.alpha_m1 + 2.0)
        } else {
            // psi(alpha + 1) = ln(alpha) + 1/(2 alpha) + O(alpha^-2)
            self.ln_alpha + 0.5 * (-self.ln_alpha).exp()
        }
    }

    fn alpha_plus_one_trigamma(&self) -> f64 {
        if self.alpha_m1.is_finite() && self.ln_alpha < 30.0 {
            specfun::trigamma_unchecked(self.alpha_m1 + 2.0)
        } else {
            (-self.ln_alpha).exp()
        }
    }
}

fn ge_parameters(x: f64, b: f64) -> GeShape {
    let r = x / b;
    GeShape {
        ln_alpha: r,
        alpha_m1: if r > GE_SHAPE_LOG_THRESHOLD {
            f64::INFINITY
        } else {
            r.exp_m1()
        },
    }
}

fn ge2_parameters(x: f64, b: f64) -> Result<GeShape> {
    check_shape_args("ge2_shape", x, b)?;
    let y = x / b - EULER_GAMMA;
    if y > GE_SHAPE_LOG_THRESHOLD {
        // psi^{-1}(y) = e^y + 1/2 + O(e^-y)
        return Ok(GeShape {
            ln_alpha: y + (-0.5 * (-y).exp()).ln_1p(),
            alpha_m1: f64::INFINITY,
        });
    }
    let w = specfun::inverse_digamma(y)?;
    Ok(GeShape {
        ln_alpha: (w - 1.0).ln(),
        alpha_m1: w - 2.0,
    })
}

/// `ln(1 - exp(-u))` for `u > 0`.
fn ln_one_minus_exp_neg(u: f64) -> f64 {
    if u > GE_TAIL_THRESHOLD {
        let e = (-u).exp();
        -e - 0.5 * e * e
    } else if u > std::f64::consts::LN_2 {
        (-(-u).exp()).ln_1p()
    } else {
        (-(-u).exp_m1()).ln()
    }
}

/// `ln(-ln(1 - exp(-u)))` for `u > 0`.
fn ln_neg_ln_one_minus_exp_neg(u: f64) -> f64 {
    if u > GE_TAIL_THRESHOLD {
        -u + (0.5 * (-u).exp()).ln_1p()
    } else {
        (-ln_one_minus_exp_neg(u)).ln()
    }
}

/// A kernel with every constant that depends only on `(x, b)` precomputed.
///
/// Building one per evaluation point is what keeps the GE2 inverse digamma
/// out of the inner loop over data.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PreparedKernel {
    id: KernelId,
    x: f64,
    b: f64,
    form: Form,
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Form {
    Ge { shape: GeShape, ln_norm: f64 },
    Gamma { shape: f64, ln_norm: f64 },
    InverseGaussian { ln_norm: f64 },
    Reciprocal { m: f64, ln_norm: f64 },
}

impl PreparedKernel {
    pub fn new(id: KernelId, x: f64, b: f64) -> Result<Self> {
        check_location(id, x, b)?;
        let form = match id {
            KernelId::Ge | KernelId::Ge2 => {
                let shape = if id == KernelId::Ge {
                    ge_parameters(x, b)
                } else {
                    ge2_parameters(x, b)?
                };
                Form::Ge {
                    shape,
                    ln_norm: shape.ln_alpha - b.ln(),
                }
            }
            KernelId::Gam1 | KernelId::Gam2 => {
                let shape = if id == KernelId::Gam1 {
                    x / b + 1.0
                } else {
                    gam2_shape(x, b)?
                };
                Form::Gamma {
                    shape,
                    ln_norm: -shape * b.ln() - specfun::log_gamma_unchecked(shape),
                }
            }
            KernelId::Ig => Form::InverseGaussian {
                ln_norm: -0.5 * (LN_2PI + b.ln()),
            },
            KernelId::Rig => Form::Reciprocal {
                m: x - b,
                ln_norm: -0.5 * (LN_2PI + b.ln()),
            },
        };
        Ok(Self { id, x, b, form })
    }

    pub fn id(&self) -> KernelId {
        self.id
    }

    /// `ln K(z)`; `z` must be positive.
    pub fn ln_density(&self, z: f64) -> f64 {
        let (x, b) = (self.x, self.b);
        match self.form {
            Form::Ge { shape, ln_norm } => {
                let u = z / b;
                let tilt = if shape.alpha_m1 == 0.0 {
                    0.0
                } else if shape.alpha_m1.is_finite() {
                    shape.alpha_m1 * ln_one_minus_exp_neg(u)
                } else {
                    -(shape.ln_alpha + ln_neg_ln_one_minus_exp_neg(u)).exp()
                };
                ln_norm + tilt - u
            }
            Form::Gamma { shape, ln_norm } => {
                let power = if shape == 1.0 {
                    0.0
                } else {
                    (shape - 1.0) * z.ln()
                };
                ln_norm + power - z / b
            }
            Form::InverseGaussian { ln_norm } => {
                let d = z - x;
                ln_norm - 1.5 * z.ln() - d * d / (2.0 * b * x * x * z)
            }
            Form::Reciprocal { m, ln_norm } => {
                let d = z - m;
                ln_norm - 0.5 * z.ln() - d * d / (2.0 * b * z)
            }
        }
    }

    pub fn density(&self, z: f64) -> f64 {
        self.ln_density(z).exp()
    }

    /// Mean and standard deviation of the kernel as a distribution in `z`.
    pub fn mean_and_sd(&self) -> (f64, f64) {
        let (x, b) = (self.x, self.b);
        match self.form {
            Form::Ge { shape, .. } => {
                let mean = b * (shape.alpha_plus_one_digamma() + EULER_GAMMA);
                let var = (TRIGAMMA_ONE - shape.alpha_plus_one_trigamma()).max(0.0);
                (mean, b * var.sqrt())
            }
            Form::Gamma { shape, .. } => (shape * b, b * shape.sqrt()),
            Form::InverseGaussian { .. } => (x, (x * x * x * b).sqrt()),
            Form::Reciprocal { m, .. } => (x, (m * b + 2.0 * b * b).sqrt()),
        }
    }

    /// Quadrature breakpoints that bracket the kernel's bulk.
    pub fn breakpoints(&self) -> Vec<f64> {
        let (mean, sd) = self.mean_and_sd();
        let mut points = crate::quad::breakpoints_around(mean, sd);
        if self.x > 0.0 {
            points.push(self.x);
        }
        points.sort_by(f64::total_cmp);
        points
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip_and_reject_others() {
        for k in KernelId::ALL {
            assert_eq!(k.name().parse::<KernelId>().unwrap(), k);
        }
        for bad in ["GE", "gamma", "", "ge3", " ge"] {
            assert!(bad.parse::<KernelId>().is_err(), "{bad}");
        }
    }

    #[test]
    fn ge_at_zero_is_unit_exponential() {
        let v = log_kernel(KernelId::Ge, KernelPoint::new(0.0, 1.0, 2.0)).unwrap();
        assert!((v + 2.0).abs() < 1e-15);
    }

    #[test]
    fn gam1_direct_formula() {
        // z^{x/b} e^{-z/b} / (b^{x/b+1} Gamma(x/b+1)) at x=1, b=0.5, z=1
        let direct = (-2.0f64).exp() / (0.125 * 2.0);
        let v = log_kernel(KernelId::Gam1, KernelPoint::new(1.0, 0.5, 1.0)).unwrap();
        assert!((v - direct.ln()).abs() < 1e-13);
    }

    #[test]
    fn gam2_shape_branches() {
        assert_eq!(gam2_shape(1.0, 0.5).unwrap(), 2.0);
        assert_eq!(gam2_shape(0.0, 0.3).unwrap(), 1.0);
        assert_eq!(gam2_shape(3.0, 0.5).unwrap(), 6.0);
        let r = 2.0 - 1e-12;
        assert!((gam2_shape(r * 0.5, 0.5).unwrap() - 2.0).abs() < 1e-11);
    }

    #[test]
    fn ge2_shape_at_zero() {
        assert!(ge2_shape(0.0, 1.0).unwrap().abs() < 1e-12);
    }

    #[test]
    fn ge2_log_shape_asymptotic() {
        let ln_nu = ge2_log_shape(5.0, 0.05).unwrap();
        assert!((ln_nu - (100.0 - EULER_GAMMA)).abs() < 1e-6);
        let far = ge2_log_shape(10.0, 0.01).unwrap();
        assert!((far - (1000.0 - EULER_GAMMA)).abs() < 1e-9);
    }

    #[test]
    fn rig_rejects_boundary() {
        assert_eq!(
            log_kernel(KernelId::Rig, KernelPoint::new(0.1, 0.1, 1.0)),
            Err(Error::BoundaryDegeneracy { x: 0.1, b: 0.1 })
        );
        assert!(log_kernel(KernelId::Rig, KernelPoint::new(0.2, 0.1, 1.0)).is_ok());
    }

    #[test]
    fn invalid_points() {
        assert!(log_kernel(KernelId::Ge, KernelPoint::new(1.0, 0.0, 1.0)).is_err());
        assert!(log_kernel(KernelId::Ge, KernelPoint::new(1.0, 1.0, 0.0)).is_err());
        assert!(log_kernel(KernelId::Gam1, KernelPoint::new(0.0, 1.0, 1.0)).is_err());
        assert!(log_kernel(KernelId::Ge, KernelPoint::new(-1.0, 1.0, 1.0)).is_err());
    }

    #[test]
    fn ge_overflow_robust() {
        let v = log_kernel(KernelId::Ge, KernelPoint::new(10.0, 0.01, 10.0)).unwrap();
        assert!(v.is_finite());
        // at the mode z = x: ln(alpha/b) + (alpha - 1) ln(1 - 1/alpha) - x/b -> ln(1/b) - 1
        assert!((v - ((100.0f64).ln() - 1.0)).abs() < 1e-9);
    }
}
