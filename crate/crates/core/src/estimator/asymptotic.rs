//! Leading-order bias and variance of the GE estimators, and the exact
//! pointwise moments they approximate.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::kernels::{KernelId, PreparedKernel};
use crate::quad::{self, Tolerance};
use crate::simulation::TrueDensity;
use crate::specfun::{self, EULER_GAMMA, TRIGAMMA_ONE};

/// Interior (`x/b -> inf`) or boundary (`x/b -> c`) asymptotics.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum AsymptoticRegime {
    Interior,
    Boundary { c: f64 },
}

impl AsymptoticRegime {
    pub fn boundary(c: f64) -> Result<Self> {
        if c >= 0.0 && c.is_finite() {
            Ok(AsymptoticRegime::Boundary { c })
        } else {
            Err(Error::Domain {
                function: "AsymptoticRegime::boundary",
                value: c,
                expected: "c >= 0",
            })
        }
    }
}

/// Leading bias term. `f1` and `f2` are `f'` and `f''` at the evaluation point
/// (`f'(0)` in the boundary regime).
pub fn asymptotic_bias(
    kernel: KernelId,
    regime: AsymptoticRegime,
    b: f64,
    f1: f64,
    f2: f64,
) -> Result<f64> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::InvalidBandwidth(b));
    }
    let g = EULER_GAMMA;
    match (kernel, regime) {
        (KernelId::Ge, AsymptoticRegime::Interior) => {
            Ok(b * g * f1 + 0.5 * (g * g + TRIGAMMA_ONE) * b * b * f2)
        }
        (KernelId::Ge, AsymptoticRegime::Boundary { c }) => {
            let psi = boundary_digamma(c);
            Ok(b * (psi + g - c) * f1)
        }
        (KernelId::Ge2, AsymptoticRegime::Interior) => Ok(TRIGAMMA_ONE / 2.0 * b * b * f2),
        _ => Err(Error::Domain {
            function: "asymptotic_bias",
            value: b,
            expected: "GE in either regime or GE2 in the interior",
        }),
    }
}

// psi(e^c + 1), switching to the log form once e^c overflows
fn boundary_digamma(c: f64) -> f64 {
    if c < 700.0 {
        specfun::digamma_unchecked(c.exp() + 1.0)
    } else {
        c
    }
}

/// Leading variance term `f(x) / (4bn)`, scaled by `e^c / (e^c - 1/2)` at the boundary.
pub fn asymptotic_variance(regime: AsymptoticRegime, b: f64, n: usize, fx: f64) -> Result<f64> {
    if !(b > 0.0 && b.is_finite()) {
        return Err(Error::InvalidBandwidth(b));
    }
    if n == 0 || !(fx >= 0.0) {
        return Err(Error::Domain {
            function: "asymptotic_variance",
            value: fx,
            expected: "n >= 1 and f(x) >= 0",
        });
    }
    let base = fx / (4.0 * b * n as f64);
    Ok(match regime {
        AsymptoticRegime::Interior => base,
        AsymptoticRegime::Boundary { c } => base / (1.0 - 0.5 * (-c).exp()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EstimatorMoments {
    pub mean: f64,
    pub variance: f64,
}

/// `E f_hat(x) = int K f` and `Var f_hat(x) = (int K^2 f - (int K f)^2) / n` by quadrature.
pub fn exact_estimator_moments(
    kernel: KernelId,
    x: f64,
    b: f64,
    f: &TrueDensity,
    n: usize,
) -> Result<EstimatorMoments> {
    if n == 0 {
        return Err(Error::SampleTooSmall(0));
    }
    let prepared = PreparedKernel::new(kernel, x, b)?;
    let mut points = prepared.breakpoints();
    points.extend(f.breakpoints());
    let tol = Tolerance::absolute(1e-10);

    let first = quad::integrate_positive(
        |z| {
            let pz = f.pdf(z);
            if pz > 0.0 {
                (prepared.ln_density(z) + pz.ln()).exp()
            } else {
                0.0
            }
        },
        &points,
        tol,
    )?;
    let second = quad::integrate_positive(
        |z| {
            let pz = f.pdf(z);
            if pz > 0.0 {
                (2.0 * prepared.ln_density(z) + pz.ln()).exp()
            } else {
                0.0
            }
        },
        &points,
        tol,
    )?;
    Ok(EstimatorMoments {
        mean: first.value,
        variance: (second.value - first.value * first.value) / n as f64,
    })
}
