//! Log-gamma, digamma, trigamma and the inverse digamma function.
//!
//! Digamma and trigamma shift the argument upward with the recurrences
//! `psi(x+1) = psi(x) + 1/x` and `psi'(x+1) = psi'(x) - 1/x^2` until it reaches
//! the asymptotic cutoff, then sum seven terms of the Bernoulli series.
//! The inverse digamma is a Newton iteration on `psi(x) - y`.

use crate::error::{Error, Result};

/// Euler-Mascheroni constant, `-psi(1)`.
pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// `psi'(1) = pi^2 / 6`.
pub const TRIGAMMA_ONE: f64 = std::f64::consts::PI * std::f64::consts::PI / 6.0;

const HALF_LN_2PI: f64 = 0.918_938_533_204_672_8;

// B_{2k} / (2k), k = 1..7
const DIGAMMA_SERIES: [f64; 7] = [
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
];

// B_{2k}, k = 1..7
const TRIGAMMA_SERIES: [f64; 7] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
];

// B_{2k} / (2k (2k - 1)), k = 1..8
const STIRLING_SERIES: [f64; 8] = [
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
    -691.0 / 360_360.0,
    1.0 / 156.0,
    -3617.0 / 122_400.0,
];

const LOG_GAMMA_SHIFT: f64 = 10.0;

/// Numerical controls for the special functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpecFunConfig {
    /// Absolute tolerance on `|psi(x) - y|` for the inverse digamma.
    pub newton_tol: f64,
    pub newton_max_iter: usize,
    /// Arguments at or above this use the asymptotic series directly.
    pub asymptotic_cutoff: f64,
}

impl Default for SpecFunConfig {
    fn default() -> Self {
        Self {
            newton_tol: 1e-12,
            newton_max_iter: 100,
            asymptotic_cutoff: 6.0,
        }
    }
}

impl SpecFunConfig {
    pub fn new(newton_tol: f64, newton_max_iter: usize, asymptotic_cutoff: f64) -> Result<Self> {
        if !(newton_tol > 0.0 && newton_tol.is_finite()) {
            return Err(Error::Domain {
                function: "SpecFunConfig",
                value: newton_tol,
                expected: "newton_tol > 0",
            });
        }
        if newton_max_iter == 0 {
            return Err(Error::Domain {
                function: "SpecFunConfig",
                value: 0.0,
                expected: "newton_max_iter >= 1",
            });
        }
        if !(asymptotic_cutoff >= 6.0 && asymptotic_cutoff.is_finite()) {
            return Err(Error::Domain {
                function: "SpecFunConfig",
                value: asymptotic_cutoff,
                expected: "asymptotic_cutoff >= 6",
            });
        }
        Ok(Self {
            newton_tol,
            newton_max_iter,
            asymptotic_cutoff,
        })
    }

    pub fn digamma(&self, x: f64) -> Result<f64> {
        check_positive("digamma", x)?;
        Ok(digamma_with_cutoff(x, self.asymptotic_cutoff))
    }

    pub fn trigamma(&self, x: f64) -> Result<f64> {
        check_positive("trigamma", x)?;
        Ok(trigamma_with_cutoff(x, self.asymptotic_cutoff))
    }

    /// Solves `psi(x) = y` for `x > 0`.
    pub fn inverse_digamma(&self, y: f64) -> Result<f64> {
        if !y.is_finite() {
            return Err(Error::Domain {
                function: "inverse_digamma",
                value: y,
                expected: "finite argument",
            });
        }
        if y > f64::MAX.ln() {
            return Err(Error::Domain {
                function: "inverse_digamma",
                value: y,
                expected: "y <= ln(f64::MAX)",
            });
        }
        let cutoff = self.asymptotic_cutoff;
        let mut x = if y >= -2.22 {
            y.exp() + 0.5
        } else {
            -1.0 / (y + EULER_GAMMA)
        };
        let mut residual = digamma_with_cutoff(x, cutoff) - y;
        for _ in 0..self.newton_max_iter {
            if residual.abs() <= self.newton_tol {
                return Ok(x);
            }
            let step = residual / trigamma_with_cutoff(x, cutoff);
            let mut next = x - step;
            if next <= 0.0 {
                next = 0.5 * x;
            }
            if next == x {
                break;
            }
            x = next;
            residual = digamma_with_cutoff(x, cutoff) - y;
        }
        if residual.abs() <= self.newton_tol {
            return Ok(x);
        }
        Err(Error::Convergence {
            iterations: self.newton_max_iter,
            last: x,
            residual,
        })
    }
}

fn check_positive(function: &'static str, x: f64) -> Result<()> {
    if x > 0.0 && x.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain {
            function,
            value: x,
            expected: "finite x > 0",
        })
    }
}

/// `ln Gamma(x)` for finite `x > 0`.
pub fn log_gamma(x: f64) -> Result<f64> {
    check_positive("log_gamma", x)?;
    Ok(log_gamma_unchecked(x))
}

/// `psi(x)` with the default configuration.
pub fn digamma(x: f64) -> Result<f64> {
    check_positive("digamma", x)?;
    Ok(digamma_unchecked(x))
}

/// `psi'(x)` with the default configuration.
pub fn trigamma(x: f64) -> Result<f64> {
    check_positive("trigamma", x)?;
    Ok(trigamma_unchecked(x))
}

/// `psi^{-1}(y)` with the default configuration.
pub fn inverse_digamma(y: f64) -> Result<f64> {
    SpecFunConfig::default().inverse_digamma(y)
}

pub(crate) fn log_gamma_unchecked(x: f64) -> f64 {
    let mut z = x;
    let mut prod = 1.0;
    while z < LOG_GAMMA_SHIFT {
        prod *= z;
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for c in STIRLING_SERIES.iter().rev() {
        series = series * inv2 + c;
    }
    let stirling = (z - 0.5) * z.ln() - z + HALF_LN_2PI + series * inv;
    if prod == 1.0 {
        stirling
    } else {
        stirling - prod.ln()
    }
}

pub(crate) fn digamma_unchecked(x: f64) -> f64 {
    digamma_with_cutoff(x, 6.0)
}

pub(crate) fn trigamma_unchecked(x: f64) -> f64 {
    trigamma_with_cutoff(x, 6.0)
}

fn digamma_with_cutoff(x: f64, cutoff: f64) -> f64 {
    let mut z = x;
    let mut shift = 0.0;
    while z < cutoff {
        shift -= 1.0 / z;
        z += 1.0;
    }
    let inv2 = 1.0 / (z * z);
    let mut series = 0.0;
    for c in DIGAMMA_SERIES.iter().rev() {
        series = series * inv2 + c;
    }
    shift + z.ln() - 0.5 / z - series * inv2
}

fn trigamma_with_cutoff(x: f64, cutoff: f64) -> f64 {
    let mut z = x;
    let mut shift = 0.0;
    while z < cutoff {
        shift += 1.0 / (z * z);
        z += 1.0;
    }
    let inv = 1.0 / z;
    let inv2 = inv * inv;
    let mut series = 0.0;
    for c in TRIGAMMA_SERIES.iter().rev() {
        series = series * inv2 + c;
    }
    shift + inv + 0.5 * inv2 + series * inv2 * inv
}
