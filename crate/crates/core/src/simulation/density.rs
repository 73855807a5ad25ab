use std::fmt;
use std::str::FromStr;

use rand::Rng;
use rand_distr::{Distribution, Gamma, Open01};
use serde::Serialize;

use super::rng::stream_rng;
use crate::error::{Error, Result};
use crate::estimator::{MiseCoefficients, Sample};
use crate::quad::{self, Tolerance};
use crate::specfun::log_gamma_unchecked;

/// A single parametric family; all use (shape, scale).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Gamma { shape: f64, scale: f64 },
    /// Reciprocal of a Gamma(shape, 1/scale) variable; mean `scale / (shape - 1)`.
    InverseGamma { shape: f64, scale: f64 },
    /// Frechet form, cdf `exp(-(scale/x)^shape)`.
    InverseWeibull { shape: f64, scale: f64 },
}

impl Family {
    fn params(&self) -> (f64, f64) {
        match *self {
            Family::Gamma { shape, scale }
            | Family::InverseGamma { shape, scale }
            | Family::InverseWeibull { shape, scale } => (shape, scale),
        }
    }

    fn validate(&self) -> Result<()> {
        let (k, t) = self.params();
        if k > 0.0 && k.is_finite() && t > 0.0 && t.is_finite() {
            Ok(())
        } else {
            Err(Error::InvalidDensity(format!(
                "shape and scale must be positive and finite, got ({k}, {t})"
            )))
        }
    }

    fn ln_pdf(&self, x: f64) -> f64 {
        match *self {
            Family::Gamma { shape, scale } => {
                (shape - 1.0) * x.ln() - x / scale - shape * scale.ln() - log_gamma_unchecked(shape)
            }
            Family::InverseGamma { shape, scale } => {
                shape * scale.ln() - (shape + 1.0) * x.ln() - scale / x - log_gamma_unchecked(shape)
            }
            Family::InverseWeibull { shape, scale } => {
                let r = scale / x;
                (shape / scale).ln() + (shape + 1.0) * r.ln() - r.powf(shape)
            }
        }
    }

    fn pdf(&self, x: f64) -> f64 {
        if x > 0.0 {
            return self.ln_pdf(x).exp();
        }
        match *self {
            Family::Gamma { shape, scale } if x == 0.0 => {
                if shape == 1.0 {
                    1.0 / scale
                } else if shape < 1.0 {
                    f64::INFINITY
                } else {
                    0.0
                }
            }
            _ => 0.0,
        }
    }

    /// `(d/dx ln f, d^2/dx^2 ln f)`.
    fn log_derivatives(&self, x: f64) -> (f64, f64) {
        match *self {
            Family::Gamma { shape, scale } => {
                let g = (shape - 1.0) / x - 1.0 / scale;
                (g, -(shape - 1.0) / (x * x))
            }
            Family::InverseGamma { shape, scale } => {
                let g = -(shape + 1.0) / x + scale / (x * x);
                (g, (shape + 1.0) / (x * x) - 2.0 * scale / (x * x * x))
            }
            Family::InverseWeibull { shape, scale } => {
                let rk = (scale / x).powf(shape);
                let g = (-(shape + 1.0) + shape * rk) / x;
                (g, (shape + 1.0) * (1.0 - shape * rk) / (x * x))
            }
        }
    }

    fn derivatives(&self, x: f64) -> [f64; 3] {
        if !(x > 0.0) {
            return self.derivatives_at_zero();
        }
        let f = self.pdf(x);
        if f == 0.0 {
            return [0.0; 3];
        }
        let (g, dg) = self.log_derivatives(x);
        [f, f * g, f * (g * g + dg)]
    }

    // One-sided derivatives at the origin. For the gamma density
    // C x^{k-1} e^{-x/theta} only the x^m term of the series contributes to
    // the m-th derivative; a power below m makes it infinite.
    fn derivatives_at_zero(&self) -> [f64; 3] {
        let Family::Gamma { shape, scale } = *self else {
            return [0.0; 3];
        };
        let ln_c = -log_gamma_unchecked(shape) - shape * scale.ln();
        let mut out = [0.0; 3];
        for (m, o) in out.iter_mut().enumerate() {
            let j = m as f64 - (shape - 1.0);
            *o = if j < 0.0 {
                0.0
            } else if j.fract() != 0.0 {
                f64::INFINITY
            } else {
                let j = j as i32;
                let factorials: f64 = (1..=m).map(|i| i as f64).product::<f64>()
                    / (1..=j).map(f64::from).product::<f64>();
                ln_c.exp() * factorials * (-1.0 / scale).powi(j)
            };
        }
        out
    }

    fn mean(&self) -> f64 {
        match *self {
            Family::Gamma { shape, scale } => shape * scale,
            Family::InverseGamma { shape, scale } if shape > 1.0 => scale / (shape - 1.0),
            Family::InverseWeibull { shape, scale } if shape > 1.0 => {
                scale * log_gamma_unchecked(1.0 - 1.0 / shape).exp()
            }
            _ => f64::INFINITY,
        }
    }

    fn variance(&self) -> f64 {
        match *self {
            Family::Gamma { shape, scale } => shape * scale * scale,
            Family::InverseGamma { shape, scale } if shape > 2.0 => {
                scale * scale / ((shape - 1.0) * (shape - 1.0) * (shape - 2.0))
            }
            Family::InverseWeibull { shape, scale } if shape > 2.0 => {
                let g1 = log_gamma_unchecked(1.0 - 1.0 / shape).exp();
                let g2 = log_gamma_unchecked(1.0 - 2.0 / shape).exp();
                scale * scale * (g2 - g1 * g1)
            }
            _ => f64::INFINITY,
        }
    }

    fn mode(&self) -> f64 {
        match *self {
            Family::Gamma { shape, scale } => (shape - 1.0).max(0.0) * scale,
            Family::InverseGamma { shape, scale } => scale / (shape + 1.0),
            Family::InverseWeibull { shape, scale } => scale * (shape / (shape + 1.0)).powf(1.0 / shape),
        }
    }

    fn breakpoints(&self) -> Vec<f64> {
        let spread = {
            let sd = self.variance().sqrt();
            if sd.is_finite() {
                sd
            } else {
                self.params().1
            }
        };
        let mut points = quad::breakpoints_around(self.mode(), spread);
        let mean = self.mean();
        if mean.is_finite() {
            points.push(mean);
        }
        points.sort_by(f64::total_cmp);
        points
    }

    fn cdf(&self, x: f64) -> f64 {
        if !(x > 0.0) {
            return 0.0;
        }
        if let Family::InverseWeibull { shape, scale } = *self {
            return (-(scale / x).powf(shape)).exp();
        }
        let mode = self.mode();
        let tol = Tolerance {
            abs: 1e-15,
            rel: 1e-12,
            max_intervals: 4000,
        };
        if x <= mode || mode == 0.0 {
            quad::integrate_from_zero(|z| self.pdf(z), x, tol)
                .map(|i| i.value)
                .unwrap_or(f64::NAN)
        } else {
            let points: Vec<f64> = self.breakpoints().into_iter().filter(|p| *p > x).collect();
            let mut all = vec![x];
            all.extend(points);
            let upper = integrate_above(&|z| self.pdf(z), &all, tol);
            1.0 - upper
        }
    }

    fn dispersion(&self) -> Dispersion {
        match *self {
            Family::Gamma { shape, scale } => {
                Dispersion::Gamma(Gamma::new(shape, scale).expect("validated parameters"))
            }
            Family::InverseGamma { shape, scale } => Dispersion::InverseGamma(
                Gamma::new(shape, 1.0).expect("validated parameters"),
                scale,
            ),
            Family::InverseWeibull { shape, scale } => Dispersion::InverseWeibull { shape, scale },
        }
    }
}

fn integrate_above<F: Fn(f64) -> f64>(f: &F, points: &[f64], tol: Tolerance) -> f64 {
    let mut total = 0.0;
    for w in points.windows(2) {
        total += quad::integrate(f, w[0], w[1], tol).map(|i| i.value).unwrap_or(f64::NAN);
    }
    total
        + quad::integrate_to_infinity(f, points[points.len() - 1], tol)
            .map(|i| i.value)
            .unwrap_or(f64::NAN)
}

/// Inverse-cdf draw for the inverse Weibull: `x = scale (-ln u)^{-1/shape}`.
pub fn inverse_weibull_from_uniform(shape: f64, scale: f64, u: f64) -> f64 {
    scale * (-u.ln()).powf(-1.0 / shape)
}

enum Dispersion {
    Gamma(Gamma<f64>),
    InverseGamma(Gamma<f64>, f64),
    InverseWeibull { shape: f64, scale: f64 },
}

impl Dispersion {
    fn draw<R: Rng>(&self, rng: &mut R) -> f64 {
        match self {
            Dispersion::Gamma(g) => g.sample(rng),
            Dispersion::InverseGamma(g, scale) => scale / g.sample(rng),
            Dispersion::InverseWeibull { shape, scale } => {
                let u: f64 = Open01.sample(rng);
                inverse_weibull_from_uniform(*shape, *scale, u)
            }
        }
    }
}

/// A closed-form density on `(0, inf)`: one family or a finite mixture of them.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrueDensity {
    weights: Vec<f64>,
    components: Vec<Family>,
}

impl TrueDensity {
    pub fn single(family: Family) -> Result<Self> {
        family.validate()?;
        Ok(Self {
            weights: vec![1.0],
            components: vec![family],
        })
    }

    pub fn gamma(shape: f64, scale: f64) -> Result<Self> {
        Self::single(Family::Gamma { shape, scale })
    }

    pub fn inverse_gamma(shape: f64, scale: f64) -> Result<Self> {
        Self::single(Family::InverseGamma { shape, scale })
    }

    pub fn inverse_weibull(shape: f64, scale: f64) -> Result<Self> {
        Self::single(Family::InverseWeibull { shape, scale })
    }

    pub fn mixture(weights: Vec<f64>, components: Vec<Family>) -> Result<Self> {
        if weights.len() != components.len() || weights.is_empty() {
            return Err(Error::InvalidDensity(
                "mixture needs one weight per component".into(),
            ));
        }
        if weights.iter().any(|w| !(*w > 0.0 && w.is_finite())) {
            return Err(Error::InvalidDensity("mixture weights must be positive".into()));
        }
        let total: f64 = weights.iter().sum();
        if (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidDensity(format!(
                "mixture weights sum to {total}, not 1"
            )));
        }
        for c in &components {
            c.validate()?;
        }
        Ok(Self {
            weights,
            components,
        })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn components(&self) -> &[Family] {
        &self.components
    }

    pub fn is_mixture(&self) -> bool {
        self.components.len() > 1
    }

    fn terms(&self) -> impl Iterator<Item = (f64, &Family)> {
        self.weights.iter().copied().zip(&self.components)
    }

    pub fn pdf(&self, x: f64) -> f64 {
        self.terms().map(|(w, c)| w * c.pdf(x)).sum()
    }

    /// `[f(x), f'(x), f''(x)]`.
    pub fn derivatives(&self, x: f64) -> [f64; 3] {
        let mut out = [0.0; 3];
        for (w, c) in self.terms() {
            let d = c.derivatives(x);
            for (o, v) in out.iter_mut().zip(d) {
                *o += w * v;
            }
        }
        out
    }

    pub fn cdf(&self, x: f64) -> f64 {
        self.terms().map(|(w, c)| w * c.cdf(x)).sum()
    }

    pub fn mean(&self) -> f64 {
        self.terms().map(|(w, c)| w * c.mean()).sum()
    }

    /// Inverts the cdf by bisection.
    pub fn quantile(&self, p: f64) -> Result<f64> {
        if !(p > 0.0 && p < 1.0) {
            return Err(Error::Domain {
                function: "quantile",
                value: p,
                expected: "0 < p < 1",
            });
        }
        let anchor = self
            .components
            .iter()
            .map(Family::mode)
            .fold(f64::INFINITY, f64::min)
            .max(1e-300);
        let mut lo = anchor;
        while self.cdf(lo) > p {
            lo *= 0.5;
            if lo < 1e-300 {
                break;
            }
        }
        let mut hi = self
            .components
            .iter()
            .map(Family::mode)
            .fold(anchor, f64::max);
        while self.cdf(hi) < p {
            hi *= 2.0;
            if !hi.is_finite() {
                return Err(Error::Optimization(format!("cannot bracket quantile {p}")));
            }
        }
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if self.cdf(mid) < p {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-13 * hi {
                break;
            }
        }
        Ok(0.5 * (lo + hi))
    }

    /// Quadrature breakpoints around every component's bulk.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut points: Vec<f64> = self.components.iter().flat_map(Family::breakpoints).collect();
        points.sort_by(f64::total_cmp);
        points.dedup();
        points
    }

    /// Roughness `int f''^2`: closed form for a single gamma, quadrature otherwise.
    pub fn roughness(&self) -> Result<f64> {
        if let [Family::Gamma { shape, scale }] = self.components[..] {
            return gamma_roughness(shape, scale);
        }
        self.roughness_numeric()
    }

    pub fn roughness_numeric(&self) -> Result<f64> {
        let value = quad::integrate_positive(
            |z| {
                let d2 = self.derivatives(z)[2];
                d2 * d2
            },
            &self.breakpoints(),
            Tolerance::relative(1e-10),
        )?
        .value;
        Ok(value)
    }

    /// `A1 = int f' f''` and `A2 = int f'^2`.
    pub fn ge_mise_coefficients(&self) -> Result<MiseCoefficients> {
        if let [Family::Gamma { shape, scale }] = self.components[..] {
            return gamma_mise_coefficients(shape, scale);
        }
        let points = self.breakpoints();
        let tol = Tolerance::relative(1e-10);
        let a1 = quad::integrate_positive(
            |z| {
                let d = self.derivatives(z);
                d[1] * d[2]
            },
            &points,
            Tolerance {
                abs: 1e-14,
                ..tol
            },
        )?
        .value;
        let a2 = quad::integrate_positive(
            |z| {
                let d = self.derivatives(z)[1];
                d * d
            },
            &points,
            tol,
        )?
        .value;
        Ok(MiseCoefficients { a1, a2 })
    }

    /// Draws `n` observations with the given stream seeds.
    ///
    /// The mixture's component labels come from `labels`, the draws themselves
    /// from `draws`, so the two streams never interleave.
    pub fn sample_with<R: Rng, S: Rng>(&self, n: usize, labels: &mut R, draws: &mut S) -> Result<Sample> {
        let samplers: Vec<Dispersion> = self.components.iter().map(Family::dispersion).collect();
        let values = if self.is_mixture() {
            let mut cumulative = Vec::with_capacity(self.weights.len());
            let mut acc = 0.0;
            for w in &self.weights {
                acc += w;
                cumulative.push(acc);
            }
            (0..n)
                .map(|_| {
                    let u: f64 = labels.random();
                    let idx = cumulative
                        .iter()
                        .position(|c| u < *c)
                        .unwrap_or(cumulative.len() - 1);
                    samplers[idx].draw(draws)
                })
                .collect()
        } else {
            (0..n).map(|_| samplers[0].draw(draws)).collect()
        };
        Sample::new(values)
    }

    /// Deterministic sample of size `n` from `seed`.
    pub fn sample(&self, n: usize, seed: u64) -> Result<Sample> {
        self.sample_with(n, &mut stream_rng(seed, 0), &mut stream_rng(seed, 1))
    }
}

impl fmt::Display for TrueDensity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let describe = |c: &Family| match *c {
            Family::Gamma { shape, scale } => format!("Gamma({shape}, {scale})"),
            Family::InverseGamma { shape, scale } => format!("InverseGamma({shape}, {scale})"),
            Family::InverseWeibull { shape, scale } => format!("InverseWeibull({shape}, {scale})"),
        };
        if self.is_mixture() {
            let parts: Vec<String> = self
                .terms()
                .map(|(w, c)| format!("{w:.4}*{}", describe(c)))
                .collect();
            write!(f, "Mixture[{}]", parts.join(" + "))
        } else {
            f.write_str(&describe(&self.components[0]))
        }
    }
}

impl FromStr for TrueDensity {
    type Err = Error;

    /// Parses `gamma:k,theta`, `inverse-gamma:k,theta` or `inverse-weibull:k,theta`.
    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidDensity(format!("cannot parse density {s:?}"));
        let (family, params) = s.split_once(':').ok_or_else(bad)?;
        let nums: Vec<f64> = params
            .split(',')
            .map(|p| p.trim().parse::<f64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| bad())?;
        let [shape, scale] = nums[..] else {
            return Err(bad());
        };
        match family.trim() {
            "gamma" => Self::gamma(shape, scale),
            "inverse-gamma" => Self::inverse_gamma(shape, scale),
            "inverse-weibull" => Self::inverse_weibull(shape, scale),
            _ => Err(bad()),
        }
    }
}

// int_0^inf z^m e^{-2z} dz, relative to Gamma(k)^2, in log form
fn ln_moment_over_gamma_sq(m: f64, k: f64) -> f64 {
    log_gamma_unchecked(m + 1.0) - (m + 1.0) * std::f64::consts::LN_2 - 2.0 * log_gamma_unchecked(k)
}

fn gamma_roughness(k: f64, theta: f64) -> Result<f64> {
    if k <= 2.5 {
        return Err(Error::Domain {
            function: "gamma roughness",
            value: k,
            expected: "shape > 2.5 (int f''^2 diverges otherwise)",
        });
    }
    let a = (k - 1.0) * (k - 2.0);
    let c = -2.0 * (k - 1.0);
    let terms = [
        (a * a, 2.0 * k - 6.0),
        (2.0 * a * c, 2.0 * k - 5.0),
        (c * c + 2.0 * a, 2.0 * k - 4.0),
        (2.0 * c, 2.0 * k - 3.0),
        (1.0, 2.0 * k - 2.0),
    ];
    let unit: f64 = terms
        .iter()
        .map(|(coef, m)| coef * ln_moment_over_gamma_sq(*m, k).exp())
        .sum();
    Ok(unit / theta.powi(5))
}

fn gamma_mise_coefficients(k: f64, theta: f64) -> Result<MiseCoefficients> {
    if k <= 1.5 {
        return Err(Error::Domain {
            function: "gamma MISE coefficients",
            value: k,
            expected: "shape > 1.5 (int f'^2 diverges otherwise)",
        });
    }
    let terms = [
        ((k - 1.0) * (k - 1.0), 2.0 * k - 4.0),
        (-2.0 * (k - 1.0), 2.0 * k - 3.0),
        (1.0, 2.0 * k - 2.0),
    ];
    let a2_unit: f64 = terms
        .iter()
        .map(|(coef, m)| coef * ln_moment_over_gamma_sq(*m, k).exp())
        .sum();
    // int f' f'' = -f'(0)^2 / 2, with f'(0) = 0 above shape 2
    let a1_unit = if k > 2.0 {
        0.0
    } else if k == 2.0 {
        -0.5
    } else {
        return Err(Error::Domain {
            function: "gamma MISE coefficients",
            value: k,
            expected: "shape >= 2 (f'(0) is infinite otherwise)",
        });
    };
    Ok(MiseCoefficients {
        a1: a1_unit / theta.powi(4),
        a2: a2_unit / theta.powi(3),
    })
}

/// The simulation configurations A-F.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Configuration {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl Configuration {
    pub const ALL: [Configuration; 6] = [
        Configuration::A,
        Configuration::B,
        Configuration::C,
        Configuration::D,
        Configuration::E,
        Configuration::F,
    ];

    pub fn density(self) -> TrueDensity {
        let third = 1.0 / 3.0;
        let two_thirds = 1.0 - third;
        let built = match self {
            Configuration::A => TrueDensity::gamma(25.0, 0.5),
            Configuration::B => TrueDensity::inverse_gamma(25.0, 150.0),
            Configuration::C => TrueDensity::inverse_weibull(5.0, 800.0),
            Configuration::D => TrueDensity::mixture(
                vec![two_thirds, third],
                vec![
                    Family::Gamma { shape: 25.0, scale: 0.5 },
                    Family::Gamma { shape: 5.0, scale: 2.0 },
                ],
            ),
            Configuration::E => TrueDensity::mixture(
                vec![two_thirds, third],
                vec![
                    Family::InverseGamma { shape: 25.0, scale: 150.0 },
                    Family::InverseGamma { shape: 30.0, scale: 5.0 },
                ],
            ),
            Configuration::F => TrueDensity::mixture(
                vec![two_thirds, third],
                vec![
                    Family::InverseWeibull { shape: 5.0, scale: 800.0 },
                    Family::InverseWeibull { shape: 10.0, scale: 400.0 },
                ],
            ),
        };
        built.expect("catalogue parameters are valid")
    }

    pub fn name(self) -> &'static str {
        match self {
            Configuration::A => "A",
            Configuration::B => "B",
            Configuration::C => "C",
            Configuration::D => "D",
            Configuration::E => "E",
            Configuration::F => "F",
        }
    }
}

impl fmt::Display for Configuration {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Configuration {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Configuration::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::InvalidConfig(format!("unknown configuration {s:?} (expected A-F)")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_exponential_pdf() {
        let d = TrueDensity::gamma(1.0, 1.0).unwrap();
        assert!((d.pdf(2.0) - (-2.0f64).exp()).abs() < 1e-15);
        assert_eq!(d.pdf(0.0), 1.0);
    }

    #[test]
    fn mixture_is_weighted_sum() {
        let d = Configuration::D.density();
        let a = TrueDensity::gamma(25.0, 0.5).unwrap();
        let b = TrueDensity::gamma(5.0, 2.0).unwrap();
        for x in [0.5, 3.0, 10.0, 12.5, 20.0] {
            let expected = 2.0 / 3.0 * a.pdf(x) + 1.0 / 3.0 * b.pdf(x);
            assert!((d.pdf(x) - expected).abs() <= 1e-15 * expected);
        }
    }

    #[test]
    fn inverse_weibull_inverse_cdf_identity() {
        let x = inverse_weibull_from_uniform(5.0, 800.0, (-1.0f64).exp());
        assert!((x - 800.0).abs() < 1e-10);
    }

    #[test]
    fn parameter_validation() {
        assert!(TrueDensity::gamma(0.0, 1.0).is_err());
        assert!(TrueDensity::inverse_gamma(1.0, -1.0).is_err());
        let g = Family::Gamma { shape: 2.0, scale: 1.0 };
        assert!(TrueDensity::mixture(vec![0.5, 0.4], vec![g, g]).is_err());
        assert!(TrueDensity::mixture(vec![1.5, -0.5], vec![g, g]).is_err());
        assert!(TrueDensity::mixture(vec![0.5], vec![g, g]).is_err());
        assert!(TrueDensity::mixture(vec![0.5, 0.5], vec![g, g]).is_ok());
    }

    #[test]
    fn gamma3_roughness_closed_form() {
        let d = TrueDensity::gamma(3.0, 1.0).unwrap();
        assert!((d.roughness().unwrap() - 3.0 / 16.0).abs() < 1e-14);
        assert!((d.roughness_numeric().unwrap() - 3.0 / 16.0).abs() < 1e-10);
    }

    #[test]
    fn closed_forms_match_quadrature() {
        for (k, theta) in [(3.5, 2.0), (25.0, 0.5), (5.0, 2.0)] {
            let d = TrueDensity::gamma(k, theta).unwrap();
            let closed = d.roughness().unwrap();
            let numeric = d.roughness_numeric().unwrap();
            assert!((closed - numeric).abs() <= 1e-8 * numeric, "{k} {theta}: {closed} {numeric}");
            let coeffs = d.ge_mise_coefficients().unwrap();
            let a2 = quad::integrate_positive(
                |z| d.derivatives(z)[1].powi(2),
                &d.breakpoints(),
                Tolerance::relative(1e-12),
            )
            .unwrap()
            .value;
            assert!((coeffs.a2 - a2).abs() <= 1e-8 * a2);
            assert_eq!(coeffs.a1, 0.0);
        }
        assert!(TrueDensity::gamma(2.0, 1.0).unwrap().roughness().is_err());
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for config in Configuration::ALL {
            let d = config.density();
            let m = d.mean();
            for x in [0.7 * m, m, 1.3 * m] {
                let h = 1e-5 * m;
                let [f, f1, f2] = d.derivatives(x);
                let fd1 = (d.pdf(x + h) - d.pdf(x - h)) / (2.0 * h);
                let fd2 = (d.pdf(x + h) - 2.0 * f + d.pdf(x - h)) / (h * h);
                let scale1 = f / m;
                assert!((f1 - fd1).abs() <= 1e-6 * scale1.max(f1.abs()), "{config} f' at {x}");
                assert!((f2 - fd2).abs() <= 1e-3 * (scale1 / m).max(f2.abs()), "{config} f'' at {x}");
            }
        }
    }

    #[test]
    fn derivatives_at_origin() {
        let exp = TrueDensity::gamma(1.0, 2.0).unwrap().derivatives(0.0);
        for (got, want) in exp.iter().zip([0.5, -0.25, 0.125]) {
            assert!((got - want).abs() < 1e-14, "{got} vs {want}");
        }
        let [f, f1, f2] = TrueDensity::gamma(2.0, 1.0).unwrap().derivatives(0.0);
        assert_eq!(f, 0.0);
        assert!((f1 - 1.0).abs() < 1e-14 && (f2 + 2.0).abs() < 1e-14);
        let [f, f1, f2] = TrueDensity::gamma(3.0, 1.0).unwrap().derivatives(0.0);
        assert_eq!((f, f1), (0.0, 0.0));
        assert!((f2 - 1.0).abs() < 1e-14);
        assert_eq!(TrueDensity::gamma(1.5, 1.0).unwrap().derivatives(0.0)[1], f64::INFINITY);
        assert_eq!(TrueDensity::inverse_gamma(3.0, 1.0).unwrap().derivatives(0.0), [0.0; 3]);
    }

    #[test]
    fn quantiles_invert_cdf() {
        for config in Configuration::ALL {
            let d = config.density();
            for p in [0.0005, 0.5, 0.9995] {
                let q = d.quantile(p).unwrap();
                assert!((d.cdf(q) - p).abs() < 1e-9, "{config} p={p}");
            }
        }
    }

    #[test]
    fn parse_density() {
        assert_eq!("gamma:3,1".parse::<TrueDensity>().unwrap(), TrueDensity::gamma(3.0, 1.0).unwrap());
        assert!("inverse-weibull:5, 800".parse::<TrueDensity>().is_ok());
        assert!("beta:1,2".parse::<TrueDensity>().is_err());
        assert!("gamma:1".parse::<TrueDensity>().is_err());
        assert_eq!("c".parse::<Configuration>().unwrap(), Configuration::C);
        assert!("G".parse::<Configuration>().is_err());
    }

    #[test]
    fn same_seed_same_sample() {
        let d = Configuration::F.density();
        assert_eq!(d.sample(50, 9).unwrap(), d.sample(50, 9).unwrap());
        assert_ne!(d.sample(50, 9).unwrap(), d.sample(50, 10).unwrap());
    }
}
