//! Adaptive 21-point Gauss-Kronrod quadrature.
//!
//! Finite intervals are bisected where the Gauss/Kronrod disagreement is
//! largest. Half-lines are mapped onto `[0, 1)`: the upper tail through
//! `z = a + t / (1 - t)` and the stretch `(0, a]` through `z = a exp(-t / (1 - t))`,
//! which turns an integrable algebraic singularity at zero into exponential decay.

use crate::error::{Error, Result};

const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689,
    0.973_906_528_517_171_720_077_964_012_084,
    0.930_157_491_355_708_226_001_207_180_059,
    0.865_063_366_688_984_510_732_096_688_423,
    0.780_817_726_586_416_897_063_717_578_345,
    0.679_409_568_299_024_406_234_327_365_114,
    0.562_757_134_668_604_683_339_000_099_272,
    0.433_395_394_129_247_190_799_265_943_165,
    0.294_392_862_701_460_198_131_126_603_103,
    0.148_874_338_981_631_210_884_826_001_129,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062,
    0.032_558_162_307_964_727_478_818_972_459,
    0.054_755_896_574_351_996_031_381_300_244,
    0.075_039_674_810_919_952_767_043_140_916,
    0.093_125_454_583_697_605_535_065_465_083,
    0.109_387_158_802_297_641_899_210_590_325,
    0.123_491_976_262_065_851_077_600_098_352,
    0.134_709_217_311_473_325_928_054_001_771,
    0.142_775_938_577_060_080_797_094_273_138,
    0.147_739_104_901_338_491_374_841_515_972,
    0.149_445_554_002_916_905_664_936_468_389,
];

// Gauss weights for XGK[1], XGK[3], .., XGK[9]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893,
    0.149_451_349_150_580_593_145_776_339_657,
    0.219_086_362_515_982_043_995_534_934_228,
    0.269_266_719_309_996_355_091_226_921_569,
    0.295_524_224_714_752_870_173_892_994_651,
];

/// Stopping rule: done when the error estimate is below `max(abs, rel * |value|)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Tolerance {
    pub abs: f64,
    pub rel: f64,
    pub max_intervals: usize,
}

impl Tolerance {
    pub fn absolute(abs: f64) -> Self {
        Self {
            abs,
            rel: 0.0,
            max_intervals: 4000,
        }
    }

    pub fn relative(rel: f64) -> Self {
        Self {
            abs: 0.0,
            rel,
            max_intervals: 4000,
        }
    }

    fn target(&self, value: f64) -> f64 {
        self.abs.max(self.rel * value.abs())
    }

    fn split(&self, pieces: usize) -> Self {
        Self {
            abs: self.abs / pieces as f64,
            ..*self
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Integral {
    pub value: f64,
    pub error: f64,
}

#[derive(Debug, Clone, Copy)]
struct Segment {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

fn kronrod<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Segment {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(centre);
    let mut kronrod = WGK[10] * fc;
    let mut gauss = 0.0;
    for (j, (&x, &w)) in XGK[..10].iter().zip(&WGK[..10]).enumerate() {
        let dx = half * x;
        let pair = f(centre - dx) + f(centre + dx);
        kronrod += w * pair;
        if j % 2 == 1 {
            gauss += WG[j / 2] * pair;
        }
    }
    Segment {
        a,
        b,
        value: kronrod * half,
        error: ((kronrod - gauss) * half).abs(),
    }
}

/// Integrates `f` over the finite interval `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: Tolerance) -> Result<Integral> {
    if a == b {
        return Ok(Integral {
            value: 0.0,
            error: 0.0,
        });
    }
    let mut segments = vec![kronrod(&f, a, b)];
    loop {
        let value: f64 = segments.iter().map(|s| s.value).sum();
        let error: f64 = segments.iter().map(|s| s.error).sum();
        if !value.is_finite() || !error.is_finite() {
            return Err(Error::Integration {
                requested: tol.target(0.0),
                achieved: f64::INFINITY,
            });
        }
        let target = tol.target(value);
        if error <= target {
            return Ok(Integral { value, error });
        }
        if segments.len() >= tol.max_intervals {
            return Err(Error::Integration {
                requested: target,
                achieved: error,
            });
        }
        let (worst, _) = segments
            .iter()
            .enumerate()
            .filter(|(_, s)| {
                let mid = 0.5 * (s.a + s.b);
                mid > s.a && mid < s.b
            })
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .ok_or(Error::Integration {
                requested: target,
                achieved: error,
            })?;
        let seg = segments.swap_remove(worst);
        let mid = 0.5 * (seg.a + seg.b);
        segments.push(kronrod(&f, seg.a, mid));
        segments.push(kronrod(&f, mid, seg.b));
    }
}

/// Integrates `f` over `[a, inf)`.
pub fn integrate_to_infinity<F: Fn(f64) -> f64>(f: F, a: f64, tol: Tolerance) -> Result<Integral> {
    integrate(
        |t| {
            let s = 1.0 - t;
            let value = f(a + t / s);
            if value == 0.0 {
                0.0
            } else {
                value / (s * s)
            }
        },
        0.0,
        1.0,
        tol,
    )
}

/// Integrates `f` over `(0, a]`, tolerating integrable singularities at zero.
pub fn integrate_from_zero<F: Fn(f64) -> f64>(f: F, a: f64, tol: Tolerance) -> Result<Integral> {
    integrate(
        |t| {
            let s = 1.0 - t;
            let z = a * (-t / s).exp();
            if z <= 0.0 {
                return 0.0;
            }
            let value = f(z);
            if value == 0.0 {
                0.0
            } else {
                value * z / (s * s)
            }
        },
        0.0,
        1.0,
        tol,
    )
}

/// Integrates `f` over `(0, inf)` with the given positive breakpoints.
///
/// Breakpoints should bracket any sharp features (a kernel's peak, say).
pub fn integrate_positive<F: Fn(f64) -> f64>(
    f: F,
    breakpoints: &[f64],
    tol: Tolerance,
) -> Result<Integral> {
    let mut points: Vec<f64> = breakpoints
        .iter()
        .copied()
        .filter(|p| *p > 0.0 && p.is_finite())
        .collect();
    points.sort_by(f64::total_cmp);
    points.dedup();
    if points.is_empty() {
        points.push(1.0);
    }
    let pieces = points.len() + 1;
    let piece_tol = tol.split(pieces);
    let mut total = integrate_from_zero(&f, points[0], piece_tol)?;
    for w in points.windows(2) {
        let part = integrate(&f, w[0], w[1], piece_tol)?;
        total.value += part.value;
        total.error += part.error;
    }
    let tail = integrate_to_infinity(&f, points[points.len() - 1], piece_tol)?;
    total.value += tail.value;
    total.error += tail.error;
    Ok(total)
}

/// Breakpoints around a feature at `centre` with width `spread`.
pub fn breakpoints_around(centre: f64, spread: f64) -> Vec<f64> {
    let mut points = vec![centre];
    for k in [0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0] {
        points.push(centre - k * spread);
        points.push(centre + k * spread);
    }
    points.retain(|p| *p > 0.0 && p.is_finite());
    points.sort_by(f64::total_cmp);
    points
}
