mod common;

use common::{INVERSE_DIGAMMA_20, SPECFUN_ORACLE};
use gekde::specfun::{digamma, inverse_digamma, log_gamma, trigamma, SpecFunConfig};
use proptest::prelude::*;

#[test]
fn digamma_matches_oracle_absolute() {
    for (x, want, _, _) in SPECFUN_ORACLE {
        let got = digamma(x).unwrap();
        assert!((got - want).abs() <= 1e-12, "digamma({x}) = {got}, oracle {want}");
    }
}

#[test]
fn trigamma_matches_oracle() {
    for (x, _, want, _) in SPECFUN_ORACLE {
        let got = trigamma(x).unwrap();
        assert!(
            (got - want).abs() <= 1e-12 * want.abs().max(1.0),
            "trigamma({x}) = {got}, oracle {want}"
        );
    }
}

#[test]
fn log_gamma_matches_oracle() {
    for (x, _, _, want) in SPECFUN_ORACLE {
        let got = log_gamma(x).unwrap();
        let err = if want == 0.0 {
            got.abs()
        } else {
            ((got - want) / want).abs()
        };
        assert!(err <= 1e-13, "ln_gamma({x}) = {got}, oracle {want}");
    }
}

#[test]
fn inverse_digamma_large_argument() {
    let x = inverse_digamma(20.0).unwrap();
    assert!((x / INVERSE_DIGAMMA_20 - 1.0).abs() < 1e-12, "{x}");
    assert!((x / (20f64.exp() + 0.5) - 1.0).abs() < 1e-9);
}

#[test]
fn inverse_digamma_examples() {
    assert!((inverse_digamma(digamma(7.3).unwrap()).unwrap() - 7.3).abs() < 1e-10);
    let euler = -digamma(1.0).unwrap();
    assert!((inverse_digamma(-euler).unwrap() - 1.0).abs() < 1e-10);
    // left branch of the initial guess
    let y = digamma(0.05).unwrap();
    assert!(y < -2.22);
    assert!((inverse_digamma(y).unwrap() - 0.05).abs() < 1e-12);
}

#[test]
fn round_trip_log_spaced() {
    let cfg = SpecFunConfig::default();
    for i in 0..=400 {
        let x = 10f64.powf(-2.0 + 8.0 * i as f64 / 400.0);
        let back = cfg.inverse_digamma(cfg.digamma(x).unwrap()).unwrap();
        assert!((back / x - 1.0).abs() <= 1e-9, "x = {x}, back = {back}");
    }
}

#[test]
fn newton_budget_is_enforced() {
    let cfg = SpecFunConfig::new(1e-30, 1, 6.0).unwrap();
    assert!(cfg.inverse_digamma(3.0).is_err());
    assert!(SpecFunConfig::new(0.0, 10, 6.0).is_err());
    assert!(SpecFunConfig::new(1e-12, 0, 6.0).is_err());
    assert!(SpecFunConfig::new(1e-12, 10, 5.0).is_err());
}

#[test]
fn raising_the_cutoff_agrees() {
    let wide = SpecFunConfig::new(1e-12, 100, 12.0).unwrap();
    for (x, want, twant, _) in SPECFUN_ORACLE {
        assert!((wide.digamma(x).unwrap() - want).abs() <= 1e-12 * want.abs().max(1.0));
        assert!((wide.trigamma(x).unwrap() - twant).abs() <= 1e-12 * twant.abs().max(1.0));
    }
}

#[test]
fn log_gamma_derivative_is_digamma() {
    let mut rng = 0x2545_f491_4f6c_dd1du64;
    for _ in 0..100 {
        rng ^= rng << 13;
        rng ^= rng >> 7;
        rng ^= rng << 17;
        let x = 0.5 + 49.5 * (rng >> 11) as f64 / (1u64 << 53) as f64;
        let h = 1e-5 * x.max(1.0);
        let fd = (log_gamma(x + h).unwrap() - log_gamma(x - h).unwrap()) / (2.0 * h);
        assert!((fd - digamma(x).unwrap()).abs() < 1e-6, "x = {x}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn recurrences(x in 1e-3f64..100.0) {
        let d = digamma(x + 1.0).unwrap() - digamma(x).unwrap() - 1.0 / x;
        prop_assert!(d.abs() <= 1e-11, "digamma at {}", x);
        let t = trigamma(x + 1.0).unwrap() - trigamma(x).unwrap() + 1.0 / (x * x);
        prop_assert!(t.abs() <= 1e-11 * (1.0 / (x * x)).max(1.0), "trigamma at {}", x);
    }

    #[test]
    fn monotone_and_positive(x in 1e-3f64..1e6, step in 1e-6f64..1.0) {
        let y = x * (1.0 + step);
        prop_assert!(digamma(y).unwrap() > digamma(x).unwrap());
        prop_assert!(trigamma(x).unwrap() > 0.0);
        prop_assert!(trigamma(y).unwrap() < trigamma(x).unwrap());
    }
}

#[test]
fn domain_errors() {
    assert!(digamma(0.0).is_err());
    assert!(trigamma(-1.0).is_err());
    assert!(log_gamma(f64::NAN).is_err());
    assert!(inverse_digamma(f64::INFINITY).is_err());
    assert!(inverse_digamma(800.0).is_err());
}
