mod common;

use common::{ks_distance, rel_diff};
use polylog_dist::distribution::{moment_is_finite, MomentValue, PolyDist};
use polylog_dist::families::{exponential_quantile, inverse_beta11_cdf};
use polylog_dist::polylog::zeta;
use proptest::prelude::*;

fn d(s: f64) -> PolyDist {
    PolyDist::new(s).unwrap()
}

fn mean(s: f64) -> f64 {
    d(s).mean().unwrap().value.as_f64()
}

fn probability_grid() -> Vec<f64> {
    let mut ps = vec![0.01];
    ps.extend((1..=9).map(|i| i as f64 / 10.0));
    ps.push(0.99);
    ps
}

#[test]
fn round_trip_on_grid() {
    for s in [-2.0, -0.5, 0.0, 0.5, 1.0, 1.6, 2.0, 10.0] {
        let dist = d(s);
        for p in probability_grid() {
            let x = dist.quantile(p).unwrap();
            assert!((dist.cdf(x) - p).abs() <= 1e-9, "s={s} p={p}");
        }
    }
}

#[test]
fn exponential_equivalence() {
    let dist = d(1.0);
    for i in 0..=100 {
        let p = i as f64 / 101.0;
        let q = dist.quantile(p).unwrap();
        assert!((q - exponential_quantile(p, 1.0).unwrap()).abs() <= 1e-10);
        let x = i as f64 * 0.1;
        assert!((dist.cdf(x) - (1.0 - (-x).exp())).abs() <= 1e-10, "x={x}");
        assert!((dist.pdf(x) - (-x).exp()).abs() <= 1e-10, "x={x}");
    }
}

#[test]
fn inverse_beta_equivalence() {
    let dist = d(0.0);
    for i in 1..=100 {
        let x = i as f64 / 10.0;
        assert!(
            (dist.cdf(x) - inverse_beta11_cdf(x).unwrap()).abs() <= 1e-10,
            "x={x}"
        );
    }
    assert!(!dist.mean().unwrap().value.is_finite());
}

#[test]
fn pdf_is_derivative_of_cdf() {
    for s in [0.5, 1.0, 2.0] {
        let dist = d(s);
        for p in [0.1, 0.3, 0.5, 0.7, 0.9] {
            let x = dist.quantile(p).unwrap();
            let h = 1e-5 * x;
            let fd = (dist.cdf(x + h) - dist.cdf(x - h)) / (2.0 * h);
            assert!(rel_diff(fd, dist.pdf(x)) < 1e-5, "s={s} x={x}");
        }
    }
}

#[test]
fn mean_recurrence() {
    for s in [0.2, 0.5, 1.0, 2.0, 3.0] {
        let residual = mean(s) - (zeta(s + 1.0).unwrap() - mean(s + 1.0));
        assert!(residual.abs() <= 1e-8, "s={s}: {residual}");
    }
}

#[test]
fn mean_against_plain_sums() {
    // telescoping: sum 1/(k^2 (k+1)) = zeta(2) - 1
    assert!((mean(2.0) - (zeta(2.0).unwrap() - 1.0)).abs() < 1e-9);
    for s in [1.5, 3.0, 7.25] {
        let oracle: f64 = (1..2_000_000u32)
            .rev()
            .map(|k| {
                let k = k as f64;
                k.powf(-s) / (k + 1.0)
            })
            .sum();
        // the omitted tail is below N^-s / s
        assert!((mean(s) - oracle).abs() < 1e-9, "s={s}");
    }
}

#[test]
fn moment_ordering_and_support_bound() {
    let dist = d(2.0);
    let m1 = dist.moment(1).unwrap().value.as_f64();
    let m2 = dist.moment(2).unwrap().value.as_f64();
    assert!(m1 * m1 <= m2);
    let upper = zeta(2.0).unwrap();
    for m in 1..=4 {
        let v = dist.moment(m).unwrap().value.as_f64();
        assert!(v <= upper.powi(m as i32), "m={m}");
    }
}

#[test]
fn moment_finiteness_follows_threshold() {
    for &(s, m) in &[
        (0.3, 2),
        (0.45, 2),
        (0.5, 2),
        (0.6, 2),
        (0.8, 2),
        (0.7, 3),
        (0.6, 3),
        (-1.0, 1),
    ] {
        let v = d(s).moment(m).unwrap().value;
        assert_eq!(v.is_finite(), moment_is_finite(s, m), "s={s} m={m}");
    }
    assert_eq!(d(0.0).mean().unwrap().value, MomentValue::Infinite);
}

#[test]
fn affine_moments() {
    let base = d(2.0);
    let shifted = PolyDist::with_affine(2.0, 3.0, 0.5).unwrap();
    let (m1, m2) = (
        base.moment(1).unwrap().value.as_f64(),
        base.moment(2).unwrap().value.as_f64(),
    );
    let expect2 = 9.0 + 2.0 * 3.0 * 0.5 * m1 + 0.25 * m2;
    assert!(rel_diff(shifted.moment(2).unwrap().value.as_f64(), expect2) < 1e-12);
    let var = shifted.variance().unwrap().value.as_f64();
    assert!(rel_diff(var, 0.25 * base.variance().unwrap().value.as_f64()) < 1e-12);
}

#[test]
fn exponential_sample_passes_ks() {
    let n = 100_000;
    let draws = d(1.0).sample(n, 42).unwrap();
    let dist = ks_distance(&draws, |x| 1.0 - (-x).exp());
    assert!(dist < 1.95 / (n as f64).sqrt(), "{dist}");
    let mean = draws.iter().sum::<f64>() / n as f64;
    assert!((mean - 1.0).abs() < 3.0 / (n as f64).sqrt());
}

#[test]
fn sampling_is_deterministic() {
    assert_eq!(d(0.7).sample(50, 9).unwrap(), d(0.7).sample(50, 9).unwrap());
    assert_ne!(
        d(0.7).sample(50, 9).unwrap(),
        d(0.7).sample(50, 10).unwrap()
    );
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(150))]

    #[test]
    fn round_trip_random(s in -3.0f64..12.0, p in 0.001f64..0.999) {
        let dist = d(s);
        let x = dist.quantile(p).unwrap();
        prop_assert!((dist.cdf(x) - p).abs() <= 1e-9);
    }

    #[test]
    fn quantile_increasing(s in -3.0f64..12.0, a in 0.0f64..1.0, b in 0.0f64..1.0) {
        prop_assume!(a < b);
        let dist = d(s);
        prop_assert!(dist.quantile(a).unwrap() <= dist.quantile(b).unwrap());
    }

    #[test]
    fn cdf_and_pdf_in_range(s in -3.0f64..12.0, x in -1.0f64..50.0) {
        let dist = d(s);
        let f = dist.cdf(x);
        prop_assert!((0.0..=1.0).contains(&f));
        prop_assert!(dist.pdf(x) >= 0.0);
    }

    #[test]
    fn density_one_at_origin(s in -3.0f64..12.0) {
        let f = d(s).pdf(1e-8);
        prop_assert!((f - 1.0).abs() < 1e-3, "{}", f);
    }

    #[test]
    fn affine_quantile(s in -2.0f64..5.0, p in 0.01f64..0.99, loc in -5.0f64..5.0, scale in 0.1f64..10.0) {
        let std = d(s).quantile(p).unwrap();
        let q = PolyDist::with_affine(s, loc, scale).unwrap().quantile(p).unwrap();
        prop_assert!((q - (loc + scale * std)).abs() <= 1e-12 * (1.0 + q.abs()));
    }

    #[test]
    fn samples_in_support(s in -2.0f64..12.0, seed in any::<u64>()) {
        let dist = d(s);
        let upper = dist.support().upper;
        for x in dist.sample(200, seed).unwrap() {
            prop_assert!(x >= 0.0 && x <= upper);
        }
    }
}
