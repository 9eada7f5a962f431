use polylog_dist::distribution::PolyDist;
use polylog_dist::families::{
    exponential_quantile, gev_params_from_s, gev_quantile, gev_tail_gap, FamilyName,
};
use polylog_dist::ppcc::{fit_shape, plotting_positions, ppcc};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn shape_grid() -> Vec<f64> {
    (0..=120).map(|i| (-20 + i) as f64 / 10.0).collect()
}

fn model_quantiles(s: f64, n: usize) -> Vec<f64> {
    let d = PolyDist::new(s).unwrap();
    plotting_positions(n)
        .unwrap()
        .into_iter()
        .map(|p| d.quantile(p).unwrap())
        .collect()
}

#[test]
fn exponential_anchor_quantiles() {
    let d = PolyDist::new(1.0).unwrap();
    for i in 0..100 {
        let p = i as f64 / 100.0;
        let q = d.quantile(p).unwrap();
        assert!((q - exponential_quantile(p, 1.0).unwrap()).abs() <= 1e-10);
    }
}

#[test]
fn gev_tail_gap_shrinks_relative_to_quantile() {
    let s = -5.0;
    let d = PolyDist::new(s).unwrap();
    let params = gev_params_from_s(s).unwrap();
    let mut last = f64::INFINITY;
    for p in [0.99, 0.999, 0.9999] {
        let q = d.quantile(p).unwrap();
        let direct = (q - gev_quantile(p, &params).unwrap()).abs() / q;
        let rel = gev_tail_gap(s, p).unwrap().abs() / q;
        assert!(direct <= 1e-2 && rel <= 1e-2, "p={p}");
        assert!(rel < last, "p={p}");
        last = rel;
    }
}

#[test]
fn exponential_draws_fit_near_one() {
    // r >= 0.999 holds for a typical sample, not every one
    let d = PolyDist::new(1.0).unwrap();
    let mut rs: Vec<f64> = (0..21)
        .map(|seed| ppcc(&d.sample(10_000, seed).unwrap(), 1.0).unwrap())
        .collect();
    rs.sort_by(f64::total_cmp);
    assert!(rs[10] >= 0.999, "median r {}", rs[10]);
    assert!(rs[0] >= 0.998, "smallest r {}", rs[0]);
    let data = PolyDist::new(1.0).unwrap().sample(2000, 42).unwrap();
    let prof = fit_shape(&data, &shape_grid()).unwrap();
    assert!((0.8..=1.2).contains(&prof.best_s), "{}", prof.best_s);
    assert_eq!(prof.family.name, FamilyName::Exponential);
}

#[test]
fn uniform_draws_fit_large_shape() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let data: Vec<f64> = (0..2000).map(|_| rng.gen::<f64>()).collect();
    let prof = fit_shape(&data, &shape_grid()).unwrap();
    assert!(prof.best_s >= 5.0, "{}", prof.best_s);
}

#[test]
fn exact_quantiles_recover_their_shape() {
    let grid = shape_grid();
    for s0 in [-1.5, 0.0, 0.5, 2.0, 6.0] {
        let prof = fit_shape(&model_quantiles(s0, 60), &grid).unwrap();
        assert!((prof.best_s - s0).abs() < 1e-12, "s0={s0}: {}", prof.best_s);
        assert!((prof.best_r - 1.0).abs() <= 1e-10);
    }
}

#[test]
fn parallel_profile_is_reproducible() {
    let data = PolyDist::new(0.7).unwrap().sample(500, 3).unwrap();
    let a = fit_shape(&data, &shape_grid()).unwrap();
    let b = fit_shape(&data, &shape_grid()).unwrap();
    assert_eq!(a, b);
    for (&s, &r) in a.grid.iter().zip(&a.r) {
        assert_eq!(ppcc(&data, s).unwrap(), r);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn fit_is_affine_invariant(seed in any::<u64>(), a in 0.01f64..100.0, b in 0.0f64..100.0) {
        let data = PolyDist::new(1.5).unwrap().sample(200, seed).unwrap();
        let moved: Vec<f64> = data.iter().map(|x| a * x + b).collect();
        let grid: Vec<f64> = (0..=30).map(|i| (-10 + i) as f64 / 5.0).collect();
        let p = fit_shape(&data, &grid).unwrap();
        let q = fit_shape(&moved, &grid).unwrap();
        for (x, y) in p.r.iter().zip(&q.r) {
            prop_assert!((x - y).abs() < 1e-12);
            prop_assert!((-1.0..=1.0).contains(x));
        }
        prop_assert_eq!(p.best_s, q.best_s);
    }
}
