//! Independent reference computations shared by the integration tests.
//! Nothing here calls into the library.

#![allow(dead_code)]

use std::f64::consts::PI;

/// Gauss-Legendre nodes and weights on [-1, 1].
pub fn gauss_legendre(n: usize) -> Vec<(f64, f64)> {
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let k = k as f64;
                let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        out.push((x, 2.0 / ((1.0 - x * x) * dp * dp)));
    }
    out
}

/// Composite Gauss-Legendre over consecutive breakpoints.
pub fn integrate_pieces<F: Fn(f64) -> f64>(f: F, breaks: &[f64], rule: &[(f64, f64)]) -> f64 {
    let mut total = 0.0;
    for w in breaks.windows(2) {
        let (a, b) = (w[0], w[1]);
        let (mid, half) = (0.5 * (a + b), 0.5 * (b - a));
        total += half
            * rule
                .iter()
                .map(|&(x, wt)| wt * f(mid + half * x))
                .sum::<f64>();
    }
    total
}

/// Breakpoints `0, c 2^-depth, ..., c, 2c, ..., c 2^up`.
pub fn graded_breaks(c: f64, depth: i32, up: i32) -> Vec<f64> {
    let mut b = vec![0.0];
    b.extend((-depth..=up).map(|k| c * 2f64.powi(k)));
    b
}

/// Plain defining series `sum z^k / k^s`, summed until terms are negligible.
pub fn brute_polylog(s: f64, z: f64) -> f64 {
    let mut sum = 0.0;
    let mut zk = 1.0;
    for k in 1..2_000_000u64 {
        zk *= z;
        let term = zk / (k as f64).powf(s);
        sum += term;
        if k > 50 && term < 1e-18 * sum.abs() {
            break;
        }
    }
    sum
}

/// `Li_s(1 - u)` for `0 < s`, from the Bose-Einstein integral
/// `Li_s(z) = 1/Gamma(s) int_0^inf t^(s-1) / (e^t / z - 1) dt`, with
/// `t = w^(1/s)` and `Gamma(s+1) = int_0^inf exp(-w^(1/s)) dw`.
pub fn bose_polylog_complement(s: f64, u: f64, rule: &[(f64, f64)]) -> f64 {
    let z = 1.0 - u;
    let t_of = |w: f64| w.powf(1.0 / s);
    // the integrand turns over where t ~ u
    let c = u.min(1.0).powf(s);
    let up = ((60f64.powf(s) / c).log2().ceil() as i32).max(1);
    let breaks = graded_breaks(c, 40, up);
    let num = integrate_pieces(|w| z / (t_of(w).exp_m1() + u), &breaks, rule);
    let gamma = integrate_pieces(|w| (-t_of(w)).exp(), &graded_breaks(1.0, 40, 12), rule);
    num / gamma
}

/// `E[Z^m] = int_0^1 Li_s(p)^m dp` for `1 - 1/m < s < 1`, with `p = 1 - u`,
/// `u = t^(1/a)`, `a = m(s-1) + 1`, which makes the integrand bounded.
pub fn moment_oracle(s: f64, m: i32) -> f64 {
    let rule = gauss_legendre(20);
    let a = m as f64 * (s - 1.0) + 1.0;
    let f = |t: f64| {
        let u = t.powf(1.0 / a);
        if u >= 1.0 {
            return 0.0;
        }
        bose_polylog_complement(s, u, &rule).powi(m) * t.powf(1.0 / a - 1.0) / a
    };
    let mut breaks = vec![0.0];
    breaks.extend((-60..=0).map(|k| 2f64.powi(k)));
    integrate_pieces(f, &breaks, &rule)
}

/// One-sample Kolmogorov-Smirnov distance.
pub fn ks_distance(sample: &[f64], cdf: impl Fn(f64) -> f64) -> f64 {
    let mut xs = sample.to_vec();
    xs.sort_by(f64::total_cmp);
    let n = xs.len() as f64;
    xs.iter()
        .enumerate()
        .map(|(i, &x)| {
            let f = cdf(x);
            (f - i as f64 / n).max((i + 1) as f64 / n - f)
        })
        .fold(0.0, f64::max)
}

pub fn rel_diff(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(f64::MIN_POSITIVE)
}
