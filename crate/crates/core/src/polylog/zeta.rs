use std::f64::consts::PI;

use crate::numerics::{gamma_real, sin_pi};

// Euler-Maclaurin cut-over and the Bernoulli numbers B_2 .. B_24.
const EM_N: usize = 16;
const BERNOULLI: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// Riemann zeta at any real `s != 1` (NaN at the pole).
///
/// `s >= 0` uses the Dirichlet sum to `N - 1` with the integral tail
/// `N^(1-s)/(s-1)` plus the Euler-Maclaurin boundary and Bernoulli
/// corrections; `s < 0` goes through the functional equation.
pub(crate) fn zeta_any(s: f64) -> f64 {
    if s == 1.0 || s.is_nan() {
        return f64::NAN;
    }
    if s == f64::INFINITY {
        return 1.0;
    }
    if s < 0.0 {
        return zeta_reflected(s);
    }
    let n = EM_N as f64;
    let mut head = 0.0;
    for k in (1..EM_N).rev() {
        head += (k as f64).powf(-s);
    }
    let n_pow = n.powf(-s);
    let mut tail = n * n_pow / (s - 1.0) + 0.5 * n_pow;
    // rising product s (s+1) ... (s+2j-2) / (2j)!, times N^(-s-2j+1)
    let mut factor = s * n_pow / n;
    let mut fact = 2.0;
    for (j, b) in BERNOULLI.iter().enumerate() {
        let term = b / fact * factor;
        tail += term;
        let j2 = 2.0 * (j as f64 + 1.0);
        factor *= (s + j2 - 1.0) * (s + j2) / (n * n);
        fact *= (j2 + 1.0) * (j2 + 2.0);
        if term.abs() < 1e-18 * head.abs() {
            break;
        }
    }
    head + tail
}

fn zeta_reflected(s: f64) -> f64 {
    // trivial zeros
    if s.fract() == 0.0 && (s / 2.0).fract() == 0.0 {
        return 0.0;
    }
    let one_minus = 1.0 - s;
    let g = match gamma_real(one_minus) {
        Ok(g) => g,
        Err(_) => return f64::NAN,
    };
    // 2^s pi^(s-1) sin(pi s / 2) Gamma(1-s) zeta(1-s)
    (2.0 * PI).powf(s) / PI * sin_pi(0.5 * s) * g * zeta_any(one_minus)
}
