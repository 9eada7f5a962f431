use std::f64::consts::PI;

use super::NumericsError;

// Lanczos approximation, g = 7, n = 9.
const LANCZOS_G: f64 = 7.0;
#[allow(clippy::excessive_precision)]
const LANCZOS_COEFFS: [f64; 9] = [
    0.999_999_999_999_809_93,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_13,
    -176.615_029_162_140_59,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// `sin(pi * x)` with exact zeros at the integers and argument reduction
/// done before multiplying by pi.
pub fn sin_pi(x: f64) -> f64 {
    if x.fract() == 0.0 {
        return 0.0;
    }
    // reduce to [-1, 1)
    let mut r = x % 2.0;
    if r >= 1.0 {
        r -= 2.0;
    } else if r < -1.0 {
        r += 2.0;
    }
    // reflect into [-1/2, 1/2]
    if r > 0.5 {
        r = 1.0 - r;
    } else if r < -0.5 {
        r = -1.0 - r;
    }
    (PI * r).sin()
}

/// Real gamma function.
///
/// Positive integers up to 171 are computed as exact factorial products;
/// other arguments use a Lanczos approximation, with the reflection formula
/// for `x < 0.5`. Non-positive integers are poles.
pub fn gamma_real(x: f64) -> Result<f64, NumericsError> {
    if x.is_nan() {
        return Ok(f64::NAN);
    }
    if x <= 0.0 && x.fract() == 0.0 {
        return Err(NumericsError::GammaPole { x });
    }
    if x.fract() == 0.0 && x <= 171.0 {
        let n = x as u32;
        return Ok((1..n).fold(1.0, |acc, k| acc * k as f64));
    }
    if x < 0.5 {
        let s = sin_pi(x);
        return Ok(PI / (s * lanczos(1.0 - x)));
    }
    Ok(lanczos(x))
}

fn lanczos(x: f64) -> f64 {
    let x = x - 1.0;
    let mut acc = LANCZOS_COEFFS[0];
    for (i, &c) in LANCZOS_COEFFS.iter().enumerate().skip(1) {
        acc += c / (x + i as f64);
    }
    let t = x + LANCZOS_G + 0.5;
    // split the power so large arguments do not overflow early
    let half = t.powf(0.5 * (x + 0.5));
    (2.0 * PI).sqrt() * half * half * (-t).exp() * acc
}
