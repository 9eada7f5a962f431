//! The polylogarithm `Li_s(z) = sum_{k>=1} z^k / k^s` for real order `s` and
//! `z` in `[0, 1]`, its `z`-derivative, and the Riemann zeta function.
//!
//! Three evaluation routes are used:
//!
//! * the defining series, for `z <= 0.75` and for orders `s >= 12` where
//!   `k^-s` alone makes it converge;
//! * closed forms for `s` in `{1, 0, -1, -2, -3}`;
//! * the expansion in `mu = ln z` about `z = 1`,
//!   `Li_s(e^mu) = Gamma(1-s) (-mu)^(s-1) + sum_k zeta(s-k) mu^k / k!`,
//!   with the usual harmonic-number/logarithm term replacing the
//!   singular pair when `s` is a positive integer.
//!
//! For `s > 0` the function also has the Bose-Einstein integral
//! representation; it is not used here.

mod kernel;
mod zeta;

pub use kernel::Polylog;

use std::fmt;

use thiserror::Error;

use crate::numerics::gamma_real;

/// Accuracy controls for polylogarithm evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    pub rel_tol: f64,
    /// Cap on the number of terms of the defining series.
    pub max_terms: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            rel_tol: 1e-12,
            max_terms: 10_000_000,
        }
    }
}

impl EvalOptions {
    pub fn validate(&self) -> Result<(), PolylogError> {
        if !(self.rel_tol > 0.0) {
            return Err(PolylogError::InvalidOptions("rel_tol must be positive"));
        }
        if self.max_terms == 0 {
            return Err(PolylogError::InvalidOptions("max_terms must be at least 1"));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolylogMethod {
    Series,
    ClosedForm,
    NearOneExpansion,
}

impl PolylogMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            PolylogMethod::Series => "series",
            PolylogMethod::ClosedForm => "closed_form",
            PolylogMethod::NearOneExpansion => "near_one_expansion",
        }
    }
}

impl fmt::Display for PolylogMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolylogValue {
    /// `+inf` at `z = 1` when `s <= 1`.
    pub value: f64,
    pub method: PolylogMethod,
    /// Estimated absolute error.
    pub est_error: f64,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolylogError {
    #[error("argument {z} is outside [0, 1]")]
    ArgumentOutOfRange { z: f64 },
    #[error("{0}")]
    Domain(String),
    #[error("series did not reach tolerance within {terms} terms (estimated error {est_error:e})")]
    Accuracy { est_error: f64, terms: usize },
    #[error("no closed form implemented for order {order}")]
    Unsupported { order: i32 },
    #[error("invalid options: {0}")]
    InvalidOptions(&'static str),
}

/// `Li_s(z)` for `z` in `[0, 1]`.
///
/// `Li_s(0) = 0`; `Li_s(1)` is `zeta(s)` for `s > 1` and `+inf` otherwise.
pub fn polylog(s: f64, z: f64, opts: &EvalOptions) -> Result<PolylogValue, PolylogError> {
    Polylog::new(s)?.eval(z, opts)
}

/// `Li_s(z)` from the defining series only, for `z` in `[0, 1)`. Slow near
/// `z = 1`; meant for cross-checking the other branches.
pub fn polylog_series(s: f64, z: f64, opts: &EvalOptions) -> Result<PolylogValue, PolylogError> {
    Polylog::new(s)?.eval_series(z, opts)
}

/// `d/dz Li_s(z) = Li_{s-1}(z) / z` for `z` in `(0, 1)`.
pub fn polylog_derivative(s: f64, z: f64, opts: &EvalOptions) -> Result<f64, PolylogError> {
    if !(z > 0.0 && z < 1.0) {
        return Err(PolylogError::ArgumentOutOfRange { z });
    }
    Polylog::new(s - 1.0)?.derivative_of_next(z, opts)
}

/// Riemann zeta for real `s > 1`.
pub fn zeta(s: f64) -> Result<f64, PolylogError> {
    if !(s > 1.0) {
        return Err(PolylogError::Domain(format!(
            "zeta({s}) is outside the convergent range s > 1"
        )));
    }
    Ok(zeta::zeta_any(s))
}

/// Elementary forms of `Li_n` for `n` in `{1, 0, -1, -2, -3}`:
/// `-ln(1-z)`, `z/(1-z)`, `z/(1-z)^2`, `z(1+z)/(1-z)^3` and
/// `z(1+4z+z^2)/(1-z)^4`.
pub fn polylog_closed_form(n: i32, z: f64) -> Result<f64, PolylogError> {
    if !(0.0..1.0).contains(&z) {
        return Err(PolylogError::ArgumentOutOfRange { z });
    }
    if !(-3..=1).contains(&n) {
        return Err(PolylogError::Unsupported { order: n });
    }
    Ok(kernel::closed_form(n, z, 1.0 - z))
}

/// Leading-order behaviour near `z = 1`: `Gamma(1-s) (-ln z)^(s-1)`.
///
/// An approximation only; for `s < 1` its relative error vanishes as
/// `z -> 1`. Positive integer orders hit a pole of the gamma function.
pub fn polylog_near_one(s: f64, z: f64) -> Result<f64, PolylogError> {
    if !(z > 0.0 && z < 1.0) {
        return Err(PolylogError::ArgumentOutOfRange { z });
    }
    let g = gamma_real(1.0 - s)
        .map_err(|_| PolylogError::Domain(format!("Gamma(1 - s) has a pole at s = {s}")))?;
    Ok(g * (-z.ln()).powf(s - 1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{LN_2, PI};

    fn opts() -> EvalOptions {
        EvalOptions::default()
    }

    fn rel(a: f64, b: f64) -> f64 {
        if b == 0.0 {
            a.abs()
        } else {
            ((a - b) / b).abs()
        }
    }

    #[test]
    fn documented_values() {
        let v = polylog(1.0, 0.5, &opts()).unwrap();
        assert!((v.value - LN_2).abs() < 1e-15);
        assert_eq!(v.method, PolylogMethod::ClosedForm);
        let v = polylog(2.0, 0.5, &opts()).unwrap();
        assert!((v.value - (PI * PI / 12.0 - 0.5 * LN_2 * LN_2)).abs() < 1e-15);
        assert_eq!(polylog(3.3, 0.0, &opts()).unwrap().value, 0.0);
        assert_eq!(polylog(0.0, 0.5, &opts()).unwrap().value, 1.0);
        // 30-term direct sum
        let oracle: f64 = (1..=30).map(|k| 0.5f64.powi(k) / (k as f64).powi(10)).sum();
        assert!(rel(polylog(10.0, 0.5, &opts()).unwrap().value, oracle) < 1e-13);
        assert!((polylog(10.0, 0.5, &opts()).unwrap().value - 0.500_246_2).abs() < 5e-7);
    }

    #[test]
    fn at_one() {
        assert!(rel(polylog(2.0, 1.0, &opts()).unwrap().value, PI * PI / 6.0) < 1e-14);
        assert_eq!(polylog(1.0, 1.0, &opts()).unwrap().value, f64::INFINITY);
        assert_eq!(polylog(-0.5, 1.0, &opts()).unwrap().value, f64::INFINITY);
    }

    #[test]
    fn out_of_range() {
        for z in [-0.1, 1.5, f64::NAN] {
            assert!(matches!(
                polylog(2.0, z, &opts()),
                Err(PolylogError::ArgumentOutOfRange { .. })
            ));
        }
    }

    #[test]
    fn series_cap_reports_accuracy() {
        let tight = EvalOptions {
            rel_tol: 1e-12,
            max_terms: 5,
        };
        match polylog(2.5, 0.7, &tight) {
            Err(PolylogError::Accuracy { est_error, terms }) => {
                assert!(est_error > 0.0);
                assert_eq!(terms, 5);
            }
            other => panic!("expected accuracy error, got {other:?}"),
        }
    }

    #[test]
    fn derivative_examples() {
        assert!((polylog_derivative(1.0, 0.5, &opts()).unwrap() - 2.0).abs() < 1e-14);
        assert!((polylog_derivative(0.0, 0.5, &opts()).unwrap() - 4.0).abs() < 1e-14);
        assert!((polylog_derivative(3.0, 1e-9, &opts()).unwrap() - 1.0).abs() < 1e-8);
        assert!(polylog_derivative(3.0, 1.0, &opts()).is_err());
    }

    #[test]
    fn zeta_examples() {
        assert!(rel(zeta(2.0).unwrap(), PI * PI / 6.0) < 1e-12);
        assert!(matches!(zeta(1.0), Err(PolylogError::Domain(_))));
        assert!(zeta(0.5).is_err());
    }

    #[test]
    fn zeta_ten_against_dirichlet_with_tail_bounds() {
        // sum_{k<=K} k^-10 plus the integral tail lies within K^-10 of zeta(10)
        let k_max = 2000usize;
        let head: f64 = (1..=k_max).rev().map(|k| (k as f64).powi(-10)).sum();
        let tail = (k_max as f64).powi(-9) / 9.0;
        let z = zeta(10.0).unwrap();
        assert!((z - (head + tail)).abs() <= (k_max as f64).powi(-10) + 1e-15);
        assert!((z - 1.000_994_575_2).abs() < 1e-10);
    }

    #[test]
    fn closed_form_examples() {
        assert!((polylog_closed_form(1, 0.5).unwrap() - LN_2).abs() < 1e-15);
        assert_eq!(polylog_closed_form(-1, 0.5).unwrap(), 2.0);
        assert_eq!(polylog_closed_form(-3, 0.5).unwrap(), 26.0);
        assert!(matches!(
            polylog_closed_form(2, 0.5),
            Err(PolylogError::Unsupported { order: 2 })
        ));
        assert!(matches!(
            polylog_closed_form(-4, 0.5),
            Err(PolylogError::Unsupported { .. })
        ));
        assert!(polylog_closed_form(0, 1.0).is_err());
    }

    #[test]
    fn li_minus_three_matches_brute_force() {
        for i in 1..20 {
            let z = i as f64 * 0.05;
            let brute: f64 = (1..20_000)
                .map(|k| (k as f64).powi(3) * z.powi(k))
                .take_while(|t| *t > 0.0)
                .sum();
            let cf = polylog_closed_form(-3, z).unwrap();
            assert!(rel(cf, brute) < 1e-11, "z={z}: {cf} vs {brute}");
        }
    }

    #[test]
    fn near_one_examples() {
        let sqrt_pi = PI.sqrt();
        let z = (-0.01f64).exp();
        let lead = polylog_near_one(-0.5, z).unwrap();
        assert!((lead - 0.5 * sqrt_pi * 0.01f64.powf(-1.5)).abs() < 1e-9 * lead);
        assert!((lead - 886.226_9).abs() < 1e-4);
        let series: f64 = (1..200_000).map(|k| (k as f64).sqrt() * z.powi(k)).sum();
        assert!(rel(lead, series) < 1e-2);

        let z = (-1e-4f64).exp();
        let lead = polylog_near_one(0.5, z).unwrap();
        assert!(rel(lead, 100.0 * sqrt_pi) < 1e-12);
        let full = polylog(0.5, z, &opts()).unwrap().value;
        assert!(rel(lead, full) < 1e-2);

        assert!(matches!(
            polylog_near_one(2.0, 0.999),
            Err(PolylogError::Domain(_))
        ));
    }
}
