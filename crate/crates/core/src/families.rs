//! Classical families this distribution connects to, and the labelling of
//! a shape value by the family it most resembles.
//!
//! * `s = 1` is the unit exponential, `s = 0` the inverse beta `iB(1, 1)`
//!   with CDF `x / (1 + x)`;
//! * `s >= 10` is close to `U(0, 1)` and `s` near 1.6 looks triangular;
//! * as `s -> -inf` the quantile approaches a GEV quantile with
//!   `xi = 1 - s`, `sigma = Gamma(2 - s)`, `mu = Gamma(1 - s)`.
//!
//! The Tukey lambda quantile is included as the symmetric counterpart.
//! The generalized Pareto and Wakeby families also switch between finite
//! and infinite support but are not covered here.

use std::fmt;

use thiserror::Error;

use crate::numerics::gamma_real;
use crate::polylog::{EvalOptions, Polylog};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum FamilyError {
    #[error("{0}")]
    Domain(String),
}

fn domain(msg: String) -> FamilyError {
    FamilyError::Domain(msg)
}

/// Exponential quantile `-ln(1 - p) / rate`; `+inf` at `p = 1`.
pub fn exponential_quantile(p: f64, rate: f64) -> Result<f64, FamilyError> {
    if !(rate > 0.0) {
        return Err(domain(format!("exponential rate {rate} must be positive")));
    }
    if !(0.0..=1.0).contains(&p) {
        return Err(domain(format!("probability {p} is outside [0, 1]")));
    }
    if p == 1.0 {
        return Ok(f64::INFINITY);
    }
    Ok(-(-p).ln_1p() / rate)
}

/// CDF of the inverse beta (beta prime) distribution with `alpha = beta = 1`.
pub fn inverse_beta11_cdf(x: f64) -> Result<f64, FamilyError> {
    if !(x >= 0.0) {
        return Err(domain(format!(
            "inverse beta argument {x} must be non-negative"
        )));
    }
    if x == f64::INFINITY {
        return Ok(1.0);
    }
    Ok(x / (1.0 + x))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GevParams {
    pub mu: f64,
    pub sigma: f64,
    pub xi: f64,
}

impl GevParams {
    pub fn new(mu: f64, sigma: f64, xi: f64) -> Result<Self, FamilyError> {
        if !(sigma > 0.0) || !(xi > 0.0) || !mu.is_finite() {
            return Err(domain(format!(
                "GEV parameters need sigma > 0 and xi > 0 (got mu={mu}, sigma={sigma}, xi={xi})"
            )));
        }
        Ok(Self { mu, sigma, xi })
    }
}

/// GEV parameters matching the tail of shape `s < 1`.
pub fn gev_params_from_s(s: f64) -> Result<GevParams, FamilyError> {
    if !(s < 1.0) {
        return Err(domain(format!("GEV mapping needs s < 1, got {s}")));
    }
    let sigma = gamma_real(2.0 - s).map_err(|e| domain(e.to_string()))?;
    let mu = gamma_real(1.0 - s).map_err(|e| domain(e.to_string()))?;
    GevParams::new(mu, sigma, 1.0 - s)
}

/// `mu + (sigma / xi) ((-ln p)^-xi - 1)` for `p` in `(0, 1)`.
pub fn gev_quantile(p: f64, params: &GevParams) -> Result<f64, FamilyError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!("GEV quantile needs p in (0, 1), got {p}")));
    }
    let GevParams { mu, sigma, xi } = *params;
    Ok(mu + sigma / xi * ((-p.ln()).powf(-xi) - 1.0))
}

/// `Li_s(p) - Q_GEV(p)` under the mapping of [`gev_params_from_s`].
///
/// The mapped GEV quantile equals the singular term
/// `Gamma(1-s) (-ln p)^(s-1)` of the polylogarithm exactly, so the gap is
/// the regular part of the expansion about `p = 1`. Evaluating it that
/// way avoids subtracting two nearly equal large numbers.
pub fn gev_tail_gap(s: f64, p: f64) -> Result<f64, FamilyError> {
    let params = gev_params_from_s(s)?;
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!("p must be in (0, 1), got {p}")));
    }
    let kernel = Polylog::new(s).map_err(|e| domain(e.to_string()))?;
    if let Some(gap) = kernel.regular_part(p.ln()) {
        return Ok(gap);
    }
    let li = kernel
        .eval(p, &EvalOptions::default())
        .map_err(|e| domain(e.to_string()))?
        .value;
    Ok(li - gev_quantile(p, &params)?)
}

/// Tukey lambda quantile `(p^l - (1-p)^l) / l`, or `ln(p / (1-p))` at
/// `l = 0`.
pub fn tukey_lambda_quantile(p: f64, lambda: f64) -> Result<f64, FamilyError> {
    if !(p > 0.0 && p < 1.0) {
        return Err(domain(format!(
            "Tukey lambda quantile needs p in (0, 1), got {p}"
        )));
    }
    if lambda == 0.0 {
        return Ok((p / (1.0 - p)).ln());
    }
    if lambda == 1.0 {
        return Ok(2.0 * p - 1.0);
    }
    Ok((p.powf(lambda) - (1.0 - p).powf(lambda)) / lambda)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FamilyName {
    UniformApprox,
    TriangularApprox,
    Exponential,
    InverseBeta,
    GevHeavyTail,
    Intermediate,
}

impl FamilyName {
    pub fn as_str(&self) -> &'static str {
        match self {
            FamilyName::UniformApprox => "uniform_approx",
            FamilyName::TriangularApprox => "triangular_approx",
            FamilyName::Exponential => "exponential",
            FamilyName::InverseBeta => "inverse_beta",
            FamilyName::GevHeavyTail => "gev_heavy_tail",
            FamilyName::Intermediate => "intermediate",
        }
    }
}

impl fmt::Display for FamilyName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyLabel {
    pub name: FamilyName,
    /// The reference shape of the family; the input shape itself for the
    /// open-ended labels.
    pub s_anchor: f64,
}

/// Shape intervals assigned to each named family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyBands {
    pub uniform_min: f64,
    pub triangular_center: f64,
    pub triangular_half_width: f64,
    pub exponential_half_width: f64,
    pub inverse_beta_half_width: f64,
    pub gev_max: f64,
}

impl Default for FamilyBands {
    fn default() -> Self {
        Self {
            uniform_min: 10.0,
            triangular_center: 1.6,
            triangular_half_width: 0.2,
            exponential_half_width: 0.05,
            inverse_beta_half_width: 0.05,
            gev_max: -2.0,
        }
    }
}

pub fn nearest_named_family(s: f64) -> FamilyLabel {
    nearest_named_family_with(s, &FamilyBands::default())
}

pub fn nearest_named_family_with(s: f64, bands: &FamilyBands) -> FamilyLabel {
    let (name, s_anchor) = if s >= bands.uniform_min {
        (FamilyName::UniformApprox, bands.uniform_min)
    } else if (s - bands.triangular_center).abs() <= bands.triangular_half_width {
        (FamilyName::TriangularApprox, bands.triangular_center)
    } else if (s - 1.0).abs() <= bands.exponential_half_width {
        (FamilyName::Exponential, 1.0)
    } else if s.abs() <= bands.inverse_beta_half_width {
        (FamilyName::InverseBeta, 0.0)
    } else if s <= bands.gev_max {
        (FamilyName::GevHeavyTail, s)
    } else {
        (FamilyName::Intermediate, s)
    };
    FamilyLabel { name, s_anchor }
}
