use std::fmt;

use super::{DistError, PolyDist};
use crate::numerics::{integrate_interval, integrate_unit_interval_split, NumericsError};
use crate::polylog::zeta;

// The mean recurrence is pushed up to this order before summing directly.
const DIRECT_MEAN_ORDER: f64 = 20.0;
// Split point of the tail treatment, in v = -ln p.
const TAIL_SPLIT: f64 = 1.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MomentValue {
    Finite(f64),
    Infinite,
}

impl MomentValue {
    pub fn is_finite(&self) -> bool {
        matches!(self, MomentValue::Finite(_))
    }

    /// `f64::INFINITY` for the infinite marker.
    pub fn as_f64(&self) -> f64 {
        match *self {
            MomentValue::Finite(v) => v,
            MomentValue::Infinite => f64::INFINITY,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentMethod {
    Series,
    Recurrence,
    Quadrature,
    ClosedForm,
}

impl MomentMethod {
    pub fn as_str(&self) -> &'static str {
        match self {
            MomentMethod::Series => "series",
            MomentMethod::Recurrence => "recurrence",
            MomentMethod::Quadrature => "quadrature",
            MomentMethod::ClosedForm => "closed_form",
        }
    }
}

impl fmt::Display for MomentMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct MomentResult {
    pub order: u32,
    pub value: MomentValue,
    pub method: MomentMethod,
    /// Set when the numerical route disagreed with the finiteness theorem.
    pub diagnostic: Option<String>,
}

impl MomentResult {
    fn new(order: u32, value: MomentValue, method: MomentMethod) -> Self {
        Self {
            order,
            value,
            method,
            diagnostic: None,
        }
    }
}

/// Whether `E[Z^m]` is finite: the `m`-th moment is infinite for
/// `s <= 1 - 1/m`. At `s = 1 - 1/m` the tail `Li_s(1-u)^m ~ u^-1` is
/// log-divergent, so the boundary counts as infinite.
pub fn moment_is_finite(s: f64, m: u32) -> bool {
    if m == 0 {
        return true;
    }
    s > 1.0 - 1.0 / m as f64
}

impl PolyDist {
    /// `E[X]`, from `E[Z_s] = sum_k 1 / (k^s (k+1))` for `s > 0`.
    ///
    /// The series converges slowly for small `s`, so the recurrence
    /// `E[Z_s] = zeta(s+1) - E[Z_{s+1}]` is unrolled until the order
    /// reaches 20, where the series needs only a handful of terms. Integer
    /// orders run it upward from `E[Z_1] = 1` instead.
    pub fn mean(&self) -> Result<MomentResult, DistError> {
        let (value, method) = std_mean(self.s)?;
        Ok(MomentResult::new(
            1,
            match value {
                MomentValue::Finite(v) => MomentValue::Finite(self.loc + self.scale * v),
                inf => inf,
            },
            method,
        ))
    }

    /// `E[X^m]`, through the binomial expansion over location and scale
    /// of the standardized moments `E[Z^j] = int_0^1 Li_s(p)^j dp`.
    pub fn moment(&self, m: u32) -> Result<MomentResult, DistError> {
        if m == 0 {
            return Err(DistError::InvalidOrder);
        }
        if m == 1 {
            return self.mean();
        }
        if !moment_is_finite(self.s, m) {
            return Ok(MomentResult::new(
                m,
                MomentValue::Infinite,
                MomentMethod::Quadrature,
            ));
        }
        let top = self.std_moment(m)?;
        let top_value = match top.value {
            MomentValue::Finite(v) => v,
            MomentValue::Infinite => return Ok(top),
        };
        if self.loc == 0.0 {
            return Ok(MomentResult {
                value: MomentValue::Finite(self.scale.powi(m as i32) * top_value),
                ..top
            });
        }
        let mut total = 0.0;
        let mut binom = 1.0;
        for j in 0..=m {
            let raw = match j {
                0 => 1.0,
                _ if j == m => top_value,
                1 => std_mean(self.s)?.0.as_f64(),
                _ => self.std_moment(j)?.value.as_f64(),
            };
            total += binom * self.loc.powi((m - j) as i32) * self.scale.powi(j as i32) * raw;
            binom = binom * (m - j) as f64 / (j + 1) as f64;
        }
        Ok(MomentResult {
            value: MomentValue::Finite(total),
            ..top
        })
    }

    /// `Var[X] = scale^2 (E[Z^2] - E[Z]^2)`; infinite for `s <= 1/2`.
    pub fn variance(&self) -> Result<MomentResult, DistError> {
        if !moment_is_finite(self.s, 2) {
            return Ok(MomentResult::new(
                2,
                MomentValue::Infinite,
                MomentMethod::Quadrature,
            ));
        }
        let second = self.std_moment(2)?;
        let m2 = match second.value {
            MomentValue::Finite(v) => v,
            MomentValue::Infinite => return Ok(second),
        };
        let m1 = std_mean(self.s)?.0.as_f64();
        Ok(MomentResult {
            value: MomentValue::Finite(self.scale * self.scale * (m2 - m1 * m1)),
            ..second
        })
    }

    fn std_moment(&self, m: u32) -> Result<MomentResult, DistError> {
        let s = self.s;
        if !moment_is_finite(s, m) {
            return Ok(MomentResult::new(
                m,
                MomentValue::Infinite,
                MomentMethod::Quadrature,
            ));
        }
        if m == 1 {
            let (v, method) = std_mean(s)?;
            return Ok(MomentResult::new(1, v, method));
        }
        if s == 1.0 {
            // unit exponential: E[Z^m] = m!
            let fact = (1..=m).map(f64::from).product();
            return Ok(MomentResult::new(
                m,
                MomentValue::Finite(fact),
                MomentMethod::ClosedForm,
            ));
        }
        let integral = if s >= 1.0 || m as f64 * (1.0 - s) <= 0.5 {
            self.moment_integral_direct(m)
        } else {
            self.moment_integral_split(m)
        };
        match integral {
            Ok(v) => Ok(MomentResult::new(
                m,
                MomentValue::Finite(v),
                MomentMethod::Quadrature,
            )),
            Err(DistError::Numerics(e @ NumericsError::Divergent { .. })) => Ok(MomentResult {
                diagnostic: Some(format!(
                    "quadrature diverged although the moment is finite for s = {s}, m = {m}: {e}"
                )),
                ..MomentResult::new(m, MomentValue::Infinite, MomentMethod::Quadrature)
            }),
            Err(e) => Err(e),
        }
    }

    // int_0^1 Li_s(p)^m dp with the integrand evaluated from the exact
    // complement near p = 1.
    fn moment_integral_direct(&self, m: u32) -> Result<f64, DistError> {
        let mut failure = None;
        let est = integrate_unit_interval_split(
            |p, q| match self.std_quantile(p, q) {
                Ok(v) => v.powi(m as i32),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            &self.opts.quad,
        );
        if let Some(e) = failure {
            return Err(e);
        }
        Ok(est?.value)
    }

    // For 0 < s < 1 the integrand behaves like Gamma(1-s)^m (-ln p)^(m(s-1))
    // at p = 1, which is too close to non-integrable for direct quadrature
    // near the threshold. Below p0 = e^-1 the integrand is smooth. Above
    // it, with v = -ln p and Li_s(e^-v) = A v^(s-1) + R(v), substitute
    // v = w^(1/a), a = m(s-1) + 1, which maps
    //   int_0^1 Li_s(e^-v)^m e^-v dv
    // onto
    //   (1/a) int_0^(1^a) e^-v (A + R(v) v^(1-s))^m dw,
    // a bounded integrand.
    fn moment_integral_split(&self, m: u32) -> Result<f64, DistError> {
        let s = self.s;
        let kernel = self.quantile_kernel();
        let singular = match kernel.singular_coefficient() {
            Some(a) => a,
            None => return self.moment_integral_direct(m),
        };
        let mut failure = None;
        let p0 = (-TAIL_SPLIT).exp();
        let body = integrate_interval(
            |p| match self.std_quantile(p, 1.0 - p) {
                Ok(v) => v.powi(m as i32),
                Err(e) => {
                    failure.get_or_insert(e);
                    0.0
                }
            },
            0.0,
            p0,
            &self.opts.quad,
        )?;
        if let Some(e) = failure {
            return Err(e);
        }

        let a = m as f64 * (s - 1.0) + 1.0;
        let w_max = TAIL_SPLIT.powf(a);
        let tail = integrate_interval(
            |w| {
                let v = w.powf(1.0 / a);
                let damp = w.powf((1.0 - s) / a);
                let regular = kernel.regular_part(-v).unwrap_or(f64::NAN);
                (-v).exp() * (singular + regular * damp).powi(m as i32)
            },
            0.0,
            w_max,
            &self.opts.quad,
        )?;
        Ok(body.value + tail.value / a)
    }
}

fn std_mean(s: f64) -> Result<(MomentValue, MomentMethod), DistError> {
    if s <= 0.0 {
        return Ok((MomentValue::Infinite, MomentMethod::Series));
    }
    if s >= DIRECT_MEAN_ORDER {
        return Ok((MomentValue::Finite(mean_series(s)), MomentMethod::Series));
    }
    if s == s.round() {
        // upward from E[Y_1] = 1, exact at the exponential
        let mut mean = 1.0;
        for k in 1..s as u32 {
            mean = zeta(k as f64 + 1.0)? - mean;
        }
        let method = if s == 1.0 {
            MomentMethod::ClosedForm
        } else {
            MomentMethod::Recurrence
        };
        return Ok((MomentValue::Finite(mean), method));
    }
    let steps = (DIRECT_MEAN_ORDER - s).ceil() as u32;
    let mut sum = 0.0;
    let mut sign = 1.0;
    for j in 1..=steps {
        sum += sign * zeta(s + j as f64)?;
        sign = -sign;
    }
    sum += sign * mean_series(s + steps as f64);
    Ok((MomentValue::Finite(sum), MomentMethod::Recurrence))
}

// sum_k k^-t / (k+1), for t large enough that a few terms suffice
fn mean_series(t: f64) -> f64 {
    let mut terms = Vec::new();
    for k in 1..10_000u32 {
        let kf = k as f64;
        let term = (-t * kf.ln()).exp() / (kf + 1.0);
        terms.push(term);
        if term < 1e-18 * terms[0] {
            break;
        }
    }
    terms.iter().rev().sum()
}
