use std::sync::OnceLock;

use super::zeta::zeta_any;
use super::{EvalOptions, PolylogError, PolylogMethod, PolylogValue};
use crate::numerics::gamma_real;

// Above this the defining series is used everywhere on [0, 1].
const SERIES_ORDER: f64 = 12.0;
// Largest z for which the defining series is preferred over the expansion.
const SERIES_MAX_Z: f64 = 0.75;
// Orders closer than this to a positive integer use the integer expansion.
const INTEGER_SNAP: f64 = 1e-9;
// Below this order Gamma(1 - s + k) overflows for the coefficients we keep.
const MIN_EXPANSION_ORDER: f64 = -105.0;
const EXPANSION_TERMS: usize = 60;

#[derive(Debug, Clone, Copy, PartialEq)]
enum Kind {
    ClosedForm(i32),
    /// Only the defining series is used (very large or very negative order).
    SeriesOnly,
    /// Expansion with the `Gamma(1-s) (-mu)^(s-1)` singular term.
    Generic,
    /// Positive integer order `n >= 2`.
    Integer(u32),
}

/// The polylogarithm of one fixed order `s`.
///
/// Holds the lazily built coefficient table `zeta(s-k)/k!` of the
/// expansion about `z = 1`, so repeated evaluations at the same order
/// (root finding, quadrature, sampling) pay for it once. Immutable and
/// shareable across threads.
#[derive(Debug)]
pub struct Polylog {
    s: f64,
    kind: Kind,
    /// `|s - round(s)|` when the order was snapped to an integer.
    snapped_by: f64,
    coeffs: OnceLock<Expansion>,
}

#[derive(Debug)]
struct Expansion {
    singular: f64,
    coeffs: Vec<f64>,
    harmonic: f64,
}

impl Clone for Polylog {
    fn clone(&self) -> Self {
        let coeffs = OnceLock::new();
        if let Some(e) = self.coeffs.get() {
            let _ = coeffs.set(Expansion {
                singular: e.singular,
                coeffs: e.coeffs.clone(),
                harmonic: e.harmonic,
            });
        }
        Self {
            s: self.s,
            kind: self.kind,
            snapped_by: self.snapped_by,
            coeffs,
        }
    }
}

impl Polylog {
    pub fn new(s: f64) -> Result<Self, PolylogError> {
        if !s.is_finite() {
            return Err(PolylogError::Domain(format!("order {s} is not finite")));
        }
        let nearest = s.round();
        let mut snapped_by = 0.0;
        let kind = if s == nearest && (-3.0..=1.0).contains(&s) {
            Kind::ClosedForm(s as i32)
        } else if !(MIN_EXPANSION_ORDER..SERIES_ORDER).contains(&s) {
            Kind::SeriesOnly
        } else if nearest >= 1.0 && (s - nearest).abs() < INTEGER_SNAP {
            snapped_by = (s - nearest).abs();
            if nearest == 1.0 {
                Kind::ClosedForm(1)
            } else {
                Kind::Integer(nearest as u32)
            }
        } else {
            Kind::Generic
        };
        Ok(Self {
            s,
            kind,
            snapped_by,
            coeffs: OnceLock::new(),
        })
    }

    pub fn order(&self) -> f64 {
        self.s
    }

    /// `Li_s(z)` for `z` in `[0, 1]`.
    pub fn eval(&self, z: f64, opts: &EvalOptions) -> Result<PolylogValue, PolylogError> {
        if !(0.0..=1.0).contains(&z) {
            return Err(PolylogError::ArgumentOutOfRange { z });
        }
        self.eval_split(z, 1.0 - z, opts)
    }

    /// `Li_s(p)` where the caller supplies `q = 1 - p` exactly, which keeps
    /// full relative accuracy in `q` when `p` is within rounding of 1.
    pub fn eval_split(
        &self,
        p: f64,
        q: f64,
        opts: &EvalOptions,
    ) -> Result<PolylogValue, PolylogError> {
        opts.validate()?;
        if !(0.0..=1.0).contains(&p) || !(0.0..=1.0).contains(&q) {
            return Err(PolylogError::ArgumentOutOfRange { z: p });
        }
        if p == 0.0 {
            return Ok(exact(0.0, PolylogMethod::ClosedForm));
        }
        if q == 0.0 {
            let v = if self.s > 1.0 {
                zeta_any(self.s)
            } else {
                f64::INFINITY
            };
            return Ok(exact(v, PolylogMethod::ClosedForm));
        }
        match self.kind {
            Kind::ClosedForm(n) => {
                let mut v = exact(closed_form(n, p, q), PolylogMethod::ClosedForm);
                v.est_error = self.snap_error(v.value, p, q);
                Ok(v)
            }
            Kind::SeriesOnly => self.series(p, q, opts),
            Kind::Generic | Kind::Integer(_) if p <= SERIES_MAX_Z => self.series(p, q, opts),
            Kind::Generic | Kind::Integer(_) => {
                let mu = if p > 0.5 { (-q).ln_1p() } else { p.ln() };
                Ok(self.expansion(mu))
            }
        }
    }

    /// The defining series alone, whatever the order, for `z` in `[0, 1)`.
    pub fn eval_series(&self, z: f64, opts: &EvalOptions) -> Result<PolylogValue, PolylogError> {
        opts.validate()?;
        if !(0.0..1.0).contains(&z) {
            return Err(PolylogError::ArgumentOutOfRange { z });
        }
        if z == 0.0 {
            return Ok(exact(0.0, PolylogMethod::Series));
        }
        self.series(z, 1.0 - z, opts)
    }

    /// `Li_s(e^mu)` for `mu <= 0`, without forming `e^mu` when the
    /// expansion applies.
    pub fn eval_log(&self, mu: f64, opts: &EvalOptions) -> Result<PolylogValue, PolylogError> {
        if !(mu <= 0.0) {
            return Err(PolylogError::ArgumentOutOfRange { z: mu.exp() });
        }
        let p = mu.exp();
        if matches!(self.kind, Kind::Generic | Kind::Integer(_)) && p > SERIES_MAX_Z && mu < 0.0 {
            return Ok(self.expansion(mu));
        }
        self.eval_split(p, -mu.exp_m1(), opts)
    }

    /// `Gamma(1-s)`, the coefficient of `(-ln z)^(s-1)` near `z = 1`, when
    /// the order carries that singular term.
    pub fn singular_coefficient(&self) -> Option<f64> {
        self.has_power_singularity().then(|| self.table().singular)
    }

    fn has_power_singularity(&self) -> bool {
        match self.kind {
            Kind::Generic => true,
            Kind::ClosedForm(n) => n <= 0,
            _ => false,
        }
    }

    /// `Li_s(e^mu) - Gamma(1-s) (-mu)^(s-1)` as a power series in `mu`.
    ///
    /// Free of cancellation, and valid for `-2 pi < mu <= 0`. `None` when
    /// the order has no separable power singularity (positive integers).
    pub fn regular_part(&self, mu: f64) -> Option<f64> {
        if !self.has_power_singularity() || !(mu <= 0.0 && mu > -6.0) {
            return None;
        }
        let table = self.table();
        let mut sum = 0.0;
        let mut pow = 1.0;
        for c in &table.coeffs {
            sum += c * pow;
            pow *= mu;
            if pow == 0.0 {
                break;
            }
        }
        Some(sum)
    }

    /// Treating `self` as order `s - 1`, returns `Li_{s-1}(z) / z`, the
    /// derivative of `Li_s` at `z`. Tends to 1 as `z -> 0`.
    pub fn derivative_of_next(&self, z: f64, opts: &EvalOptions) -> Result<f64, PolylogError> {
        self.derivative_of_next_split(z, 1.0 - z, opts)
    }

    pub fn derivative_of_next_split(
        &self,
        p: f64,
        q: f64,
        opts: &EvalOptions,
    ) -> Result<f64, PolylogError> {
        if p == 0.0 {
            return Ok(1.0);
        }
        Ok(self.eval_split(p, q, opts)?.value / p)
    }

    fn snap_error(&self, value: f64, p: f64, q: f64) -> f64 {
        if self.snapped_by == 0.0 {
            return 0.0;
        }
        // d/ds Li_s is bounded by Li_s times a logarithmic factor
        let log_factor = 1.0 + (-q.ln()).max(0.0).max((-p.ln()).max(0.0)).ln_1p();
        self.snapped_by * value.abs() * log_factor
    }

    fn series(&self, p: f64, q: f64, opts: &EvalOptions) -> Result<PolylogValue, PolylogError> {
        let s = self.s;
        let mut sum = 0.0;
        let mut comp = 0.0;
        let mut pk = 1.0;
        let mut est_error = f64::INFINITY;
        // the geometric tail makes extra digits cheap, so aim below rel_tol
        let target = (1e-4 * opts.rel_tol).max(0.5 * f64::EPSILON);
        for k in 1..=opts.max_terms {
            pk *= p;
            let kf = k as f64;
            let term = pk * (-s * kf.ln()).exp();
            // Neumaier summation
            let t = sum + term;
            if sum.abs() >= term.abs() {
                comp += (sum - t) + term;
            } else {
                comp += (term - t) + sum;
            }
            sum = t;

            let next = term * p * ((kf + 1.0) / kf).powf(-s);
            // successive ratios stay below this bound from here on
            let ratio = if s >= 0.0 {
                p
            } else {
                p * ((kf + 2.0) / (kf + 1.0)).powf(-s)
            };
            let mut bound = if ratio < 1.0 {
                next / (1.0 - ratio)
            } else {
                f64::INFINITY
            };
            if s > 1.0 {
                bound = bound.min(kf.powf(1.0 - s) / (s - 1.0));
            }
            est_error = bound;
            let total = sum + comp;
            if next == 0.0 || (k > 10 && bound <= target * total.abs()) {
                let _ = q;
                return Ok(PolylogValue {
                    value: total,
                    method: PolylogMethod::Series,
                    est_error: bound + 2.0 * f64::EPSILON * total.abs(),
                });
            }
        }
        Err(PolylogError::Accuracy {
            est_error,
            terms: opts.max_terms,
        })
    }

    fn table(&self) -> &Expansion {
        self.coeffs.get_or_init(|| {
            let s = match self.kind {
                Kind::Integer(n) => n as f64,
                _ => self.s,
            };
            let mut coeffs = Vec::with_capacity(EXPANSION_TERMS);
            let mut inv_fact = 1.0;
            for k in 0..EXPANSION_TERMS {
                if k > 0 {
                    inv_fact /= k as f64;
                }
                let arg = s - k as f64;
                let c = if arg == 1.0 {
                    0.0
                } else {
                    zeta_any(arg) * inv_fact
                };
                coeffs.push(c);
            }
            let (singular, harmonic) = match self.kind {
                Kind::Integer(n) => (0.0, (1..n).map(|j| 1.0 / j as f64).sum()),
                _ => (gamma_real(1.0 - s).unwrap_or(f64::NAN), 0.0),
            };
            Expansion {
                singular,
                coeffs,
                harmonic,
            }
        })
    }

    fn expansion(&self, mu: f64) -> PolylogValue {
        let table = self.table();
        let mut sum = 0.0;
        let mut abs_sum = 0.0;
        let mut pow = 1.0;
        let mut last = 0.0f64;
        for (k, c) in table.coeffs.iter().enumerate() {
            let term = c * pow;
            sum += term;
            abs_sum += term.abs();
            if k + 2 >= table.coeffs.len() {
                last = last.max(term.abs());
            }
            pow *= mu;
            if pow == 0.0 {
                break;
            }
        }
        let lead = match self.kind {
            Kind::Integer(n) => {
                // mu^(n-1)/(n-1)! (H_{n-1} - ln(-mu)) replaces the k = n-1 term
                let m = (n - 1) as i32;
                let fact: f64 = (1..n).map(|j| j as f64).product();
                mu.powi(m) / fact * (table.harmonic - (-mu).ln())
            }
            _ => table.singular * (-mu).powf(self.s - 1.0),
        };
        let value = lead + sum;
        let rounding = 8.0 * f64::EPSILON * (abs_sum + lead.abs());
        PolylogValue {
            value,
            method: PolylogMethod::NearOneExpansion,
            est_error: last + rounding + self.snap_error(value, -mu.exp_m1(), mu.exp()),
        }
    }
}

fn exact(value: f64, method: PolylogMethod) -> PolylogValue {
    PolylogValue {
        value,
        method,
        est_error: 0.0,
    }
}

/// Closed forms of `Li_n(p)` written in terms of `p` and `q = 1 - p`.
pub(crate) fn closed_form(n: i32, p: f64, q: f64) -> f64 {
    match n {
        1 => {
            if p <= 0.5 {
                -(-p).ln_1p()
            } else {
                -q.ln()
            }
        }
        0 => p / q,
        -1 => p / (q * q),
        -2 => p * (1.0 + p) / (q * q * q),
        -3 => p * (1.0 + 4.0 * p + p * p) / (q * q * q * q),
        _ => unreachable!("closed form requested for order {n}"),
    }
}
