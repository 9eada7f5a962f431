use std::f64::consts::PI;

use super::NumericsError;

// Nodes beyond this |t| have a complement below the smallest normal double.
const T_MAX: f64 = 6.5;
const MIN_LEVELS: usize = 3;

/// Settings for the tanh-sinh integrators.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadConfig {
    pub rel_tol: f64,
    /// Number of step halvings after the initial unit step.
    pub max_levels: usize,
}

impl Default for QuadConfig {
    fn default() -> Self {
        Self {
            rel_tol: 1e-9,
            max_levels: 12,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    /// Change between the last two levels.
    pub error: f64,
    pub levels: usize,
    pub evaluations: usize,
}

/// Integrate `g` over `[0, 1]`.
///
/// Nodes that round to exactly 0 or 1 are skipped. Integrands singular at
/// `p = 1` that need the full tolerance should use
/// [`integrate_unit_interval_split`], which hands the integrand `1 - p`
/// without rounding.
pub fn integrate_unit_interval<F>(mut g: F, cfg: &QuadConfig) -> Result<f64, NumericsError>
where
    F: FnMut(f64) -> f64,
{
    integrate_unit_interval_split(
        |p, q| {
            if p == 1.0 || q == 1.0 {
                0.0
            } else {
                g(p)
            }
        },
        cfg,
    )
    .map(|e| e.value)
}

/// Integrate `g` over `[a, b]`; `g` must be regular at both ends or have at
/// most an integrable algebraic singularity there.
pub fn integrate_interval<F>(
    mut g: F,
    a: f64,
    b: f64,
    cfg: &QuadConfig,
) -> Result<QuadEstimate, NumericsError>
where
    F: FnMut(f64) -> f64,
{
    let width = b - a;
    let est = integrate_unit_interval_split(
        |p, q| {
            let x = if p <= 0.5 {
                a + width * p
            } else {
                b - width * q
            };
            g(x)
        },
        cfg,
    )?;
    Ok(QuadEstimate {
        value: est.value * width,
        error: est.error * width.abs(),
        ..est
    })
}

/// Tanh-sinh quadrature over `[0, 1]` where the integrand receives both the
/// node `p` and its exact complement `q = 1 - p`.
///
/// With `u = (pi/2) sinh t` the nodes are `p = 1/(1 + e^{-2u})`,
/// `q = 1/(1 + e^{2u})` and the weights `pi cosh(t) p q`, so nodes
/// approach either endpoint to within the smallest positive double.
/// The step is halved each level until two successive estimates agree to
/// `rel_tol`. A non-finite contribution, an integrand that is still large at
/// the outermost nodes, or level differences that stop contracting by at
/// least a factor of two are reported as divergence.
pub fn integrate_unit_interval_split<F>(
    mut g: F,
    cfg: &QuadConfig,
) -> Result<QuadEstimate, NumericsError>
where
    F: FnMut(f64, f64) -> f64,
{
    if !(cfg.rel_tol > 0.0) {
        return Err(NumericsError::Config("rel_tol must be positive"));
    }
    let mut evaluations = 0usize;
    let mut node = |t: f64| -> Result<f64, NumericsError> {
        let u = 0.5 * PI * t.sinh();
        let p = 1.0 / (1.0 + (-2.0 * u).exp());
        let q = 1.0 / (1.0 + (2.0 * u).exp());
        let w = PI * t.cosh() * p * q;
        if p == 0.0 || q == 0.0 || w == 0.0 {
            return Ok(0.0);
        }
        evaluations += 1;
        let v = w * g(p, q);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(NumericsError::Divergent {
                estimate: v,
                delta: f64::INFINITY,
            })
        }
    };

    let mut h = 1.0;
    let mut sum = node(0.0)?;
    let n0 = T_MAX as i64;
    // contribution of the outermost unit-step nodes; a truncated tail that
    // still matters means the integral is not resolvable in double precision
    let mut tail = 0.0f64;
    for j in 1..=n0 {
        let t = j as f64;
        let (right, left) = (node(t)?, node(-t)?);
        sum += right + left;
        if j == n0 {
            tail = right.abs().max(left.abs());
        }
    }
    let mut estimate = h * sum;
    let mut prev_delta = f64::INFINITY;
    let mut delta = f64::INFINITY;

    for level in 1..=cfg.max_levels {
        h *= 0.5;
        let mut added = 0.0;
        let mut j = 1i64;
        loop {
            let t = j as f64 * h;
            if t > T_MAX {
                break;
            }
            added += node(t)? + node(-t)?;
            j += 2;
        }
        sum += added;
        let next = h * sum;
        prev_delta = delta;
        delta = (next - estimate).abs();
        estimate = next;
        let converged = delta <= cfg.rel_tol * estimate.abs() || estimate == 0.0 && delta == 0.0;
        if level >= MIN_LEVELS && converged {
            if tail > 1e-3 * estimate.abs() {
                return Err(NumericsError::Divergent {
                    estimate,
                    delta: tail,
                });
            }
            if tail > cfg.rel_tol * estimate.abs() {
                return Err(NumericsError::QuadNotConverged {
                    levels: level,
                    estimate,
                    error: tail,
                });
            }
            return Ok(QuadEstimate {
                value: estimate,
                error: delta,
                levels: level,
                evaluations,
            });
        }
    }
    if delta > 0.5 * prev_delta || tail > 1e-3 * estimate.abs() {
        Err(NumericsError::Divergent { estimate, delta })
    } else {
        Err(NumericsError::QuadNotConverged {
            levels: cfg.max_levels,
            estimate,
            error: delta,
        })
    }
}
