//! The distribution whose quantile function is `Li_s(p)`.
//!
//! For shape `s` the standardized variate `Z = Li_s(U)`, `U ~ U(0, 1)`, is
//! supported on `[0, zeta(s)]` when `s > 1` and on `[0, inf)` otherwise.
//! `s = 1` is the unit exponential, `s = 0` the inverse beta `iB(1, 1)`,
//! and large `s` approaches `U(0, 1)`. Location and scale act last:
//! `X = loc + scale * Z`.

mod moments;

pub use moments::{moment_is_finite, MomentMethod, MomentResult, MomentValue};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::numerics::{find_root_monotone, NumericsError, QuadConfig, RootConfig};
use crate::polylog::{zeta, EvalOptions, Polylog, PolylogError};

/// Largest probability used when inverting on an infinite support.
const P_MAX: f64 = 1.0 - f64::EPSILON;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DistError {
    #[error("invalid parameter {name} = {value}: {reason}")]
    InvalidParameter {
        name: &'static str,
        value: f64,
        reason: &'static str,
    },
    #[error("probability {p} is outside [0, 1]")]
    ProbabilityOutOfRange { p: f64 },
    #[error("moment order must be at least 1")]
    InvalidOrder,
    #[error(transparent)]
    Polylog(#[from] PolylogError),
    #[error(transparent)]
    Numerics(#[from] NumericsError),
}

/// Accuracy settings used by a [`PolyDist`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DistOptions {
    pub eval: EvalOptions,
    pub quad: QuadConfig,
    /// Used for CDF inversion; `abs_tol` is in probability units.
    pub root: RootConfig,
}

impl Default for DistOptions {
    fn default() -> Self {
        Self {
            eval: EvalOptions::default(),
            quad: QuadConfig::default(),
            root: RootConfig {
                abs_tol: 1e-14,
                max_iter: 200,
            },
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Support {
    pub lower: f64,
    /// `f64::INFINITY` for unbounded support.
    pub upper: f64,
}

impl Support {
    pub fn is_bounded(&self) -> bool {
        self.upper.is_finite()
    }
}

/// Polylogarithm-quantile distribution with shape `s`, location and scale.
#[derive(Debug, Clone)]
pub struct PolyDist {
    s: f64,
    loc: f64,
    scale: f64,
    opts: DistOptions,
    quantile_kernel: Polylog,
    // order s - 1, for the density
    density_kernel: Polylog,
    // zeta(s), or inf
    upper_std: f64,
}

impl PolyDist {
    pub fn new(s: f64) -> Result<Self, DistError> {
        Self::with_affine(s, 0.0, 1.0)
    }

    pub fn with_affine(s: f64, loc: f64, scale: f64) -> Result<Self, DistError> {
        if !s.is_finite() {
            return Err(DistError::InvalidParameter {
                name: "s",
                value: s,
                reason: "shape must be finite",
            });
        }
        if !loc.is_finite() {
            return Err(DistError::InvalidParameter {
                name: "loc",
                value: loc,
                reason: "location must be finite",
            });
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(DistError::InvalidParameter {
                name: "scale",
                value: scale,
                reason: "scale must be positive and finite",
            });
        }
        let upper_std = if s > 1.0 { zeta(s)? } else { f64::INFINITY };
        Ok(Self {
            s,
            loc,
            scale,
            opts: DistOptions::default(),
            quantile_kernel: Polylog::new(s)?,
            density_kernel: Polylog::new(s - 1.0)?,
            upper_std,
        })
    }

    pub fn with_options(mut self, opts: DistOptions) -> Self {
        self.opts = opts;
        self
    }

    pub fn shape(&self) -> f64 {
        self.s
    }

    pub fn loc(&self) -> f64 {
        self.loc
    }

    pub fn scale(&self) -> f64 {
        self.scale
    }

    pub fn options(&self) -> &DistOptions {
        &self.opts
    }

    pub fn support(&self) -> Support {
        Support {
            lower: self.loc,
            upper: self.loc + self.scale * self.upper_std,
        }
    }

    /// `loc + scale * Li_s(p)`; `p = 1` gives the upper support bound.
    pub fn quantile(&self, p: f64) -> Result<f64, DistError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(DistError::ProbabilityOutOfRange { p });
        }
        Ok(self.loc + self.scale * self.std_quantile(p, 1.0 - p)?)
    }

    /// Standardized quantile `Li_s(p)` given `p` and `q = 1 - p`.
    pub(crate) fn std_quantile(&self, p: f64, q: f64) -> Result<f64, DistError> {
        if q == 0.0 {
            return Ok(self.upper_std);
        }
        Ok(self
            .quantile_kernel
            .eval_split(p, q, &self.opts.eval)?
            .value)
    }

    pub fn median(&self) -> Result<f64, DistError> {
        self.quantile(0.5)
    }

    /// `P(X <= x)`, found by inverting the monotone quantile function.
    pub fn cdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let z = (x - self.loc) / self.scale;
        self.std_cdf(z)
    }

    fn std_cdf(&self, z: f64) -> f64 {
        if z <= 0.0 {
            return 0.0;
        }
        if z >= self.upper_std {
            return 1.0;
        }
        let f = |p: f64| match self.std_quantile(p, 1.0 - p) {
            Ok(v) => v - z,
            Err(_) => f64::NAN,
        };
        let (mut lo, mut hi) = (0.0, P_MAX);
        if f(hi) <= 0.0 {
            return hi;
        }
        // warm start: exact at s = 1, proportional guess on bounded support
        let guess = if self.s <= 1.0 {
            -(-z).exp_m1()
        } else {
            (z / self.upper_std).min(1.0)
        };
        if guess > lo && guess < hi {
            let fg = f(guess);
            if fg == 0.0 {
                return guess;
            } else if fg < 0.0 {
                lo = guess;
            } else if fg > 0.0 {
                hi = guess;
            }
        }
        match find_root_monotone(f, lo, hi, &self.opts.root) {
            Ok(p) => p,
            Err(_) => self.bisect_cdf(z, lo, hi),
        }
    }

    // Fallback if Brent is handed a pathological bracket.
    fn bisect_cdf(&self, z: f64, mut lo: f64, mut hi: f64) -> f64 {
        while hi - lo > self.opts.root.abs_tol {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            match self.std_quantile(mid, 1.0 - mid) {
                Ok(v) if v < z => lo = mid,
                _ => hi = mid,
            }
        }
        0.5 * (lo + hi)
    }

    /// Density `f(x) = p / (scale * Li_{s-1}(p))` at `p = F(x)`.
    ///
    /// Zero outside the support; `1/scale` at the lower bound, the limit
    /// shared by every shape.
    pub fn pdf(&self, x: f64) -> f64 {
        if x.is_nan() {
            return f64::NAN;
        }
        let z = (x - self.loc) / self.scale;
        if z < 0.0 || z > self.upper_std {
            return 0.0;
        }
        let p = if z == self.upper_std {
            1.0
        } else {
            self.std_cdf(z)
        };
        self.density_at_probability(p).unwrap_or(f64::NAN)
    }

    /// The density at the `p`-quantile, `f(Q(p))`, which needs no
    /// inversion.
    pub fn density_at_probability(&self, p: f64) -> Result<f64, DistError> {
        if !(0.0..=1.0).contains(&p) {
            return Err(DistError::ProbabilityOutOfRange { p });
        }
        if p == 0.0 {
            return Ok(1.0 / self.scale);
        }
        let slope = self
            .density_kernel
            .derivative_of_next_split(p, 1.0 - p, &self.opts.eval)?;
        Ok(1.0 / (self.scale * slope))
    }

    /// `n` draws by inverse transform, `Q(U)` with `U` from a ChaCha8
    /// stream seeded with `seed` (`rand_chacha::ChaCha8Rng::seed_from_u64`,
    /// uniforms in `[0, 1)` with 53 random bits).
    pub fn sample(&self, n: usize, seed: u64) -> Result<Vec<f64>, DistError> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        self.sample_with(&mut rng, n)
    }

    pub fn sample_with<R: Rng + ?Sized>(
        &self,
        rng: &mut R,
        n: usize,
    ) -> Result<Vec<f64>, DistError> {
        (0..n)
            .map(|_| {
                let u: f64 = rng.gen();
                Ok(self.loc + self.scale * self.std_quantile(u, 1.0 - u)?)
            })
            .collect()
    }

    pub(crate) fn quantile_kernel(&self) -> &Polylog {
        &self.quantile_kernel
    }
}
