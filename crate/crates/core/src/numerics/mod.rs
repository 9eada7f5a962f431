//! Generic numeric machinery: bracketed root finding for monotone functions,
//! double-exponential quadrature on the unit interval, and the real gamma
//! function.

mod gamma;
mod quad;
mod root;

pub use gamma::{gamma_real, sin_pi};
pub use quad::{
    integrate_interval, integrate_unit_interval, integrate_unit_interval_split, QuadConfig,
    QuadEstimate,
};
pub use root::{find_root_monotone, RootConfig};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum NumericsError {
    #[error("root not bracketed: f({lo}) = {f_lo}, f({hi}) = {f_hi}")]
    NotBracketed {
        lo: f64,
        hi: f64,
        f_lo: f64,
        f_hi: f64,
    },
    #[error("root finder did not converge in {iterations} iterations (bracket width {width:e})")]
    RootNotConverged { iterations: usize, width: f64 },
    #[error("function returned a non-finite value at {x}")]
    NonFinite { x: f64 },
    #[error("integral appears divergent (last estimate {estimate:e}, level change {delta:e})")]
    Divergent { estimate: f64, delta: f64 },
    #[error("quadrature did not reach tolerance after {levels} levels (estimate {estimate:e}, error {error:e})")]
    QuadNotConverged {
        levels: usize,
        estimate: f64,
        error: f64,
    },
    #[error("gamma function pole at {x}")]
    GammaPole { x: f64 },
    #[error("invalid configuration: {0}")]
    Config(&'static str),
}
