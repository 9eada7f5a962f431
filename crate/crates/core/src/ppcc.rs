//! Probability plot correlation coefficient (PPCC) fitting of the shape
//! parameter to a non-negative sample.
//!
//! For each candidate shape the sorted sample is correlated with the model
//! quantiles at plotting positions. Pearson correlation ignores location
//! and scale, so only the shape is searched.

use rayon::prelude::*;
use thiserror::Error;

use crate::distribution::{DistError, PolyDist};
use crate::families::{nearest_named_family_with, FamilyBands, FamilyLabel};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PpccError {
    #[error("need at least 3 data points, got {n}")]
    TooFewPoints { n: usize },
    #[error("plotting positions need n >= 1")]
    EmptyPositions,
    #[error("datum {index} is negative ({value})")]
    NegativeDatum { index: usize, value: f64 },
    #[error("datum {index} is not finite")]
    NonFinite { index: usize },
    #[error("data have zero variance")]
    Degenerate,
    #[error("shape grid is empty")]
    EmptyGrid,
    #[error("shape grid must be strictly ascending (entry {index})")]
    UnsortedGrid { index: usize },
    #[error(transparent)]
    Dist(#[from] DistError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PlottingPositions {
    /// `(i - 0.5) / n`
    #[default]
    Hazen,
    /// `i / (n + 1)`
    Weibull,
    /// `(i - 0.375) / (n + 0.25)`
    Blom,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PpccOptions {
    pub positions: PlottingPositions,
    /// Probabilities are kept in `[clamp, 1 - clamp]` when `s <= 1`.
    pub clamp: f64,
    /// Evaluate midpoints on either side of the best grid point.
    pub refine: bool,
    pub bands: FamilyBands,
}

impl Default for PpccOptions {
    fn default() -> Self {
        Self {
            positions: PlottingPositions::Hazen,
            clamp: 1e-12,
            refine: true,
            bands: FamilyBands::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PpccProfile {
    pub grid: Vec<f64>,
    pub r: Vec<f64>,
    pub best_s: f64,
    pub best_r: f64,
    pub family: FamilyLabel,
    /// Best of `best_s` and the midpoints to its grid neighbours. Equal to
    /// `best_s` when refinement is off or finds nothing better.
    pub refined_s: f64,
    pub refined_r: f64,
}

/// Hazen plotting positions `(i - 0.5) / n`.
pub fn plotting_positions(n: usize) -> Result<Vec<f64>, PpccError> {
    positions(n, PlottingPositions::Hazen)
}

pub fn positions(n: usize, kind: PlottingPositions) -> Result<Vec<f64>, PpccError> {
    if n == 0 {
        return Err(PpccError::EmptyPositions);
    }
    let nf = n as f64;
    Ok((1..=n)
        .map(|i| {
            let i = i as f64;
            match kind {
                PlottingPositions::Hazen => (i - 0.5) / nf,
                PlottingPositions::Weibull => i / (nf + 1.0),
                PlottingPositions::Blom => (i - 0.375) / (nf + 0.25),
            }
        })
        .collect())
}

/// Correlation of the sample with the shape-`s` model at plotting positions.
pub fn ppcc(data: &[f64], s: f64) -> Result<f64, PpccError> {
    ppcc_with(data, s, &PpccOptions::default())
}

pub fn ppcc_with(data: &[f64], s: f64, opts: &PpccOptions) -> Result<f64, PpccError> {
    Prepared::new(data, opts)?.r_at(s)
}

pub fn fit_shape(data: &[f64], grid: &[f64]) -> Result<PpccProfile, PpccError> {
    fit_shape_with(data, grid, &PpccOptions::default())
}

pub fn fit_shape_with(
    data: &[f64],
    grid: &[f64],
    opts: &PpccOptions,
) -> Result<PpccProfile, PpccError> {
    if grid.is_empty() {
        return Err(PpccError::EmptyGrid);
    }
    if let Some(i) = (1..grid.len()).find(|&i| !(grid[i] > grid[i - 1])) {
        return Err(PpccError::UnsortedGrid { index: i });
    }
    let prepared = Prepared::new(data, opts)?;
    let r = grid
        .par_iter()
        .map(|&s| prepared.r_at(s))
        .collect::<Result<Vec<_>, _>>()?;

    let mut best = 0;
    for i in 1..r.len() {
        if r[i] > r[best] {
            best = i;
        }
    }
    let (best_s, best_r) = (grid[best], r[best]);
    let (mut refined_s, mut refined_r) = (best_s, best_r);
    if opts.refine {
        let left = best.checked_sub(1).map(|i| 0.5 * (grid[i] + best_s));
        let right = grid.get(best + 1).map(|&g| 0.5 * (best_s + g));
        for s in [left, right].into_iter().flatten() {
            let rs = prepared.r_at(s)?;
            if rs > refined_r {
                refined_s = s;
                refined_r = rs;
            }
        }
    }
    Ok(PpccProfile {
        grid: grid.to_vec(),
        r,
        best_s,
        best_r,
        family: nearest_named_family_with(best_s, &opts.bands),
        refined_s,
        refined_r,
    })
}

/// Sorted, centred sample and plotting positions, shared across shapes.
struct Prepared {
    centred: Vec<f64>,
    norm: f64,
    probs: Vec<f64>,
    clamp: f64,
}

impl Prepared {
    fn new(data: &[f64], opts: &PpccOptions) -> Result<Self, PpccError> {
        if data.len() < 3 {
            return Err(PpccError::TooFewPoints { n: data.len() });
        }
        for (index, &value) in data.iter().enumerate() {
            if !value.is_finite() {
                return Err(PpccError::NonFinite { index });
            }
            if value < 0.0 {
                return Err(PpccError::NegativeDatum { index, value });
            }
        }
        let mut sorted = data.to_vec();
        sorted.sort_by(f64::total_cmp);
        let (centred, norm) = centre(&sorted);
        if !(norm > 0.0) {
            return Err(PpccError::Degenerate);
        }
        Ok(Self {
            centred,
            norm,
            probs: positions(data.len(), opts.positions)?,
            clamp: opts.clamp,
        })
    }

    fn r_at(&self, s: f64) -> Result<f64, PpccError> {
        let dist = PolyDist::new(s)?;
        let lo = if s <= 1.0 { self.clamp } else { 0.0 };
        let model = self
            .probs
            .iter()
            .map(|&p| dist.quantile(p.clamp(lo, 1.0 - lo)))
            .collect::<Result<Vec<_>, _>>()?;
        let (model, model_norm) = centre(&model);
        if !(model_norm > 0.0) || !model_norm.is_finite() {
            return Err(PpccError::Degenerate);
        }
        let cross: f64 = self.centred.iter().zip(&model).map(|(a, b)| a * b).sum();
        Ok((cross / (self.norm * model_norm)).clamp(-1.0, 1.0))
    }
}

/// Deviations from the mean and their Euclidean norm.
fn centre(xs: &[f64]) -> (Vec<f64>, f64) {
    let mean = xs.iter().sum::<f64>() / xs.len() as f64;
    let dev: Vec<f64> = xs.iter().map(|x| x - mean).collect();
    let norm = dev.iter().map(|d| d * d).sum::<f64>().sqrt();
    (dev, norm)
}
