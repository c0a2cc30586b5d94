use super::field::ScalarField;
use crate::error::{Error, Result};

/// Floor applied to `|mean|` before dividing, so a quantity that is
/// constant at zero does not blow up the relative deviation.
pub const REL_DEV_FLOOR: f64 = 1e-12;

/// How close a sampled quantity is to a constant.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConstancyStats {
    pub mean: f64,
    pub max_abs_dev: f64,
    /// `max_abs_dev / max(|mean|, REL_DEV_FLOOR)`.
    pub rel_dev: f64,
    pub tol: f64,
    pub is_constant: bool,
}

impl ConstancyStats {
    /// Statistics over an arbitrary non-empty sample set.
    pub fn of_values(values: &[f64], tol: f64) -> Result<Self> {
        if !(tol > 0.0) {
            return Err(Error::InvalidTolerance(tol));
        }
        if values.is_empty() {
            return Err(Error::TooFewSamples { needed: 1, got: 0 });
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let max_abs_dev = values.iter().fold(0.0f64, |m, v| m.max((v - mean).abs()));
        let rel_dev = max_abs_dev / mean.abs().max(REL_DEV_FLOOR);
        Ok(Self {
            mean,
            max_abs_dev,
            rel_dev,
            tol,
            is_constant: rel_dev <= tol,
        })
    }
}

/// Constancy statistics of a scalar field at relative tolerance `tol`.
pub fn constancy(field: &ScalarField, tol: f64) -> Result<ConstancyStats> {
    ConstancyStats::of_values(field.values(), tol)
}
