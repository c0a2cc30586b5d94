use nalgebra::Vector3;

use crate::error::{Error, Result};

/// Three-component real vector used for positions and frame vectors.
pub type Vec3 = Vector3<f64>;

/// Uniform arclength grid `s_i = s0 + i h`, `i = 0..n`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    s0: f64,
    h: f64,
    n: usize,
}

impl Grid {
    /// Smallest sample count the fourth-order stencils can work with.
    pub const MIN_SAMPLES: usize = 5;

    pub fn new(s0: f64, h: f64, n: usize) -> Result<Self> {
        if !s0.is_finite() {
            return Err(Error::InvalidGrid(format!("origin {s0} is not finite")));
        }
        if !(h > 0.0 && h.is_finite()) {
            return Err(Error::InvalidGrid(format!("step {h} must be positive")));
        }
        if n < Self::MIN_SAMPLES {
            return Err(Error::TooFewSamples {
                needed: Self::MIN_SAMPLES,
                got: n,
            });
        }
        Ok(Self { s0, h, n })
    }

    /// Grid with `n` samples covering `[start, end]` inclusive.
    pub fn spanning(start: f64, end: f64, n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::TooFewSamples {
                needed: Self::MIN_SAMPLES,
                got: n,
            });
        }
        Self::new(start, (end - start) / (n - 1) as f64, n)
    }

    pub fn s0(&self) -> f64 {
        self.s0
    }

    pub fn h(&self) -> f64 {
        self.h
    }

    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false; a grid holds at least [`Grid::MIN_SAMPLES`] points.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn s(&self, i: usize) -> f64 {
        self.s0 + i as f64 * self.h
    }

    pub fn end(&self) -> f64 {
        self.s(self.n - 1)
    }

    pub fn points(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.n).map(move |i| self.s(i))
    }

    /// Same origin and span with the step halved.
    pub fn refined(&self) -> Self {
        Self {
            s0: self.s0,
            h: self.h / 2.0,
            n: 2 * self.n - 1,
        }
    }

    pub(crate) fn ensure_same(&self, other: &Grid) -> Result<()> {
        let close = (self.s0 - other.s0).abs() <= 1e-12 * (1.0 + self.s0.abs())
            && (self.h - other.h).abs() <= 1e-12 * self.h
            && self.n == other.n;
        if close {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}

/// Real samples on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScalarField {
    grid: Grid,
    values: Vec<f64>,
}

impl ScalarField {
    pub fn new(grid: Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { grid, values })
    }

    /// Samples `f` at every grid point.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> f64) -> Result<Self> {
        Self::new(grid, grid.points().map(f).collect())
    }

    pub fn constant(grid: Grid, c: f64) -> Result<Self> {
        Self::new(grid, vec![c; grid.len()])
    }

    /// Internal constructor for values already known to be well formed.
    pub(crate) fn from_parts(grid: Grid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn map(&self, f: impl Fn(f64) -> f64) -> Self {
        Self::from_parts(self.grid, self.values.iter().map(|&v| f(v)).collect())
    }

    /// Pointwise combination of two fields on the same grid.
    pub fn zip_map(&self, other: &ScalarField, f: impl Fn(f64, f64) -> f64) -> Self {
        debug_assert_eq!(self.len(), other.len());
        let values = self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect();
        Self::from_parts(self.grid, values)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Largest `|value|` with `skip` samples dropped at each end.
    pub fn max_abs_interior(&self, skip: usize) -> f64 {
        let n = self.values.len();
        if 2 * skip >= n {
            return 0.0;
        }
        self.values[skip..n - skip].iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    pub fn min(&self) -> f64 {
        self.values.iter().copied().fold(f64::INFINITY, f64::min)
    }

    pub fn max(&self) -> f64 {
        self.values.iter().copied().fold(f64::NEG_INFINITY, f64::max)
    }

    pub fn mean(&self) -> f64 {
        self.values.iter().sum::<f64>() / self.len() as f64
    }
}

impl std::ops::Index<usize> for ScalarField {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.values[i]
    }
}

/// Three-vector samples on a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct VectorField {
    grid: Grid,
    values: Vec<Vec3>,
}

impl VectorField {
    pub fn new(grid: Grid, values: Vec<Vec3>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::LengthMismatch {
                expected: grid.len(),
                got: values.len(),
            });
        }
        if let Some(index) = values.iter().position(|v| !v.iter().all(|c| c.is_finite())) {
            return Err(Error::NonFinite { index });
        }
        Ok(Self { grid, values })
    }

    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Vec3) -> Result<Self> {
        Self::new(grid, grid.points().map(f).collect())
    }

    pub(crate) fn from_parts(grid: Grid, values: Vec<Vec3>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self { grid, values }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[Vec3] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn map(&self, f: impl Fn(&Vec3) -> Vec3) -> Self {
        Self::from_parts(self.grid, self.values.iter().map(f).collect())
    }

    /// Per-sample reduction to a scalar field (norms, dot products, ...).
    pub fn map_scalar(&self, f: impl Fn(&Vec3) -> f64) -> ScalarField {
        ScalarField::from_parts(self.grid, self.values.iter().map(f).collect())
    }

    pub fn norms(&self) -> ScalarField {
        self.map_scalar(|v| v.norm())
    }

    pub fn dot(&self, other: &VectorField) -> ScalarField {
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a.dot(b)).collect();
        ScalarField::from_parts(self.grid, values)
    }

    /// Largest distance of any sample from the first one.
    pub fn drift(&self) -> f64 {
        let first = self.values[0];
        self.values.iter().fold(0.0, |m, v| m.max((v - first).norm()))
    }
}

impl std::ops::Index<usize> for VectorField {
    type Output = Vec3;

    fn index(&self, i: usize) -> &Vec3 {
        &self.values[i]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_rejects_bad_parameters() {
        assert!(matches!(Grid::new(0.0, 0.0, 10), Err(Error::InvalidGrid(_))));
        assert!(matches!(Grid::new(0.0, -1.0, 10), Err(Error::InvalidGrid(_))));
        assert_eq!(Grid::new(0.0, 0.1, 4), Err(Error::TooFewSamples { needed: 5, got: 4 }));
    }

    #[test]
    fn spanning_grid_hits_both_ends() {
        let g = Grid::spanning(1.0, 3.0, 21).unwrap();
        assert!((g.h() - 0.1).abs() < 1e-15);
        assert!((g.end() - 3.0).abs() < 1e-12);
        let r = g.refined();
        assert_eq!(r.len(), 41);
        assert!((r.end() - 3.0).abs() < 1e-12);
    }

    #[test]
    fn fields_check_length_and_finiteness() {
        let g = Grid::new(0.0, 1.0, 5).unwrap();
        assert!(matches!(
            ScalarField::new(g, vec![0.0; 4]),
            Err(Error::LengthMismatch { .. })
        ));
        assert_eq!(
            ScalarField::new(g, vec![0.0, 1.0, f64::NAN, 0.0, 0.0]),
            Err(Error::NonFinite { index: 2 })
        );
        let mut v = vec![Vec3::zeros(); 5];
        v[4].y = f64::INFINITY;
        assert_eq!(VectorField::new(g, v), Err(Error::NonFinite { index: 4 }));
    }
}
