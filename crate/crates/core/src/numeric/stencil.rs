//! Fourth-order finite-difference derivatives on uniform grids.
//!
//! Interior samples use the symmetric stencils (5 points for first and
//! second derivatives, 7 for the third). Samples too close to an end use a
//! one-sided window of `order + 4` points, which keeps the truncation error
//! at `O(h^4)` all the way to the boundary. Weights come from Fornberg's
//! recursion so every window shape is computed, not tabulated.

use std::ops::{Add, Mul};

use super::field::{ScalarField, VectorField};

/// Derivative order accepted by [`ScalarField::diff`] and [`VectorField::diff`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DerivOrder {
    First = 1,
    Second = 2,
    Third = 3,
}

impl DerivOrder {
    pub fn as_usize(self) -> usize {
        self as usize
    }

    fn central_half_width(self) -> usize {
        match self {
            DerivOrder::First | DerivOrder::Second => 2,
            DerivOrder::Third => 3,
        }
    }

    fn one_sided_width(self) -> usize {
        self.as_usize() + 4
    }
}

impl TryFrom<u8> for DerivOrder {
    type Error = u8;

    fn try_from(v: u8) -> Result<Self, u8> {
        match v {
            1 => Ok(DerivOrder::First),
            2 => Ok(DerivOrder::Second),
            3 => Ok(DerivOrder::Third),
            other => Err(other),
        }
    }
}

/// Fornberg's algorithm: weights of the `m`-th derivative at `x0` from
/// values at `nodes`.
pub fn fornberg_weights(x0: f64, nodes: &[f64], m: usize) -> Vec<f64> {
    let n = nodes.len();
    assert!(n > m, "need more nodes than the derivative order");
    let mut c = vec![vec![0.0; m + 1]; n];
    let mut c1 = 1.0;
    let mut c4 = nodes[0] - x0;
    c[0][0] = 1.0;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = nodes[i] - x0;
        for j in 0..i {
            let c3 = nodes[i] - nodes[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    c.into_iter().map(|row| row[m]).collect()
}

/// Stencil window for sample `i`: first index and weights in units of `h^-m`.
fn window(i: usize, n: usize, order: DerivOrder) -> (usize, usize) {
    let half = order.central_half_width();
    if i >= half && i + half < n {
        return (i - half, 2 * half + 1);
    }
    let width = order.one_sided_width().min(n);
    let lo = if i < half { 0 } else { n - width };
    (lo, width)
}

fn apply<T>(values: &[T], h: f64, order: DerivOrder) -> Vec<T>
where
    T: Copy + Add<Output = T> + Mul<f64, Output = T>,
{
    let n = values.len();
    let m = order.as_usize();
    let scale = h.powi(m as i32).recip();
    let mut cache: Vec<((usize, usize), Vec<f64>)> = Vec::new();
    (0..n)
        .map(|i| {
            let (lo, width) = window(i, n, order);
            let key = (i - lo, width);
            let weights = match cache.iter().find(|(k, _)| *k == key) {
                Some((_, w)) => w,
                None => {
                    let nodes: Vec<f64> = (0..width).map(|j| j as f64).collect();
                    let w = fornberg_weights((i - lo) as f64, &nodes, m);
                    cache.push((key, w));
                    &cache.last().unwrap().1
                }
            };
            let acc = values[lo..lo + width]
                .iter()
                .zip(weights)
                .skip(1)
                .fold(values[lo] * weights[0], |acc, (&v, &w)| acc + v * w);
            acc * scale
        })
        .collect()
}

impl ScalarField {
    /// Derivative with respect to arclength, on the same grid.
    pub fn diff(&self, order: DerivOrder) -> ScalarField {
        ScalarField::from_parts(*self.grid(), apply(self.values(), self.grid().h(), order))
    }
}

impl VectorField {
    /// Componentwise derivative with respect to arclength.
    pub fn diff(&self, order: DerivOrder) -> VectorField {
        VectorField::from_parts(*self.grid(), apply(self.values(), self.grid().h(), order))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numeric::field::{Grid, Vec3};

    #[test]
    fn fornberg_reproduces_textbook_central_weights() {
        let w = fornberg_weights(0.0, &[-2.0, -1.0, 0.0, 1.0, 2.0], 1);
        let expected = [1.0 / 12.0, -2.0 / 3.0, 0.0, 2.0 / 3.0, -1.0 / 12.0];
        for (a, b) in w.iter().zip(expected) {
            assert!((a - b).abs() < 1e-14);
        }
        let w3 = fornberg_weights(0.0, &[-3.0, -2.0, -1.0, 0.0, 1.0, 2.0, 3.0], 3);
        let expected3 = [1.0, -8.0, 13.0, 0.0, -13.0, 8.0, -1.0].map(|x| x / 8.0);
        for (a, b) in w3.iter().zip(expected3) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn constant_has_zero_derivative() {
        let g = Grid::new(0.0, 0.1, 12).unwrap();
        let f = ScalarField::constant(g, 3.5).unwrap();
        for order in [DerivOrder::First, DerivOrder::Second, DerivOrder::Third] {
            assert!(f.diff(order).max_abs() < 1e-9);
        }
    }

    #[test]
    fn third_derivative_of_cubic_is_six() {
        let g = Grid::new(-1.0, 0.05, 41).unwrap();
        let f = ScalarField::from_fn(g, |s| s * s * s).unwrap();
        let d3 = f.diff(DerivOrder::Third);
        for v in d3.values() {
            assert!((v - 6.0).abs() < 1e-7, "{v}");
        }
    }

    #[test]
    fn first_derivative_exact_on_quartics() {
        let g = Grid::new(-0.7, 0.03, 50).unwrap();
        let p = |s: f64| 1.0 - 2.0 * s + 0.5 * s * s + 3.0 * s.powi(3) - 1.5 * s.powi(4);
        let dp = |s: f64| -2.0 + s + 9.0 * s * s - 6.0 * s.powi(3);
        let d = ScalarField::from_fn(g, p).unwrap().diff(DerivOrder::First);
        for (i, v) in d.values().iter().enumerate() {
            assert!((v - dp(g.s(i))).abs() <= 1e-10);
        }
    }

    #[test]
    fn sine_derivative_error_is_fourth_order() {
        // Oracle: closed-form cosine.
        let err = |h: f64| {
            let n = (2.0 / h).round() as usize + 1;
            let g = Grid::new(0.0, h, n).unwrap();
            let d = ScalarField::from_fn(g, f64::sin).unwrap().diff(DerivOrder::First);
            (0..n).fold(0.0f64, |m, i| m.max((d[i] - g.s(i).cos()).abs()))
        };
        let e1 = err(1e-2);
        assert!(e1 < 1e-8, "{e1}");
        let ratio = err(0.04) / err(0.02);
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn vector_diff_is_componentwise() {
        let g = Grid::new(0.0, 0.01, 100).unwrap();
        let v = VectorField::from_fn(g, |s| Vec3::new(s.sin(), s.cos(), s * s)).unwrap();
        let d = v.diff(DerivOrder::First);
        for i in 0..g.len() {
            let s = g.s(i);
            assert!((d[i] - Vec3::new(s.cos(), -s.sin(), 2.0 * s)).norm() < 1e-8);
        }
    }

    #[test]
    fn tiny_grid_still_differentiates() {
        let g = Grid::new(0.0, 0.5, 5).unwrap();
        let f = ScalarField::from_fn(g, |s| s * s).unwrap();
        let d2 = f.diff(DerivOrder::Second);
        for v in d2.values() {
            assert!((v - 2.0).abs() < 1e-12);
        }
    }
}
