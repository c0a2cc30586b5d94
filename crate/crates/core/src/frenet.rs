//! Frenet-type frame of a versor field.
//!
//! For a curve `r(s)` carrying a unit vector field `ξ(s)` the frame is
//! `ξ1 = ξ`, `ξ2 = ξ'/K1`, `ξ3 = ξ1 × ξ2` with curvature `K1 = |ξ'|` and
//! torsion `K2 = <ξ2', ξ3>`. The unit tangent decomposes as
//! `r' = a1 ξ1 + a2 ξ2 + a3 ξ3`. When `ξ` is the tangent itself,
//! `a = (1, 0, 0)` and `(K1, K2)` are the classical curvature and torsion.

use crate::error::{Error, Result};
use crate::numeric::{DerivOrder, Grid, ScalarField, VectorField};

/// Tolerance on `|ξ| = 1` accepted by [`VersorCurve::new`].
pub const VERSOR_TOL: f64 = 1e-8;
/// Default tolerance on `|dr/ds| = 1`.
pub const DEFAULT_UNIT_SPEED_TOL: f64 = 1e-4;
/// Default lower bound on `K1` below which `ξ2` is undefined.
pub const DEFAULT_K1_FLOOR: f64 = 1e-8;

/// A curve sampled by arclength together with its versor field.
#[derive(Debug, Clone, PartialEq)]
pub struct VersorCurve {
    r: VectorField,
    xi: VectorField,
}

impl VersorCurve {
    pub fn new(r: VectorField, xi: VectorField) -> Result<Self> {
        Self::with_unit_speed_tol(r, xi, DEFAULT_UNIT_SPEED_TOL)
    }

    pub fn with_unit_speed_tol(r: VectorField, xi: VectorField, tol: f64) -> Result<Self> {
        r.grid().ensure_same(xi.grid())?;
        for (index, v) in xi.values().iter().enumerate() {
            let norm = v.norm();
            if (norm - 1.0).abs() > VERSOR_TOL {
                return Err(Error::NotUnit {
                    index,
                    norm,
                    tol: VERSOR_TOL,
                });
            }
        }
        let speed = r.diff(DerivOrder::First).norms();
        let (index, max_dev) = speed
            .values()
            .iter()
            .map(|v| (v - 1.0).abs())
            .enumerate()
            .fold((0, 0.0), |best, (i, d)| if d > best.1 { (i, d) } else { best });
        if max_dev > tol {
            return Err(Error::UnitSpeed { index, max_dev, tol });
        }
        Ok(Self { r, xi })
    }

    pub fn grid(&self) -> &Grid {
        self.r.grid()
    }

    pub fn r(&self) -> &VectorField {
        &self.r
    }

    pub fn xi(&self) -> &VectorField {
        &self.xi
    }

    /// Unit tangent `α = dr/ds`.
    pub fn tangent(&self) -> VectorField {
        self.r.diff(DerivOrder::First)
    }
}

/// Frenet-type frame and invariants sampled along the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct FrenetField {
    pub grid: Grid,
    pub xi1: VectorField,
    pub xi2: VectorField,
    pub xi3: VectorField,
    pub k1: ScalarField,
    pub k2: ScalarField,
    pub a1: ScalarField,
    pub a2: ScalarField,
    pub a3: ScalarField,
    /// `K1'`.
    pub dk1: ScalarField,
    /// `K2'`.
    pub dk2: ScalarField,
    /// `ξ2'`, evaluated from `ξ'` and `ξ''` without the moving equations.
    pub dxi2: VectorField,
}

impl FrenetField {
    /// `K2 / K1` sample by sample.
    pub fn torsion_ratio(&self) -> ScalarField {
        self.k2.zip_map(&self.k1, |k2, k1| k2 / k1)
    }

    /// `(K2/K1)'`.
    pub fn torsion_ratio_rate(&self) -> ScalarField {
        let v = (0..self.grid.len())
            .map(|i| (self.dk2[i] * self.k1[i] - self.k2[i] * self.dk1[i]) / self.k1[i].powi(2))
            .collect();
        ScalarField::from_parts(self.grid, v)
    }

    /// `sqrt(K1^2 + K2^2)`, the norm of the Darboux vector.
    pub fn darboux_norm(&self) -> ScalarField {
        self.k1.zip_map(&self.k2, f64::hypot)
    }

    /// Largest deviation of `(ξ1, ξ2, ξ3)` from an orthonormal frame.
    pub fn orthonormality_error(&self) -> f64 {
        frame_error(&self.xi1, &self.xi2, &self.xi3)
    }
}

pub(crate) fn frame_error(e1: &VectorField, e2: &VectorField, e3: &VectorField) -> f64 {
    let mut worst = 0.0f64;
    for i in 0..e1.len() {
        let (a, b, c) = (e1[i], e2[i], e3[i]);
        worst = worst
            .max((a.norm() - 1.0).abs())
            .max((b.norm() - 1.0).abs())
            .max((c.norm() - 1.0).abs())
            .max(a.dot(&b).abs())
            .max(a.dot(&c).abs())
            .max(b.dot(&c).abs())
            .max((a.cross(&b) - c).norm());
    }
    worst
}

/// Builds the Frenet-type frame and `(K1, K2, a1, a2, a3)` from sampled data.
///
/// `ξ'`, `ξ''` and `ξ'''` come from direct stencils; frame derivatives and
/// curvature derivatives follow from them by the chain rule, using
///
/// ```text
/// K2 = det(ξ, ξ', ξ'') / K1^2
/// ```
///
/// Differencing is never nested, which keeps one-sided boundary samples at
/// full order. The frame is not re-orthonormalized.
pub fn extract_frenet(curve: &VersorCurve, k1_floor: f64) -> Result<FrenetField> {
    let grid = *curve.grid();
    let xi1 = curve.xi().clone();
    let v1 = xi1.diff(DerivOrder::First);
    let v2 = xi1.diff(DerivOrder::Second);
    let v3 = xi1.diff(DerivOrder::Third);
    let k1 = v1.norms();
    if let Some(index) = k1.values().iter().position(|&k| !(k >= k1_floor)) {
        return Err(Error::CurvatureVanishes {
            index,
            k1: k1[index],
            floor: k1_floor,
        });
    }
    let n = grid.len();
    let mut xi2 = Vec::with_capacity(n);
    let mut xi3 = Vec::with_capacity(n);
    let mut dxi2 = Vec::with_capacity(n);
    let mut k2 = Vec::with_capacity(n);
    let mut dk1 = Vec::with_capacity(n);
    let mut dk2 = Vec::with_capacity(n);
    for i in 0..n {
        let (x, d1, d2, d3, k) = (xi1[i], v1[i], v2[i], v3[i], k1[i]);
        let e2 = d1 / k;
        let kp = d1.dot(&d2) / k;
        let det = x.dot(&d1.cross(&d2));
        let det_rate = x.dot(&d1.cross(&d3));
        xi2.push(e2);
        xi3.push(x.cross(&e2));
        dxi2.push(d2 / k - d1 * (kp / (k * k)));
        k2.push(det / (k * k));
        dk1.push(kp);
        dk2.push(det_rate / (k * k) - 2.0 * det * kp / (k * k * k));
    }
    let xi2 = VectorField::from_parts(grid, xi2);
    let xi3 = VectorField::from_parts(grid, xi3);
    let tangent = curve.tangent();
    Ok(FrenetField {
        grid,
        a1: tangent.dot(&xi1),
        a2: tangent.dot(&xi2),
        a3: tangent.dot(&xi3),
        xi1,
        xi2,
        xi3,
        k1,
        k2: ScalarField::from_parts(grid, k2),
        dk1: ScalarField::from_parts(grid, dk1),
        dk2: ScalarField::from_parts(grid, dk2),
        dxi2: VectorField::from_parts(grid, dxi2),
    })
}

/// Per-sample maximum residual of the three moving equations
/// `ξ1' = K1 ξ2`, `ξ2' = -K1 ξ1 + K2 ξ3`, `ξ3' = -K2 ξ2`.
pub fn verify_moving_equations(field: &FrenetField) -> ScalarField {
    let d1 = field.xi1.diff(DerivOrder::First);
    let d2 = field.xi2.diff(DerivOrder::First);
    let d3 = field.xi3.diff(DerivOrder::First);
    let values = (0..field.grid.len())
        .map(|i| {
            let (k1, k2) = (field.k1[i], field.k2[i]);
            let r1 = (d1[i] - field.xi2[i] * k1).norm();
            let r2 = (d2[i] + field.xi1[i] * k1 - field.xi3[i] * k2).norm();
            let r3 = (d3[i] + field.xi2[i] * k2).norm();
            r1.max(r2).max(r3)
        })
        .collect();
    ScalarField::from_parts(field.grid, values)
}
