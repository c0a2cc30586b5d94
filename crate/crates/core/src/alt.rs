//! Alternative frame `(ξ2, Y, D)` built on the normalized Darboux vector.
//!
//! `Y = ξ2'/|ξ2'|`, `D = (K2 ξ1 + K1 ξ3)/p`, with alternative curvatures
//! `p = sqrt(K1^2 + K2^2)` and `q = (K1^2/p^2) (K2/K1)'`. The frame moves by
//!
//! ```text
//! ξ2' = p Y
//! Y'  = -p ξ2 + q D
//! D'  = -q Y
//! ```
//!
//! and the tangent decomposes as `r' = d1 ξ2 + d2 Y + d3 D`.

use crate::error::{Error, Result};
use crate::frenet::FrenetField;
use crate::numeric::{DerivOrder, Grid, ScalarField, VectorField};

/// Below this `p` the Darboux vector has no direction.
pub const P_FLOOR: f64 = 1e-10;

/// Alternative frame and its invariants sampled along the grid.
#[derive(Debug, Clone, PartialEq)]
pub struct AltField {
    pub grid: Grid,
    pub xi2: VectorField,
    pub y: VectorField,
    pub d: VectorField,
    pub p: ScalarField,
    pub q: ScalarField,
    pub d1: ScalarField,
    pub d2: ScalarField,
    pub d3: ScalarField,
}

impl AltField {
    pub fn orthonormality_error(&self) -> f64 {
        crate::frenet::frame_error(&self.xi2, &self.y, &self.d)
    }
}

/// Builds the alternative frame from a Frenet-type field and the unit
/// tangent `dr/ds` of the same curve.
pub fn extract_alternative(field: &FrenetField, tangent: &VectorField) -> Result<AltField> {
    let grid = field.grid;
    grid.ensure_same(tangent.grid())?;
    let p = field.darboux_norm();
    if let Some(index) = p.values().iter().position(|&v| !(v >= P_FLOOR)) {
        return Err(Error::DegenerateDarboux {
            index,
            p: p[index],
            floor: P_FLOOR,
        });
    }
    let y = VectorField::from_parts(
        grid,
        field
            .dxi2
            .values()
            .iter()
            .enumerate()
            .map(|(i, v)| {
                let n = v.norm();
                if n >= P_FLOOR {
                    Ok(v / n)
                } else {
                    Err(Error::DegenerateDarboux {
                        index: i,
                        p: n,
                        floor: P_FLOOR,
                    })
                }
            })
            .collect::<Result<_>>()?,
    );
    let d = VectorField::from_parts(
        grid,
        (0..grid.len())
            .map(|i| (field.xi1[i] * field.k2[i] + field.xi3[i] * field.k1[i]) / p[i])
            .collect(),
    );
    let ratio_rate = field.torsion_ratio_rate();
    let q = ScalarField::from_parts(
        grid,
        (0..grid.len())
            .map(|i| (field.k1[i] / p[i]).powi(2) * ratio_rate[i])
            .collect(),
    );
    Ok(AltField {
        grid,
        xi2: field.xi2.clone(),
        d1: tangent.dot(&field.xi2),
        d2: tangent.dot(&y),
        d3: tangent.dot(&d),
        y,
        d,
        p,
        q,
    })
}

/// Per-sample maximum residual of the three alternative-frame equations.
pub fn verify_alt_moving_equations(alt: &AltField) -> ScalarField {
    let dx = alt.xi2.diff(DerivOrder::First);
    let dy = alt.y.diff(DerivOrder::First);
    let dd = alt.d.diff(DerivOrder::First);
    let values = (0..alt.grid.len())
        .map(|i| {
            let (p, q) = (alt.p[i], alt.q[i]);
            let r1 = (dx[i] - alt.y[i] * p).norm();
            let r2 = (dy[i] + alt.xi2[i] * p - alt.d[i] * q).norm();
            let r3 = (dd[i] + alt.y[i] * q).norm();
            r1.max(r2).max(r3)
        })
        .collect();
    ScalarField::from_parts(alt.grid, values)
}

/// Angle `φ(s)` with `K1 = p cos φ`, `K2 = p sin φ`.
#[derive(Debug, Clone, PartialEq)]
pub struct CurvaturePhase {
    /// `atan2(K2(s0), K1(s0))`.
    pub phi0: f64,
    /// Running integral of `q` from `s0`.
    pub cumulative_q: ScalarField,
}

impl CurvaturePhase {
    pub fn angle(&self, i: usize) -> f64 {
        self.phi0 + self.cumulative_q[i]
    }
}

/// Reconstructs `φ = φ0 + ∫ q ds` and reports the largest
/// `|K1 - p cos φ| + |K2 - p sin φ|`.
pub fn curvature_relations(alt: &AltField, field: &FrenetField) -> Result<(CurvaturePhase, f64)> {
    alt.grid.ensure_same(&field.grid)?;
    let phase = CurvaturePhase {
        phi0: field.k2[0].atan2(field.k1[0]),
        cumulative_q: alt.q.cumint(),
    };
    let err = (0..alt.grid.len()).fold(0.0f64, |m, i| {
        let (sin, cos) = phase.angle(i).sin_cos();
        m.max((field.k1[i] - alt.p[i] * cos).abs() + (field.k2[i] - alt.p[i] * sin).abs())
    });
    Ok((phase, err))
}

/// Largest residual of the tangent-coefficient change of basis
///
/// ```text
/// a1 = -d2 cos φ + d3 sin φ
/// a2 = d1
/// a3 = d2 sin φ + d3 cos φ
/// ```
///
/// with `(d1, d2, d3)` the alternative-frame tangent coefficients.
pub fn coefficient_relations(alt: &AltField, field: &FrenetField, phase: &CurvaturePhase) -> Result<f64> {
    alt.grid.ensure_same(&field.grid)?;
    Ok((0..alt.grid.len()).fold(0.0f64, |m, i| {
        let (sin, cos) = phase.angle(i).sin_cos();
        let (d1, d2, d3) = (alt.d1[i], alt.d2[i], alt.d3[i]);
        m.max((field.a1[i] - (-d2 * cos + d3 * sin)).abs())
            .max((field.a2[i] - d1).abs())
            .max((field.a3[i] - (d2 * sin + d3 * cos)).abs())
    }))
}

fn angle_between(a: &crate::numeric::Vec3, b: &crate::numeric::Vec3) -> f64 {
    a.cross(b).norm().atan2(a.dot(b))
}

/// Rotation rates of `ξ2` and `D` from the angle between neighbouring
/// samples: forward differences, first-order accurate. Estimates `|p|` and
/// `|q|`.
pub fn angle_rates(alt: &AltField) -> (ScalarField, ScalarField) {
    let n = alt.grid.len();
    let h = alt.grid.h();
    let rate = |f: &VectorField| {
        let mut v: Vec<f64> = (0..n - 1).map(|i| angle_between(&f[i], &f[i + 1]) / h).collect();
        v.push(v[n - 2]);
        ScalarField::from_parts(alt.grid, v)
    };
    (rate(&alt.xi2), rate(&alt.d))
}
