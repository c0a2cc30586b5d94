//! Reconstruction of a versor field from prescribed invariants.
//!
//! Given `K1 > 0`, `K2` and a unit coefficient triple `(a1, a2, a3)`, the
//! position and frame solve
//!
//! ```text
//! r'  = a1 ξ1 + a2 ξ2 + a3 ξ3
//! ξ1' = K1 ξ2
//! ξ2' = -K1 ξ1 + K2 ξ3
//! ξ3' = -K2 ξ2
//! ```
//!
//! The result is unique up to a proper rigid motion, fixed here by the
//! initial [`FramePose`].

use crate::error::{Error, Result};
use crate::frenet::{extract_frenet, VersorCurve, DEFAULT_K1_FLOOR};
use crate::motion::RigidMotion;
use crate::numeric::{orthonormalize, Grid, ScalarField, Vec3, VectorField};

/// Accepted deviation of `a1^2 + a2^2 + a3^2` from 1.
pub const COEFFICIENT_NORM_TOL: f64 = 1e-8;

/// Invariants at one arclength value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Invariants {
    pub k1: f64,
    pub k2: f64,
    pub a: [f64; 3],
}

impl Invariants {
    pub fn new(k1: f64, k2: f64, a: [f64; 3]) -> Self {
        Self { k1, k2, a }
    }

    /// Tangent-type coefficients `a = (1, 0, 0)`.
    pub fn tangent(k1: f64, k2: f64) -> Self {
        Self::new(k1, k2, [1.0, 0.0, 0.0])
    }
}

/// Sampled `K1, K2, a1, a2, a3` with a cubic rule for midpoints.
#[derive(Debug, Clone, PartialEq)]
pub struct InvariantSpec {
    k1: ScalarField,
    k2: ScalarField,
    a1: ScalarField,
    a2: ScalarField,
    a3: ScalarField,
}

impl InvariantSpec {
    pub fn new(k1: ScalarField, k2: ScalarField, a1: ScalarField, a2: ScalarField, a3: ScalarField) -> Result<Self> {
        let grid = *k1.grid();
        for f in [&k2, &a1, &a2, &a3] {
            grid.ensure_same(f.grid())?;
        }
        if let Some(index) = k1.values().iter().position(|&k| !(k > 0.0)) {
            return Err(Error::InvalidSpec {
                field: "K1",
                index,
                reason: format!("curvature must be positive, got {}", k1[index]),
            });
        }
        for index in 0..grid.len() {
            let norm2 = a1[index].powi(2) + a2[index].powi(2) + a3[index].powi(2);
            if (norm2 - 1.0).abs() > COEFFICIENT_NORM_TOL {
                return Err(Error::InvalidSpec {
                    field: "a",
                    index,
                    reason: format!("a1^2 + a2^2 + a3^2 = {norm2}, expected 1"),
                });
            }
        }
        Ok(Self { k1, k2, a1, a2, a3 })
    }

    /// Samples an analytic invariant function on `grid`.
    pub fn from_fn(grid: Grid, f: impl Fn(f64) -> Invariants) -> Result<Self> {
        let samples: Vec<Invariants> = grid.points().map(f).collect();
        let field = |name: &'static str, pick: &dyn Fn(&Invariants) -> f64| {
            ScalarField::new(grid, samples.iter().map(pick).collect()).map_err(|e| match e {
                Error::NonFinite { index } => Error::InvalidSpec {
                    field: name,
                    index,
                    reason: "value is not finite".into(),
                },
                other => other,
            })
        };
        Self::new(
            field("K1", &|v| v.k1)?,
            field("K2", &|v| v.k2)?,
            field("a1", &|v| v.a[0])?,
            field("a2", &|v| v.a[1])?,
            field("a3", &|v| v.a[2])?,
        )
    }

    pub fn grid(&self) -> &Grid {
        self.k1.grid()
    }

    pub fn k1(&self) -> &ScalarField {
        &self.k1
    }

    pub fn k2(&self) -> &ScalarField {
        &self.k2
    }

    pub fn a(&self) -> [&ScalarField; 3] {
        [&self.a1, &self.a2, &self.a3]
    }

    pub fn at(&self, i: usize) -> Invariants {
        Invariants::new(self.k1[i], self.k2[i], [self.a1[i], self.a2[i], self.a3[i]])
    }

    /// Cubic interpolation at `s_i + h/2`, using the four nearest samples.
    /// The coefficient triple is renormalized onto the unit sphere.
    pub fn midpoint(&self, i: usize) -> Invariants {
        let n = self.grid().len();
        debug_assert!(i + 1 < n);
        let (lo, w): (usize, [f64; 4]) = if i == 0 {
            (0, [5.0, 15.0, -5.0, 1.0])
        } else if i + 2 >= n {
            (n - 4, [1.0, -5.0, 15.0, 5.0])
        } else {
            (i - 1, [-1.0, 9.0, 9.0, -1.0])
        };
        let interp = |f: &ScalarField| (0..4).map(|j| w[j] * f[lo + j]).sum::<f64>() / 16.0;
        let a = Vec3::new(interp(&self.a1), interp(&self.a2), interp(&self.a3)).normalize();
        Invariants::new(interp(&self.k1), interp(&self.k2), [a.x, a.y, a.z])
    }

    /// `max sqrt(K1^2 + K2^2)`, the natural scale for curvature errors.
    pub fn curvature_scale(&self) -> f64 {
        self.k1
            .values()
            .iter()
            .zip(self.k2.values())
            .fold(0.0f64, |m, (a, b)| m.max(a.hypot(*b)))
    }
}

/// Initial point and frame `(ξ1, ξ2, ξ3)` for integration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FramePose {
    pub point: Vec3,
    pub frame: [Vec3; 3],
}

impl FramePose {
    pub const FRAME_TOL: f64 = 1e-12;

    pub fn new(point: Vec3, frame: [Vec3; 3]) -> Result<Self> {
        let [e1, e2, e3] = frame;
        let err = [
            (e1.norm() - 1.0).abs(),
            (e2.norm() - 1.0).abs(),
            (e3.norm() - 1.0).abs(),
            e1.dot(&e2).abs(),
            e1.dot(&e3).abs(),
            e2.dot(&e3).abs(),
            (e1.cross(&e2) - e3).norm(),
        ]
        .into_iter()
        .fold(0.0f64, f64::max);
        if !(err <= Self::FRAME_TOL) {
            return Err(Error::InvalidPose(format!(
                "frame is not orthonormal and right-handed (error {err:e})"
            )));
        }
        Ok(Self { point, frame })
    }

    /// Identity frame at the origin.
    pub fn identity() -> Self {
        Self {
            point: Vec3::zeros(),
            frame: [Vec3::x(), Vec3::y(), Vec3::z()],
        }
    }

    pub fn moved(&self, g: &RigidMotion) -> Self {
        Self {
            point: g.apply_point(&self.point),
            frame: self.frame.map(|e| g.apply_vector(&e)),
        }
    }
}

impl Default for FramePose {
    fn default() -> Self {
        Self::identity()
    }
}

/// Position plus frame, the 12-dimensional integration state.
#[derive(Debug, Clone, Copy)]
struct State([Vec3; 4]);

impl State {
    fn axpy(&self, h: f64, d: &State) -> State {
        State(std::array::from_fn(|k| self.0[k] + d.0[k] * h))
    }
}

fn rhs(x: &State, inv: &Invariants) -> State {
    let [_, e1, e2, e3] = x.0;
    let [a1, a2, a3] = inv.a;
    State([
        e1 * a1 + e2 * a2 + e3 * a3,
        e2 * inv.k1,
        e3 * inv.k2 - e1 * inv.k1,
        e2 * -inv.k2,
    ])
}

/// Integrates the frame equations with classical RK4 at the grid step,
/// re-orthonormalizing the frame after every step, and returns `(r, ξ1)`.
pub fn synthesize(spec: &InvariantSpec, init: &FramePose) -> Result<VersorCurve> {
    let grid = *spec.grid();
    let h = grid.h();
    let mut x = State([init.point, init.frame[0], init.frame[1], init.frame[2]]);
    let mut r = Vec::with_capacity(grid.len());
    let mut xi = Vec::with_capacity(grid.len());
    r.push(x.0[0]);
    xi.push(x.0[1]);
    for i in 0..grid.len() - 1 {
        let (start, mid, end) = (spec.at(i), spec.midpoint(i), spec.at(i + 1));
        let k1 = rhs(&x, &start);
        let k2 = rhs(&x.axpy(h / 2.0, &k1), &mid);
        let k3 = rhs(&x.axpy(h / 2.0, &k2), &mid);
        let k4 = rhs(&x.axpy(h, &k3), &end);
        let step = State(std::array::from_fn(|k| {
            (k1.0[k] + (k2.0[k] + k3.0[k]) * 2.0 + k4.0[k]) / 6.0
        }));
        x = x.axpy(h, &step);
        let [e1, e2, e3] = orthonormalize([x.0[1], x.0[2], x.0[3]])?;
        x.0[1] = e1;
        x.0[2] = e2;
        x.0[3] = e3;
        r.push(x.0[0]);
        xi.push(e1);
    }
    VersorCurve::new(VectorField::new(grid, r)?, VectorField::new(grid, xi)?)
}

/// Errors of invariants recovered by extraction after synthesis.
///
/// `K1` and `K2` errors are relative to the curvature scale
/// `max sqrt(K1^2 + K2^2)`; the `a_i` are components of a unit vector and
/// their errors are absolute.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RoundTripReport {
    pub k1: f64,
    pub k2: f64,
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl RoundTripReport {
    pub fn max(&self) -> f64 {
        [self.k1, self.k2, self.a1, self.a2, self.a3]
            .into_iter()
            .fold(0.0, f64::max)
    }
}

fn max_diff(a: &ScalarField, b: &ScalarField) -> f64 {
    a.values()
        .iter()
        .zip(b.values())
        .fold(0.0f64, |m, (x, y)| m.max((x - y).abs()))
}

/// Runs [`synthesize`] and then extracts the Frenet-type invariants again.
pub fn extract_after_synthesize(spec: &InvariantSpec, init: &FramePose) -> Result<RoundTripReport> {
    let curve = synthesize(spec, init)?;
    let field = extract_frenet(&curve, DEFAULT_K1_FLOOR)?;
    let scale = spec.curvature_scale();
    let [a1, a2, a3] = spec.a();
    Ok(RoundTripReport {
        k1: max_diff(&field.k1, spec.k1()) / scale,
        k2: max_diff(&field.k2, spec.k2()) / scale,
        a1: max_diff(&field.a1, a1),
        a2: max_diff(&field.a2, a2),
        a3: max_diff(&field.a3, a3),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::motion::rigid_motion_distance;
    use crate::presets;
    use nalgebra::Rotation3;

    fn grid(h: f64) -> Grid {
        Grid::new(0.0, h, (4.0 / h).round() as usize + 1).unwrap()
    }

    #[test]
    fn constant_invariants_give_the_circular_helix() {
        let g = grid(1e-3);
        let spec = InvariantSpec::from_fn(g, |_| Invariants::tangent(0.5, 0.5)).unwrap();
        let out = synthesize(&spec, &FramePose::identity()).unwrap();
        let exact = presets::circular_helix(1.0, 1.0, g).unwrap();
        assert!(rigid_motion_distance(&out, &exact).unwrap() <= 1e-6);
        let rt = extract_after_synthesize(&spec, &FramePose::identity()).unwrap();
        assert!(rt.max() <= 1e-6, "{rt:?}");
    }

    #[test]
    fn rotating_line_round_trip() {
        let g = grid(1e-3);
        let spec = InvariantSpec::from_fn(g, |s| Invariants::new(1.0, 0.0, [s.cos(), -s.sin(), 0.0])).unwrap();
        let out = synthesize(&spec, &FramePose::identity()).unwrap();
        let exact = presets::rotating_versor_line(g).unwrap();
        assert!(rigid_motion_distance(&out, &exact).unwrap() <= 1e-6);
        assert!(extract_after_synthesize(&spec, &FramePose::identity()).unwrap().max() <= 1e-6);
    }

    #[test]
    fn slant_spec_round_trip() {
        let spec = presets::Preset::Slant { p: 1.0, q: 0.25 }.spec(grid(1e-3)).unwrap();
        let rt = extract_after_synthesize(&spec, &FramePose::identity()).unwrap();
        assert!(rt.max() <= 1e-5, "{rt:?}");
    }

    #[test]
    fn binormal_coefficients_round_trip() {
        let spec = InvariantSpec::from_fn(grid(1e-3), |_| Invariants::new(1.0, 0.3, [0.0, 0.0, 1.0])).unwrap();
        let rt = extract_after_synthesize(&spec, &FramePose::identity()).unwrap();
        assert!(rt.max() <= 1e-5, "{rt:?}");
    }

    #[test]
    fn different_initial_poses_differ_by_a_motion() {
        let spec = presets::Preset::NonHelix.spec(grid(1e-3)).unwrap();
        let g = RigidMotion::new(Rotation3::from_euler_angles(0.3, -1.1, 2.0), Vec3::new(4.0, -2.0, 0.5));
        let a = synthesize(&spec, &FramePose::identity()).unwrap();
        let b = synthesize(&spec, &FramePose::identity().moved(&g)).unwrap();
        assert!(rigid_motion_distance(&a, &b).unwrap() <= 1e-8);
        // Equivariance: b is exactly g applied to a.
        let ga = g.apply_curve(&a).unwrap();
        for i in 0..ga.grid().len() {
            assert!((ga.r()[i] - b.r()[i]).norm() <= 1e-10);
            assert!((ga.xi()[i] - b.xi()[i]).norm() <= 1e-10);
        }
    }

    #[test]
    fn output_is_unit_speed() {
        let spec = presets::Preset::NonHelix.spec(grid(1e-2)).unwrap();
        let c = synthesize(&spec, &FramePose::identity()).unwrap();
        let speed = c.tangent().norms();
        assert!(speed.values().iter().all(|v| (v - 1.0).abs() < 1e-6));
    }

    #[test]
    fn invalid_specs() {
        let g = grid(0.1);
        let err = InvariantSpec::from_fn(g, |s| Invariants::new(1.0 - s, 0.0, [1.0, 0.0, 0.0])).unwrap_err();
        assert!(matches!(err, Error::InvalidSpec { field: "K1", .. }));
        let err = InvariantSpec::from_fn(g, |_| Invariants::new(1.0, 0.0, [0.9f64.sqrt(), 0.0, 0.0])).unwrap_err();
        assert!(matches!(
            err,
            Error::InvalidSpec {
                field: "a",
                index: 0,
                ..
            }
        ));
    }

    #[test]
    fn pose_validation() {
        assert!(FramePose::new(Vec3::zeros(), [Vec3::x(), Vec3::y(), -Vec3::z()]).is_err());
        assert!(FramePose::new(Vec3::zeros(), [Vec3::x(), Vec3::y(), Vec3::z()]).is_ok());
    }
}
