//! Proper rigid motions and optimal superposition of versor curves.

use nalgebra::{Matrix3, Rotation3};

use crate::error::Result;
use crate::frenet::VersorCurve;
use crate::numeric::{Vec3, VectorField};

/// `x -> R x + t` with `det R = +1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RigidMotion {
    pub rotation: Rotation3<f64>,
    pub translation: Vec3,
}

impl RigidMotion {
    pub fn identity() -> Self {
        Self {
            rotation: Rotation3::identity(),
            translation: Vec3::zeros(),
        }
    }

    pub fn new(rotation: Rotation3<f64>, translation: Vec3) -> Self {
        Self { rotation, translation }
    }

    pub fn apply_point(&self, p: &Vec3) -> Vec3 {
        self.rotation * p + self.translation
    }

    pub fn apply_vector(&self, v: &Vec3) -> Vec3 {
        self.rotation * v
    }

    /// Moves positions and rotates versors.
    pub fn apply_curve(&self, curve: &VersorCurve) -> Result<VersorCurve> {
        let r = curve.r().map(|p| self.apply_point(p));
        let xi = curve.xi().map(|v| self.apply_vector(v));
        VersorCurve::new(r, xi)
    }
}

fn centroid(points: &[Vec3]) -> Vec3 {
    points.iter().sum::<Vec3>() / points.len() as f64
}

/// Kabsch superposition of `from` onto `to` (paired points), restricted to
/// proper rotations.
pub fn kabsch(from: &[Vec3], to: &[Vec3]) -> RigidMotion {
    debug_assert_eq!(from.len(), to.len());
    let (ca, cb) = (centroid(from), centroid(to));
    let h: Matrix3<f64> = from.iter().zip(to).map(|(a, b)| (a - ca) * (b - cb).transpose()).sum();
    let svd = h.svd(true, true);
    let (u, v_t) = (svd.u.unwrap(), svd.v_t.unwrap());
    let v = v_t.transpose();
    let d = (v * u.transpose()).determinant().signum();
    let r = if d > 0.0 {
        polar_factor(h.transpose()).unwrap_or_else(|| v * u.transpose())
    } else {
        v * Matrix3::from_diagonal(&Vec3::new(1.0, 1.0, d)) * u.transpose()
    };
    let rotation = Rotation3::from_matrix_unchecked(r);
    RigidMotion::new(rotation, cb - rotation * ca)
}

/// Orthogonal polar factor by Newton iteration `X <- (X + X^-T)/2`, which
/// stays accurate to a few ulps where the SVD route loses a digit or two.
fn polar_factor(a: Matrix3<f64>) -> Option<Matrix3<f64>> {
    let mut x = a * (3f64.sqrt() / a.norm());
    for _ in 0..64 {
        let next = (x + x.try_inverse()?.transpose()) * 0.5;
        let step = (next - x).norm();
        x = next;
        if step <= 8.0 * f64::EPSILON {
            return Some(x);
        }
    }
    None
}

/// Superposition points: curve samples plus versor tips `r + ξ`.
fn anchor_points(curve: &VersorCurve) -> Vec<Vec3> {
    let r = curve.r().values();
    let xi = curve.xi().values();
    r.iter().cloned().chain(r.iter().zip(xi).map(|(p, x)| p + x)).collect()
}

/// Best proper motion carrying `a` onto `b`.
pub fn align(a: &VersorCurve, b: &VersorCurve) -> Result<RigidMotion> {
    a.grid().ensure_same(b.grid())?;
    Ok(kabsch(&anchor_points(a), &anchor_points(b)))
}

/// Largest per-sample `|g r_a - r_b| + |g ξ_a - ξ_b|` after optimal alignment
/// `g`. Zero exactly when the two curves differ by a proper Euclidean motion.
///
/// The versor tips enter the fit alongside the positions; positions alone do
/// not fix the rotation when the curve is a straight line.
pub fn rigid_motion_distance(a: &VersorCurve, b: &VersorCurve) -> Result<f64> {
    let g = align(a, b)?;
    let worst = residuals(&g, a.r(), a.xi(), b.r(), b.xi());
    Ok(worst)
}

fn residuals(g: &RigidMotion, ra: &VectorField, xa: &VectorField, rb: &VectorField, xb: &VectorField) -> f64 {
    (0..ra.len()).fold(0.0f64, |m, i| {
        let dp = (g.apply_point(&ra[i]) - rb[i]).norm();
        let dx = (g.apply_vector(&xa[i]) - xb[i]).norm();
        m.max(dp + dx)
    })
}
