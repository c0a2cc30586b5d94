//! Helix detection: ξ1-helices, slant helices and Darboux helices.
//!
//! The slant detector is the signed function
//!
//! ```text
//! S = (K1^2 / p^3) (K2/K1)'   (= q/p)
//! ```
//!
//! and the Darboux detector is `f = p/q`. A field is a ξ1-helix when
//! `K2/K1` is constant, a slant helix when `S` is constant and a Darboux
//! helix when `f` is constant; the last two coincide wherever `q ≠ 0`.

use crate::alt::{AltField, P_FLOOR};
use crate::error::{Error, Result};
use crate::frenet::FrenetField;
use crate::numeric::{constancy, ConstancyStats, ScalarField, Vec3, VectorField};

/// Below this `|q|` the Darboux function `p/q` is undefined.
pub const Q_FLOOR: f64 = 1e-10;
/// Default constancy tolerance.
pub const DEFAULT_TOL: f64 = 1e-6;

/// Outcome of one helix test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    Helix,
    NotHelix,
    /// `q ≡ 0`: `D` is itself a fixed direction.
    DegenerateGeneralHelix,
    /// The detector vanishes somewhere without vanishing identically.
    Undefined,
}

impl Verdict {
    pub fn name(self) -> &'static str {
        match self {
            Verdict::Helix => "helix",
            Verdict::NotHelix => "not-helix",
            Verdict::DegenerateGeneralHelix => "degenerate-general-helix",
            Verdict::Undefined => "undefined",
        }
    }

    /// Whether the angle condition holds (including the degenerate case).
    pub fn holds(self) -> bool {
        matches!(self, Verdict::Helix | Verdict::DegenerateGeneralHelix)
    }
}

/// A verdict together with the statistics it was drawn from.
#[derive(Debug, Clone, PartialEq)]
pub struct HelixTest {
    pub verdict: Verdict,
    /// `None` when the detector is undefined or identically zero.
    pub stats: Option<ConstancyStats>,
    /// Largest `|detector|`.
    pub max_abs: f64,
}

/// Sign in front of the `sin` term of an axis formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    Minus,
    Plus,
}

impl Branch {
    pub const BOTH: [Branch; 2] = [Branch::Minus, Branch::Plus];

    pub fn sign(self) -> f64 {
        match self {
            Branch::Minus => -1.0,
            Branch::Plus => 1.0,
        }
    }
}

/// Candidate fixed axis with the drift of both sign branches.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisReport {
    pub branch: Branch,
    pub axis: VectorField,
    /// `max |axis(s_i) - axis(s_0)|` of the chosen branch.
    pub drift: f64,
    /// Same for the rejected branch.
    pub other_drift: f64,
}

impl AxisReport {
    fn best(a: VectorField, b: VectorField) -> Self {
        let (da, db) = (a.drift(), b.drift());
        if da <= db {
            Self {
                branch: Branch::Minus,
                axis: a,
                drift: da,
                other_drift: db,
            }
        } else {
            Self {
                branch: Branch::Plus,
                axis: b,
                drift: db,
                other_drift: da,
            }
        }
    }

    pub fn mean_axis(&self) -> Vec3 {
        let sum: Vec3 = self.axis.values().iter().sum();
        sum.normalize()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationReport {
    pub tol: f64,
    /// Constancy of `K2/K1`.
    pub xi1_helix: HelixTest,
    /// Constancy of `S`.
    pub slant_helix: HelixTest,
    /// Constancy of `p/q`.
    pub darboux_helix: HelixTest,
    /// Mean of `S`.
    pub sigma_mean: f64,
    /// Mean of `p/q` where defined.
    pub f_mean: Option<f64>,
    /// `arccot |mean S|`, in `(0, π/2]`.
    pub theta: f64,
    /// `arccot |mean f|`; zero when `q ≡ 0`.
    pub phi: Option<f64>,
    pub axis_d: AxisReport,
    pub axis_l: Option<AxisReport>,
}

fn check_p(field: &FrenetField) -> Result<ScalarField> {
    let p = field.darboux_norm();
    match p.values().iter().position(|&v| !(v >= P_FLOOR)) {
        Some(index) => Err(Error::DegenerateDarboux {
            index,
            p: p[index],
            floor: P_FLOOR,
        }),
        None => Ok(p),
    }
}

/// The signed slant detector `S = (K1^2/p^3)(K2/K1)'`.
pub fn sigma(field: &FrenetField) -> Result<ScalarField> {
    let p = check_p(field)?;
    let rate = field.torsion_ratio_rate();
    let v = (0..field.grid.len())
        .map(|i| field.k1[i].powi(2) / p[i].powi(3) * rate[i])
        .collect();
    Ok(ScalarField::from_parts(field.grid, v))
}

/// Constancy test that treats a detector bounded by `tol` as the constant 0.
fn detector(values: &ScalarField, tol: f64) -> Result<HelixTest> {
    let max_abs = values.max_abs();
    if max_abs <= tol {
        return Ok(HelixTest {
            verdict: Verdict::Helix,
            stats: None,
            max_abs,
        });
    }
    let stats = constancy(values, tol)?;
    let verdict = if stats.is_constant {
        Verdict::Helix
    } else {
        Verdict::NotHelix
    };
    Ok(HelixTest {
        verdict,
        stats: Some(stats),
        max_abs,
    })
}

/// Slant axis `d = cos θ ξ2 ± sin θ D`, written in the Frenet-type frame as
/// `±sin θ (K2/p) ξ1 + cos θ ξ2 ± sin θ (K1/p) ξ3`, renormalized against the
/// frame's sampling error.
pub fn slant_axis(field: &FrenetField, theta: f64, branch: Branch) -> Result<VectorField> {
    let p = check_p(field)?;
    let (sin, cos) = theta.sin_cos();
    let s = branch.sign() * sin;
    let v = (0..field.grid.len())
        .map(|i| {
            (field.xi1[i] * (s * field.k2[i] / p[i]) + field.xi2[i] * cos + field.xi3[i] * (s * field.k1[i] / p[i]))
                .normalize()
        })
        .collect();
    Ok(VectorField::from_parts(field.grid, v))
}

/// Darboux axis `l = cos φ D ± sin φ ξ2`, written in the Frenet-type frame as
/// `cos φ (K2/p) ξ1 ± sin φ ξ2 + cos φ (K1/p) ξ3`, renormalized.
pub fn darboux_axis(field: &FrenetField, phi: f64, branch: Branch) -> Result<VectorField> {
    let p = check_p(field)?;
    let (sin, cos) = phi.sin_cos();
    let s = branch.sign() * sin;
    let v = (0..field.grid.len())
        .map(|i| {
            (field.xi1[i] * (cos * field.k2[i] / p[i]) + field.xi2[i] * s + field.xi3[i] * (cos * field.k1[i] / p[i]))
                .normalize()
        })
        .collect();
    Ok(VectorField::from_parts(field.grid, v))
}

/// Largest `|S (p/q) - 1|` over samples with `|q| > Q_FLOOR`; `None` when
/// no sample qualifies.
pub fn sigma_f_consistency(field: &FrenetField, alt: &AltField) -> Result<Option<f64>> {
    field.grid.ensure_same(&alt.grid)?;
    let s = sigma(field)?;
    Ok((0..alt.grid.len())
        .filter(|&i| alt.q[i].abs() > Q_FLOOR)
        .map(|i| (s[i] * (alt.p[i] / alt.q[i]) - 1.0).abs())
        .reduce(f64::max))
}

/// Runs the three helix tests and builds both candidate axes.
///
/// A detector whose magnitude never exceeds `tol` counts as the constant
/// zero. When `S` is identically zero `q` is too: the slant angle is `π/2`,
/// the Darboux verdict is [`Verdict::DegenerateGeneralHelix`] and `φ = 0`.
pub fn classify(field: &FrenetField, alt: &AltField, tol: f64) -> Result<ClassificationReport> {
    if !(tol > 0.0) || !tol.is_finite() {
        return Err(Error::InvalidTolerance(tol));
    }
    field.grid.ensure_same(&alt.grid)?;
    let xi1_helix = detector(&field.torsion_ratio(), tol)?;
    let s = sigma(field)?;
    let slant_helix = detector(&s, tol)?;
    let sigma_mean = s.mean();
    let q_vanishes = slant_helix.stats.is_none();

    let (darboux_helix, f_mean, phi) = if q_vanishes {
        let test = HelixTest {
            verdict: Verdict::DegenerateGeneralHelix,
            stats: None,
            max_abs: alt.q.max_abs(),
        };
        (test, None, Some(0.0))
    } else if alt.q.values().iter().any(|q| q.abs() <= Q_FLOOR) {
        let test = HelixTest {
            verdict: Verdict::Undefined,
            stats: None,
            max_abs: f64::INFINITY,
        };
        (test, None, None)
    } else {
        let f = alt.p.zip_map(&alt.q, |p, q| p / q);
        let test = detector(&f, tol)?;
        let mean = f.mean();
        (test, Some(mean), Some(1.0f64.atan2(mean.abs())))
    };

    let theta = if q_vanishes {
        std::f64::consts::FRAC_PI_2
    } else {
        1.0f64.atan2(sigma_mean.abs())
    };
    let axis_d = AxisReport::best(
        slant_axis(field, theta, Branch::Minus)?,
        slant_axis(field, theta, Branch::Plus)?,
    );
    let axis_l = match phi {
        Some(phi) => Some(AxisReport::best(
            darboux_axis(field, phi, Branch::Minus)?,
            darboux_axis(field, phi, Branch::Plus)?,
        )),
        None => None,
    };
    Ok(ClassificationReport {
        tol,
        xi1_helix,
        slant_helix,
        darboux_helix,
        sigma_mean,
        f_mean,
        theta,
        phi,
        axis_d,
        axis_l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alt::extract_alternative;
    use crate::frenet::{extract_frenet, DEFAULT_K1_FLOOR};
    use crate::numeric::Grid;
    use crate::presets::{self, Preset};
    use crate::synthesis::{synthesize, FramePose};
    use std::f64::consts::FRAC_PI_2;

    fn grid() -> Grid {
        Grid::spanning(0.0, 4.0, 401).unwrap()
    }

    fn fields_of(curve: &crate::VersorCurve) -> (FrenetField, AltField) {
        let f = extract_frenet(curve, DEFAULT_K1_FLOOR).unwrap();
        let a = extract_alternative(&f, &curve.tangent()).unwrap();
        (f, a)
    }

    fn preset(p: Preset) -> (FrenetField, AltField) {
        let c = synthesize(&p.spec(grid()).unwrap(), &FramePose::identity()).unwrap();
        fields_of(&c)
    }

    #[test]
    fn sigma_values() {
        let (f, _) = preset(Preset::Slant { p: 1.0, q: 0.25 });
        let s = sigma(&f).unwrap();
        assert!(s.values().iter().all(|v| (v - 0.25).abs() < 1e-6));
        let (f, _) = fields_of(&presets::circular_helix(1.0, 1.0, grid()).unwrap());
        assert!(sigma(&f).unwrap().max_abs() < 1e-7);
        let (f, _) = preset(Preset::NonHelix);
        let s = sigma(&f).unwrap();
        for i in 0..s.len() {
            let x = f.grid.s(i);
            assert!((s[i] - (1.0 + x * x).powf(-1.5)).abs() < 1e-6);
        }
    }

    #[test]
    fn circular_helix_report() {
        let (f, a) = fields_of(&presets::circular_helix(1.0, 1.0, grid()).unwrap());
        let r = classify(&f, &a, DEFAULT_TOL).unwrap();
        assert_eq!(r.xi1_helix.verdict, Verdict::Helix);
        assert_eq!(r.slant_helix.verdict, Verdict::Helix);
        assert_eq!(r.darboux_helix.verdict, Verdict::DegenerateGeneralHelix);
        assert_eq!(r.theta, FRAC_PI_2);
        assert!(r.axis_d.drift <= 1e-6);
        let l = r.axis_l.unwrap();
        assert!(l.drift <= 1e-6);
        for i in 0..a.grid.len() {
            assert!((l.axis[i] - a.d[i]).norm() < 1e-12);
            assert!((r.axis_d.axis[i] - a.d[i] * r.axis_d.branch.sign()).norm() < 1e-8);
        }
        // Axis of the helix (R, b) = (1, 1) is the z direction.
        let axis = l.mean_axis();
        assert!((axis - Vec3::z()).norm() < 1e-8);
    }

    #[test]
    fn slant_helix_report() {
        let (f, a) = preset(Preset::Slant { p: 1.0, q: 0.25 });
        let r = classify(&f, &a, DEFAULT_TOL).unwrap();
        assert_eq!(r.xi1_helix.verdict, Verdict::NotHelix);
        assert_eq!(r.slant_helix.verdict, Verdict::Helix);
        assert_eq!(r.darboux_helix.verdict, Verdict::Helix);
        assert!((r.sigma_mean - 0.25).abs() < 1e-6);
        assert!((r.f_mean.unwrap() - 4.0).abs() < 1e-5);
        assert!((r.theta - 4.0f64.atan()).abs() < 1e-6);
        assert!(r.axis_d.drift <= 1e-5);
        assert!(r.axis_d.other_drift > 0.1);
        let l = r.axis_l.unwrap();
        assert!(l.drift <= 1e-5 && l.other_drift > 0.1);
        // Constant angle between the two fixed axes.
        let angles: Vec<f64> = (0..a.grid.len()).map(|i| r.axis_d.axis[i].dot(&l.axis[i])).collect();
        let spread = angles.iter().fold(0.0f64, |m, v| m.max((v - angles[0]).abs()));
        assert!(spread <= 1e-5);
        // Defining angle conditions.
        for i in 0..a.grid.len() {
            assert!((a.xi2[i].dot(&r.axis_d.axis[i]) - r.theta.cos()).abs() < DEFAULT_TOL);
            assert!((a.d[i].dot(&l.axis[i]) - r.phi.unwrap().cos()).abs() < DEFAULT_TOL);
        }
    }

    #[test]
    fn non_helix_report() {
        let (f, a) = preset(Preset::NonHelix);
        let r = classify(&f, &a, 1e-3).unwrap();
        assert_eq!(r.xi1_helix.verdict, Verdict::NotHelix);
        assert_eq!(r.slant_helix.verdict, Verdict::NotHelix);
        assert_eq!(r.darboux_helix.verdict, Verdict::NotHelix);
        assert!(r.axis_d.drift > 1e-3 && r.axis_d.other_drift > 1e-3);
    }

    #[test]
    fn sigma_times_f_is_one() {
        for p in [Preset::Slant { p: 1.0, q: 0.25 }, Preset::NonHelix] {
            let (f, a) = preset(p);
            assert!(sigma_f_consistency(&f, &a).unwrap().unwrap() <= 1e-10);
        }
    }

    #[test]
    fn axes_are_unit() {
        let (f, _) = preset(Preset::NonHelix);
        for b in Branch::BOTH {
            for ax in [slant_axis(&f, 0.3, b).unwrap(), darboux_axis(&f, 0.7, b).unwrap()] {
                assert!(ax.norms().values().iter().all(|n| (n - 1.0).abs() < 1e-10));
            }
        }
    }

    #[test]
    fn bad_tolerance() {
        let (f, a) = preset(Preset::NonHelix);
        for tol in [0.0, -1.0, f64::NAN] {
            assert!(matches!(classify(&f, &a, tol), Err(Error::InvalidTolerance(_))));
        }
    }
}
