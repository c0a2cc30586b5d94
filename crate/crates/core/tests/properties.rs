use myller::numeric::{Grid, Vec3};
use myller::residuals::{build_coefficients, residual, Mode, OdeKind};
use myller::synthesis::RoundTripReport;
use myller::{
    extract_after_synthesize, extract_alternative, extract_frenet, rigid_motion_distance, synthesize, FramePose,
    InvariantSpec, Invariants, RigidMotion, DEFAULT_K1_FLOOR,
};
use nalgebra::{Rotation3, Unit};
use proptest::prelude::*;

fn grid() -> Grid {
    Grid::new(0.0, 1e-2, 201).unwrap()
}

fn fine_grid() -> Grid {
    Grid::new(0.0, 2.5e-3, 801).unwrap()
}

fn unit(theta: f64, phi: f64) -> [f64; 3] {
    [theta.cos(), theta.sin() * phi.cos(), theta.sin() * phi.sin()]
}

fn motion() -> impl Strategy<Value = RigidMotion> {
    (
        -1.0..1.0f64,
        -1.0..1.0f64,
        0.1..1.0f64,
        -3.0..3.0f64,
        prop::array::uniform3(-5.0..5.0f64),
    )
        .prop_map(|(x, y, z, angle, t)| {
            let axis = Unit::new_normalize(Vec3::new(x, y, z));
            RigidMotion::new(Rotation3::from_axis_angle(&axis, angle), Vec3::from(t))
        })
}

/// Smooth invariants: `K1 = k + b sin(w s)`, `K2 = c + d cos(w s)`, tangent
/// coefficients on a slowly turning unit vector.
#[derive(Debug, Clone, Copy)]
struct Smooth {
    k: f64,
    b: f64,
    c: f64,
    d: f64,
    w: f64,
    theta: f64,
}

fn smooth() -> impl Strategy<Value = Smooth> {
    (
        0.6..1.5f64,
        0.0..0.3f64,
        -1.0..1.0f64,
        0.0..0.5f64,
        0.5..2.0f64,
        0.0..1.2f64,
    )
        .prop_map(|(k, b, c, d, w, theta)| Smooth { k, b, c, d, w, theta })
}

impl Smooth {
    fn spec(self) -> InvariantSpec {
        self.spec_on(grid())
    }

    fn spec_on(self, grid: Grid) -> InvariantSpec {
        InvariantSpec::from_fn(grid, |s| {
            Invariants::new(
                self.k + self.b * (self.w * s).sin(),
                self.c + self.d * (self.w * s).cos(),
                unit(self.theta, 0.3 * s),
            )
        })
        .unwrap()
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn invariants_survive_rigid_motions(sm in smooth(), g in motion()) {
        let curve = synthesize(&sm.spec(), &FramePose::identity()).unwrap();
        let moved = g.apply_curve(&curve).unwrap();
        let a = extract_frenet(&curve, DEFAULT_K1_FLOOR).unwrap();
        let b = extract_frenet(&moved, DEFAULT_K1_FLOOR).unwrap();
        for (x, y) in [(&a.k1, &b.k1), (&a.k2, &b.k2), (&a.a1, &b.a1), (&a.a2, &b.a2), (&a.a3, &b.a3)] {
            let diff = x.zip_map(y, |u, v| u - v).max_abs();
            prop_assert!(diff <= 1e-9, "{diff:e}");
        }
        prop_assert!(rigid_motion_distance(&curve, &moved).unwrap() <= 1e-10);
    }

    #[test]
    fn extracted_frames_are_orthonormal(sm in smooth()) {
        let curve = synthesize(&sm.spec_on(fine_grid()), &FramePose::identity()).unwrap();
        let f = extract_frenet(&curve, DEFAULT_K1_FLOOR).unwrap();
        let a = extract_alternative(&f, &curve.tangent()).unwrap();
        // Not re-orthonormalized: the bound is the differencing error, so it
        // needs a finer step than the other properties.
        prop_assert!(f.orthonormality_error() <= 1e-8, "{:e}", f.orthonormality_error());
        prop_assert!(a.orthonormality_error() <= 1e-8, "{:e}", a.orthonormality_error());
    }

    #[test]
    fn constant_invariants_round_trip(
        k1 in 0.2..1.5f64,
        k2 in -1.5..1.5f64,
        theta in 0.0..3.1f64,
        phi in -3.1..3.1f64,
    ) {
        let spec = InvariantSpec::from_fn(grid(), |_| Invariants::new(k1, k2, unit(theta, phi))).unwrap();
        let rep: RoundTripReport = extract_after_synthesize(&spec, &FramePose::identity()).unwrap();
        prop_assert!(rep.max() <= 1e-6, "{rep:?}");
    }

    #[test]
    fn full_equations_vanish_under_exact_substitution(sm in smooth()) {
        let curve = synthesize(&sm.spec(), &FramePose::identity()).unwrap();
        let f = extract_frenet(&curve, DEFAULT_K1_FLOOR).unwrap();
        let a = extract_alternative(&f, &curve.tangent()).unwrap();
        for kind in OdeKind::ALL.into_iter().filter(|k| !k.is_reduced()) {
            let Ok(c) = build_coefficients(kind, &f, &a) else { continue };
            let r = residual(kind, &c, kind.target(), Mode::ExactSubstitution, &f, &a).unwrap();
            prop_assert!(r.max_normalized() <= 1e-8, "{kind}: {:e}", r.max_normalized());
        }
    }

    #[test]
    fn kind_names_parse_in_any_case(idx in 0..12usize, flips in prop::collection::vec(any::<bool>(), 24), dash in any::<bool>()) {
        let kind = OdeKind::ALL[idx];
        let mut text: String = kind
            .name()
            .chars()
            .zip(flips.iter().cycle())
            .map(|(c, &lower)| if lower { c.to_ascii_lowercase() } else { c })
            .collect();
        if dash {
            text = text.replace('_', "-");
        }
        prop_assert_eq!(text.parse::<OdeKind>().unwrap(), kind);
    }
}
