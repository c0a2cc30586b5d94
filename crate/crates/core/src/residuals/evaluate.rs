use super::coefficients::{curvature_jets, OdeCoefficients};
use super::jet::Jet;
use super::kind::{OdeKind, Target};
use crate::alt::AltField;
use crate::error::{Error, Result};
use crate::frenet::FrenetField;
use crate::numeric::{DerivOrder, ScalarField, Vec3, VectorField};

/// How derivatives of the target are obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Mode {
    /// Finite differences of the sampled target.
    FiniteDifference,
    /// Repeated application of the frame's moving equations, with only the
    /// scalar curvatures differenced numerically.
    ExactSubstitution,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::FiniteDifference => "fd",
            Mode::ExactSubstitution => "exact",
        }
    }
}

/// Per-sample residual norms of one equation.
#[derive(Debug, Clone, PartialEq)]
pub struct Residual {
    pub kind: OdeKind,
    pub mode: Mode,
    /// `|c3 T''' + c2 T'' + c1 T' + c0 T|`; zero where masked.
    pub values: ScalarField,
    pub mask: Vec<bool>,
    /// Largest norm of the highest derivative over valid samples.
    pub scale: f64,
}

impl Residual {
    pub fn valid_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }

    /// Largest raw residual over valid samples.
    pub fn max(&self) -> f64 {
        self.values.max_abs()
    }

    pub fn max_normalized(&self) -> f64 {
        self.max() / self.scale
    }

    /// Largest raw residual over valid samples at least `skip` samples away
    /// from either end.
    pub fn max_interior(&self, skip: usize) -> f64 {
        self.values.max_abs_interior(skip)
    }

    pub fn normalized(&self) -> ScalarField {
        let s = self.scale;
        self.values.map(|v| v / s)
    }
}

/// Advances frame coordinates of `T^(k)` to `T^(k+1)` under
/// `e1' = κ e2`, `e2' = -κ e1 + τ e3`, `e3' = -τ e2`.
fn advance(c: [Jet; 3], k: Jet, t: Jet) -> [Jet; 3] {
    [c[0].d() - k * c[1], c[1].d() + k * c[0] - t * c[2], c[2].d() + t * c[1]]
}

fn values(c: [Jet; 3]) -> Vec3 {
    Vec3::new(c[0].value(), c[1].value(), c[2].value())
}

/// Frame coordinates of `T, T', T'', T'''` for the frame vector in `slot`.
pub(crate) fn expand(slot: usize, k: Jet, t: Jet) -> [Vec3; 4] {
    let mut c = [Jet::constant(0.0); 3];
    c[slot] = Jet::constant(1.0);
    let c1 = advance(c, k, t);
    let c2 = advance(c1, k, t);
    let c3 = advance(c2, k, t);
    [values(c), values(c1), values(c2), values(c3)]
}

fn target_field<'a>(target: Target, field: &'a FrenetField, alt: &'a AltField) -> &'a VectorField {
    match target {
        Target::Xi1 => &field.xi1,
        Target::Xi2 => &field.xi2,
        Target::Xi3 => &field.xi3,
        Target::Y => &alt.y,
        Target::D => &alt.d,
    }
}

/// Evaluates the residual of `kind` on every valid sample of `coeffs`.
pub fn residual(
    kind: OdeKind,
    coeffs: &OdeCoefficients,
    target: Target,
    mode: Mode,
    field: &FrenetField,
    alt: &AltField,
) -> Result<Residual> {
    if coeffs.kind != kind {
        return Err(Error::CoefficientMismatch {
            expected: kind.name(),
            got: coeffs.kind.name(),
        });
    }
    if target != kind.target() {
        return Err(Error::TargetMismatch {
            kind: kind.name(),
            expected: kind.target().name(),
            got: target.name(),
        });
    }
    field.grid.ensure_same(&alt.grid)?;
    if !coeffs.mask.contains(&true) {
        return Err(Error::AllSamplesDegenerate { kind: kind.name() });
    }
    let n = field.grid.len();
    let derivs: Vec<[Vec3; 4]> = match mode {
        Mode::ExactSubstitution => {
            let jets = curvature_jets(kind.system(), field, alt);
            (0..n)
                .map(|i| expand(kind.slot(), jets.kappa[i], jets.tau[i]))
                .collect()
        }
        Mode::FiniteDifference => {
            let f = target_field(target, field, alt);
            let d1 = f.diff(DerivOrder::First);
            let d2 = f.diff(DerivOrder::Second);
            let d3 = f.diff(DerivOrder::Third);
            (0..n).map(|i| [f[i], d1[i], d2[i], d3[i]]).collect()
        }
    };
    let top = kind.order();
    let mut out = vec![0.0; n];
    let mut scale = 0.0f64;
    for i in (0..n).filter(|&i| coeffs.mask[i]) {
        let d = &derivs[i];
        let r = d[3] * coeffs.c3[i] + d[2] * coeffs.c2[i] + d[1] * coeffs.c1[i] + d[0] * coeffs.c0[i];
        out[i] = r.norm();
        scale = scale.max(d[top].norm());
    }
    Ok(Residual {
        kind,
        mode,
        values: ScalarField::from_parts(field.grid, out),
        mask: coeffs.mask.clone(),
        scale: if scale > 0.0 { scale } else { 1.0 },
    })
}
