use super::jet::Jet;
use super::kind::{FrameSystem, OdeKind};
use crate::alt::AltField;
use crate::error::{Error, Result};
use crate::frenet::FrenetField;
use crate::numeric::{DerivOrder, ScalarField};

/// Relative floors below which a coefficient is treated as singular.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ResidualOptions {
    /// Curvature denominators must exceed this times the largest curvature.
    pub curvature_floor: f64,
    /// `|t'k - tk'|` must exceed this times the largest curvature squared.
    pub wronskian_floor: f64,
}

impl ResidualOptions {
    pub const DEFAULT_CURVATURE_FLOOR: f64 = 1e-6;
    pub const DEFAULT_WRONSKIAN_FLOOR: f64 = 1e-4;
}

impl Default for ResidualOptions {
    fn default() -> Self {
        Self {
            curvature_floor: Self::DEFAULT_CURVATURE_FLOOR,
            wronskian_floor: Self::DEFAULT_WRONSKIAN_FLOOR,
        }
    }
}

/// Coefficients of `c3 T''' + c2 T'' + c1 T' + c0 T = 0`, zero where masked.
///
/// Every equation is monic in its highest derivative: `c3 ≡ 1` for the
/// third-order kinds, and `c3 ≡ 0, c2 ≡ 1` for the two second-order
/// reduced kinds.
#[derive(Debug, Clone, PartialEq)]
pub struct OdeCoefficients {
    pub kind: OdeKind,
    pub c3: ScalarField,
    pub c2: ScalarField,
    pub c1: ScalarField,
    pub c0: ScalarField,
    /// `true` where every denominator clears its floor.
    pub mask: Vec<bool>,
}

impl OdeCoefficients {
    pub fn valid_count(&self) -> usize {
        self.mask.iter().filter(|&&m| m).count()
    }
}

/// Order-2 jets of the frame curvatures `(κ, τ)`: `(K1, K2)` or `(p, q)`.
pub(crate) struct CurvatureJets {
    pub kappa: Vec<Jet>,
    pub tau: Vec<Jet>,
    pub scale: f64,
}

pub(crate) fn curvature_jets(system: FrameSystem, field: &FrenetField, alt: &AltField) -> CurvatureJets {
    let (k, dk, t, dt, ddt) = match system {
        FrameSystem::Frenet => (
            field.k1.clone(),
            field.dk1.clone(),
            field.k2.clone(),
            field.dk2.clone(),
            field.dk2.diff(DerivOrder::First),
        ),
        FrameSystem::Alternative => {
            let dp = (0..field.grid.len())
                .map(|i| (field.k1[i] * field.dk1[i] + field.k2[i] * field.dk2[i]) / alt.p[i])
                .collect::<Vec<_>>();
            (
                alt.p.clone(),
                ScalarField::from_parts(field.grid, dp),
                alt.q.clone(),
                alt.q.diff(DerivOrder::First),
                alt.q.diff(DerivOrder::Second),
            )
        }
    };
    let ddk = dk.diff(DerivOrder::First);
    let n = k.len();
    CurvatureJets {
        kappa: (0..n).map(|i| Jet::second_order(k[i], dk[i], ddk[i])).collect(),
        tau: (0..n).map(|i| Jet::second_order(t[i], dt[i], ddt[i])).collect(),
        scale: k.max_abs().max(t.max_abs()),
    }
}

pub(crate) struct Floors {
    pub curvature: f64,
    pub wronskian: f64,
}

impl Floors {
    pub fn new(opts: &ResidualOptions, scale: f64) -> Self {
        Self {
            curvature: opts.curvature_floor * scale,
            wronskian: opts.wronskian_floor * scale * scale,
        }
    }
}

/// Coefficients `[c3, c2, c1, c0]` at one sample, or `None` where a
/// denominator falls below its floor. `k` and `t` are the curvature and
/// torsion of the kind's frame.
pub(crate) fn coefficients_at(kind: OdeKind, k: Jet, t: Jet, fl: &Floors) -> Option<[f64; 4]> {
    let floor = fl.curvature;
    let ik = k.recip(floor)?;
    let k2t2 = k.square() + t.square();
    let mut c = match kind {
        OdeKind::Xi2Alt | OdeKind::Xi2AltReduced | OdeKind::Xi1Frenet | OdeKind::Xi1Reduced => {
            let it = t.recip(floor)?;
            let kt = k * t;
            let ikt = kt.recip(floor * floor)?;
            let c2 = -(k.d() * ik + kt.d() * ikt);
            let c1 = kt * (ik.d() * it).d() + k2t2;
            let c0 = kt * (k * it).d();
            [1.0, c2.value(), c1.value(), c0.value()]
        }
        OdeKind::DFull | OdeKind::DReduced | OdeKind::Xi3Frenet | OdeKind::Xi3Reduced => {
            let it = t.recip(floor)?;
            let kt = k * t;
            let ikt = kt.recip(floor * floor)?;
            let c2 = -(kt.d() * ikt + t.d() * it);
            let c1 = kt * (ik * it.d()).d() + k2t2;
            let c0 = kt * (t * ik).d();
            [1.0, c2.value(), c1.value(), c0.value()]
        }
        OdeKind::YFull | OdeKind::Xi2Frenet => {
            t.recip(floor)?;
            let w = t.d() * k - t * k.d();
            let l1 = t * w.recip(fl.wronskian)?;
            let l2 = ik * (Jet::constant(1.0) + k.d() * l1);
            let l3 = k2t2 * l1;
            let il1 = l1.recip(f64::MIN_POSITIVE)?;
            let c2 = (l1.d() - l2) * il1;
            let c1 = (l3 - l2.d()) * il1;
            let c0 = (l3.d() - k) * il1;
            [1.0, c2.value(), c1.value(), c0.value()]
        }
        OdeKind::YReduced => {
            let it = t.recip(floor)?;
            [0.0, 1.0, (t * it.d()).value(), k2t2.value()]
        }
        OdeKind::Xi2FrenetReduced => [0.0, 1.0, (k * ik.d()).value(), k2t2.value()],
    };
    if kind.is_reduced() && kind.order() == 3 {
        // Third-order reduced kinds drop the undifferentiated term.
        c[3] = 0.0;
    }
    c.iter().all(|v| v.is_finite()).then_some(c)
}

/// Builds the coefficient fields of `kind` with default floors.
pub fn build_coefficients(kind: OdeKind, field: &FrenetField, alt: &AltField) -> Result<OdeCoefficients> {
    build_coefficients_with(kind, field, alt, &ResidualOptions::default())
}

pub fn build_coefficients_with(
    kind: OdeKind,
    field: &FrenetField,
    alt: &AltField,
    opts: &ResidualOptions,
) -> Result<OdeCoefficients> {
    field.grid.ensure_same(&alt.grid)?;
    let jets = curvature_jets(kind.system(), field, alt);
    let floors = Floors::new(opts, jets.scale);
    let n = field.grid.len();
    let mut cols = [vec![0.0; n], vec![0.0; n], vec![0.0; n], vec![0.0; n]];
    let mut mask = vec![false; n];
    for i in 0..n {
        if let Some(c) = coefficients_at(kind, jets.kappa[i], jets.tau[i], &floors) {
            mask[i] = true;
            for (col, v) in cols.iter_mut().zip(c) {
                col[i] = v;
            }
        }
    }
    if !mask.contains(&true) {
        return Err(Error::AllSamplesDegenerate { kind: kind.name() });
    }
    let [c3, c2, c1, c0] = cols.map(|v| ScalarField::from_parts(field.grid, v));
    Ok(OdeCoefficients {
        kind,
        c3,
        c2,
        c1,
        c0,
        mask,
    })
}
