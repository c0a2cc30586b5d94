use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;

use myller::alt::AltField;
use myller::classify::{classify, sigma_f_consistency, AxisReport, Branch, ClassificationReport, HelixTest};
use myller::frenet::{DEFAULT_UNIT_SPEED_TOL, VERSOR_TOL};
use myller::numeric::{Grid, ScalarField};
use myller::residuals::{build_coefficients, residual, HelixClass, Mode, OdeKind};
use myller::synthesis::RoundTripReport;
use myller::{
    extract_after_synthesize, extract_alternative, extract_frenet, synthesize, verify_alt_moving_equations,
    verify_moving_equations, Error, FramePose, FrenetField, InvariantSpec, VersorCurve, DEFAULT_K1_FLOOR,
};

use crate::curve_file::{curve_error, read_curve, write_curve};
use crate::error::{CliError, CliResult};
use crate::report::{emit, format_float, to_json};

/// Samples excluded at each end for interior statistics.
pub const INTERIOR_SKIP: usize = 2;

#[derive(Serialize)]
struct Provenance {
    command: &'static str,
    input: String,
    version: &'static str,
}

impl Provenance {
    fn new(command: &'static str, input: &str) -> Self {
        Self {
            command,
            input: input.to_string(),
            version: env!("CARGO_PKG_VERSION"),
        }
    }
}

#[derive(Serialize)]
struct GridReport {
    s0: f64,
    h: f64,
    n: usize,
}

impl From<&Grid> for GridReport {
    fn from(g: &Grid) -> Self {
        Self {
            s0: g.s0(),
            h: g.h(),
            n: g.len(),
        }
    }
}

#[derive(Serialize)]
struct Summary {
    min: f64,
    max: f64,
    mean: f64,
    max_abs_dev: f64,
}

impl From<&ScalarField> for Summary {
    fn from(f: &ScalarField) -> Self {
        let mean = f.mean();
        Self {
            min: f.min(),
            max: f.max(),
            mean,
            max_abs_dev: f.values().iter().fold(0.0, |m, v| m.max((v - mean).abs())),
        }
    }
}

#[derive(Serialize)]
struct FrameCheck {
    moving_equations_max: f64,
    moving_equations_interior_max: f64,
    orthonormality_error: f64,
}

/// Frenet-type and alternative fields of a curve read from `input`.
pub struct Fields {
    pub curve: VersorCurve,
    pub frenet: FrenetField,
    pub alt: Result<AltField, Error>,
}

pub fn load_fields(input: &Path) -> CliResult<Fields> {
    let file = input.display().to_string();
    let curve = read_curve(input)?;
    let frenet = extract_frenet(&curve, DEFAULT_K1_FLOOR).map_err(|e| curve_error(&file, e))?;
    let alt = extract_alternative(&frenet, &curve.tangent());
    Ok(Fields { curve, frenet, alt })
}

fn require_alt<'a>(fields: &'a Fields, file: &str) -> CliResult<&'a AltField> {
    fields.alt.as_ref().map_err(|e| curve_error(file, e.clone()))
}

// analyze

#[derive(Serialize)]
struct AnalyzeTolerances {
    k1_floor: f64,
    unit_speed: f64,
    versor_norm: f64,
}

#[derive(Serialize)]
#[allow(non_snake_case)]
struct FrenetReport {
    K1: Summary,
    K2: Summary,
    a1: Summary,
    a2: Summary,
    a3: Summary,
    check: FrameCheck,
}

#[derive(Serialize)]
struct AltReport {
    p: Summary,
    q: Summary,
    d1: Summary,
    d2: Summary,
    d3: Summary,
    check: FrameCheck,
}

#[derive(Serialize)]
struct AnalyzeReport {
    provenance: Provenance,
    grid: GridReport,
    tolerances: AnalyzeTolerances,
    frenet: FrenetReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    alternative: Option<AltReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    alternative_error: Option<String>,
}

fn plot_file(dir: &Path, name: &str, f: &ScalarField, digits: usize) -> CliResult<()> {
    let mut text = String::from("s,value\n");
    for (s, v) in f.grid().points().zip(f.values()) {
        text.push_str(&format_float(s, digits));
        text.push(',');
        text.push_str(&format_float(*v, digits));
        text.push('\n');
    }
    let path = dir.join(format!("{name}.csv"));
    fs::write(&path, text).map_err(|e| CliError::io(&path, e))
}

pub fn analyze(input: &Path, plot: Option<&Path>, out: Option<&Path>, digits: usize) -> CliResult<()> {
    let fields = load_fields(input)?;
    let f = &fields.frenet;
    let moving = verify_moving_equations(f);
    let frenet = FrenetReport {
        K1: (&f.k1).into(),
        K2: (&f.k2).into(),
        a1: (&f.a1).into(),
        a2: (&f.a2).into(),
        a3: (&f.a3).into(),
        check: FrameCheck {
            moving_equations_max: moving.max_abs(),
            moving_equations_interior_max: moving.max_abs_interior(INTERIOR_SKIP),
            orthonormality_error: f.orthonormality_error(),
        },
    };
    let (alternative, alternative_error) = match &fields.alt {
        Ok(a) => {
            let moving = verify_alt_moving_equations(a);
            let report = AltReport {
                p: (&a.p).into(),
                q: (&a.q).into(),
                d1: (&a.d1).into(),
                d2: (&a.d2).into(),
                d3: (&a.d3).into(),
                check: FrameCheck {
                    moving_equations_max: moving.max_abs(),
                    moving_equations_interior_max: moving.max_abs_interior(INTERIOR_SKIP),
                    orthonormality_error: a.orthonormality_error(),
                },
            };
            (Some(report), None)
        }
        Err(e) => (None, Some(e.to_string())),
    };
    let report = AnalyzeReport {
        provenance: Provenance::new("analyze", &input.display().to_string()),
        grid: (&f.grid).into(),
        tolerances: AnalyzeTolerances {
            k1_floor: DEFAULT_K1_FLOOR,
            unit_speed: DEFAULT_UNIT_SPEED_TOL,
            versor_norm: VERSOR_TOL,
        },
        frenet,
        alternative,
        alternative_error,
    };
    if let Some(dir) = plot {
        fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
        for (name, field) in [
            ("K1", &f.k1),
            ("K2", &f.k2),
            ("a1", &f.a1),
            ("a2", &f.a2),
            ("a3", &f.a3),
        ] {
            plot_file(dir, name, field, digits)?;
        }
        if let Ok(a) = &fields.alt {
            for (name, field) in [("p", &a.p), ("q", &a.q), ("d1", &a.d1), ("d2", &a.d2), ("d3", &a.d3)] {
                plot_file(dir, name, field, digits)?;
            }
        }
    }
    emit(&to_json(&report, digits)?, out)
}

// classify

#[derive(Serialize)]
struct TestReport {
    detector: &'static str,
    verdict: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_abs: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    mean: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_abs_dev: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    rel_dev: Option<f64>,
}

impl TestReport {
    fn new(detector: &'static str, t: &HelixTest) -> Self {
        Self {
            detector,
            verdict: t.verdict.name(),
            max_abs: t.max_abs.is_finite().then_some(t.max_abs),
            mean: t.stats.map(|s| s.mean),
            max_abs_dev: t.stats.map(|s| s.max_abs_dev),
            rel_dev: t.stats.map(|s| s.rel_dev),
        }
    }
}

#[derive(Serialize)]
struct AxisOut {
    branch: &'static str,
    mean_axis: [f64; 3],
    drift: f64,
    other_drift: f64,
}

impl From<&AxisReport> for AxisOut {
    fn from(a: &AxisReport) -> Self {
        let m = a.mean_axis();
        Self {
            branch: match a.branch {
                Branch::Minus => "minus",
                Branch::Plus => "plus",
            },
            mean_axis: [m.x, m.y, m.z],
            drift: a.drift,
            other_drift: a.other_drift,
        }
    }
}

#[derive(Serialize)]
struct ClassifyReport {
    provenance: Provenance,
    grid: GridReport,
    tol: f64,
    xi1_helix: TestReport,
    slant_helix: TestReport,
    darboux_helix: TestReport,
    sigma_mean: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    f_mean: Option<f64>,
    theta: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    phi: Option<f64>,
    slant_axis: AxisOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    darboux_axis: Option<AxisOut>,
    #[serde(skip_serializing_if = "Option::is_none")]
    sigma_f_consistency: Option<f64>,
}

fn run_classify(fields: &Fields, file: &str, tol: f64) -> CliResult<ClassificationReport> {
    let alt = require_alt(fields, file)?;
    classify(&fields.frenet, alt, tol).map_err(|e| match e {
        Error::InvalidTolerance(_) => CliError::Usage(format!("--tol: {e}")),
        other => curve_error(file, other),
    })
}

pub fn classify_cmd(input: &Path, tol: f64, out: Option<&Path>, digits: usize) -> CliResult<()> {
    let file = input.display().to_string();
    let fields = load_fields(input)?;
    let r = run_classify(&fields, &file, tol)?;
    let consistency =
        sigma_f_consistency(&fields.frenet, require_alt(&fields, &file)?).map_err(|e| curve_error(&file, e))?;
    let report = ClassifyReport {
        provenance: Provenance::new("classify", &file),
        grid: (&fields.frenet.grid).into(),
        tol,
        xi1_helix: TestReport::new("K2/K1", &r.xi1_helix),
        slant_helix: TestReport::new("S", &r.slant_helix),
        darboux_helix: TestReport::new("p/q", &r.darboux_helix),
        sigma_mean: r.sigma_mean,
        f_mean: r.f_mean,
        theta: r.theta,
        phi: r.phi,
        slant_axis: (&r.axis_d).into(),
        darboux_axis: r.axis_l.as_ref().map(Into::into),
        sigma_f_consistency: consistency,
    };
    emit(&to_json(&report, digits)?, out)
}

// synthesize

#[derive(Serialize)]
struct PoseReport {
    point: [f64; 3],
    frame: [[f64; 3]; 3],
}

#[derive(Serialize)]
struct RoundTripOut {
    k1: f64,
    k2: f64,
    a1: f64,
    a2: f64,
    a3: f64,
    max: f64,
}

impl From<RoundTripReport> for RoundTripOut {
    fn from(r: RoundTripReport) -> Self {
        Self {
            k1: r.k1,
            k2: r.k2,
            a1: r.a1,
            a2: r.a2,
            a3: r.a3,
            max: r.max(),
        }
    }
}

#[derive(Serialize)]
struct SynthesizeReport {
    provenance: Provenance,
    #[serde(skip_serializing_if = "Option::is_none")]
    preset: Option<String>,
    output: String,
    grid: GridReport,
    pose: PoseReport,
    round_trip: RoundTripOut,
}

/// Where the invariants of `synthesize` come from.
pub enum SpecSource {
    File(PathBuf),
    Preset(String),
}

/// Path of the sidecar report written next to a synthesized curve.
pub fn sidecar_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".report.json");
    PathBuf::from(name)
}

pub fn synthesize_cmd(source: &SpecSource, pose: &FramePose, out: &Path, digits: usize) -> CliResult<()> {
    let (input, spec, preset): (String, InvariantSpec, Option<String>) = match source {
        SpecSource::File(path) => {
            let loaded = crate::spec_file::read_spec(path)?;
            (
                path.display().to_string(),
                loaded.spec,
                loaded.preset.map(|p| p.to_string()),
            )
        }
        SpecSource::Preset(text) => {
            let preset =
                myller::Preset::parse(text).map_err(|e| CliError::invalid("--preset", text.as_str(), e.to_string()))?;
            let spec = crate::spec_file::preset_spec(preset, None, "--preset")?;
            ("--preset".to_string(), spec, Some(preset.to_string()))
        }
    };
    let curve = synthesize(&spec, pose).map_err(|e| CliError::invalid(&input, "spec", e.to_string()))?;
    let round_trip =
        extract_after_synthesize(&spec, pose).map_err(|e| CliError::invalid(&input, "spec", e.to_string()))?;
    write_curve(out, &curve)?;
    let report = SynthesizeReport {
        provenance: Provenance::new("synthesize", &input),
        preset,
        output: out.display().to_string(),
        grid: spec.grid().into(),
        pose: PoseReport {
            point: [pose.point.x, pose.point.y, pose.point.z],
            frame: pose.frame.map(|e| [e.x, e.y, e.z]),
        },
        round_trip: round_trip.into(),
    };
    emit(&to_json(&report, digits)?, Some(&sidecar_path(out)))
}

// residuals

#[derive(Serialize)]
struct KindReport {
    kind: &'static str,
    reduced: bool,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    valid_samples: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_raw: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    max_normalized: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    scale: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    small: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    characterizes: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verdict: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    agrees: Option<bool>,
}

#[derive(Serialize)]
struct VerdictSummary {
    xi1_helix: &'static str,
    slant_helix: &'static str,
    darboux_helix: &'static str,
}

#[derive(Serialize)]
struct ResidualsReport {
    provenance: Provenance,
    grid: GridReport,
    mode: &'static str,
    residual_tol: f64,
    classify_tol: f64,
    verdicts: VerdictSummary,
    kinds: Vec<KindReport>,
    /// Largest normalized residual over checked full kinds.
    #[serde(skip_serializing_if = "Option::is_none")]
    full_max_normalized: Option<f64>,
    /// Every checked reduced kind agrees with its verdict.
    all_agree: bool,
}

pub struct ResidualArgs<'a> {
    pub kinds: &'a [OdeKind],
    pub mode: Mode,
    pub residual_tol: f64,
    pub classify_tol: f64,
}

pub fn residuals_cmd(input: &Path, args: &ResidualArgs<'_>, out: Option<&Path>, digits: usize) -> CliResult<()> {
    let file = input.display().to_string();
    if !(args.residual_tol > 0.0) {
        return Err(CliError::Usage(format!(
            "--tol must be positive, got {}",
            args.residual_tol
        )));
    }
    let fields = load_fields(input)?;
    let alt = require_alt(&fields, &file)?;
    let class = run_classify(&fields, &file, args.classify_tol)?;
    let mut kinds = Vec::new();
    let mut full_max: Option<f64> = None;
    for &kind in args.kinds {
        let verdict = kind.characterizes().map(|c| match c {
            HelixClass::Xi1 => class.xi1_helix.verdict,
            HelixClass::Slant => class.slant_helix.verdict,
        });
        let mut rep = KindReport {
            kind: kind.name(),
            reduced: kind.is_reduced(),
            status: "degenerate",
            reason: None,
            valid_samples: None,
            max_raw: None,
            max_normalized: None,
            scale: None,
            small: None,
            characterizes: kind.characterizes().map(|c| match c {
                HelixClass::Xi1 => "xi1_helix",
                HelixClass::Slant => "slant_helix",
            }),
            verdict: verdict.map(|v| v.name()),
            agrees: None,
        };
        match build_coefficients(kind, &fields.frenet, alt) {
            Err(e @ Error::AllSamplesDegenerate { .. }) => rep.reason = Some(e.to_string()),
            Err(e) => return Err(curve_error(&file, e)),
            Ok(coeffs) => {
                let r = residual(kind, &coeffs, kind.target(), args.mode, &fields.frenet, alt)
                    .map_err(|e| curve_error(&file, e))?;
                let norm = r.max_normalized();
                let small = norm <= args.residual_tol;
                rep.status = "checked";
                rep.valid_samples = Some(r.valid_count());
                rep.max_raw = Some(r.max());
                rep.max_normalized = Some(norm);
                rep.scale = Some(r.scale);
                rep.small = Some(small);
                rep.agrees = verdict.map(|v| v.holds() == small);
                if !kind.is_reduced() {
                    full_max = Some(full_max.map_or(norm, |m| m.max(norm)));
                }
            }
        }
        kinds.push(rep);
    }
    let all_agree = kinds.iter().all(|k| k.agrees.unwrap_or(true));
    let report = ResidualsReport {
        provenance: Provenance::new("residuals", &file),
        grid: (&fields.frenet.grid).into(),
        mode: args.mode.name(),
        residual_tol: args.residual_tol,
        classify_tol: args.classify_tol,
        verdicts: VerdictSummary {
            xi1_helix: class.xi1_helix.verdict.name(),
            slant_helix: class.slant_helix.verdict.name(),
            darboux_helix: class.darboux_helix.verdict.name(),
        },
        kinds,
        full_max_normalized: full_max,
        all_agree,
    };
    emit(&to_json(&report, digits)?, out)
}
