use thiserror::Error;

/// Errors raised while building or analysing versor fields.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("too few samples: need at least {needed}, got {got}")]
    TooFewSamples { needed: usize, got: usize },

    #[error("length mismatch: grid has {expected} samples, values have {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("non-finite value at sample {index}")]
    NonFinite { index: usize },

    #[error("fields live on different grids")]
    GridMismatch,

    #[error("tolerance must be positive, got {0}")]
    InvalidTolerance(f64),

    #[error("degenerate frame input: {0}")]
    DegenerateFrame(&'static str),

    #[error("versor at sample {index} has norm {norm}, expected 1 within {tol}")]
    NotUnit { index: usize, norm: f64, tol: f64 },

    #[error("curve is not unit speed: |dr/ds| deviates from 1 by {max_dev} at sample {index} (tolerance {tol})")]
    UnitSpeed { index: usize, max_dev: f64, tol: f64 },

    #[error("curvature K1 = {k1} vanishes at sample {index} (floor {floor})")]
    CurvatureVanishes { index: usize, k1: f64, floor: f64 },

    #[error("Darboux vector degenerates at sample {index}: p = {p} below floor {floor}")]
    DegenerateDarboux { index: usize, p: f64, floor: f64 },

    #[error("invalid invariant spec: field `{field}` at sample {index}: {reason}")]
    InvalidSpec {
        field: &'static str,
        index: usize,
        reason: String,
    },

    #[error("invalid frame pose: {0}")]
    InvalidPose(String),

    #[error("{kind}: every sample violates the coefficient floors")]
    AllSamplesDegenerate { kind: &'static str },

    #[error("{kind} is an equation for {expected}, got target {got}")]
    TargetMismatch {
        kind: &'static str,
        expected: &'static str,
        got: &'static str,
    },

    #[error("unknown equation kind `{0}`")]
    UnknownKind(String),

    #[error("coefficients were built for {got}, not {expected}")]
    CoefficientMismatch { expected: &'static str, got: &'static str },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("bad preset parameter: {0}")]
    BadPresetParam(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
