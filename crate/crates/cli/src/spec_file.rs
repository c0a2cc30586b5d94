//! Invariant specifications: sampled arrays or a named preset on a grid.
//!
//! ```toml
//! [grid]
//! s0 = 0.0
//! h = 0.01
//! n = 401
//!
//! [preset]
//! name = "slant"
//! params = { P = 1.0, Q = 0.25 }
//! ```
//!
//! Instead of `[preset]`, top-level arrays `K1`, `K2` and optionally
//! `a1`, `a2`, `a3` give one value per grid point; omitted tangent
//! coefficients default to `(1, 0, 0)`.

use std::collections::BTreeMap;
use std::fs;
use std::path::Path;

use serde::Deserialize;

use myller::numeric::{Grid, ScalarField};
use myller::{Error, InvariantSpec, Preset};

use crate::error::{CliError, CliResult};

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct GridDoc {
    s0: f64,
    h: f64,
    n: usize,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct PresetDoc {
    name: String,
    #[serde(default)]
    params: BTreeMap<String, f64>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct SpecDoc {
    grid: Option<GridDoc>,
    preset: Option<PresetDoc>,
    #[serde(rename = "K1")]
    k1: Option<Vec<f64>>,
    #[serde(rename = "K2")]
    k2: Option<Vec<f64>>,
    a1: Option<Vec<f64>>,
    a2: Option<Vec<f64>>,
    a3: Option<Vec<f64>>,
}

/// A parsed specification and the preset it was built from, if any.
#[derive(Debug, Clone)]
pub struct LoadedSpec {
    pub spec: InvariantSpec,
    pub preset: Option<Preset>,
}

fn line_of(text: &str, offset: usize) -> usize {
    text[..offset.min(text.len())].matches('\n').count() + 1
}

fn spec_error(file: &str, e: Error) -> CliError {
    match e {
        Error::InvalidSpec { field, index, .. } => {
            CliError::invalid(file, format!("field {field}[{index}]"), e.to_string())
        }
        Error::InvalidGrid(_) | Error::TooFewSamples { .. } => CliError::invalid(file, "field grid", e.to_string()),
        Error::UnknownPreset(_) => CliError::invalid(file, "field preset.name", e.to_string()),
        Error::BadPresetParam(_) => CliError::invalid(file, "field preset.params", e.to_string()),
        other => CliError::invalid(file, "spec", other.to_string()),
    }
}

/// Builds a preset's specification on `grid`, or on the default grid.
pub fn preset_spec(preset: Preset, grid: Option<Grid>, file: &str) -> CliResult<InvariantSpec> {
    preset
        .spec(grid.unwrap_or_else(Preset::default_grid))
        .map_err(|e| spec_error(file, e))
}

pub fn parse_spec(text: &str, file: &str) -> CliResult<LoadedSpec> {
    let doc: SpecDoc = toml::from_str(text).map_err(|e| {
        let loc = e.span().map_or_else(
            || "document".to_string(),
            |s| format!("line {}", line_of(text, s.start)),
        );
        CliError::parse(file, loc, e.message().to_string())
    })?;
    let grid = doc
        .grid
        .as_ref()
        .map(|g| Grid::new(g.s0, g.h, g.n))
        .transpose()
        .map_err(|e| spec_error(file, e))?;
    let has_arrays = doc.k1.is_some() || doc.k2.is_some() || doc.a1.is_some() || doc.a2.is_some() || doc.a3.is_some();

    if let Some(p) = doc.preset {
        if has_arrays {
            return Err(CliError::invalid(
                file,
                "field preset",
                "give either a preset or sampled arrays, not both",
            ));
        }
        let params: Vec<(String, f64)> = p.params.into_iter().collect();
        let preset = Preset::from_parts(&p.name, &params).map_err(|e| spec_error(file, e))?;
        let spec = preset_spec(preset, grid, file)?;
        return Ok(LoadedSpec {
            spec,
            preset: Some(preset),
        });
    }

    let grid = grid.ok_or_else(|| CliError::invalid(file, "field grid", "required when sampled arrays are given"))?;
    let field = |name: &str, values: Option<Vec<f64>>, default: Option<f64>| -> CliResult<ScalarField> {
        let values = match (values, default) {
            (Some(v), _) => v,
            (None, Some(d)) => vec![d; grid.len()],
            (None, None) => return Err(CliError::invalid(file, format!("field {name}"), "missing array")),
        };
        ScalarField::new(grid, values).map_err(|e| match e {
            Error::LengthMismatch { expected, got } => CliError::invalid(
                file,
                format!("field {name}"),
                format!("has {got} values, grid.n is {expected}"),
            ),
            Error::NonFinite { index } => {
                CliError::invalid(file, format!("field {name}[{index}]"), "value is not finite")
            }
            other => spec_error(file, other),
        })
    };
    let tangent_given = doc.a1.is_some() || doc.a2.is_some() || doc.a3.is_some();
    let d = |v: f64| (!tangent_given).then_some(v);
    let spec = InvariantSpec::new(
        field("K1", doc.k1, None)?,
        field("K2", doc.k2, None)?,
        field("a1", doc.a1, d(1.0))?,
        field("a2", doc.a2, d(0.0))?,
        field("a3", doc.a3, d(0.0))?,
    )
    .map_err(|e| spec_error(file, e))?;
    Ok(LoadedSpec { spec, preset: None })
}

pub fn read_spec(path: &Path) -> CliResult<LoadedSpec> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_spec(&text, &path.display().to_string())
}
