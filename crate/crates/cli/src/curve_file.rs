//! `s,rx,ry,rz,xix,xiy,xiz` text files holding a sampled versor curve.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use myller::numeric::{Grid, Vec3, VectorField};
use myller::{Error, VersorCurve};

use crate::error::{CliError, CliResult};

pub const HEADER: &str = "s,rx,ry,rz,xix,xiy,xiz";
const FIELDS: [&str; 7] = ["s", "rx", "ry", "rz", "xix", "xiy", "xiz"];
pub const MIN_ROWS: usize = 5;
/// Allowed deviation of each step from the mean step, relative to it.
pub const SPACING_TOL: f64 = 1e-9;

/// Location string for sample `index`: data rows start on line 2.
pub fn sample_location(index: usize) -> String {
    format!("line {} (sample {index})", index + 2)
}

/// Maps a library error on curve data to a located CLI error.
pub fn curve_error(file: &str, e: Error) -> CliError {
    match e {
        Error::NotUnit { index, .. } => CliError::invalid(
            file,
            format!("{}, fields xix,xiy,xiz", sample_location(index)),
            e.to_string(),
        ),
        Error::UnitSpeed { index, .. } => CliError::invalid(
            file,
            format!("{}, fields rx,ry,rz", sample_location(index)),
            e.to_string(),
        ),
        Error::NonFinite { index }
        | Error::CurvatureVanishes { index, .. }
        | Error::DegenerateDarboux { index, .. } => CliError::invalid(file, sample_location(index), e.to_string()),
        other => CliError::invalid(file, "curve", other.to_string()),
    }
}

/// Parses curve text. `file` names the source in error messages.
pub fn parse_curve(text: &str, file: &str) -> CliResult<VersorCurve> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(false)
        .flexible(true)
        .from_reader(text.as_bytes());
    let mut records = reader.records();
    let header = match records.next() {
        None => {
            return Err(CliError::parse(
                file,
                "line 1",
                format!("empty file, expected header `{HEADER}`"),
            ))
        }
        Some(r) => r.map_err(|e| CliError::parse(file, "line 1", e.to_string()))?,
    };
    let got: Vec<&str> = header.iter().map(str::trim).collect();
    if got != FIELDS {
        return Err(CliError::parse(
            file,
            "line 1",
            format!("header must be `{HEADER}`, got `{}`", got.join(",")),
        ));
    }

    let mut rows: Vec<[f64; 7]> = Vec::new();
    for record in records {
        let index = rows.len();
        let loc = sample_location(index);
        let record = record.map_err(|e| CliError::parse(file, loc.clone(), e.to_string()))?;
        if record.len() != FIELDS.len() {
            return Err(CliError::parse(
                file,
                loc,
                format!("expected {} fields, got {}", FIELDS.len(), record.len()),
            ));
        }
        let mut row = [0.0; 7];
        for (k, (name, raw)) in FIELDS.iter().zip(record.iter()).enumerate() {
            let raw = raw.trim();
            let v: f64 = raw.parse().map_err(|_| {
                CliError::parse(file, format!("{loc}, field {name}"), format!("`{raw}` is not a number"))
            })?;
            if !v.is_finite() {
                return Err(CliError::invalid(
                    file,
                    format!("{loc}, field {name}"),
                    "value is not finite",
                ));
            }
            row[k] = v;
        }
        rows.push(row);
    }

    let n = rows.len();
    if n < MIN_ROWS {
        return Err(CliError::invalid(
            file,
            "rows",
            format!("too few samples: need at least {MIN_ROWS}, got {n}"),
        ));
    }
    let s0 = rows[0][0];
    for i in 1..n {
        if !(rows[i][0] > rows[i - 1][0]) {
            return Err(CliError::invalid(
                file,
                format!("{}, field s", sample_location(i)),
                format!(
                    "non-uniform grid: s = {} does not exceed the previous {}",
                    rows[i][0],
                    rows[i - 1][0]
                ),
            ));
        }
    }
    let h = (rows[n - 1][0] - s0) / (n - 1) as f64;
    for i in 1..n {
        let step = rows[i][0] - rows[i - 1][0];
        if (step - h).abs() > SPACING_TOL * h {
            return Err(CliError::invalid(
                file,
                format!("{}, field s", sample_location(i)),
                format!(
                    "non-uniform grid: step {step} differs from the mean step {h} (relative tolerance {SPACING_TOL:e})"
                ),
            ));
        }
    }
    let grid = Grid::new(s0, h, n).map_err(|e| CliError::invalid(file, "field s", e.to_string()))?;
    let column = |k: usize| -> CliResult<VectorField> {
        let v = rows.iter().map(|r| Vec3::new(r[k], r[k + 1], r[k + 2])).collect();
        VectorField::new(grid, v).map_err(|e| curve_error(file, e))
    };
    VersorCurve::new(column(1)?, column(4)?).map_err(|e| curve_error(file, e))
}

pub fn read_curve(path: &Path) -> CliResult<VersorCurve> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    parse_curve(&text, &path.display().to_string())
}

/// Curve text with every value at 17 significant digits, which reads back
/// bit-exactly.
pub fn format_curve(curve: &VersorCurve) -> String {
    let mut out = String::with_capacity(curve.grid().len() * 180);
    out.push_str(HEADER);
    out.push('\n');
    for (i, s) in curve.grid().points().enumerate() {
        let (r, xi) = (curve.r()[i], curve.xi()[i]);
        let _ = writeln!(
            out,
            "{s:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e}",
            r.x, r.y, r.z, xi.x, xi.y, xi.z
        );
    }
    out
}

pub fn write_curve(path: &Path, curve: &VersorCurve) -> CliResult<()> {
    fs::write(path, format_curve(curve)).map_err(|e| CliError::io(path, e))
}
