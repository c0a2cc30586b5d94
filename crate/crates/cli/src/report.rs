//! JSON reports with fixed-precision floats.
//!
//! Every float is printed in scientific notation with a fixed number of
//! significant digits (17 unless `MYLLER_FLOAT_FORMAT` says otherwise), so
//! identical inputs give byte-identical reports.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use crate::error::{CliError, CliResult};

pub const FLOAT_FORMAT_VAR: &str = "MYLLER_FLOAT_FORMAT";
pub const DEFAULT_DIGITS: usize = 17;

/// Significant digits from `MYLLER_FLOAT_FORMAT`: an integer in `1..=17`.
pub fn digits_from_env() -> CliResult<usize> {
    match std::env::var(FLOAT_FORMAT_VAR) {
        Err(_) => Ok(DEFAULT_DIGITS),
        Ok(v) => parse_digits(&v),
    }
}

pub fn parse_digits(v: &str) -> CliResult<usize> {
    match v.trim().parse::<usize>() {
        Ok(d) if (1..=DEFAULT_DIGITS).contains(&d) => Ok(d),
        _ => Err(CliError::Usage(format!(
            "{FLOAT_FORMAT_VAR}: expected a digit count between 1 and {DEFAULT_DIGITS}, got `{v}`"
        ))),
    }
}

/// `x` with `digits` significant digits, e.g. `2.5000000000000000e-1`.
pub fn format_float(x: f64, digits: usize) -> String {
    format!("{:.*e}", digits - 1, x)
}

struct FixedFloat<'a> {
    pretty: PrettyFormatter<'a>,
    digits: usize,
}

impl Formatter for FixedFloat<'_> {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        if !value.is_finite() {
            return Err(io::Error::new(
                io::ErrorKind::InvalidData,
                "non-finite number in report",
            ));
        }
        w.write_all(format_float(value, self.digits).as_bytes())
    }

    /// Reports skip absent values, so a null can only come from serde_json
    /// replacing a non-finite float.
    fn write_null<W: ?Sized + Write>(&mut self, _w: &mut W) -> io::Result<()> {
        Err(io::Error::new(
            io::ErrorKind::InvalidData,
            "non-finite number in report",
        ))
    }

    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, value: f32) -> io::Result<()> {
        self.write_f64(w, value as f64)
    }

    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_array(w)
    }

    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array(w)
    }

    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_array_value(w, first)
    }

    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_array_value(w)
    }

    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object(w)
    }

    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object(w)
    }

    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.pretty.begin_object_key(w, first)
    }

    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.begin_object_value(w)
    }

    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.pretty.end_object_value(w)
    }
}

/// Pretty-printed JSON with fixed-precision floats and a trailing newline.
pub fn to_json<T: Serialize>(value: &T, digits: usize) -> CliResult<String> {
    let mut buf = Vec::new();
    let fmt = FixedFloat {
        pretty: PrettyFormatter::with_indent(b"  "),
        digits,
    };
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, fmt);
    value
        .serialize(&mut ser)
        .map_err(|e| CliError::Usage(format!("cannot serialize report: {e}")))?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

/// Writes `text` to `path`, or to standard output when `path` is `None`.
pub fn emit(text: &str, path: Option<&Path>) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| CliError::io(p, e)),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())
                .and_then(|_| out.flush())
                .map_err(|e| CliError::io(Path::new("<stdout>"), e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[derive(Serialize)]
    struct Sample {
        x: f64,
        v: Vec<f64>,
        n: usize,
    }

    #[test]
    fn fixed_digits() {
        let s = Sample {
            x: 0.25,
            v: vec![-1.0, 0.1],
            n: 3,
        };
        let text = to_json(&s, 17).unwrap();
        assert!(text.contains("\"x\": 2.5000000000000000e-1"), "{text}");
        assert!(text.contains("-1.0000000000000000e0"), "{text}");
        assert!(text.contains("\"n\": 3"), "{text}");
        let back: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(back["v"][1].as_f64(), Some(0.1));
        assert!(to_json(&s, 4).unwrap().contains("2.500e-1"));
    }

    #[test]
    fn non_finite_is_rejected() {
        let s = Sample {
            x: f64::NAN,
            v: vec![],
            n: 0,
        };
        assert!(to_json(&s, 17).is_err());
    }

    #[test]
    fn digit_parsing() {
        assert_eq!(parse_digits("12").unwrap(), 12);
        assert!(parse_digits("0").is_err());
        assert!(parse_digits("18").is_err());
        assert!(parse_digits("%.3e").is_err());
    }
}
