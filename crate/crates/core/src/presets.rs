//! Analytic versor fields and named invariant presets.
//!
//! The closed-form curves are exact samples (no integration); the presets
//! describe invariants to be fed to [`synthesize`](crate::synthesis::synthesize).

use std::fmt;

use crate::error::{Error, Result};
use crate::frenet::VersorCurve;
use crate::numeric::{Grid, Vec3, VectorField};
use crate::synthesis::{InvariantSpec, Invariants};

/// Circular helix of the given radius and pitch parameter with `ξ = r'`.
///
/// With `c = sqrt(radius^2 + pitch^2)`:
/// `r(s) = (R cos(s/c), R sin(s/c), b s/c)`, `K1 = R/c^2`, `K2 = b/c^2`.
pub fn circular_helix(radius: f64, pitch: f64, grid: Grid) -> Result<VersorCurve> {
    let c = radius.hypot(pitch);
    let r = VectorField::from_fn(grid, |s| {
        let t = s / c;
        Vec3::new(radius * t.cos(), radius * t.sin(), pitch * t)
    })?;
    let xi = VectorField::from_fn(grid, |s| {
        let t = s / c;
        Vec3::new(-radius * t.sin(), radius * t.cos(), pitch) / c
    })?;
    VersorCurve::new(r, xi)
}

/// Circle in the `xy` plane with `ξ = r'`: `K1 = 1/radius`, `K2 = 0`.
pub fn planar_circle(radius: f64, grid: Grid) -> Result<VersorCurve> {
    let r = VectorField::from_fn(grid, |s| {
        let t = s / radius;
        Vec3::new(radius * t.cos(), radius * t.sin(), 0.0)
    })?;
    let xi = VectorField::from_fn(grid, |s| {
        let t = s / radius;
        Vec3::new(-t.sin(), t.cos(), 0.0)
    })?;
    VersorCurve::new(r, xi)
}

/// The `x` axis carrying `ξ = (cos s, sin s, 0)`, a versor field that is not
/// tangent to its curve: `K1 = 1`, `K2 = 0`, `a = (cos s, -sin s, 0)`.
pub fn rotating_versor_line(grid: Grid) -> Result<VersorCurve> {
    let r = VectorField::from_fn(grid, |s| Vec3::new(s, 0.0, 0.0))?;
    let xi = VectorField::from_fn(grid, |s| Vec3::new(s.cos(), s.sin(), 0.0))?;
    VersorCurve::new(r, xi)
}

/// Named invariant families shipped with the library and the CLI.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Preset {
    /// Constant `K1`, `K2` with tangent coefficients: a circular helix
    /// (a planar circle when `K2 = 0`).
    Circular { k1: f64, k2: f64 },
    /// `K1 = P cos(Q s)`, `K2 = P sin(Q s)`, `a = (1, 0, 0)`: a slant helix
    /// with alternative curvatures `p = P`, `q = Q`.
    Slant { p: f64, q: f64 },
    /// `K1 = 1`, `K2 = s`, `a = (1, 0, 0)`: none of the helix conditions hold.
    NonHelix,
    /// `K1 = 1`, `K2 = 0`, `a = (cos s, -sin s, 0)`: a rotating versor on a line.
    RotatingLine,
}

impl Preset {
    /// Arclength span used when no grid is given.
    pub const DEFAULT_SPAN: (f64, f64) = (0.0, 4.0);
    pub const DEFAULT_STEP: f64 = 1e-2;

    pub fn name(&self) -> &'static str {
        match self {
            Preset::Circular { .. } => "circular",
            Preset::Slant { .. } => "slant",
            Preset::NonHelix => "non-helix",
            Preset::RotatingLine => "rotating-line",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match *self {
            Preset::Circular { k1, k2 } => vec![("K1", k1), ("K2", k2)],
            Preset::Slant { p, q } => vec![("P", p), ("Q", q)],
            Preset::NonHelix | Preset::RotatingLine => Vec::new(),
        }
    }

    /// Builds a preset from its name and `(key, value)` parameters; missing
    /// parameters take the defaults `K1 = K2 = 0.5`, `P = 1`, `Q = 0.25`.
    pub fn from_parts(name: &str, params: &[(String, f64)]) -> Result<Self> {
        let get = |key: &str, default: f64| {
            params
                .iter()
                .find(|(k, _)| k.eq_ignore_ascii_case(key))
                .map_or(default, |(_, v)| *v)
        };
        let allowed: &[&str] = match name {
            "circular" => &["K1", "K2"],
            "slant" => &["P", "Q"],
            "non-helix" | "nonhelix" | "rotating-line" => &[],
            other => return Err(Error::UnknownPreset(other.to_string())),
        };
        if let Some((k, _)) = params
            .iter()
            .find(|(k, _)| !allowed.iter().any(|a| a.eq_ignore_ascii_case(k)))
        {
            return Err(Error::BadPresetParam(format!("`{name}` has no parameter `{k}`")));
        }
        Ok(match name {
            "circular" => Preset::Circular {
                k1: get("K1", 0.5),
                k2: get("K2", 0.5),
            },
            "slant" => Preset::Slant {
                p: get("P", 1.0),
                q: get("Q", 0.25),
            },
            "rotating-line" => Preset::RotatingLine,
            _ => Preset::NonHelix,
        })
    }

    /// Parses `"slant P=1 Q=0.25"`-style descriptions.
    pub fn parse(text: &str) -> Result<Self> {
        let mut tokens = text.split_whitespace();
        let name = tokens.next().ok_or_else(|| Error::UnknownPreset(String::new()))?;
        let params = tokens
            .map(|tok| {
                let (k, v) = tok
                    .split_once('=')
                    .ok_or_else(|| Error::BadPresetParam(format!("expected key=value, got `{tok}`")))?;
                let v: f64 = v
                    .parse()
                    .map_err(|_| Error::BadPresetParam(format!("`{v}` is not a number")))?;
                Ok((k.to_string(), v))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_parts(name, &params)
    }

    pub fn invariants(&self, s: f64) -> Invariants {
        match *self {
            Preset::Circular { k1, k2 } => Invariants::tangent(k1, k2),
            Preset::Slant { p, q } => Invariants::tangent(p * (q * s).cos(), p * (q * s).sin()),
            Preset::NonHelix => Invariants::tangent(1.0, s),
            Preset::RotatingLine => Invariants::new(1.0, 0.0, [s.cos(), -s.sin(), 0.0]),
        }
    }

    pub fn spec(&self, grid: Grid) -> Result<InvariantSpec> {
        InvariantSpec::from_fn(grid, |s| self.invariants(s))
    }

    pub fn default_grid() -> Grid {
        let (a, b) = Self::DEFAULT_SPAN;
        Grid::spanning(a, b, ((b - a) / Self::DEFAULT_STEP).round() as usize + 1).expect("default grid is valid")
    }
}

impl fmt::Display for Preset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        for (k, v) in self.params() {
            write!(f, " {k}={v}")?;
        }
        Ok(())
    }
}
