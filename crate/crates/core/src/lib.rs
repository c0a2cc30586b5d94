//! Versor fields along arclength-parametrized curves.
//!
//! A curve `r(s)` carrying a unit vector field `ξ(s)` has a Frenet-type frame
//! `(ξ1, ξ2, ξ3)` with curvature `K1`, torsion `K2` and tangent coefficients
//! `a1, a2, a3`, and an alternative frame `(ξ2, Y, D)` built on the
//! normalized Darboux vector with invariants `p, q`. This crate samples both
//! frames from data, synthesizes curves from prescribed invariants, detects
//! ξ1-, slant and Darboux helices, and evaluates the third-order
//! differential equations satisfied by each frame vector.
//!
//! ```
//! use myller::{extract_frenet, numeric::Grid, presets, DEFAULT_K1_FLOOR};
//!
//! let grid = Grid::new(0.0, 1e-2, 401)?;
//! let helix = presets::circular_helix(1.0, 1.0, grid)?;
//! let frame = extract_frenet(&helix, DEFAULT_K1_FLOOR)?;
//! assert!((frame.k1.mean() - 0.5).abs() < 1e-8);
//! # Ok::<(), myller::Error>(())
//! ```

// `!(x >= floor)` is deliberate: NaN must fail the check.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod alt;
pub mod classify;
mod error;
pub mod frenet;
pub mod motion;
pub mod numeric;
pub mod presets;
pub mod residuals;
pub mod synthesis;

pub use alt::{
    angle_rates, coefficient_relations, curvature_relations, extract_alternative, verify_alt_moving_equations,
    AltField, CurvaturePhase,
};
pub use error::{Error, Result};
pub use frenet::{extract_frenet, verify_moving_equations, FrenetField, VersorCurve, DEFAULT_K1_FLOOR};
pub use motion::{rigid_motion_distance, RigidMotion};
pub use presets::Preset;
pub use synthesis::{extract_after_synthesize, synthesize, FramePose, InvariantSpec, Invariants};

/// The guide's Rust snippets, compiled and run as doctests.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/frames.md")]
    mod frames {}
    #[doc = include_str!("../../../book/src/alternative.md")]
    mod alternative {}
    #[doc = include_str!("../../../book/src/helices.md")]
    mod helices {}
    #[doc = include_str!("../../../book/src/synthesis.md")]
    mod synthesis {}
    #[doc = include_str!("../../../book/src/residuals.md")]
    mod residuals {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
