//! Residuals of the third-order equations satisfied by each frame vector.
//!
//! Every vector `T` of either frame obeys `T''' + c2 T'' + c1 T' + c0 T = 0`
//! with coefficients built from the frame curvatures. Dropping `c0` (or, for
//! `Y` and the Frenet-type `ξ2`, passing to a second-order equation) yields a
//! reduced equation that holds exactly on helices of the matching class.
//!
//! Residuals are evaluated either from finite differences of the sampled
//! target or by expanding `T'`, `T''`, `T'''` through the moving equations.
//! The second mode isolates the algebra from the sampling: full equations
//! vanish to roundoff however the curvature derivatives were obtained.

mod check;
mod coefficients;
mod evaluate;
mod jet;
mod kind;

pub use check::{
    characterization_check, characterization_check_with, CharacterizationReport, CheckOptions, KindCheck, KindOutcome,
};
pub use coefficients::{build_coefficients, build_coefficients_with, OdeCoefficients, ResidualOptions};
pub use evaluate::{residual, Mode, Residual};
pub use kind::{FrameSystem, HelixClass, OdeKind, Target};
