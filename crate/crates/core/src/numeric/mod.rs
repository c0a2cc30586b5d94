//! Shared numerical primitives: sampled fields on uniform grids,
//! finite-difference derivatives, running integrals, constancy statistics
//! and frame orthonormalization.

mod field;
mod ortho;
mod quadrature;
mod stats;
mod stencil;

pub use field::{Grid, ScalarField, Vec3, VectorField};
pub use ortho::orthonormalize;
pub use stats::{constancy, ConstancyStats, REL_DEV_FLOOR};
pub use stencil::{fornberg_weights, DerivOrder};
