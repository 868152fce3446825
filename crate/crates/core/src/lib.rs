//! Sparse recovery with weighted l1 minimization.
//!
//! The crate bundles everything needed to study when a support estimate
//! helps recover sparse signals from underdetermined linear
//! measurements:
//!
//! - [`matrix`], [`rng`], [`gen`], [`nullspace`]: dense linear algebra,
//!   reproducible random generation, and orthonormal null-space bases.
//! - [`lp`]: a self-contained two-phase revised simplex solver.
//! - [`recovery`]: weighted and plain l1 minimization, exactness and
//!   uniqueness testing.
//! - [`nsp`]: exact certification of weighted null space properties on
//!   small matrices by per-orthant linear programming.
//! - [`bounds`]: Gaussian measurement bounds and weight optimization.
//! - [`phase`]: Monte-Carlo phase-transition experiments.
//! - [`textio`], [`svg`]: plain-text matrix/CSV formats and SVG heatmaps.

pub mod bounds;
pub mod error;
pub mod gen;
pub mod lp;
pub mod matrix;
pub mod nsp;
pub mod nullspace;
pub mod phase;
pub mod recovery;
pub mod rng;
pub mod svg;
pub mod textio;

pub use error::{Error, Result};
pub use matrix::DenseMatrix;
pub use rng::Rng;
