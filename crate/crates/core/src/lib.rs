//! Curves in unique geodesic spaces.
//!
//! Every construction here is written against the [`GeodesicSpace`] trait and
//! only uses the space's affine map `Φ_t(x, y)` (and, for weighted means, its
//! `log`/`exp` maps):
//!
//! * [`bezier`]: de Casteljau evaluation, rational Bézier curves, subdivision,
//!   Aitken–Neville interpolation and distance-driven weights.
//! * [`spline`]: the de Boor algorithm over general knot vectors, including
//!   closed (periodic) splines.
//! * [`karcher`]: weighted geometric means, centroid curves and the checks
//!   that compare them with Bézier curves.
//!
//! Six spaces ship with the crate: Euclidean `ℝⁿ`, the sphere `S²`, the
//! taxicab plane with a slope-`k` representative geodesic, the Paris metric,
//! determinant-one SPD 2×2 matrices and the Euclidean motion group E₃.

pub mod bernstein;
pub mod bezier;
pub mod cli;
pub mod error;
pub mod geodesic;
pub mod karcher;
pub mod spaces;
pub mod spline;

pub use bernstein::{bernstein, bernstein_all};
pub use error::{GeoError, Result};
pub use geodesic::{
    Capabilities, GeodesicSpace, SpaceDescriptor, SpaceKind, SpacePoint, TangentVector,
};
