//! The geodesic-space abstraction shared by every curve construction.
//!
//! A space provides a metric and an affine map `Φ_t(x, y)`, the point at
//! fraction `t` along the unique shortest arc from `x` to `y`. Spaces that
//! are (pieces of) Riemannian manifolds additionally expose `log`/`exp`,
//! which the Karcher-mean machinery needs.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{check_unit, GeoError, Result};

/// Default absolute comparison tolerance.
pub const DEFAULT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    Euclidean,
    Sphere,
    Manhattan,
    Paris,
    Spd2,
    E3,
}

impl SpaceKind {
    pub fn as_str(self) -> &'static str {
        match self {
            SpaceKind::Euclidean => "euclidean",
            SpaceKind::Sphere => "sphere",
            SpaceKind::Manhattan => "manhattan",
            SpaceKind::Paris => "paris",
            SpaceKind::Spd2 => "spd2",
            SpaceKind::E3 => "e3",
        }
    }
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Capabilities {
    pub has_log_exp: bool,
    pub is_unique_geodesic: bool,
    /// Whether the subdivision compatibility identity
    /// `Φ_s(Φ_τ(x,y), Φ_τ(y,z)) = Φ_τ(Φ_s(x,y), Φ_s(y,z))` holds.
    pub satisfies_condition_1: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpaceDescriptor {
    pub kind: SpaceKind,
    /// Number of coordinates of a point.
    pub ambient_dim: usize,
    /// Number of coordinates of a tangent vector (0 without log/exp).
    pub tangent_dim: usize,
    pub capabilities: Capabilities,
    pub domain_constraint: String,
}

/// A point of a concrete geodesic space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpacePoint {
    space: SpaceKind,
    coords: Vec<f64>,
}

impl SpacePoint {
    pub fn new(space: SpaceKind, coords: Vec<f64>) -> Self {
        SpacePoint { space, coords }
    }

    pub fn space(&self) -> SpaceKind {
        self.space
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<f64> {
        self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Same coordinates, different owning space.
    pub(crate) fn retag(&self, space: SpaceKind) -> SpacePoint {
        SpacePoint {
            space,
            coords: self.coords.clone(),
        }
    }
}

/// An element of the tangent space at `base`.
///
/// Arithmetic between vectors is only defined for a common foot point.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TangentVector {
    base: SpacePoint,
    vec: Vec<f64>,
}

impl TangentVector {
    pub fn new(base: SpacePoint, vec: Vec<f64>) -> Self {
        TangentVector { base, vec }
    }

    pub fn zero(base: SpacePoint, dim: usize) -> Self {
        TangentVector {
            base,
            vec: vec![0.0; dim],
        }
    }

    pub fn base(&self) -> &SpacePoint {
        &self.base
    }

    pub fn components(&self) -> &[f64] {
        &self.vec
    }

    pub fn scaled(&self, s: f64) -> TangentVector {
        TangentVector {
            base: self.base.clone(),
            vec: self.vec.iter().map(|v| v * s).collect(),
        }
    }

    /// `self + s * other`.
    pub fn add_scaled(&self, s: f64, other: &TangentVector) -> Result<TangentVector> {
        if self.base != other.base {
            return Err(GeoError::MixedBase);
        }
        if self.vec.len() != other.vec.len() {
            return Err(GeoError::DimensionMismatch {
                expected: self.vec.len(),
                found: other.vec.len(),
            });
        }
        Ok(TangentVector {
            base: self.base.clone(),
            vec: self
                .vec
                .iter()
                .zip(&other.vec)
                .map(|(a, b)| a + s * b)
                .collect(),
        })
    }

    pub fn sub(&self, other: &TangentVector) -> Result<TangentVector> {
        self.add_scaled(-1.0, other)
    }
}

/// A unique geodesic space (or a representative-geodesic metric space).
///
/// Implementations must return `x` exactly for `t = 0` and `y` exactly for
/// `t = 1`; the endpoint property of every curve construction relies on it.
pub trait GeodesicSpace: fmt::Debug + Send + Sync {
    fn descriptor(&self) -> &SpaceDescriptor;

    fn kind(&self) -> SpaceKind {
        self.descriptor().kind
    }

    /// Space-specific validity of a point (coordinate count, unit norm, ...).
    fn check_point(&self, p: &SpacePoint) -> Result<()>;

    fn distance(&self, x: &SpacePoint, y: &SpacePoint) -> Result<f64>;

    /// The affine map `Φ_t(x, y)` for `t ∈ [0, 1]`.
    fn affine(&self, t: f64, x: &SpacePoint, y: &SpacePoint) -> Result<SpacePoint>;

    /// The geodesic through `x` (at 0) and `y` (at 1) evaluated at any real
    /// `t`. Spaces whose geodesics do not extend only accept `t ∈ [0, 1]`.
    fn geodesic_point(&self, t: f64, x: &SpacePoint, y: &SpacePoint) -> Result<SpacePoint> {
        if (0.0..=1.0).contains(&t) {
            self.affine(t, x, y)
        } else {
            Err(GeoError::DomainViolation(format!(
                "space `{}` cannot extend geodesics beyond their endpoints (t = {t})",
                self.kind()
            )))
        }
    }

    fn log(&self, _x: &SpacePoint, _y: &SpacePoint) -> Result<TangentVector> {
        Err(self.missing("log/exp maps"))
    }

    fn exp(&self, _v: &TangentVector) -> Result<SpacePoint> {
        Err(self.missing("log/exp maps"))
    }

    /// Riemannian norm of a tangent vector at its base point.
    fn tangent_norm(&self, _v: &TangentVector) -> Result<f64> {
        Err(self.missing("a Riemannian norm"))
    }

    fn check_tangent(&self, _v: &TangentVector) -> Result<()> {
        Err(self.missing("tangent spaces"))
    }

    /// Checks that a point set lies where weighted means are unique.
    fn check_karcher_domain(&self, points: &[SpacePoint]) -> Result<()> {
        if self.descriptor().capabilities.has_log_exp {
            points.iter().try_for_each(|p| self.check_point(p))
        } else {
            Err(self.missing("weighted geometric means"))
        }
    }

    #[doc(hidden)]
    fn missing(&self, capability: &'static str) -> GeoError {
        GeoError::MissingCapability {
            space: self.kind(),
            capability,
        }
    }
}

/// Validates the common preconditions of `Φ_t(x, y)`.
pub(crate) fn check_affine_args<S: GeodesicSpace + ?Sized>(
    space: &S,
    t: f64,
    x: &SpacePoint,
    y: &SpacePoint,
) -> Result<()> {
    check_unit("t", t)?;
    space.check_point(x)?;
    space.check_point(y)
}

/// Common structural checks: owning space and coordinate count.
pub(crate) fn check_shape(kind: SpaceKind, dim: usize, p: &SpacePoint) -> Result<()> {
    if p.space() != kind {
        return Err(GeoError::SpaceMismatch {
            expected: kind,
            found: p.space(),
        });
    }
    if p.dim() != dim {
        return Err(GeoError::DimensionMismatch {
            expected: dim,
            found: p.dim(),
        });
    }
    if p.coords().iter().any(|c| !c.is_finite()) {
        return Err(GeoError::InvalidPoint("non-finite coordinate".into()));
    }
    Ok(())
}

pub(crate) fn check_tangent_shape(kind: SpaceKind, dim: usize, v: &TangentVector) -> Result<()> {
    if v.base().space() != kind {
        return Err(GeoError::SpaceMismatch {
            expected: kind,
            found: v.base().space(),
        });
    }
    if v.components().len() != dim {
        return Err(GeoError::DimensionMismatch {
            expected: dim,
            found: v.components().len(),
        });
    }
    if v.components().iter().any(|c| !c.is_finite()) {
        return Err(GeoError::InvalidTangent("non-finite component".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tangent_arithmetic_requires_common_base() {
        let a = TangentVector::new(SpacePoint::new(SpaceKind::Euclidean, vec![0.0]), vec![1.0]);
        let b = TangentVector::new(SpacePoint::new(SpaceKind::Euclidean, vec![1.0]), vec![1.0]);
        assert_eq!(a.add_scaled(1.0, &b), Err(GeoError::MixedBase));
        let c = a.add_scaled(2.0, &a).unwrap();
        assert_eq!(c.components(), &[3.0]);
        assert_eq!(a.sub(&a).unwrap().components(), &[0.0]);
    }
}
