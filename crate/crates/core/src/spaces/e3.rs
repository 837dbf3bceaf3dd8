//! The Euclidean motion group E₃ = SO(3) ⋉ ℝ³.
//!
//! Poses are 4×4 matrices in the block layout
//!
//! ```text
//! | 1  0 |
//! | b  R |
//! ```
//!
//! stored row-major as 16 coordinates. Tangent vectors at a pose `x` are
//! left-trivialized: the Lie-algebra element `ξ = log(x⁻¹y)`, also stored as
//! a flattened 4×4 matrix `[[0, 0], [ρ, Ω]]` with `Ω` skew-symmetric.
//!
//! The affine map is the left-translated one-parameter subgroup
//! `Φ_t(x, y) = x·exp(t·log(x⁻¹y))`, and distances are measured in twist
//! coordinates, `d(x, y) = ‖log(x⁻¹y)‖ = √(θ² + |ρ|²)`, so that the map
//! moves at constant speed.

use std::f64::consts::FRAC_PI_2;

use nalgebra::{Matrix3, Matrix4, Vector3};
use serde::{Deserialize, Serialize};

use super::so3;
use crate::error::{GeoError, Result};
use crate::geodesic::{
    check_affine_args, check_shape, check_tangent_shape, Capabilities, GeodesicSpace,
    SpaceDescriptor, SpaceKind, SpacePoint, TangentVector,
};

const ROTATION_TOL: f64 = 1e-10;
const TANGENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PoseE3 {
    pub rotation: Matrix3<f64>,
    pub translation: Vector3<f64>,
}

/// A Lie-algebra element: rotation vector `ω` and translational part `ρ`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Twist {
    pub omega: Vector3<f64>,
    pub rho: Vector3<f64>,
}

/// Config/wire form of a pose.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PoseRecord {
    /// Row-major 3×3 rotation.
    pub rotation: [f64; 9],
    pub translation: [f64; 3],
}

impl PoseE3 {
    pub fn identity() -> Self {
        PoseE3 {
            rotation: Matrix3::identity(),
            translation: Vector3::zeros(),
        }
    }

    pub fn new(rotation: Matrix3<f64>, translation: Vector3<f64>) -> Result<Self> {
        if !so3::is_rotation(&rotation, ROTATION_TOL) {
            return Err(GeoError::InvalidPoint(
                "rotation block is not in SO(3) within 1e-10".into(),
            ));
        }
        if translation.iter().any(|c| !c.is_finite()) {
            return Err(GeoError::InvalidPoint("non-finite translation".into()));
        }
        Ok(PoseE3 {
            rotation,
            translation,
        })
    }

    pub fn from_record(r: &PoseRecord) -> Result<Self> {
        Self::new(
            Matrix3::from_row_slice(&r.rotation),
            Vector3::from(r.translation),
        )
    }

    pub fn to_record(&self) -> PoseRecord {
        let mut rotation = [0.0; 9];
        for i in 0..3 {
            for j in 0..3 {
                rotation[3 * i + j] = self.rotation[(i, j)];
            }
        }
        PoseRecord {
            rotation,
            translation: self.translation.into(),
        }
    }

    pub fn matrix(&self) -> Matrix4<f64> {
        let mut m = Matrix4::zeros();
        m[(0, 0)] = 1.0;
        for i in 0..3 {
            m[(i + 1, 0)] = self.translation[i];
            for j in 0..3 {
                m[(i + 1, j + 1)] = self.rotation[(i, j)];
            }
        }
        m
    }

    pub fn from_point(p: &SpacePoint) -> Result<Self> {
        check_shape(SpaceKind::E3, 16, p)?;
        let c = p.coords();
        if c[0..4] != [1.0, 0.0, 0.0, 0.0] {
            return Err(GeoError::InvalidPoint(
                "first row of an E3 pose must be exactly (1, 0, 0, 0)".into(),
            ));
        }
        let rotation = Matrix3::new(c[5], c[6], c[7], c[9], c[10], c[11], c[13], c[14], c[15]);
        let translation = Vector3::new(c[4], c[8], c[12]);
        Self::new(rotation, translation)
    }

    pub fn to_point(&self) -> SpacePoint {
        let m = self.matrix();
        let mut coords = Vec::with_capacity(16);
        for i in 0..4 {
            for j in 0..4 {
                coords.push(m[(i, j)]);
            }
        }
        SpacePoint::new(SpaceKind::E3, coords)
    }

    pub fn compose(&self, other: &PoseE3) -> PoseE3 {
        PoseE3 {
            rotation: self.rotation * other.rotation,
            translation: self.translation + self.rotation * other.translation,
        }
    }

    pub fn inverse(&self) -> PoseE3 {
        let rt = self.rotation.transpose();
        PoseE3 {
            rotation: rt,
            translation: -(rt * self.translation),
        }
    }

    /// Group exponential of a twist.
    pub fn exp(xi: &Twist) -> PoseE3 {
        PoseE3 {
            rotation: so3::exp(&xi.omega),
            translation: so3::left_jacobian(&xi.omega) * xi.rho,
        }
    }

    /// Principal group logarithm.
    pub fn log(&self) -> Result<Twist> {
        let omega = so3::log(&self.rotation)?;
        Ok(Twist {
            omega,
            rho: so3::left_jacobian_inv(&omega) * self.translation,
        })
    }
}

impl Twist {
    pub fn zero() -> Self {
        Twist {
            omega: Vector3::zeros(),
            rho: Vector3::zeros(),
        }
    }

    pub fn scaled(&self, s: f64) -> Twist {
        Twist {
            omega: self.omega * s,
            rho: self.rho * s,
        }
    }

    pub fn norm(&self) -> f64 {
        (self.omega.norm_squared() + self.rho.norm_squared()).sqrt()
    }

    /// Flattened 4×4 Lie-algebra matrix.
    pub fn to_components(&self) -> Vec<f64> {
        let k = so3::hat(&self.omega);
        let mut out = vec![0.0; 16];
        for i in 0..3 {
            out[4 * (i + 1)] = self.rho[i];
            for j in 0..3 {
                out[4 * (i + 1) + j + 1] = k[(i, j)];
            }
        }
        out
    }

    pub fn from_components(c: &[f64]) -> Result<Twist> {
        if c.len() != 16 {
            return Err(GeoError::DimensionMismatch {
                expected: 16,
                found: c.len(),
            });
        }
        if c[0..4].iter().any(|v| v.abs() > TANGENT_TOL) {
            return Err(GeoError::InvalidTangent(
                "first row of an E3 tangent must vanish".into(),
            ));
        }
        let k = Matrix3::new(c[5], c[6], c[7], c[9], c[10], c[11], c[13], c[14], c[15]);
        if (k + k.transpose()).abs().max() > TANGENT_TOL {
            return Err(GeoError::InvalidTangent(
                "rotation block of an E3 tangent must be skew-symmetric".into(),
            ));
        }
        Ok(Twist {
            omega: so3::vee(&k),
            rho: Vector3::new(c[4], c[8], c[12]),
        })
    }
}

/// `log(x⁻¹y)` attached at `x`.
pub fn e3_log(x: &PoseE3, y: &PoseE3) -> Result<TangentVector> {
    let xi = x.inverse().compose(y).log()?;
    Ok(TangentVector::new(x.to_point(), xi.to_components()))
}

/// `x·exp(ξ)` for `v = (x, ξ)`.
pub fn e3_exp(v: &TangentVector) -> Result<PoseE3> {
    let base = PoseE3::from_point(v.base())?;
    let xi = Twist::from_components(v.components())?;
    Ok(base.compose(&PoseE3::exp(&xi)))
}

pub fn e3_distance(x: &PoseE3, y: &PoseE3) -> Result<f64> {
    Ok(x.inverse().compose(y).log()?.norm())
}

/// `x·exp(t·log(x⁻¹y))` for any real `t`.
pub fn e3_geodesic(t: f64, x: &PoseE3, y: &PoseE3) -> Result<PoseE3> {
    let xi = x.inverse().compose(y).log()?;
    Ok(x.compose(&PoseE3::exp(&xi.scaled(t))))
}

#[derive(Debug, Clone)]
pub struct E3Space {
    descriptor: SpaceDescriptor,
}

impl Default for E3Space {
    fn default() -> Self {
        Self::new()
    }
}

impl E3Space {
    pub fn new() -> Self {
        E3Space {
            descriptor: SpaceDescriptor {
                kind: SpaceKind::E3,
                ambient_dim: 16,
                tangent_dim: 16,
                capabilities: Capabilities {
                    has_log_exp: true,
                    is_unique_geodesic: true,
                    satisfies_condition_1: false,
                },
                domain_constraint:
                    "relative rotation angles below pi; weighted means need pairwise \
                                    rotation angles below pi/2"
                        .into(),
            },
        }
    }
}

impl GeodesicSpace for E3Space {
    fn descriptor(&self) -> &SpaceDescriptor {
        &self.descriptor
    }

    fn check_point(&self, p: &SpacePoint) -> Result<()> {
        PoseE3::from_point(p).map(|_| ())
    }

    fn distance(&self, x: &SpacePoint, y: &SpacePoint) -> Result<f64> {
        e3_distance(&PoseE3::from_point(x)?, &PoseE3::from_point(y)?)
    }

    fn affine(&self, t: f64, x: &SpacePoint, y: &SpacePoint) -> Result<SpacePoint> {
        check_affine_args(self, t, x, y)?;
        self.geodesic_point(t, x, y)
    }

    fn geodesic_point(&self, t: f64, x: &SpacePoint, y: &SpacePoint) -> Result<SpacePoint> {
        let (a, b) = (PoseE3::from_point(x)?, PoseE3::from_point(y)?);
        if !t.is_finite() {
            return Err(GeoError::ParameterOutOfRange {
                name: "t",
                value: t,
                range: "the real line",
            });
        }
        let p = e3_geodesic(t, &a, &b)?;
        Ok(if t == 0.0 {
            x.clone()
        } else if t == 1.0 {
            y.clone()
        } else {
            p.to_point()
        })
    }

    fn log(&self, x: &SpacePoint, y: &SpacePoint) -> Result<TangentVector> {
        let v = e3_log(&PoseE3::from_point(x)?, &PoseE3::from_point(y)?)?;
        Ok(TangentVector::new(x.clone(), v.components().to_vec()))
    }

    fn exp(&self, v: &TangentVector) -> Result<SpacePoint> {
        self.check_tangent(v)?;
        Ok(e3_exp(v)?.to_point())
    }

    fn tangent_norm(&self, v: &TangentVector) -> Result<f64> {
        self.check_tangent(v)?;
        Ok(Twist::from_components(v.components())?.norm())
    }

    fn check_tangent(&self, v: &TangentVector) -> Result<()> {
        self.check_point(v.base())?;
        check_tangent_shape(SpaceKind::E3, 16, v)?;
        Twist::from_components(v.components()).map(|_| ())
    }

    fn check_karcher_domain(&self, points: &[SpacePoint]) -> Result<()> {
        let poses: Vec<PoseE3> = points
            .iter()
            .map(PoseE3::from_point)
            .collect::<Result<_>>()?;
        for (i, a) in poses.iter().enumerate() {
            for b in &poses[i + 1..] {
                let angle = so3::angle(&(a.rotation.transpose() * b.rotation));
                if angle >= FRAC_PI_2 {
                    return Err(GeoError::DomainViolation(format!(
                        "E3 poses differ by a rotation of {angle} >= pi/2"
                    )));
                }
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{FRAC_PI_3, FRAC_PI_4};

    fn rot_z(a: f64) -> Matrix3<f64> {
        so3::exp(&Vector3::new(0.0, 0.0, a))
    }

    #[test]
    fn identity_log_is_zero() {
        let x = PoseE3::new(rot_z(0.4), Vector3::new(1.0, -2.0, 0.5)).unwrap();
        let v = e3_log(&x, &x).unwrap();
        assert!(v.components().iter().all(|c| c.abs() < 1e-15));
    }

    #[test]
    fn half_of_a_quarter_turn() {
        let e = E3Space::new();
        let x = PoseE3::identity().to_point();
        let y = PoseE3::new(rot_z(FRAC_PI_2), Vector3::zeros())
            .unwrap()
            .to_point();
        let m = PoseE3::from_point(&e.affine(0.5, &x, &y).unwrap()).unwrap();
        assert!((m.rotation - rot_z(FRAC_PI_4)).abs().max() < 1e-12);
        assert!(m.translation.norm() < 1e-15);
    }

    #[test]
    fn pure_translation_is_linear() {
        let e = E3Space::new();
        let x = PoseE3::identity().to_point();
        let y = PoseE3::new(Matrix3::identity(), Vector3::new(1.0, 2.0, 3.0))
            .unwrap()
            .to_point();
        for t in [0.2, 0.5, 0.9] {
            let p = PoseE3::from_point(&e.affine(t, &x, &y).unwrap()).unwrap();
            assert!((p.translation - Vector3::new(t, 2.0 * t, 3.0 * t)).norm() < 1e-15);
        }
    }

    #[test]
    fn distances() {
        let id = PoseE3::identity();
        let r = PoseE3::new(rot_z(FRAC_PI_3), Vector3::zeros()).unwrap();
        let tr = PoseE3::new(Matrix3::identity(), Vector3::new(3.0, 4.0, 0.0)).unwrap();
        assert_eq!(e3_distance(&id, &id).unwrap(), 0.0);
        assert!((e3_distance(&id, &r).unwrap() - FRAC_PI_3).abs() < 1e-14);
        assert!((e3_distance(&id, &tr).unwrap() - 5.0).abs() < 1e-14);
        assert!((e3_distance(&r, &tr).unwrap() - e3_distance(&tr, &r).unwrap()).abs() < 1e-13);
    }

    #[test]
    fn structural_entries_are_exact() {
        let mut c = PoseE3::identity().to_point().into_coords();
        c[1] = 1e-14;
        assert!(E3Space::new()
            .check_point(&SpacePoint::new(SpaceKind::E3, c))
            .is_err());
    }

    #[test]
    fn near_half_turn_rejected() {
        let x = PoseE3::identity();
        let y = PoseE3::new(rot_z(std::f64::consts::PI), Vector3::zeros()).unwrap();
        assert!(matches!(e3_log(&x, &y), Err(GeoError::DomainViolation(_))));
    }

    #[test]
    fn record_round_trip() {
        let p = PoseE3::new(rot_z(0.3), Vector3::new(1.0, 0.0, -1.0)).unwrap();
        assert_eq!(PoseE3::from_record(&p.to_record()).unwrap(), p);
    }
}
