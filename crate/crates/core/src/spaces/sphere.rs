use std::f64::consts::FRAC_PI_4;

use nalgebra::Vector3;

use crate::error::{GeoError, Result};
use crate::geodesic::{
    check_affine_args, check_shape, check_tangent_shape, Capabilities, GeodesicSpace,
    SpaceDescriptor, SpaceKind, SpacePoint, TangentVector,
};

const UNIT_TOL: f64 = 1e-12;
const ANTIPODAL_GUARD: f64 = 1e-9;
const TANGENT_TOL: f64 = 1e-10;

/// The unit sphere `S² ⊂ ℝ³` with the great-circle metric.
#[derive(Debug, Clone)]
pub struct SphereSpace {
    descriptor: SpaceDescriptor,
}

impl Default for SphereSpace {
    fn default() -> Self {
        Self::new()
    }
}

impl SphereSpace {
    pub fn new() -> Self {
        SphereSpace {
            descriptor: SpaceDescriptor {
                kind: SpaceKind::Sphere,
                ambient_dim: 3,
                tangent_dim: 3,
                capabilities: Capabilities {
                    has_log_exp: true,
                    is_unique_geodesic: true,
                    satisfies_condition_1: false,
                },
                domain_constraint: "non-antipodal pairs (open hemisphere); weighted means need \
                                    all points inside an open ball of radius < pi/4"
                    .into(),
            },
        }
    }

    pub fn point(&self, coords: [f64; 3]) -> Result<SpacePoint> {
        let p = SpacePoint::new(SpaceKind::Sphere, coords.to_vec());
        self.check_point(&p)?;
        Ok(p)
    }

    /// Normalizes `coords` onto the sphere.
    pub fn project(&self, coords: [f64; 3]) -> Result<SpacePoint> {
        let v = Vector3::from(coords);
        let n = v.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(GeoError::InvalidPoint(
                "cannot normalize a zero vector".into(),
            ));
        }
        Ok(to_point(v / n))
    }

    fn check_pair(&self, x: &Vector3<f64>, y: &Vector3<f64>) -> Result<()> {
        if x.dot(y) <= -1.0 + ANTIPODAL_GUARD {
            return Err(GeoError::DomainViolation(
                "sphere points are (nearly) antipodal".into(),
            ));
        }
        Ok(())
    }

    /// Radius of a small ball containing all points, found by a
    /// Badoiu–Clarkson style iteration started at the normalized mean.
    pub fn enclosing_radius(&self, points: &[SpacePoint]) -> Result<f64> {
        let vs: Vec<Vector3<f64>> = points
            .iter()
            .map(|p| {
                self.check_point(p)?;
                Ok(vec3(p))
            })
            .collect::<Result<_>>()?;
        if vs.is_empty() {
            return Ok(0.0);
        }
        let radius_at = |c: &Vector3<f64>| vs.iter().map(|v| angle(c, v)).fold(0.0_f64, f64::max);
        let sum: Vector3<f64> = vs.iter().sum();
        let mut center = if sum.norm() > 1e-12 {
            sum.normalize()
        } else {
            vs[0]
        };
        let mut best = radius_at(&center);
        for k in 1..=200 {
            let far = vs
                .iter()
                .max_by(|a, b| angle(&center, a).total_cmp(&angle(&center, b)))
                .copied()
                .unwrap_or(center);
            if center.dot(&far) <= -1.0 + ANTIPODAL_GUARD {
                break;
            }
            center = slerp(1.0 / (k as f64 + 1.0), &center, &far);
            best = best.min(radius_at(&center));
        }
        Ok(best)
    }
}

pub(crate) fn vec3(p: &SpacePoint) -> Vector3<f64> {
    let c = p.coords();
    Vector3::new(c[0], c[1], c[2])
}

pub(crate) fn to_point(v: Vector3<f64>) -> SpacePoint {
    SpacePoint::new(SpaceKind::Sphere, vec![v.x, v.y, v.z])
}

/// Angle between unit vectors.
pub(crate) fn angle(x: &Vector3<f64>, y: &Vector3<f64>) -> f64 {
    x.cross(y).norm().atan2(x.dot(y))
}

/// Great-circle interpolation; also valid for `t` outside `[0, 1]`.
pub(crate) fn slerp(t: f64, x: &Vector3<f64>, y: &Vector3<f64>) -> Vector3<f64> {
    let phi = angle(x, y);
    if phi == 0.0 {
        return *x;
    }
    let s = phi.sin();
    let v = x * (((1.0 - t) * phi).sin() / s) + y * ((t * phi).sin() / s);
    v / v.norm()
}

impl GeodesicSpace for SphereSpace {
    fn descriptor(&self) -> &SpaceDescriptor {
        &self.descriptor
    }

    fn check_point(&self, p: &SpacePoint) -> Result<()> {
        check_shape(SpaceKind::Sphere, 3, p)?;
        let n = vec3(p).norm();
        if (n - 1.0).abs() > UNIT_TOL {
            return Err(GeoError::InvalidPoint(format!(
                "sphere point must have unit norm (got {n})"
            )));
        }
        Ok(())
    }

    fn distance(&self, x: &SpacePoint, y: &SpacePoint) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(angle(&vec3(x), &vec3(y)))
    }

    fn affine(&self, t: f64, x: &SpacePoint, y: &SpacePoint) -> Result<SpacePoint> {
        check_affine_args(self, t, x, y)?;
        self.geodesic_point(t, x, y)
    }

    fn geodesic_point(&self, t: f64, x: &SpacePoint, y: &SpacePoint) -> Result<SpacePoint> {
        self.check_point(x)?;
        self.check_point(y)?;
        if !t.is_finite() {
            return Err(GeoError::ParameterOutOfRange {
                name: "t",
                value: t,
                range: "the real line",
            });
        }
        let (a, b) = (vec3(x), vec3(y));
        self.check_pair(&a, &b)?;
        Ok(if t == 0.0 {
            x.clone()
        } else if t == 1.0 {
            y.clone()
        } else {
            to_point(slerp(t, &a, &b))
        })
    }

    fn log(&self, x: &SpacePoint, y: &SpacePoint) -> Result<TangentVector> {
        self.check_point(x)?;
        self.check_point(y)?;
        let (a, b) = (vec3(x), vec3(y));
        self.check_pair(&a, &b)?;
        let w = b - a * a.dot(&b);
        let wn = w.norm();
        let v = if wn == 0.0 {
            Vector3::zeros()
        } else {
            w * (angle(&a, &b) / wn)
        };
        Ok(TangentVector::new(x.clone(), vec![v.x, v.y, v.z]))
    }

    fn exp(&self, v: &TangentVector) -> Result<SpacePoint> {
        self.check_tangent(v)?;
        let c = v.components();
        let d = Vector3::new(c[0], c[1], c[2]);
        let theta = d.norm();
        if theta >= std::f64::consts::PI {
            return Err(GeoError::DomainViolation(format!(
                "tangent norm {theta} reaches the injectivity radius pi"
            )));
        }
        if theta == 0.0 {
            return Ok(v.base().clone());
        }
        let p = vec3(v.base()) * theta.cos() + d * (theta.sin() / theta);
        Ok(to_point(p / p.norm()))
    }

    fn tangent_norm(&self, v: &TangentVector) -> Result<f64> {
        self.check_tangent(v)?;
        Ok(v.components().iter().map(|c| c * c).sum::<f64>().sqrt())
    }

    fn check_tangent(&self, v: &TangentVector) -> Result<()> {
        self.check_point(v.base())?;
        check_tangent_shape(SpaceKind::Sphere, 3, v)?;
        let c = v.components();
        let dot = vec3(v.base()).dot(&Vector3::new(c[0], c[1], c[2]));
        if dot.abs() > TANGENT_TOL {
            return Err(GeoError::InvalidTangent(format!(
                "vector is not orthogonal to its base point (inner product {dot:e})"
            )));
        }
        Ok(())
    }

    fn check_karcher_domain(&self, points: &[SpacePoint]) -> Result<()> {
        let r = self.enclosing_radius(points)?;
        if r < FRAC_PI_4 {
            Ok(())
        } else {
            Err(GeoError::DomainViolation(format!(
                "sphere points do not fit in an open ball of radius pi/4 (found radius {r})"
            )))
        }
    }
}
