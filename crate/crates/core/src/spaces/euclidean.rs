use crate::error::{GeoError, Result};
use crate::geodesic::{
    check_affine_args, check_shape, check_tangent_shape, Capabilities, GeodesicSpace,
    SpaceDescriptor, SpaceKind, SpacePoint, TangentVector,
};

/// Euclidean `ℝⁿ`, the flat model space.
#[derive(Debug, Clone)]
pub struct EuclideanSpace {
    descriptor: SpaceDescriptor,
}

impl EuclideanSpace {
    pub fn new(dim: usize) -> Result<Self> {
        if dim < 1 {
            return Err(GeoError::InvalidArgument(
                "euclidean dimension must be at least 1".into(),
            ));
        }
        Ok(EuclideanSpace {
            descriptor: SpaceDescriptor {
                kind: SpaceKind::Euclidean,
                ambient_dim: dim,
                tangent_dim: dim,
                capabilities: Capabilities {
                    has_log_exp: true,
                    is_unique_geodesic: true,
                    satisfies_condition_1: true,
                },
                domain_constraint: format!("all of R^{dim}"),
            },
        })
    }

    pub fn dim(&self) -> usize {
        self.descriptor.ambient_dim
    }

    pub fn point(&self, coords: &[f64]) -> Result<SpacePoint> {
        let p = SpacePoint::new(SpaceKind::Euclidean, coords.to_vec());
        self.check_point(&p)?;
        Ok(p)
    }
}

/// Descriptor-returning constructor for `ℝ^dim`.
pub fn euclidean_space(dim: usize) -> Result<EuclideanSpace> {
    EuclideanSpace::new(dim)
}

pub(crate) fn lerp(t: f64, x: &[f64], y: &[f64]) -> Vec<f64> {
    x.iter()
        .zip(y)
        .map(|(a, b)| (1.0 - t) * a + t * b)
        .collect()
}

pub(crate) fn norm(v: &[f64]) -> f64 {
    v.iter().map(|c| c * c).sum::<f64>().sqrt()
}

impl GeodesicSpace for EuclideanSpace {
    fn descriptor(&self) -> &SpaceDescriptor {
        &self.descriptor
    }

    fn check_point(&self, p: &SpacePoint) -> Result<()> {
        check_shape(SpaceKind::Euclidean, self.dim(), p)
    }

    fn distance(&self, x: &SpacePoint, y: &SpacePoint) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(x.coords()
            .iter()
            .zip(y.coords())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            .sqrt())
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
        Ok(if t == 0.0 {
            x.clone()
        } else if t == 1.0 {
            y.clone()
        } else {
            SpacePoint::new(SpaceKind::Euclidean, lerp(t, x.coords(), y.coords()))
        })
    }

    fn log(&self, x: &SpacePoint, y: &SpacePoint) -> Result<TangentVector> {
        self.check_point(x)?;
        self.check_point(y)?;
        let v = y
            .coords()
            .iter()
            .zip(x.coords())
            .map(|(b, a)| b - a)
            .collect();
        Ok(TangentVector::new(x.clone(), v))
    }

    fn exp(&self, v: &TangentVector) -> Result<SpacePoint> {
        self.check_tangent(v)?;
        let p = v
            .base()
            .coords()
            .iter()
            .zip(v.components())
            .map(|(a, d)| a + d)
            .collect();
        Ok(SpacePoint::new(SpaceKind::Euclidean, p))
    }

    fn tangent_norm(&self, v: &TangentVector) -> Result<f64> {
        self.check_tangent(v)?;
        Ok(norm(v.components()))
    }

    fn check_tangent(&self, v: &TangentVector) -> Result<()> {
        self.check_point(v.base())?;
        check_tangent_shape(SpaceKind::Euclidean, self.dim(), v)
    }
}
