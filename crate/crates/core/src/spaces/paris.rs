use std::sync::Arc;

use crate::error::Result;
use crate::geodesic::{
    check_affine_args, check_shape, Capabilities, GeodesicSpace, SpaceDescriptor, SpaceKind,
    SpacePoint,
};
use crate::spaces::EuclideanSpace;

/// Defect below which three points count as lying on one geodesic.
pub const COLLINEAR_TOL: f64 = 1e-10;

/// The Paris (French railway) metric over a base unique geodesic space:
/// pairs on a common geodesic with the hub keep their base distance, all
/// other pairs are routed through the hub.
///
/// The collinearity decision is a hard threshold on the betweenness defect,
/// so the affine map jumps between the two branches at that threshold.
#[derive(Debug, Clone)]
pub struct ParisSpace {
    base: Arc<dyn GeodesicSpace>,
    hub: SpacePoint,
    descriptor: SpaceDescriptor,
}

impl ParisSpace {
    /// `hub` is given as a point of `base`.
    pub fn new(base: Arc<dyn GeodesicSpace>, hub: SpacePoint) -> Result<Self> {
        base.check_point(&hub)?;
        let dim = base.descriptor().ambient_dim;
        let descriptor = SpaceDescriptor {
            kind: SpaceKind::Paris,
            ambient_dim: dim,
            tangent_dim: 0,
            capabilities: Capabilities {
                has_log_exp: false,
                is_unique_geodesic: true,
                satisfies_condition_1: false,
            },
            domain_constraint: format!(
                "points of the base `{}` space; hub at {:?}",
                base.kind(),
                hub.coords()
            ),
        };
        Ok(ParisSpace {
            base,
            hub,
            descriptor,
        })
    }

    /// Paris metric over the Euclidean plane with the given hub.
    pub fn planar(hub: [f64; 2]) -> Result<Self> {
        let base = EuclideanSpace::new(2)?;
        let hub = base.point(&hub)?;
        Self::new(Arc::new(base), hub)
    }

    pub fn hub(&self) -> &SpacePoint {
        &self.hub
    }

    pub fn base(&self) -> &dyn GeodesicSpace {
        self.base.as_ref()
    }

    pub fn point(&self, coords: &[f64]) -> Result<SpacePoint> {
        let p = SpacePoint::new(SpaceKind::Paris, coords.to_vec());
        self.check_point(&p)?;
        Ok(p)
    }

    fn lower(&self, p: &SpacePoint) -> SpacePoint {
        p.retag(self.base.kind())
    }

    fn lift(&self, p: SpacePoint) -> SpacePoint {
        p.retag(SpaceKind::Paris)
    }

    /// `[x, y, c] = 0`: one of the three points lies between the other two.
    pub fn collinear_with_hub(&self, x: &SpacePoint, y: &SpacePoint) -> Result<bool> {
        let (x, y, c) = (self.lower(x), self.lower(y), &self.hub);
        let dxy = self.base.distance(&x, &y)?;
        let dxc = self.base.distance(&x, c)?;
        let dyc = self.base.distance(&y, c)?;
        let defect = (dxc + dyc - dxy)
            .abs()
            .min((dxy + dyc - dxc).abs())
            .min((dxy + dxc - dyc).abs());
        Ok(defect <= COLLINEAR_TOL)
    }
}

impl GeodesicSpace for ParisSpace {
    fn descriptor(&self) -> &SpaceDescriptor {
        &self.descriptor
    }

    fn check_point(&self, p: &SpacePoint) -> Result<()> {
        check_shape(SpaceKind::Paris, self.descriptor.ambient_dim, p)?;
        self.base.check_point(&self.lower(p))
    }

    fn distance(&self, x: &SpacePoint, y: &SpacePoint) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        let (bx, by) = (self.lower(x), self.lower(y));
        if self.collinear_with_hub(x, y)? {
            self.base.distance(&bx, &by)
        } else {
            Ok(self.base.distance(&bx, &self.hub)? + self.base.distance(&by, &self.hub)?)
        }
    }

    fn affine(&self, t: f64, x: &SpacePoint, y: &SpacePoint) -> Result<SpacePoint> {
        check_affine_args(self, t, x, y)?;
        if t == 0.0 {
            return Ok(x.clone());
        }
        if t == 1.0 {
            return Ok(y.clone());
        }
        let (bx, by) = (self.lower(x), self.lower(y));
        if self.collinear_with_hub(x, y)? {
            return Ok(self.lift(self.base.affine(t, &bx, &by)?));
        }
        let l1 = self.base.distance(&bx, &self.hub)?;
        let l = l1 + self.base.distance(&by, &self.hub)?;
        let s = l * t;
        let p = if s <= l1 {
            self.base.affine((s / l1).clamp(0.0, 1.0), &bx, &self.hub)?
        } else {
            self.base
                .affine(((s - l1) / (l - l1)).clamp(0.0, 1.0), &self.hub, &by)?
        };
        Ok(self.lift(p))
    }
}
