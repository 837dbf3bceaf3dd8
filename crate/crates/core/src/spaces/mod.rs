//! Concrete geodesic spaces with closed-form affine maps.

mod e3;
mod euclidean;
mod manhattan;
mod paris;
pub mod so3;
mod spd2;
mod sphere;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use e3::{e3_distance, e3_exp, e3_geodesic, e3_log, E3Space, PoseE3, PoseRecord, Twist};
pub use euclidean::{euclidean_space, EuclideanSpace};
pub use manhattan::{manhattan_affine, ManhattanSpace};
pub use paris::{ParisSpace, COLLINEAR_TOL};
pub use spd2::{spd2_affine, spd2_distance, spd2_geodesic, Spd2Point, Spd2Space};
pub use sphere::SphereSpace;


use crate::error::Result;
use crate::geodesic::GeodesicSpace;

/// Serializable description of one of the built-in spaces.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SpaceSpec {
    Euclidean {
        dim: usize,
    },
    Sphere,
    Manhattan {
        #[serde(default)]
        k: f64,
    },
    /// Paris metric over the Euclidean space of the hub's dimension.
    Paris {
        hub: Vec<f64>,
    },
    Spd2,
    E3,
}

impl SpaceSpec {
    pub fn build(&self) -> Result<Arc<dyn GeodesicSpace>> {
        Ok(match self {
            SpaceSpec::Euclidean { dim } => Arc::new(EuclideanSpace::new(*dim)?),
            SpaceSpec::Sphere => Arc::new(SphereSpace::new()),
            SpaceSpec::Manhattan { k } => Arc::new(ManhattanSpace::new(*k)?),
            SpaceSpec::Paris { hub } => {
                let base = EuclideanSpace::new(hub.len())?;
                let hub = base.point(hub)?;
                Arc::new(ParisSpace::new(Arc::new(base), hub)?)
            }
            SpaceSpec::Spd2 => Arc::new(Spd2Space::new()),
            SpaceSpec::E3 => Arc::new(E3Space::new()),
        })
    }
}
