use crate::error::{GeoError, Result};
use crate::geodesic::{
    check_affine_args, check_shape, Capabilities, GeodesicSpace, SpaceDescriptor, SpaceKind,
    SpacePoint,
};

/// The plane with the taxicab metric `|x₁-y₁| + |x₂-y₂|`.
///
/// Shortest paths are not unique here, so the affine map follows one fixed
/// representative: the polyline `x → x* → y* → y`, where `x*`, `y*` are the
/// orthogonal projections of `x`, `y` onto the line of slope `k` through the
/// midpoint, traversed at constant Euclidean speed. For `k = 0` every such
/// polyline is monotone in both coordinates and hence a taxicab geodesic.
#[derive(Debug, Clone)]
pub struct ManhattanSpace {
    k: f64,
    descriptor: SpaceDescriptor,
}

impl ManhattanSpace {
    pub fn new(k: f64) -> Result<Self> {
        if !k.is_finite() {
            return Err(GeoError::InvalidArgument(format!(
                "manhattan slope k must be finite (got {k})"
            )));
        }
        Ok(ManhattanSpace {
            k,
            descriptor: SpaceDescriptor {
                kind: SpaceKind::Manhattan,
                ambient_dim: 2,
                tangent_dim: 0,
                capabilities: Capabilities {
                    has_log_exp: false,
                    is_unique_geodesic: false,
                    satisfies_condition_1: false,
                },
                domain_constraint: format!("all of R^2 (representative geodesics with slope {k})"),
            },
        })
    }

    pub fn slope(&self) -> f64 {
        self.k
    }

    pub fn point(&self, coords: [f64; 2]) -> Result<SpacePoint> {
        let p = SpacePoint::new(SpaceKind::Manhattan, coords.to_vec());
        self.check_point(&p)?;
        Ok(p)
    }

    /// Corner points `[x, x*, y*, y]` of the representative path.
    pub fn representative_path(&self, x: &SpacePoint, y: &SpacePoint) -> Result<[[f64; 2]; 4]> {
        self.check_point(x)?;
        self.check_point(y)?;
        Ok(corners(self.k, xy(x), xy(y)))
    }
}

fn xy(p: &SpacePoint) -> [f64; 2] {
    [p.coords()[0], p.coords()[1]]
}

fn corners(k: f64, x: [f64; 2], y: [f64; 2]) -> [[f64; 2]; 4] {
    let c = [(x[0] + y[0]) / 2.0, (x[1] + y[1]) / 2.0];
    let h = (1.0 + k * k).sqrt();
    let u = [1.0 / h, k / h];
    let project = |p: [f64; 2]| {
        let s = (p[0] - c[0]) * u[0] + (p[1] - c[1]) * u[1];
        [c[0] + s * u[0], c[1] + s * u[1]]
    };
    [x, project(x), project(y), y]
}

fn seg_len(a: [f64; 2], b: [f64; 2]) -> f64 {
    (b[0] - a[0]).hypot(b[1] - a[1])
}

/// The slope-`k` representative affine map.
pub fn manhattan_affine(k: f64, t: f64, x: [f64; 2], y: [f64; 2]) -> [f64; 2] {
    if t == 0.0 || x == y {
        return x;
    }
    if t == 1.0 {
        return y;
    }
    let pts = corners(k, x, y);
    let lens = [
        seg_len(pts[0], pts[1]),
        seg_len(pts[1], pts[2]),
        seg_len(pts[2], pts[3]),
    ];
    let total: f64 = lens.iter().sum();
    if total == 0.0 {
        return x;
    }
    let target = t * total;
    let mut start = 0.0;
    // Zero-length segments are skipped, the last nonempty one absorbs round-off.
    let last = (0..3).rev().find(|&i| lens[i] > 0.0).unwrap_or(2);
    for i in 0..3 {
        if lens[i] == 0.0 {
            continue;
        }
        let end = start + lens[i];
        if target <= end || i == last {
            let f = ((target - start) / lens[i]).clamp(0.0, 1.0);
            let (a, b) = (pts[i], pts[i + 1]);
            return [(1.0 - f) * a[0] + f * b[0], (1.0 - f) * a[1] + f * b[1]];
        }
        start = end;
    }
    y
}

impl GeodesicSpace for ManhattanSpace {
    fn descriptor(&self) -> &SpaceDescriptor {
        &self.descriptor
    }

    fn check_point(&self, p: &SpacePoint) -> Result<()> {
        check_shape(SpaceKind::Manhattan, 2, p)
    }

    fn distance(&self, x: &SpacePoint, y: &SpacePoint) -> Result<f64> {
        self.check_point(x)?;
        self.check_point(y)?;
        let (a, b) = (xy(x), xy(y));
        Ok((a[0] - b[0]).abs() + (a[1] - b[1]).abs())
    }

    fn affine(&self, t: f64, x: &SpacePoint, y: &SpacePoint) -> Result<SpacePoint> {
        check_affine_args(self, t, x, y)?;
        if t == 0.0 {
            return Ok(x.clone());
        }
        if t == 1.0 {
            return Ok(y.clone());
        }
        let p = manhattan_affine(self.k, t, xy(x), xy(y));
        Ok(SpacePoint::new(SpaceKind::Manhattan, p.to_vec()))
    }
}
