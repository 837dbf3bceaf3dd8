use crate::error::{check_unit, Result};
use crate::geodesic::{GeodesicSpace, SpacePoint};

/// Half-width of the band around `t = 1/2` treated as the tie.
pub const MEDIAN_TIE_TOL: f64 = 1e-12;

/// Minimizer of `(1-t) d(·, p0) + t d(·, p1)`. Unlike the squared cost it
/// does not move along the segment: it jumps from `p0` to `p1` at `t = 1/2`,
/// where the midpoint is returned.
pub fn segment_median<S: GeodesicSpace + ?Sized>(
    space: &S,
    p0: &SpacePoint,
    p1: &SpacePoint,
    t: f64,
) -> Result<SpacePoint> {
    check_unit("t", t)?;
    space.check_point(p0)?;
    space.check_point(p1)?;
    if (t - 0.5).abs() <= MEDIAN_TIE_TOL {
        space.affine(0.5, p0, p1)
    } else if t < 0.5 {
        Ok(p0.clone())
    } else {
        Ok(p1.clone())
    }
}
