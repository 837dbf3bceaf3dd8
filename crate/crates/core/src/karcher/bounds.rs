//! Lower bounds on the centroid cost and the stagewise energies of the
//! de Casteljau trace.

use serde::{Deserialize, Serialize};

use super::{karcher_mean, weighted_cost, KarcherSolution, WeightedMeanProblem};
use crate::bernstein::{bernstein_all, binomial_row};
use crate::bezier::{de_casteljau_trace, ControlPolygon};
use crate::error::{check_unit, GeoError, Result};
use crate::geodesic::{GeodesicSpace, SpacePoint};

/// Betweenness slack below which three points count as lying on one geodesic.
pub const COLLINEAR_TOL: f64 = 1e-9;

/// `E^n(x) ≥ bound1 ≥ bound2`, where
/// `bound1 = (t(1-t))^n (Σ C(n,i) d(x, p_i))²` and
/// `bound2 = (t(1-t))^n (Σ C(n-1,i) d(p_i, p_{i+1}))²`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LowerBounds {
    pub energy: f64,
    pub bound1: f64,
    pub bound2: f64,
}

pub fn casteljau_lower_bounds<S: GeodesicSpace + ?Sized>(
    space: &S,
    points: &[SpacePoint],
    t: f64,
    x: &SpacePoint,
) -> Result<LowerBounds> {
    check_unit("t", t)?;
    if points.len() < 2 {
        return Err(GeoError::InvalidControlPolygon(
            "need at least 2 control points".into(),
        ));
    }
    let n = points.len() - 1;
    let weights = bernstein_all(n, t)?;
    let energy = weighted_cost(space, points, &weights, x)?;
    let scale = (t * (1.0 - t)).powi(n as i32);

    let c = binomial_row(n);
    let mut s1 = 0.0;
    for (ci, p) in c.iter().zip(points) {
        s1 += ci * space.distance(x, p)?;
    }
    let c = binomial_row(n - 1);
    let mut s2 = 0.0;
    for (ci, w) in c.iter().zip(points.windows(2)) {
        s2 += ci * space.distance(&w[0], &w[1])?;
    }
    Ok(LowerBounds {
        energy,
        bound1: scale * s1 * s1,
        bound2: scale * s2 * s2,
    })
}

/// False when all points lie on one geodesic, judged by the betweenness
/// slack of every triple.
pub fn in_general_position<S: GeodesicSpace + ?Sized>(
    space: &S,
    points: &[SpacePoint],
) -> Result<bool> {
    let n = points.len();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (a, b, c) = (&points[i], &points[j], &points[k]);
                let ab = space.distance(a, b)?;
                let bc = space.distance(b, c)?;
                let ac = space.distance(a, c)?;
                let slack = (ab + bc - ac).min(ab + ac - bc).min(ac + bc - ab);
                if slack > COLLINEAR_TOL {
                    return Ok(true);
                }
            }
        }
    }
    Ok(false)
}

/// Minimizers of `E^r = Σ_i B_i^r(t) d²(·, p_i^{n-r}(t))` for `r = 1, …, n`,
/// where the `p_i^{n-r}(t)` are entries of the de Casteljau trace.
pub fn stagewise_minimizers<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    t: f64,
) -> Result<Vec<KarcherSolution>> {
    let trace = de_casteljau_trace(space, poly, t)?;
    let n = poly.degree();
    let start = trace.point().clone();
    (1..=n)
        .map(|r| {
            let row = trace.rows[n - r].clone();
            let problem = WeightedMeanProblem::new(row, bernstein_all(r, t)?)?;
            karcher_mean(space, &problem, Some(&start))
        })
        .collect()
}

/// The minimal values `E^r(q^r)`, `r = 1, …, n`; nondecreasing in `r`.
pub fn stagewise_energies<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    t: f64,
) -> Result<Vec<f64>> {
    Ok(stagewise_minimizers(space, poly, t)?
        .into_iter()
        .map(|s| s.cost)
        .collect())
}
