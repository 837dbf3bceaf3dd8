//! Bézier curves in geodesic spaces via the generalized de Casteljau scheme.
//!
//! Each level of the triangular scheme replaces neighbouring points by
//! `Φ_t(p_i, p_{i+1})`. The rational variant blends the weights level by
//! level and moves along each geodesic by the weight-adjusted parameter
//! `t · w_{i+1}^{r-1} / w_i^r`.

use serde::{Deserialize, Serialize};

use crate::error::{check_unit, GeoError, Result};
use crate::geodesic::{GeodesicSpace, SpacePoint};

/// Ordered control points of one space, optionally weighted.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlPolygon {
    points: Vec<SpacePoint>,
    weights: Option<Vec<f64>>,
}

impl ControlPolygon {
    pub fn new(points: Vec<SpacePoint>) -> Result<Self> {
        if points.len() < 2 {
            return Err(GeoError::InvalidControlPolygon(format!(
                "need at least 2 control points, got {}",
                points.len()
            )));
        }
        let (kind, dim) = (points[0].space(), points[0].dim());
        if let Some((i, p)) = points
            .iter()
            .enumerate()
            .find(|(_, p)| p.space() != kind || p.dim() != dim)
        {
            return Err(GeoError::InvalidControlPolygon(format!(
                "control point {i} ({} with {} coordinates) does not match point 0 ({kind} with {dim})",
                p.space(),
                p.dim()
            )));
        }
        Ok(ControlPolygon {
            points,
            weights: None,
        })
    }

    pub fn with_weights(points: Vec<SpacePoint>, weights: Vec<f64>) -> Result<Self> {
        let mut poly = Self::new(points)?;
        if weights.len() != poly.points.len() {
            return Err(GeoError::InvalidWeights(format!(
                "{} weights for {} control points",
                weights.len(),
                poly.points.len()
            )));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(**w > 0.0 && w.is_finite()))
        {
            return Err(GeoError::InvalidWeights(format!(
                "weight {i} must be strictly positive (got {w})"
            )));
        }
        poly.weights = Some(weights);
        Ok(poly)
    }

    pub fn points(&self) -> &[SpacePoint] {
        &self.points
    }

    pub fn weights(&self) -> Option<&[f64]> {
        self.weights.as_deref()
    }

    pub fn degree(&self) -> usize {
        self.points.len() - 1
    }

    /// The same polygon traversed backwards.
    pub fn reversed(&self) -> ControlPolygon {
        ControlPolygon {
            points: self.points.iter().rev().cloned().collect(),
            weights: self
                .weights
                .as_ref()
                .map(|w| w.iter().rev().copied().collect()),
        }
    }

    pub fn check_in<S: GeodesicSpace + ?Sized>(&self, space: &S) -> Result<()> {
        self.points.iter().try_for_each(|p| space.check_point(p))
    }

    fn require_unweighted(&self) -> Result<()> {
        if self.weights.is_some() {
            return Err(GeoError::InvalidControlPolygon(
                "weighted polygon passed to an unweighted algorithm".into(),
            ));
        }
        Ok(())
    }
}

/// The full triangular array of one de Casteljau evaluation.
///
/// `rows[r][i]` is `p_i^r(t)`; for rational evaluation `weights[r][i]` is
/// `w_i^r(t)` and `params[r][i]` the parameter `t_i^r` used to form
/// `p_i^r` (row 0 of `params` is empty).
#[derive(Debug, Clone, PartialEq)]
pub struct DeCasteljauTrace {
    pub rows: Vec<Vec<SpacePoint>>,
    pub weights: Option<Vec<Vec<f64>>>,
    pub params: Option<Vec<Vec<f64>>>,
}

impl DeCasteljauTrace {
    pub fn point(&self) -> &SpacePoint {
        &self.rows[self.rows.len() - 1][0]
    }
}

pub fn de_casteljau<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    t: f64,
) -> Result<SpacePoint> {
    poly.require_unweighted()?;
    check_unit("t", t)?;
    poly.check_in(space)?;
    let mut row = poly.points.clone();
    for r in 1..=poly.degree() {
        for i in 0..=poly.degree() - r {
            row[i] = space.affine(t, &row[i], &row[i + 1])?;
        }
    }
    Ok(row.swap_remove(0))
}

pub fn de_casteljau_trace<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    t: f64,
) -> Result<DeCasteljauTrace> {
    poly.require_unweighted()?;
    check_unit("t", t)?;
    poly.check_in(space)?;
    let mut rows = vec![poly.points.clone()];
    for r in 1..=poly.degree() {
        let prev = &rows[r - 1];
        let next = prev
            .windows(2)
            .map(|w| space.affine(t, &w[0], &w[1]))
            .collect::<Result<Vec<_>>>()?;
        rows.push(next);
    }
    Ok(DeCasteljauTrace {
        rows,
        weights: None,
        params: None,
    })
}

pub fn rational_de_casteljau<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    t: f64,
) -> Result<SpacePoint> {
    rational_de_casteljau_trace(space, poly, t).map(|tr| tr.point().clone())
}

pub fn rational_de_casteljau_trace<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    t: f64,
) -> Result<DeCasteljauTrace> {
    let w0 = poly.weights().ok_or_else(|| {
        GeoError::InvalidWeights("rational evaluation needs control weights".into())
    })?;
    check_unit("t", t)?;
    poly.check_in(space)?;
    let mut rows = vec![poly.points.clone()];
    let mut weights = vec![w0.to_vec()];
    let mut params: Vec<Vec<f64>> = vec![Vec::new()];
    for r in 1..=poly.degree() {
        let (pp, pw) = (&rows[r - 1], &weights[r - 1]);
        let mut prow = Vec::with_capacity(pp.len() - 1);
        let mut wrow = Vec::with_capacity(pp.len() - 1);
        let mut trow = Vec::with_capacity(pp.len() - 1);
        for i in 0..pp.len() - 1 {
            let w = (1.0 - t) * pw[i] + t * pw[i + 1];
            let ti = if t == 0.0 {
                0.0
            } else if t == 1.0 {
                1.0
            } else {
                (t * pw[i + 1] / w).min(1.0)
            };
            prow.push(space.affine(ti, &pp[i], &pp[i + 1])?);
            wrow.push(w);
            trow.push(ti);
        }
        rows.push(prow);
        weights.push(wrow);
        params.push(trow);
    }
    Ok(DeCasteljauTrace {
        rows,
        weights: Some(weights),
        params: Some(params),
    })
}

/// Evaluates a polygon with the plain or rational scheme as appropriate.
pub fn evaluate<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    t: f64,
) -> Result<SpacePoint> {
    if poly.weights.is_some() {
        rational_de_casteljau(space, poly, t)
    } else {
        de_casteljau(space, poly, t)
    }
}

/// Splits at `s`: the left polygon collects the first entry of every trace
/// row, the right polygon the last entry (`y_i = p_i^{n-i}(s)`).
///
/// Both pieces reproduce the original curve exactly when the space satisfies
/// the subdivision compatibility identity (see [`condition1_defect`]).
pub fn split<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    s: f64,
) -> Result<(ControlPolygon, ControlPolygon)> {
    if !(s > 0.0 && s < 1.0) {
        return Err(GeoError::ParameterOutOfRange {
            name: "s",
            value: s,
            range: "(0, 1)",
        });
    }
    let trace = de_casteljau_trace(space, poly, s)?;
    let n = poly.degree();
    let left = trace.rows.iter().map(|row| row[0].clone()).collect();
    let right = (0..=n).map(|i| trace.rows[n - i][i].clone()).collect();
    Ok((ControlPolygon::new(left)?, ControlPolygon::new(right)?))
}

/// Distance between the two sides of
/// `Φ_s(Φ_τ(x,y), Φ_τ(y,z)) = Φ_τ(Φ_s(x,y), Φ_s(y,z))`.
pub fn condition1_defect<S: GeodesicSpace + ?Sized>(
    space: &S,
    x: &SpacePoint,
    y: &SpacePoint,
    z: &SpacePoint,
    s: f64,
    tau: f64,
) -> Result<f64> {
    let lhs = space.affine(s, &space.affine(tau, x, y)?, &space.affine(tau, y, z)?)?;
    let rhs = space.affine(tau, &space.affine(s, x, y)?, &space.affine(s, y, z)?)?;
    space.distance(&lhs, &rhs)
}

/// Aitken–Neville interpolation: the de Casteljau scheme with the local
/// parameter `(t - t_i) / (t_{i+r} - t_i)` at level `r`, which interpolates
/// `p_i` at `t_i`. Intermediate parameters leave `[0, 1]`, so the space must
/// be able to extend its geodesics.
pub fn aitken_neville<S: GeodesicSpace + ?Sized>(
    space: &S,
    nodes: &[f64],
    points: &[SpacePoint],
    t: f64,
) -> Result<SpacePoint> {
    if nodes.len() != points.len() {
        return Err(GeoError::InvalidArgument(format!(
            "{} nodes for {} points",
            nodes.len(),
            points.len()
        )));
    }
    if points.len() < 2 {
        return Err(GeoError::InvalidControlPolygon(
            "need at least 2 interpolation points".into(),
        ));
    }
    if nodes.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) {
        return Err(GeoError::InvalidArgument(
            "interpolation nodes must be strictly increasing".into(),
        ));
    }
    if nodes[0] != 0.0 || nodes[nodes.len() - 1] != 1.0 {
        return Err(GeoError::InvalidArgument(
            "interpolation nodes must start at 0 and end at 1".into(),
        ));
    }
    if !t.is_finite() {
        return Err(GeoError::ParameterOutOfRange {
            name: "t",
            value: t,
            range: "the real line",
        });
    }
    points.iter().try_for_each(|p| space.check_point(p))?;
    let n = points.len() - 1;
    let mut row = points.to_vec();
    for r in 1..=n {
        for i in 0..=n - r {
            let local = (t - nodes[i]) / (nodes[i + r] - nodes[i]);
            row[i] = space.geodesic_point(local, &row[i], &row[i + 1])?;
        }
    }
    Ok(row.swap_remove(0))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ObstacleMode {
    Attract,
    Avoid,
}

/// A closed ball `{p : d(p, center) ≤ radius}`.
#[derive(Debug, Clone, PartialEq)]
pub struct Obstacle {
    pub center: SpacePoint,
    pub radius: f64,
}

/// Floor applied to point-to-obstacle distances.
pub const OBSTACLE_EPS: f64 = 1e-9;

/// Weights derived from the distances of the control points to an
/// obstacle: `1 / d(p_i, B)` to attract the curve, `d(p_i, B) + ε` to push it
/// away.
pub fn distance_weights<S: GeodesicSpace + ?Sized>(
    space: &S,
    points: &[SpacePoint],
    obstacle: &Obstacle,
    mode: ObstacleMode,
) -> Result<Vec<f64>> {
    if !(obstacle.radius >= 0.0 && obstacle.radius.is_finite()) {
        return Err(GeoError::InvalidArgument(format!(
            "obstacle radius must be a nonnegative number (got {})",
            obstacle.radius
        )));
    }
    points
        .iter()
        .enumerate()
        .map(|(i, p)| {
            let to_center = space.distance(p, &obstacle.center)?;
            if mode == ObstacleMode::Attract && to_center < obstacle.radius {
                return Err(GeoError::InvalidArgument(format!(
                    "control point {i} lies inside the attracting obstacle"
                )));
            }
            let d = (to_center - obstacle.radius).max(OBSTACLE_EPS);
            Ok(match mode {
                ObstacleMode::Attract => 1.0 / d,
                ObstacleMode::Avoid => d + OBSTACLE_EPS,
            })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveSample {
    pub t: f64,
    pub point: SpacePoint,
}

/// `m` uniform parameters on `[0, 1]`, both endpoints included.
pub fn sample_params(m: usize) -> Result<Vec<f64>> {
    if m < 2 {
        return Err(GeoError::InvalidArgument(format!(
            "need at least 2 samples, got {m}"
        )));
    }
    let last = (m - 1) as f64;
    Ok((0..m).map(|j| j as f64 / last).collect())
}

/// Applies `eval` at `m` uniform parameters, in increasing order.
pub fn sample_curve<F>(m: usize, mut eval: F) -> Result<Vec<CurveSample>>
where
    F: FnMut(f64) -> Result<SpacePoint>,
{
    sample_params(m)?
        .into_iter()
        .map(|t| Ok(CurveSample { t, point: eval(t)? }))
        .collect()
}
