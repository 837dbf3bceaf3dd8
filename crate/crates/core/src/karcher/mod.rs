//! Weighted geometric means and centroid curves.
//!
//! The mean of `p_0, …, p_n` with weights `b_i` minimizes
//! `Σ b_i d²(·, p_i)`; in a Riemannian space it solves the Karcher equation
//! `Σ b_i log_x p_i = 0`, found here by the fixed-point iteration
//! `x ← exp_x(Σ b_i log_x p_i)`. The centroid curve uses the Bernstein
//! polynomials as weights.

mod bounds;
mod counterexample;
mod median;
mod tangent;

pub use bounds::{
    casteljau_lower_bounds, in_general_position, stagewise_energies, stagewise_minimizers,
    LowerBounds,
};
pub use counterexample::{equilateral_triangle, sphere_counterexample, CounterexampleReport};
pub use median::segment_median;
pub use tangent::{endpoint_tangent_check, Endpoint, TangentCheck};

use serde::{Deserialize, Serialize};

use crate::bernstein::bernstein_all;
use crate::bezier::{de_casteljau, sample_params, ControlPolygon, CurveSample};
use crate::error::{check_unit, GeoError, Result};
use crate::geodesic::{GeodesicSpace, SpacePoint, TangentVector};

/// Slack allowed on the weight sum.
pub const WEIGHT_SUM_TOL: f64 = 1e-12;

/// Points with nonnegative weights summing to one.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedMeanProblem {
    points: Vec<SpacePoint>,
    weights: Vec<f64>,
}

impl WeightedMeanProblem {
    pub fn new(points: Vec<SpacePoint>, weights: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(GeoError::InvalidArgument("no points to average".into()));
        }
        if points.len() != weights.len() {
            return Err(GeoError::InvalidWeights(format!(
                "{} weights for {} points",
                weights.len(),
                points.len()
            )));
        }
        if let Some((i, w)) = weights
            .iter()
            .enumerate()
            .find(|(_, w)| !(**w >= 0.0 && w.is_finite()))
        {
            return Err(GeoError::InvalidWeights(format!(
                "weight {i} must be nonnegative (got {w})"
            )));
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > WEIGHT_SUM_TOL {
            return Err(GeoError::InvalidWeights(format!(
                "weights must sum to 1 (sum is {sum})"
            )));
        }
        let kind = points[0].space();
        if let Some(i) = points.iter().position(|p| p.space() != kind) {
            return Err(GeoError::SpaceMismatch {
                expected: kind,
                found: points[i].space(),
            });
        }
        Ok(WeightedMeanProblem { points, weights })
    }

    pub fn points(&self) -> &[SpacePoint] {
        &self.points
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    /// Points carrying a nonzero weight.
    fn active(&self) -> (Vec<&SpacePoint>, Vec<f64>) {
        self.points
            .iter()
            .zip(&self.weights)
            .filter(|(_, &w)| w > 0.0)
            .map(|(p, &w)| (p, w))
            .unzip()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct KarcherSolution {
    pub point: SpacePoint,
    /// Norm of `Σ b_i log_q p_i` at the returned point.
    pub residual: f64,
    pub iterations: usize,
    /// `Σ b_i d²(q, p_i)`.
    pub cost: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KarcherOptions {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for KarcherOptions {
    fn default() -> Self {
        KarcherOptions {
            tol: 1e-12,
            max_iter: 200,
        }
    }
}

/// `Σ b_i d²(x, p_i)`.
pub fn weighted_cost<S: GeodesicSpace + ?Sized>(
    space: &S,
    points: &[SpacePoint],
    weights: &[f64],
    x: &SpacePoint,
) -> Result<f64> {
    points
        .iter()
        .zip(weights)
        .filter(|(_, &w)| w > 0.0)
        .try_fold(0.0, |acc, (p, &w)| {
            let d = space.distance(x, p)?;
            Ok(acc + w * d * d)
        })
}

fn karcher_field<S: GeodesicSpace + ?Sized>(
    space: &S,
    points: &[&SpacePoint],
    weights: &[f64],
    x: &SpacePoint,
) -> Result<TangentVector> {
    let mut acc: Option<TangentVector> = None;
    for (p, &w) in points.iter().zip(weights) {
        let v = space.log(x, p)?;
        acc = Some(match acc {
            None => v.scaled(w),
            Some(a) => a.add_scaled(w, &v)?,
        });
    }
    Ok(acc.expect("at least one active point"))
}

pub fn karcher_mean<S: GeodesicSpace + ?Sized>(
    space: &S,
    problem: &WeightedMeanProblem,
    init: Option<&SpacePoint>,
) -> Result<KarcherSolution> {
    karcher_mean_with(space, problem, init, KarcherOptions::default())
}

/// Solves the Karcher equation starting from `init` (default: the point
/// with the largest weight).
pub fn karcher_mean_with<S: GeodesicSpace + ?Sized>(
    space: &S,
    problem: &WeightedMeanProblem,
    init: Option<&SpacePoint>,
    opts: KarcherOptions,
) -> Result<KarcherSolution> {
    let (points, weights) = problem.active();
    if points.len() == 1 {
        space.check_point(points[0])?;
        return Ok(KarcherSolution {
            point: points[0].clone(),
            residual: 0.0,
            iterations: 0,
            cost: 0.0,
        });
    }
    let owned: Vec<SpacePoint> = points.iter().map(|p| (*p).clone()).collect();
    space.check_karcher_domain(&owned)?;

    let mut x = match init {
        Some(p) => {
            space.check_point(p)?;
            p.clone()
        }
        None => {
            let best = (0..weights.len())
                .max_by(|&a, &b| weights[a].total_cmp(&weights[b]).then(b.cmp(&a)))
                .expect("nonempty");
            points[best].clone()
        }
    };
    let mut iterations = 0;
    loop {
        let step = karcher_field(space, &points, &weights, &x)?;
        let residual = space.tangent_norm(&step)?;
        if residual <= opts.tol {
            let cost = weighted_cost(space, &owned, &weights, &x)?;
            return Ok(KarcherSolution {
                point: x,
                residual,
                iterations,
                cost,
            });
        }
        if iterations >= opts.max_iter || !residual.is_finite() {
            return Err(GeoError::NonConvergence {
                iterations,
                residual,
            });
        }
        x = space.exp(&step)?;
        iterations += 1;
    }
}

fn unweighted(poly: &ControlPolygon) -> Result<()> {
    if poly.weights().is_some() {
        return Err(GeoError::InvalidControlPolygon(
            "centroid curves take unweighted control points".into(),
        ));
    }
    Ok(())
}

/// The mean with Bernstein weights `B_i^n(t)`, started from `init` or from
/// the de Casteljau point at `t`.
pub fn centroid_solution<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    t: f64,
    init: Option<&SpacePoint>,
) -> Result<KarcherSolution> {
    centroid_solution_with(space, poly, t, init, KarcherOptions::default())
}

pub fn centroid_solution_with<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    t: f64,
    init: Option<&SpacePoint>,
    opts: KarcherOptions,
) -> Result<KarcherSolution> {
    unweighted(poly)?;
    check_unit("t", t)?;
    let weights = bernstein_all(poly.degree(), t)?;
    let problem = WeightedMeanProblem::new(poly.points().to_vec(), weights)?;
    if t == 0.0 || t == 1.0 {
        return karcher_mean_with(space, &problem, None, opts);
    }
    match init {
        Some(p) => karcher_mean_with(space, &problem, Some(p), opts),
        None => {
            let start = de_casteljau(space, poly, t)?;
            karcher_mean_with(space, &problem, Some(&start), opts)
        }
    }
}

/// Point `q(t)` of the centroid curve.
pub fn centroid_curve<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    t: f64,
) -> Result<SpacePoint> {
    centroid_solution(space, poly, t, None).map(|s| s.point)
}

/// How consecutive samples of a centroid curve are initialized.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StartMode {
    /// Each sample starts from the de Casteljau point; samples are
    /// independent of each other.
    #[default]
    Cold,
    /// Each sample starts from the previous solution, so sampling is
    /// sequential.
    Warm,
}

/// `m` uniform samples of the centroid curve.
pub fn sample_centroid_curve<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    m: usize,
    mode: StartMode,
) -> Result<Vec<CurveSample>> {
    sample_centroid_curve_with(space, poly, m, mode, KarcherOptions::default())
}

pub fn sample_centroid_curve_with<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    m: usize,
    mode: StartMode,
    opts: KarcherOptions,
) -> Result<Vec<CurveSample>> {
    let mut prev: Option<SpacePoint> = None;
    let mut out = Vec::with_capacity(m);
    for t in sample_params(m)? {
        let init = match mode {
            StartMode::Cold => None,
            StartMode::Warm => prev.as_ref(),
        };
        let sol = centroid_solution_with(space, poly, t, init, opts)?;
        prev = Some(sol.point.clone());
        out.push(CurveSample {
            t,
            point: sol.point,
        });
    }
    Ok(out)
}
