//! Curve configuration files and their validation.

use std::f64::consts::FRAC_PI_3;
use std::sync::Arc;

use nalgebra::{Matrix3, Vector3};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::CliError;
use crate::bezier::{distance_weights, ControlPolygon, Obstacle, ObstacleMode};
use crate::geodesic::{GeodesicSpace, SpaceKind, SpacePoint};
use crate::karcher::{KarcherOptions, StartMode};
use crate::spaces::{so3, PoseE3, SpaceSpec, Spd2Point, SphereSpace};
use crate::spline::SplineDef;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Bezier,
    Rational,
    Spline,
    Centroid,
    Neville,
    Split,
    Counterexample,
}

impl Algorithm {
    pub fn as_str(self) -> &'static str {
        match self {
            Algorithm::Bezier => "bezier",
            Algorithm::Rational => "rational",
            Algorithm::Spline => "spline",
            Algorithm::Centroid => "centroid",
            Algorithm::Neville => "neville",
            Algorithm::Split => "split",
            Algorithm::Counterexample => "counterexample",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ObstacleConfig {
    pub center: Value,
    pub radius: f64,
    pub mode: ObstacleMode,
}

/// Karcher solver settings for centroid curves.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SolverConfig {
    pub tol: f64,
    pub max_iter: usize,
}

impl Default for SolverConfig {
    fn default() -> Self {
        let o = KarcherOptions::default();
        SolverConfig {
            tol: o.tol,
            max_iter: o.max_iter,
        }
    }
}

fn default_samples() -> usize {
    101
}

fn is_false(b: &bool) -> bool {
    !*b
}

/// One curve job as read from a JSON document.
///
/// Points are written per space: plain coordinate arrays for `euclidean`,
/// `manhattan`, `paris` and `sphere` (sphere points are normalized),
/// `[[a, b], [b, c]]` for `spd2` (rescaled to determinant one) and
/// `{"rotation": …, "translation": …}` or `{"axis_angle": …, "translation": …}`
/// for `e3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CurveConfig {
    pub space: SpaceSpec,
    pub algorithm: Algorithm,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub control_points: Vec<Value>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub knots: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "is_false")]
    pub closed: bool,
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub split_at: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nodes: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub obstacle: Option<ObstacleConfig>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[serde(default)]
    pub start: StartMode,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub solver: Option<SolverConfig>,
}

impl CurveConfig {
    pub fn from_json(text: &str) -> Result<Self, CliError> {
        serde_json::from_str(text).map_err(|e| CliError::parse("config", e.to_string()))
    }

    /// Default counterexample job.
    pub fn counterexample(alpha: Option<f64>) -> Self {
        CurveConfig {
            space: SpaceSpec::Sphere,
            algorithm: Algorithm::Counterexample,
            control_points: Vec::new(),
            weights: None,
            knots: None,
            degree: None,
            closed: false,
            samples: default_samples(),
            split_at: None,
            nodes: None,
            obstacle: None,
            alpha: Some(alpha.unwrap_or(FRAC_PI_3)),
            start: StartMode::Cold,
            solver: None,
        }
    }
}

/// A validated, ready-to-evaluate job.
#[derive(Debug, Clone)]
pub enum Curve {
    Bezier(ControlPolygon),
    Rational(ControlPolygon),
    Spline(SplineDef),
    Centroid(ControlPolygon, StartMode),
    Neville {
        nodes: Vec<f64>,
        points: Vec<SpacePoint>,
    },
    Split(ControlPolygon, f64),
    Counterexample(f64),
}

#[derive(Debug, Clone)]
pub struct Job {
    pub config: CurveConfig,
    pub space: Arc<dyn GeodesicSpace>,
    pub curve: Curve,
}

fn numbers(v: &Value, field: &str) -> Result<Vec<f64>, CliError> {
    let bad = || CliError::validation(field, "expected an array of numbers");
    v.as_array()
        .ok_or_else(bad)?
        .iter()
        .map(|x| x.as_f64().ok_or_else(bad))
        .collect()
}

fn rotation_from(v: &Value, field: &str) -> Result<Matrix3<f64>, CliError> {
    let flat: Vec<f64> = match v.as_array() {
        Some(rows) if rows.len() == 3 && rows.iter().all(Value::is_array) => {
            let mut out = Vec::with_capacity(9);
            for (i, r) in rows.iter().enumerate() {
                let r = numbers(r, &format!("{field}[{i}]"))?;
                if r.len() != 3 {
                    return Err(CliError::validation(field, "rotation rows need 3 entries"));
                }
                out.extend(r);
            }
            out
        }
        _ => numbers(v, field)?,
    };
    if flat.len() != 9 {
        return Err(CliError::validation(
            field,
            "rotation needs 9 row-major entries or 3 rows of 3",
        ));
    }
    Ok(Matrix3::from_row_slice(&flat))
}

fn pose_from(v: &Value, field: &str) -> Result<PoseE3, CliError> {
    let obj = v.as_object().ok_or_else(|| {
        CliError::validation(
            field,
            "expected an object with rotation or axis_angle and translation",
        )
    })?;
    if let Some(k) = obj
        .keys()
        .find(|k| !matches!(k.as_str(), "rotation" | "axis_angle" | "translation"))
    {
        return Err(CliError::validation(field, format!("unknown key `{k}`")));
    }
    let rotation = match (obj.get("rotation"), obj.get("axis_angle")) {
        (Some(r), None) => rotation_from(r, &format!("{field}.rotation"))?,
        (None, Some(w)) => {
            let f = format!("{field}.axis_angle");
            let w = numbers(w, &f)?;
            if w.len() != 3 {
                return Err(CliError::validation(&f, "axis_angle needs 3 entries"));
            }
            so3::exp(&Vector3::new(w[0], w[1], w[2]))
        }
        (None, None) => Matrix3::identity(),
        (Some(_), Some(_)) => {
            return Err(CliError::validation(
                field,
                "give either rotation or axis_angle, not both",
            ))
        }
    };
    let translation = match obj.get("translation") {
        Some(t) => {
            let f = format!("{field}.translation");
            let t = numbers(t, &f)?;
            if t.len() != 3 {
                return Err(CliError::validation(&f, "translation needs 3 entries"));
            }
            Vector3::new(t[0], t[1], t[2])
        }
        None => Vector3::zeros(),
    };
    PoseE3::new(rotation, translation).map_err(|e| CliError::geo(field, e))
}

/// Reads one point of `space` from its config form.
pub fn parse_point(
    spec: &SpaceSpec,
    space: &dyn GeodesicSpace,
    v: &Value,
    field: &str,
) -> Result<SpacePoint, CliError> {
    let p = match spec {
        SpaceSpec::Euclidean { .. } | SpaceSpec::Manhattan { .. } | SpaceSpec::Paris { .. } => {
            SpacePoint::new(space.kind(), numbers(v, field)?)
        }
        SpaceSpec::Sphere => {
            let c = numbers(v, field)?;
            if c.len() != 3 {
                return Err(CliError::validation(
                    field,
                    "sphere points need 3 coordinates",
                ));
            }
            SphereSpace::new()
                .project([c[0], c[1], c[2]])
                .map_err(|e| CliError::geo(field, e))?
        }
        SpaceSpec::Spd2 => {
            let rows = v
                .as_array()
                .filter(|r| r.len() == 2)
                .ok_or_else(|| CliError::validation(field, "expected [[a, b], [b, c]]"))?;
            let r0 = numbers(&rows[0], field)?;
            let r1 = numbers(&rows[1], field)?;
            if r0.len() != 2 || r1.len() != 2 {
                return Err(CliError::validation(field, "expected [[a, b], [b, c]]"));
            }
            if (r0[1] - r1[0]).abs() > 1e-12 {
                return Err(CliError::validation(field, "matrix is not symmetric"));
            }
            Spd2Point::normalized(r0[0], r0[1], r1[1])
                .map_err(|e| CliError::geo(field, e))?
                .to_point()
        }
        SpaceSpec::E3 => pose_from(v, field)?.to_point(),
    };
    space.check_point(&p).map_err(|e| CliError::geo(field, e))?;
    Ok(p)
}

impl Job {
    pub fn prepare(config: CurveConfig) -> Result<Job, CliError> {
        let space = config
            .space
            .build()
            .map_err(|e| CliError::geo("space", e))?;
        if config.samples < 2 {
            return Err(CliError::validation("samples", "need at least 2 samples"));
        }
        if let Some(sv) = &config.solver {
            if !(sv.tol > 0.0 && sv.tol.is_finite()) {
                return Err(CliError::validation("solver.tol", "must be positive"));
            }
            if sv.max_iter == 0 {
                return Err(CliError::validation("solver.max_iter", "must be at least 1"));
            }
        }
        let alg = config.algorithm;
        if alg == Algorithm::Counterexample {
            if space.kind() != SpaceKind::Sphere {
                return Err(CliError::validation(
                    "space",
                    "the counterexample is defined on the sphere",
                ));
            }
            let alpha = config.alpha.unwrap_or(FRAC_PI_3);
            if !(alpha > 0.0 && alpha <= std::f64::consts::FRAC_PI_2) {
                return Err(CliError::validation("alpha", "must lie in (0, pi/2]"));
            }
            return Ok(Job {
                config,
                space,
                curve: Curve::Counterexample(alpha),
            });
        }

        let points = config
            .control_points
            .iter()
            .enumerate()
            .map(|(i, v)| {
                parse_point(
                    &config.space,
                    space.as_ref(),
                    v,
                    &format!("control_points[{i}]"),
                )
            })
            .collect::<Result<Vec<_>, _>>()?;
        if points.len() < 2 {
            return Err(CliError::validation(
                "control_points",
                "need at least 2 control points",
            ));
        }
        if config.weights.is_some() && alg != Algorithm::Rational {
            return Err(CliError::validation(
                "weights",
                format!("not used by algorithm {}", alg.as_str()),
            ));
        }
        let poly =
            || ControlPolygon::new(points.clone()).map_err(|e| CliError::geo("control_points", e));

        let curve = match alg {
            Algorithm::Bezier => Curve::Bezier(poly()?),
            Algorithm::Rational => {
                let weights = match (&config.weights, &config.obstacle) {
                    (Some(w), None) => w.clone(),
                    (None, Some(o)) => {
                        let center = parse_point(
                            &config.space,
                            space.as_ref(),
                            &o.center,
                            "obstacle.center",
                        )?;
                        let obstacle = Obstacle {
                            center,
                            radius: o.radius,
                        };
                        distance_weights(space.as_ref(), &points, &obstacle, o.mode)
                            .map_err(|e| CliError::geo("obstacle", e))?
                    }
                    (Some(_), Some(_)) => {
                        return Err(CliError::validation(
                            "weights",
                            "give either weights or obstacle, not both",
                        ))
                    }
                    (None, None) => {
                        return Err(CliError::validation(
                            "weights",
                            "rational curves need weights or an obstacle",
                        ))
                    }
                };
                Curve::Rational(
                    ControlPolygon::with_weights(points.clone(), weights)
                        .map_err(|e| CliError::geo("weights", e))?,
                )
            }
            Algorithm::Spline => {
                let degree = config.degree.ok_or_else(|| {
                    CliError::validation("degree", "required for algorithm spline")
                })?;
                let def = if config.closed {
                    if config.knots.is_some() {
                        return Err(CliError::validation(
                            "knots",
                            "closed splines use uniform knots; omit this field",
                        ));
                    }
                    SplineDef::closed(&poly()?, degree)
                } else {
                    let knots = config.knots.clone().ok_or_else(|| {
                        CliError::validation("knots", "required for open splines")
                    })?;
                    SplineDef::new(knots, degree, poly()?)
                };
                Curve::Spline(def.map_err(|e| CliError::geo("knots", e))?)
            }
            Algorithm::Centroid => {
                space
                    .check_karcher_domain(&points)
                    .map_err(|e| CliError::geo("control_points", e))?;
                Curve::Centroid(poly()?, config.start)
            }
            Algorithm::Neville => {
                let n = points.len() - 1;
                let nodes = config
                    .nodes
                    .clone()
                    .unwrap_or_else(|| (0..=n).map(|i| i as f64 / n as f64).collect());
                if nodes.len() != points.len() {
                    return Err(CliError::validation(
                        "nodes",
                        format!("{} nodes for {} control points", nodes.len(), points.len()),
                    ));
                }
                if nodes.windows(2).any(|w| w[0].partial_cmp(&w[1]) != Some(std::cmp::Ordering::Less)) || nodes[0] != 0.0 || nodes[n] != 1.0 {
                    return Err(CliError::validation(
                        "nodes",
                        "must increase strictly from 0 to 1",
                    ));
                }
                Curve::Neville { nodes, points }
            }
            Algorithm::Split => {
                let s = config.split_at.ok_or_else(|| {
                    CliError::validation("split_at", "required for algorithm split")
                })?;
                if !(s > 0.0 && s < 1.0) {
                    return Err(CliError::validation("split_at", "must lie in (0, 1)"));
                }
                Curve::Split(poly()?, s)
            }
            Algorithm::Counterexample => unreachable!("handled above"),
        };
        Ok(Job {
            config,
            space,
            curve,
        })
    }

    pub fn karcher_options(&self) -> KarcherOptions {
        let sv = self.config.solver.unwrap_or_default();
        KarcherOptions {
            tol: sv.tol,
            max_iter: sv.max_iter,
        }
    }

    pub fn control_points(&self) -> &[SpacePoint] {
        match &self.curve {
            Curve::Bezier(p) | Curve::Rational(p) | Curve::Centroid(p, _) | Curve::Split(p, _) => {
                p.points()
            }
            Curve::Spline(s) => s.controls().points(),
            Curve::Neville { points, .. } => points,
            Curve::Counterexample(_) => &[],
        }
    }
}
