//! Quadratic Bézier versus centroid curve on an equilateral spherical
//! triangle: the Bézier midpoint does not satisfy the Karcher equation for
//! any weight vector `B^2(s)`, so it is not on the centroid curve.

use std::f64::consts::{FRAC_PI_2, PI};

use nalgebra::Vector3;
use serde::{Deserialize, Serialize};

use crate::bernstein::bernstein_all;
use crate::bezier::{de_casteljau, ControlPolygon};
use crate::error::{GeoError, Result};
use crate::geodesic::{SpaceKind, SpacePoint};
use crate::spaces::SphereSpace;

const GRID: usize = 1001;
const MIDPOINT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CounterexampleReport {
    pub alpha: f64,
    pub controls: Vec<SpacePoint>,
    /// Closed-form midpoint `(p0 + 2 p1 + p2) / (4 cos(θ/2) cos(α/2))`.
    pub p_half: SpacePoint,
    /// Distance from the de Casteljau midpoint to `p_half`.
    pub midpoint_error: f64,
    pub cos_theta: f64,
    pub z: f64,
    /// Minimum of `|<L(s), p2 × p0>|` over a uniform grid of `s ∈ [0, 1]`.
    pub min_abs_inner: f64,
    /// `(1 - z)/4` times the absolute closed-form prefactor.
    pub lower_bound: f64,
    pub verdict: bool,
}

/// Unit vectors with pairwise angle `alpha`, symmetric under rotation by
/// `2π/3` about the z-axis.
pub fn equilateral_triangle(alpha: f64) -> [SpacePoint; 3] {
    let sin_beta = (2.0 / 3.0 * (1.0 - alpha.cos())).sqrt();
    let cos_beta = (1.0 - sin_beta * sin_beta).sqrt();
    std::array::from_fn(|k| {
        let phi = 2.0 * PI * k as f64 / 3.0;
        SpacePoint::new(
            SpaceKind::Sphere,
            vec![sin_beta * phi.cos(), sin_beta * phi.sin(), cos_beta],
        )
    })
}

fn v3(p: &SpacePoint) -> Vector3<f64> {
    Vector3::from_column_slice(p.coords())
}

pub fn sphere_counterexample(alpha: f64) -> Result<CounterexampleReport> {
    if !(alpha > 0.0 && alpha <= FRAC_PI_2) {
        return Err(GeoError::ParameterOutOfRange {
            name: "alpha",
            value: alpha,
            range: "(0, pi/2]",
        });
    }
    let sphere = SphereSpace::new();
    let controls = equilateral_triangle(alpha);
    let [p0, p1, p2] = controls.each_ref().map(v3);

    let cos_alpha = alpha.cos();
    let cos_theta = (1.0 + 3.0 * cos_alpha) / (2.0 + 2.0 * cos_alpha);
    let cos_half_theta = ((1.0 + cos_theta) / 2.0).sqrt();
    let denom = 4.0 * cos_half_theta * (alpha / 2.0).cos();
    let half = (p0 + 2.0 * p1 + p2) / denom;
    let p_half = SpacePoint::new(SpaceKind::Sphere, half.iter().copied().collect());

    let poly = ControlPolygon::new(controls.to_vec())?;
    let bezier_mid = de_casteljau(&sphere, &poly, 0.5)?;
    let midpoint_error = (v3(&bezier_mid) - half).norm();

    let cos_psi1 = (2.0 + 2.0 * cos_alpha) / denom;
    let cos_psi0 = (1.0 + 3.0 * cos_alpha) / denom;
    let (psi0, psi1) = (
        cos_psi0.clamp(-1.0, 1.0).acos(),
        cos_psi1.clamp(-1.0, 1.0).acos(),
    );
    let z = (psi1 * psi0.sin()) / (psi0 * psi1.sin());

    // Karcher field of the weights B^2(s) evaluated at p_half.
    let psi = [psi0, psi1, psi0];
    let cos_psi = [cos_psi0, cos_psi1, cos_psi0];
    let pts = [p0, p1, p2];
    let normal = p2.cross(&p0);
    let mut min_abs_inner = f64::INFINITY;
    for j in 0..GRID {
        let s = j as f64 / (GRID - 1) as f64;
        let b = bernstein_all(2, s)?;
        let l: Vector3<f64> = (0..3)
            .map(|i| b[i] * psi[i] / psi[i].sin() * (pts[i] - half * cos_psi[i]))
            .sum();
        min_abs_inner = min_abs_inner.min(l.dot(&normal).abs());
    }

    let triple = p1.dot(&p0.cross(&p2));
    let prefactor = cos_theta * triple * psi0 / ((1.0 + cos_theta) * psi0.sin());
    let lower_bound = (1.0 - z) / 4.0 * prefactor.abs();

    let verdict = midpoint_error <= MIDPOINT_TOL && min_abs_inner > 0.0;
    Ok(CounterexampleReport {
        alpha,
        controls: controls.to_vec(),
        p_half,
        midpoint_error,
        cos_theta,
        z,
        min_abs_inner,
        lower_bound,
        verdict,
    })
}
