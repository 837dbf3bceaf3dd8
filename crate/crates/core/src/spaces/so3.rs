//! Closed-form exponential and principal logarithm on SO(3), plus the left
//! Jacobian `V` that links rotation vectors to SE(3) translations.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};

use crate::error::{GeoError, Result};

/// Rotations closer than this to angle π are rejected by [`log`].
pub const PI_GUARD: f64 = 1e-8;

const SMALL_ANGLE: f64 = 1e-4;

pub fn hat(w: &Vector3<f64>) -> Matrix3<f64> {
    Matrix3::new(0.0, -w.z, w.y, w.z, 0.0, -w.x, -w.y, w.x, 0.0)
}

pub fn vee(m: &Matrix3<f64>) -> Vector3<f64> {
    Vector3::new(m[(2, 1)], m[(0, 2)], m[(1, 0)])
}

/// `sin θ / θ` and `(1 - cos θ) / θ²`.
fn coeffs_ab(theta: f64) -> (f64, f64) {
    if theta < SMALL_ANGLE {
        let t2 = theta * theta;
        (
            1.0 - t2 / 6.0 + t2 * t2 / 120.0,
            0.5 - t2 / 24.0 + t2 * t2 / 720.0,
        )
    } else {
        (theta.sin() / theta, (1.0 - theta.cos()) / (theta * theta))
    }
}

/// `(θ - sin θ) / θ³`.
fn coeff_c(theta: f64) -> f64 {
    if theta < SMALL_ANGLE {
        let t2 = theta * theta;
        1.0 / 6.0 - t2 / 120.0 + t2 * t2 / 5040.0
    } else {
        (theta - theta.sin()) / (theta * theta * theta)
    }
}

/// Rodrigues' formula.
pub fn exp(w: &Vector3<f64>) -> Matrix3<f64> {
    let theta = w.norm();
    let (a, b) = coeffs_ab(theta);
    let k = hat(w);
    Matrix3::identity() + k * a + k * k * b
}

/// Rotation angle in `[0, π]`.
pub fn angle(r: &Matrix3<f64>) -> f64 {
    let c = ((r.trace() - 1.0) / 2.0).clamp(-1.0, 1.0);
    let s = vee(&(r - r.transpose())).norm() / 2.0;
    s.atan2(c)
}

/// Principal logarithm as a rotation vector.
///
/// Large angles take the axis from the symmetric part of `R`, where the
/// antisymmetric part has lost its relative precision.
pub fn log(r: &Matrix3<f64>) -> Result<Vector3<f64>> {
    let theta = angle(r);
    if theta >= PI - PI_GUARD {
        return Err(GeoError::DomainViolation(format!(
            "rotation angle {theta} is within {PI_GUARD:e} of pi; the principal logarithm is ill-conditioned"
        )));
    }
    let skew = vee(&(r - r.transpose()));
    if theta < SMALL_ANGLE {
        let t2 = theta * theta;
        return Ok(skew * (0.5 * (1.0 + t2 / 6.0 + 7.0 * t2 * t2 / 360.0)));
    }
    if theta < 0.75 * PI {
        return Ok(skew * (theta / (2.0 * theta.sin())));
    }
    let c = theta.cos();
    let sym = (r + r.transpose()) * 0.5 - Matrix3::identity() * c;
    let j = (0..3)
        .max_by(|&a, &b| sym[(a, a)].total_cmp(&sym[(b, b)]))
        .unwrap_or(0);
    let mut axis: Vector3<f64> = sym.column(j).into_owned();
    axis /= axis.norm();
    if skew.dot(&axis) < 0.0 {
        axis = -axis;
    }
    Ok(axis * theta)
}

/// Left Jacobian `V(ω) = I + B·Ω + C·Ω²`.
pub fn left_jacobian(w: &Vector3<f64>) -> Matrix3<f64> {
    let theta = w.norm();
    let (_, b) = coeffs_ab(theta);
    let c = coeff_c(theta);
    let k = hat(w);
    Matrix3::identity() + k * b + k * k * c
}

/// `V(ω)⁻¹ = I - Ω/2 + D·Ω²`.
pub fn left_jacobian_inv(w: &Vector3<f64>) -> Matrix3<f64> {
    let theta = w.norm();
    let d = if theta < SMALL_ANGLE {
        let t2 = theta * theta;
        1.0 / 12.0 + t2 / 720.0 + t2 * t2 / 30240.0
    } else {
        let (a, b) = coeffs_ab(theta);
        (1.0 - a / (2.0 * b)) / (theta * theta)
    };
    let k = hat(w);
    Matrix3::identity() - k * 0.5 + k * k * d
}

pub fn is_rotation(r: &Matrix3<f64>, tol: f64) -> bool {
    (r.transpose() * r - Matrix3::identity()).abs().max() <= tol
        && (r.determinant() - 1.0).abs() <= tol
}

#[cfg(test)]
mod tests {
    use super::*;

    fn series_exp(m: &Matrix3<f64>) -> Matrix3<f64> {
        // Scaling and squaring with a truncated Taylor series.
        let s = 8;
        let a = m / f64::from(1 << s);
        let mut term = Matrix3::identity();
        let mut sum = Matrix3::identity();
        for k in 1..20 {
            term = term * a / k as f64;
            sum += term;
        }
        for _ in 0..s {
            sum = sum * sum;
        }
        sum
    }

    #[test]
    fn rodrigues_matches_series() {
        for w in [
            Vector3::new(0.1, -0.2, 0.3),
            Vector3::new(1.0, 2.0, -0.5),
            Vector3::new(0.0, 0.0, 3.0),
            Vector3::new(1e-6, 0.0, 2e-6),
        ] {
            let d = (exp(&w) - series_exp(&hat(&w))).abs().max();
            assert!(d < 1e-12, "{w:?}: {d}");
        }
    }

    #[test]
    fn log_inverts_exp_across_the_angle_range() {
        let axis = Vector3::new(0.3, -0.5, 0.81).normalize();
        for theta in [0.0, 1e-9, 1e-5, 0.3, 1.5, 2.3, 2.5, 3.0, PI - 1e-6] {
            let w = axis * theta;
            let back = log(&exp(&w)).unwrap();
            assert!((back - w).norm() < 1e-9, "theta={theta}: {:?}", back - w);
        }
    }

    #[test]
    fn log_rejects_half_turns() {
        let r = exp(&Vector3::new(0.0, 0.0, PI));
        assert!(log(&r).is_err());
    }

    #[test]
    fn jacobian_inverse() {
        for w in [Vector3::new(0.4, 0.1, -1.2), Vector3::new(1e-7, 0.0, 0.0)] {
            let p = left_jacobian(&w) * left_jacobian_inv(&w);
            assert!((p - Matrix3::identity()).abs().max() < 1e-12);
        }
    }
}
