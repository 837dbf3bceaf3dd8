//! Random inputs and closed-form oracles shared by the integration tests.
#![allow(dead_code)]

use geocurve::spaces::{PoseE3, Spd2Point, SphereSpace};
use geocurve::{SpaceKind, SpacePoint};
use nalgebra::{Matrix2, Matrix3, Rotation3, Unit, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn euclid(c: &[f64]) -> SpacePoint {
    SpacePoint::new(SpaceKind::Euclidean, c.to_vec())
}

pub fn random_euclid(r: &mut impl Rng, dim: usize) -> SpacePoint {
    euclid(&(0..dim).map(|_| r.random_range(-1.0..1.0)).collect::<Vec<_>>())
}

pub fn unit_vector(r: &mut impl Rng) -> Vector3<f64> {
    loop {
        let v = Vector3::new(
            r.random_range(-1.0..1.0),
            r.random_range(-1.0..1.0),
            r.random_range(-1.0..1.0),
        );
        let n = v.norm();
        if n > 0.1 && n <= 1.0 {
            return v / n;
        }
    }
}

pub fn sphere_pt(v: Vector3<f64>) -> SpacePoint {
    SphereSpace::new().project([v.x, v.y, v.z]).unwrap()
}

pub fn v3(p: &SpacePoint) -> Vector3<f64> {
    Vector3::from_column_slice(p.coords())
}

/// Point at angle below `radius` from `center`, uniform in angle and
/// direction.
pub fn sphere_near(r: &mut impl Rng, center: &Vector3<f64>, radius: f64) -> SpacePoint {
    let mut dir = unit_vector(r);
    dir -= center * center.dot(&dir);
    while dir.norm() < 1e-3 {
        dir = unit_vector(r);
        dir -= center * center.dot(&dir);
    }
    let dir = dir.normalize();
    let a = r.random_range(0.0..radius);
    sphere_pt(center * a.cos() + dir * a.sin())
}

pub fn sphere_cluster(r: &mut impl Rng, count: usize, radius: f64) -> Vec<SpacePoint> {
    let c = unit_vector(r);
    (0..count).map(|_| sphere_near(r, &c, radius)).collect()
}

pub fn rotation(r: &mut impl Rng) -> Rotation3<f64> {
    let axis = Unit::new_normalize(unit_vector(r));
    Rotation3::from_axis_angle(&axis, r.random_range(0.0..std::f64::consts::PI))
}

pub fn rotate(rot: &Rotation3<f64>, p: &SpacePoint) -> SpacePoint {
    let v = rot * v3(p);
    SpacePoint::new(SpaceKind::Sphere, vec![v.x, v.y, v.z])
}

/// Determinant-one SPD matrix with moderate condition number.
pub fn spd(r: &mut impl Rng) -> Spd2Point {
    let a = r.random_range(-1.0f64..1.0).exp();
    let b = r.random_range(-1.0..1.0);
    Spd2Point::new(a, b, (1.0 + b * b) / a).unwrap()
}

pub fn pose(r: &mut impl Rng, max_angle: f64) -> PoseE3 {
    let axis = Unit::new_normalize(unit_vector(r));
    let rot = Rotation3::from_axis_angle(&axis, r.random_range(0.0..max_angle));
    let t = Vector3::new(
        r.random_range(-2.0..2.0),
        r.random_range(-2.0..2.0),
        r.random_range(-2.0..2.0),
    );
    PoseE3::new(*rot.matrix(), t).unwrap()
}

pub fn max_abs_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}

/// `C(n, i) t^i (1-t)^(n-i)` from the factorial form.
pub fn bernstein_oracle(i: usize, n: usize, t: f64) -> f64 {
    let mut c = 1.0;
    for k in 0..i {
        c = c * (n - k) as f64 / (k + 1) as f64;
    }
    c * t.powi(i as i32) * (1.0 - t).powi((n - i) as i32)
}

/// `Σ B_i(t) p_i`.
pub fn bernstein_sum(pts: &[Vec<f64>], t: f64) -> Vec<f64> {
    let n = pts.len() - 1;
    let mut out = vec![0.0; pts[0].len()];
    for (i, p) in pts.iter().enumerate() {
        let b = bernstein_oracle(i, n, t);
        for (o, c) in out.iter_mut().zip(p) {
            *o += b * c;
        }
    }
    out
}

/// `Σ w_i B_i(t) p_i / Σ w_i B_i(t)`.
pub fn rational_quotient(pts: &[Vec<f64>], w: &[f64], t: f64) -> Vec<f64> {
    let n = pts.len() - 1;
    let mut num = vec![0.0; pts[0].len()];
    let mut den = 0.0;
    for (i, p) in pts.iter().enumerate() {
        let b = w[i] * bernstein_oracle(i, n, t);
        den += b;
        for (o, c) in num.iter_mut().zip(p) {
            *o += b * c;
        }
    }
    num.iter().map(|x| x / den).collect()
}

/// Cox–de Boor basis `N_{i,m}(t)` over the parameter interval
/// `[τ_m, τ_{n+1}]`, with the right end assigned to the last nonempty span.
pub fn cox_de_boor(knots: &[f64], m: usize, n: usize, i: usize, t: f64) -> f64 {
    let span = (m..=n)
        .rev()
        .find(|&l| knots[l] <= t && knots[l] < knots[l + 1])
        .expect("t inside the interval");
    basis(knots, span, i, m, t)
}

fn basis(knots: &[f64], span: usize, i: usize, p: usize, t: f64) -> f64 {
    if p == 0 {
        return if i == span { 1.0 } else { 0.0 };
    }
    let mut v = 0.0;
    let d1 = knots[i + p] - knots[i];
    if d1 > 0.0 {
        v += (t - knots[i]) / d1 * basis(knots, span, i, p - 1, t);
    }
    let d2 = knots[i + p + 1] - knots[i + 1];
    if d2 > 0.0 {
        v += (knots[i + p + 1] - t) / d2 * basis(knots, span, i + 1, p - 1, t);
    }
    v
}

pub fn spline_oracle(knots: &[f64], m: usize, pts: &[Vec<f64>], t: f64) -> Vec<f64> {
    let n = pts.len() - 1;
    let mut out = vec![0.0; pts[0].len()];
    for (i, p) in pts.iter().enumerate() {
        let b = cox_de_boor(knots, m, n, i, t);
        for (o, c) in out.iter_mut().zip(p) {
            *o += b * c;
        }
    }
    out
}

/// Clamped knots for `count` controls of degree `m` with random interior
/// knots in (0, 1).
pub fn clamped_knots(r: &mut impl Rng, m: usize, count: usize) -> Vec<f64> {
    let interior = count - m - 1;
    let mut inner: Vec<f64> = (0..interior).map(|_| r.random_range(0.05..0.95)).collect();
    inner.sort_by(f64::total_cmp);
    let mut k = vec![0.0; m + 1];
    k.extend(inner);
    k.extend(vec![1.0; m + 1]);
    k
}

/// Great-circle interpolation from the sine formula.
pub fn slerp_oracle(t: f64, x: &Vector3<f64>, y: &Vector3<f64>) -> Vector3<f64> {
    let theta = x.dot(y).clamp(-1.0, 1.0).acos();
    if theta < 1e-15 {
        return *x;
    }
    (x * ((1.0 - t) * theta).sin() + y * (t * theta).sin()) / theta.sin()
}

/// `(x + y) / √det(x + y)`.
pub fn spd_midpoint_oracle(x: &Spd2Point, y: &Spd2Point) -> Matrix2<f64> {
    let s = x.matrix() + y.matrix();
    s / s.determinant().sqrt()
}

pub fn pose_diff(a: &PoseE3, b: &PoseE3) -> f64 {
    let ra: Matrix3<f64> = a.rotation;
    let rb: Matrix3<f64> = b.rotation;
    (ra - rb).abs().max().max((a.translation - b.translation).abs().max())
}
