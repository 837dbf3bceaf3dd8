//! Symmetric positive definite 2×2 matrices of determinant one, with the
//! affine-invariant metric `d(x, y) = ‖log(x^{-1/2} y x^{-1/2})‖_F`.
//!
//! Points are stored as `(a, b, c)` for `[[a, b], [b, c]]`; tangent vectors
//! use the same layout for symmetric matrices.

use nalgebra::Matrix2;

use crate::error::{GeoError, Result};
use crate::geodesic::{
    check_affine_args, check_shape, check_tangent_shape, Capabilities, GeodesicSpace,
    SpaceDescriptor, SpaceKind, SpacePoint, TangentVector,
};

const SYM_TOL: f64 = 1e-12;
const DET_TOL: f64 = 1e-10;
const TANGENT_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Spd2Point {
    pub a: f64,
    pub b: f64,
    pub c: f64,
}

/// Symmetric 2×2 eigendecomposition `λ₁ ≥ λ₂`, first eigenvector at angle `φ`.
#[derive(Debug, Clone, Copy)]
struct SymEig {
    l1: f64,
    l2: f64,
    cos: f64,
    sin: f64,
}

fn eig(a: f64, b: f64, c: f64) -> SymEig {
    let mean = 0.5 * (a + c);
    let half = 0.5 * (a - c);
    let r = half.hypot(b);
    let phi = 0.5 * b.atan2(half);
    SymEig {
        l1: mean + r,
        l2: mean - r,
        cos: phi.cos(),
        sin: phi.sin(),
    }
}

/// Applies `f` to the eigenvalues of a symmetric matrix.
fn sym_fn(m: &Matrix2<f64>, f: impl Fn(f64) -> f64) -> Matrix2<f64> {
    let b = 0.5 * (m[(0, 1)] + m[(1, 0)]);
    let e = eig(m[(0, 0)], b, m[(1, 1)]);
    let (f1, f2) = (f(e.l1), f(e.l2));
    let (c, s) = (e.cos, e.sin);
    Matrix2::new(
        f1 * c * c + f2 * s * s,
        (f1 - f2) * c * s,
        (f1 - f2) * c * s,
        f1 * s * s + f2 * c * c,
    )
}

fn symmetrize(m: Matrix2<f64>) -> Matrix2<f64> {
    (m + m.transpose()) * 0.5
}

impl Spd2Point {
    pub fn new(a: f64, b: f64, c: f64) -> Result<Self> {
        let p = Spd2Point { a, b, c };
        p.validate()?;
        Ok(p)
    }

    /// Rescales a positive definite matrix to determinant one.
    pub fn normalized(a: f64, b: f64, c: f64) -> Result<Self> {
        let det = a * c - b * b;
        if !(a > 0.0 && det > 0.0) {
            return Err(GeoError::InvalidPoint(
                "matrix is not positive definite".into(),
            ));
        }
        let s = det.sqrt();
        Self::new(a / s, b / s, c / s)
    }

    pub fn identity() -> Self {
        Spd2Point {
            a: 1.0,
            b: 0.0,
            c: 1.0,
        }
    }

    fn validate(&self) -> Result<()> {
        if ![self.a, self.b, self.c].iter().all(|v| v.is_finite()) {
            return Err(GeoError::InvalidPoint("non-finite entry".into()));
        }
        let e = eig(self.a, self.b, self.c);
        if e.l2 <= 0.0 {
            return Err(GeoError::InvalidPoint(format!(
                "matrix is not positive definite (smallest eigenvalue {})",
                e.l2
            )));
        }
        let det = self.det();
        if (det - 1.0).abs() > DET_TOL {
            return Err(GeoError::InvalidPoint(format!(
                "determinant must be 1 within 1e-10 (got {det})"
            )));
        }
        Ok(())
    }

    pub fn det(&self) -> f64 {
        self.a * self.c - self.b * self.b
    }

    pub fn matrix(&self) -> Matrix2<f64> {
        Matrix2::new(self.a, self.b, self.b, self.c)
    }

    fn from_matrix(m: Matrix2<f64>) -> Spd2Point {
        let m = symmetrize(m);
        Spd2Point {
            a: m[(0, 0)],
            b: m[(0, 1)],
            c: m[(1, 1)],
        }
    }

    pub fn from_rows(rows: [[f64; 2]; 2]) -> Result<Self> {
        if (rows[0][1] - rows[1][0]).abs() > SYM_TOL {
            return Err(GeoError::InvalidPoint(
                "matrix is not symmetric within 1e-12".into(),
            ));
        }
        Self::new(rows[0][0], rows[0][1], rows[1][1])
    }

    pub fn to_rows(&self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.b, self.c]]
    }

    pub fn from_point(p: &SpacePoint) -> Result<Self> {
        check_shape(SpaceKind::Spd2, 3, p)?;
        let c = p.coords();
        Self::new(c[0], c[1], c[2])
    }

    pub fn to_point(&self) -> SpacePoint {
        SpacePoint::new(SpaceKind::Spd2, vec![self.a, self.b, self.c])
    }

    fn sqrt_and_inv_sqrt(&self) -> (Matrix2<f64>, Matrix2<f64>) {
        let m = self.matrix();
        (sym_fn(&m, f64::sqrt), sym_fn(&m, |l| 1.0 / l.sqrt()))
    }

    /// `x^{-1/2} y x^{-1/2}` together with `x^{1/2}`.
    fn whiten(&self, y: &Spd2Point) -> (Matrix2<f64>, Matrix2<f64>) {
        let (s, si) = self.sqrt_and_inv_sqrt();
        (symmetrize(si * y.matrix() * si), s)
    }
}

/// `x (x⁻¹ y)^t`, evaluated as `x^{1/2} (x^{-1/2} y x^{-1/2})^t x^{1/2}`.
/// Valid for any real `t`.
pub fn spd2_geodesic(t: f64, x: &Spd2Point, y: &Spd2Point) -> Spd2Point {
    let (w, s) = x.whiten(y);
    Spd2Point::from_matrix(s * sym_fn(&w, |l| l.powf(t)) * s)
}

pub fn spd2_affine(t: f64, x: &Spd2Point, y: &Spd2Point) -> Result<Spd2Point> {
    crate::error::check_unit("t", t)?;
    Ok(if t == 0.0 {
        *x
    } else if t == 1.0 {
        *y
    } else {
        spd2_geodesic(t, x, y)
    })
}

pub fn spd2_distance(x: &Spd2Point, y: &Spd2Point) -> f64 {
    let (w, _) = x.whiten(y);
    let e = eig(w[(0, 0)], w[(0, 1)], w[(1, 1)]);
    e.l1.ln().hypot(e.l2.ln())
}

fn tangent_matrix(v: &TangentVector) -> Matrix2<f64> {
    let c = v.components();
    Matrix2::new(c[0], c[1], c[1], c[2])
}

#[derive(Debug, Clone)]
pub struct Spd2Space {
    descriptor: SpaceDescriptor,
}

impl Default for Spd2Space {
    fn default() -> Self {
        Self::new()
    }
}

impl Spd2Space {
    pub fn new() -> Self {
        Spd2Space {
            descriptor: SpaceDescriptor {
                kind: SpaceKind::Spd2,
                ambient_dim: 3,
                tangent_dim: 3,
                capabilities: Capabilities {
                    has_log_exp: true,
                    is_unique_geodesic: true,
                    satisfies_condition_1: false,
                },
                domain_constraint: "all SPD 2x2 matrices of determinant one (Hadamard manifold)"
                    .into(),
            },
        }
    }
}

impl GeodesicSpace for Spd2Space {
    fn descriptor(&self) -> &SpaceDescriptor {
        &self.descriptor
    }

    fn check_point(&self, p: &SpacePoint) -> Result<()> {
        Spd2Point::from_point(p).map(|_| ())
    }

    fn distance(&self, x: &SpacePoint, y: &SpacePoint) -> Result<f64> {
        Ok(spd2_distance(
            &Spd2Point::from_point(x)?,
            &Spd2Point::from_point(y)?,
        ))
    }

    fn affine(&self, t: f64, x: &SpacePoint, y: &SpacePoint) -> Result<SpacePoint> {
        check_affine_args(self, t, x, y)?;
        self.geodesic_point(t, x, y)
    }

    fn geodesic_point(&self, t: f64, x: &SpacePoint, y: &SpacePoint) -> Result<SpacePoint> {
        let (a, b) = (Spd2Point::from_point(x)?, Spd2Point::from_point(y)?);
        if !t.is_finite() {
            return Err(GeoError::ParameterOutOfRange {
                name: "t",
                value: t,
                range: "the real line",
            });
        }
        Ok(if t == 0.0 {
            x.clone()
        } else if t == 1.0 {
            y.clone()
        } else {
            spd2_geodesic(t, &a, &b).to_point()
        })
    }

    fn log(&self, x: &SpacePoint, y: &SpacePoint) -> Result<TangentVector> {
        let (a, b) = (Spd2Point::from_point(x)?, Spd2Point::from_point(y)?);
        let (w, s) = a.whiten(&b);
        let v = symmetrize(s * sym_fn(&w, f64::ln) * s);
        Ok(TangentVector::new(
            x.clone(),
            vec![v[(0, 0)], v[(0, 1)], v[(1, 1)]],
        ))
    }

    fn exp(&self, v: &TangentVector) -> Result<SpacePoint> {
        self.check_tangent(v)?;
        let x = Spd2Point::from_point(v.base())?;
        let (s, si) = x.sqrt_and_inv_sqrt();
        let w = symmetrize(si * tangent_matrix(v) * si);
        Ok(Spd2Point::from_matrix(s * sym_fn(&w, f64::exp) * s).to_point())
    }

    fn tangent_norm(&self, v: &TangentVector) -> Result<f64> {
        self.check_tangent(v)?;
        let x = Spd2Point::from_point(v.base())?;
        let (_, si) = x.sqrt_and_inv_sqrt();
        Ok((si * tangent_matrix(v) * si).norm())
    }

    fn check_tangent(&self, v: &TangentVector) -> Result<()> {
        let x = Spd2Point::from_point(v.base())?;
        check_tangent_shape(SpaceKind::Spd2, 3, v)?;
        // Tangent to the det-1 submanifold: tr(x⁻¹ v) = 0.
        let inv = Matrix2::new(x.c, -x.b, -x.b, x.a);
        let tr = (inv * tangent_matrix(v)).trace();
        if tr.abs() > TANGENT_TOL * (1.0 + tangent_matrix(v).norm()) {
            return Err(GeoError::InvalidTangent(format!(
                "tr(x^-1 v) = {tr:e} is not zero"
            )));
        }
        Ok(())
    }
}
