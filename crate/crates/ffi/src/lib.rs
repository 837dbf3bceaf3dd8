//! C interface to geocurve.
//!
//! Spaces are opaque handles created by the `gc_space_*` constructors and
//! released with `gc_space_free`. Points cross the boundary as flat arrays of
//! `gc_space_point_dim(space)` doubles; a list of `count` points is
//! `count * point_dim` doubles laid out point after point. Points are taken
//! as given (no normalization) and validated by the space.
//!
//! Every fallible function returns a `GcStatus`. On failure the message is
//! available from `gc_last_error_message` on the same thread.

use std::cell::RefCell;
use std::ffi::{c_char, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;

use geocurve::bezier::{evaluate, ControlPolygon};
use geocurve::karcher::{centroid_curve, karcher_mean, sphere_counterexample, WeightedMeanProblem};
use geocurve::spaces::SpaceSpec;
use geocurve::spline::{de_boor, SplineDef};
use geocurve::{GeoError, GeodesicSpace, SpacePoint};

/// Result codes.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GcStatus {
    Ok = 0,
    NullPointer = 1,
    /// Bad lengths, parameters, weights or knots.
    InvalidArgument = 2,
    /// A point is not in the space, or inputs leave the uniqueness domain.
    DomainError = 3,
    /// The Karcher iteration hit its iteration cap.
    NonConvergence = 4,
    /// The space lacks log/exp maps needed by the operation.
    Unsupported = 5,
    Panic = 6,
}

/// Opaque handle to a geodesic space.
pub struct GcSpace {
    inner: Arc<dyn GeodesicSpace>,
}

/// Numbers from the equilateral spherical triangle comparison.
#[repr(C)]
#[derive(Debug, Clone, Copy, Default)]
pub struct GcCounterexample {
    pub alpha: f64,
    pub cos_theta: f64,
    pub z: f64,
    /// Midpoint of the quadratic Bézier curve.
    pub p_half: [f64; 3],
    pub midpoint_error: f64,
    /// Smallest `|<L(s), p2 x p0>|` over the sampled `s` grid.
    pub min_abs_inner: f64,
    pub lower_bound: f64,
    pub verdict: bool,
}

thread_local! {
    static LAST_ERROR: RefCell<CString> = RefCell::new(CString::default());
}

fn set_last_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).unwrap_or_default();
    LAST_ERROR.with(|e| *e.borrow_mut() = c);
}

struct Failure(GcStatus, String);

impl From<GeoError> for Failure {
    fn from(e: GeoError) -> Self {
        let status = match e {
            GeoError::NonConvergence { .. } => GcStatus::NonConvergence,
            GeoError::MissingCapability { .. } => GcStatus::Unsupported,
            GeoError::SpaceMismatch { .. }
            | GeoError::InvalidPoint(_)
            | GeoError::InvalidTangent(_)
            | GeoError::MixedBase
            | GeoError::DomainViolation(_) => GcStatus::DomainError,
            _ => GcStatus::InvalidArgument,
        };
        Failure(status, e.to_string())
    }
}

fn null(name: &str) -> Failure {
    Failure(GcStatus::NullPointer, format!("{name} is null"))
}

fn invalid(msg: impl Into<String>) -> Failure {
    Failure(GcStatus::InvalidArgument, msg.into())
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> GcStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            set_last_error("");
            GcStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_last_error(&msg);
            status
        }
        Err(_) => {
            set_last_error("internal panic");
            GcStatus::Panic
        }
    }
}

unsafe fn space_ref<'a>(space: *const GcSpace) -> Result<&'a GcSpace, Failure> {
    space.as_ref().ok_or_else(|| null("space"))
}

unsafe fn slice<'a>(ptr: *const f64, len: usize, name: &str) -> Result<&'a [f64], Failure> {
    if len == 0 {
        return Ok(&[]);
    }
    if ptr.is_null() {
        return Err(null(name));
    }
    Ok(std::slice::from_raw_parts(ptr, len))
}

fn point_dim(space: &GcSpace) -> usize {
    space.inner.descriptor().ambient_dim
}

unsafe fn read_points(
    space: &GcSpace,
    ptr: *const f64,
    count: usize,
    name: &str,
) -> Result<Vec<SpacePoint>, Failure> {
    let dim = point_dim(space);
    let flat = slice(ptr, count * dim, name)?;
    let kind = space.inner.kind();
    let pts: Vec<SpacePoint> = flat
        .chunks_exact(dim)
        .map(|c| SpacePoint::new(kind, c.to_vec()))
        .collect();
    for p in &pts {
        space.inner.check_point(p)?;
    }
    Ok(pts)
}

unsafe fn write_point(space: &GcSpace, p: &SpacePoint, out: *mut f64) -> Result<(), Failure> {
    if out.is_null() {
        return Err(null("out"));
    }
    let dim = point_dim(space);
    std::slice::from_raw_parts_mut(out, dim).copy_from_slice(&p.coords()[..dim]);
    Ok(())
}

unsafe fn make_space(out: *mut *mut GcSpace, spec: SpaceSpec) -> GcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let inner = spec.build()?;
        *out = Box::into_raw(Box::new(GcSpace { inner }));
        Ok(())
    })
}

/// Message of the last failed call on this thread ("" after a success).
/// The pointer stays valid until the next call on the same thread.
#[no_mangle]
pub extern "C" fn gc_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ptr())
}

/// Library version as a static NUL-terminated string.
#[no_mangle]
pub extern "C" fn gc_version() -> *const c_char {
    concat!(env!("CARGO_PKG_VERSION"), "\0").as_ptr().cast()
}

/// Euclidean space of dimension `dim`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn gc_space_euclidean(dim: usize, out: *mut *mut GcSpace) -> GcStatus {
    make_space(out, SpaceSpec::Euclidean { dim })
}

/// The unit sphere in R^3.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn gc_space_sphere(out: *mut *mut GcSpace) -> GcStatus {
    make_space(out, SpaceSpec::Sphere)
}

/// Taxicab plane whose representative geodesics run along slope `k`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn gc_space_manhattan(k: f64, out: *mut *mut GcSpace) -> GcStatus {
    make_space(out, SpaceSpec::Manhattan { k })
}

/// Paris metric over R^len with the given hub.
///
/// # Safety
/// `hub` must point to `len` doubles and `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_space_paris(
    hub: *const f64,
    len: usize,
    out: *mut *mut GcSpace,
) -> GcStatus {
    let hub = match slice(hub, len, "hub") {
        Ok(h) => h.to_vec(),
        Err(Failure(s, m)) => {
            set_last_error(&m);
            return s;
        }
    };
    make_space(out, SpaceSpec::Paris { hub })
}

/// Determinant-one SPD 2x2 matrices, points stored as `(a, b, c)` for
/// `[[a, b], [b, c]]`.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn gc_space_spd2(out: *mut *mut GcSpace) -> GcStatus {
    make_space(out, SpaceSpec::Spd2)
}

/// Rigid motions, points stored as row-major 4x4 matrices
/// `[[1, 0], [b, R]]`: first row `(1, 0, 0, 0)`, translation `b` in the
/// first column and the rotation `R` in the lower right block.
///
/// # Safety
/// `out` must be a valid pointer to writable storage for a handle.
#[no_mangle]
pub unsafe extern "C" fn gc_space_e3(out: *mut *mut GcSpace) -> GcStatus {
    make_space(out, SpaceSpec::E3)
}

/// Releases a handle. Null is ignored.
///
/// # Safety
/// `space` must come from a `gc_space_*` constructor and not be used again.
#[no_mangle]
pub unsafe extern "C" fn gc_space_free(space: *mut GcSpace) {
    if !space.is_null() {
        drop(Box::from_raw(space));
    }
}

/// Number of doubles per point (0 for a null handle).
///
/// # Safety
/// `space` must be null or a live handle.
#[no_mangle]
pub unsafe extern "C" fn gc_space_point_dim(space: *const GcSpace) -> usize {
    space.as_ref().map_or(0, point_dim)
}

/// Distance between two points.
///
/// # Safety
/// `x` and `y` must hold one point each; `out` must be writable.
#[no_mangle]
pub unsafe extern "C" fn gc_distance(
    space: *const GcSpace,
    x: *const f64,
    y: *const f64,
    out: *mut f64,
) -> GcStatus {
    guard(|| {
        let s = space_ref(space)?;
        let x = read_points(s, x, 1, "x")?;
        let y = read_points(s, y, 1, "y")?;
        if out.is_null() {
            return Err(null("out"));
        }
        *out = s.inner.distance(&x[0], &y[0])?;
        Ok(())
    })
}

/// Point at fraction `t` of the geodesic from `x` to `y`.
///
/// # Safety
/// `x` and `y` must hold one point each; `out` must have room for one point.
#[no_mangle]
pub unsafe extern "C" fn gc_affine(
    space: *const GcSpace,
    t: f64,
    x: *const f64,
    y: *const f64,
    out: *mut f64,
) -> GcStatus {
    guard(|| {
        let s = space_ref(space)?;
        let x = read_points(s, x, 1, "x")?;
        let y = read_points(s, y, 1, "y")?;
        let p = s.inner.affine(t, &x[0], &y[0])?;
        write_point(s, &p, out)
    })
}

/// Bézier curve point at `t` by de Casteljau. With non-null `weights`
/// (`count` positive values) the rational scheme is used.
///
/// # Safety
/// `points` must hold `count` points, `weights` null or `count` doubles,
/// and `out` room for one point.
#[no_mangle]
pub unsafe extern "C" fn gc_bezier_eval(
    space: *const GcSpace,
    points: *const f64,
    count: usize,
    weights: *const f64,
    t: f64,
    out: *mut f64,
) -> GcStatus {
    guard(|| {
        let s = space_ref(space)?;
        let pts = read_points(s, points, count, "points")?;
        let poly = if weights.is_null() {
            ControlPolygon::new(pts)?
        } else {
            let w = slice(weights, count, "weights")?.to_vec();
            ControlPolygon::with_weights(pts, w)?
        };
        let p = evaluate(s.inner.as_ref(), &poly, t)?;
        write_point(s, &p, out)
    })
}

/// Spline point at knot parameter `t` by de Boor.
///
/// Open splines take `count + degree + 1` knots. Closed splines ignore
/// `knots` (pass null) and use unit spacing with `t` in
/// `[degree, count + degree]`.
///
/// # Safety
/// `points` must hold `count` points, `knots` `knot_len` doubles (unless
/// `closed`), and `out` room for one point.
#[no_mangle]
pub unsafe extern "C" fn gc_spline_eval(
    space: *const GcSpace,
    points: *const f64,
    count: usize,
    degree: usize,
    knots: *const f64,
    knot_len: usize,
    closed: bool,
    t: f64,
    out: *mut f64,
) -> GcStatus {
    guard(|| {
        let s = space_ref(space)?;
        let pts = read_points(s, points, count, "points")?;
        let poly = ControlPolygon::new(pts)?;
        let spline = if closed {
            SplineDef::closed(&poly, degree)?
        } else {
            let k = slice(knots, knot_len, "knots")?.to_vec();
            SplineDef::new(k, degree, poly)?
        };
        let p = de_boor(s.inner.as_ref(), &spline, t)?;
        write_point(s, &p, out)
    })
}

/// Centroid curve point at `t`: the weighted mean with Bernstein weights.
///
/// # Safety
/// `points` must hold `count` points and `out` room for one point.
#[no_mangle]
pub unsafe extern "C" fn gc_centroid_eval(
    space: *const GcSpace,
    points: *const f64,
    count: usize,
    t: f64,
    out: *mut f64,
) -> GcStatus {
    guard(|| {
        let s = space_ref(space)?;
        let pts = read_points(s, points, count, "points")?;
        let poly = ControlPolygon::new(pts)?;
        let p = centroid_curve(s.inner.as_ref(), &poly, t)?;
        write_point(s, &p, out)
    })
}

/// Weighted Karcher mean. Weights must be nonnegative and sum to one.
/// `iterations` may be null.
///
/// # Safety
/// `points` must hold `count` points, `weights` `count` doubles, `out` room
/// for one point.
#[no_mangle]
pub unsafe extern "C" fn gc_karcher_mean(
    space: *const GcSpace,
    points: *const f64,
    weights: *const f64,
    count: usize,
    out: *mut f64,
    iterations: *mut usize,
) -> GcStatus {
    guard(|| {
        let s = space_ref(space)?;
        if count == 0 {
            return Err(invalid("need at least one point"));
        }
        let pts = read_points(s, points, count, "points")?;
        let w = slice(weights, count, "weights")?.to_vec();
        let problem = WeightedMeanProblem::new(pts, w)?;
        let sol = karcher_mean(s.inner.as_ref(), &problem, None)?;
        write_point(s, &sol.point, out)?;
        if !iterations.is_null() {
            *iterations = sol.iterations;
        }
        Ok(())
    })
}

/// Compares the quadratic Bézier curve and the centroid curve of an
/// equilateral spherical triangle with side `alpha` in (0, pi/2].
///
/// # Safety
/// `out` must be a valid pointer to a `GcCounterexample`.
#[no_mangle]
pub unsafe extern "C" fn gc_counterexample(alpha: f64, out: *mut GcCounterexample) -> GcStatus {
    guard(|| {
        if out.is_null() {
            return Err(null("out"));
        }
        let r = sphere_counterexample(alpha)?;
        let h = r.p_half.coords();
        *out = GcCounterexample {
            alpha: r.alpha,
            cos_theta: r.cos_theta,
            z: r.z,
            p_half: [h[0], h[1], h[2]],
            midpoint_error: r.midpoint_error,
            min_abs_inner: r.min_abs_inner,
            lower_bound: r.lower_bound,
            verdict: r.verdict,
        };
        Ok(())
    })
}
