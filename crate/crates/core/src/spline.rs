//! Splines through the de Boor algorithm.
//!
//! For `t` in the span `[τ_l, τ_{l+1})` the scheme starts from
//! `p_{l-m}, …, p_l` and at level `r` forms
//! `p_i^r = Φ_α(p_{i-1}^{r-1}, p_i^{r-1})` with
//! `α = (t - τ_i) / (τ_{i+m-r+1} - τ_i)`, for `i = l-m+r, …, l`.
//! The result is `p_l^m`. In `ℝⁿ` this is the classical B-spline.

use crate::bezier::ControlPolygon;
use crate::error::{GeoError, Result};
use crate::geodesic::{GeodesicSpace, SpacePoint};

/// Nondecreasing knots `τ_0 ≤ … ≤ τ_{m+n+1}` for degree `m` and `n + 1`
/// control points.
#[derive(Debug, Clone, PartialEq)]
pub struct KnotVector {
    knots: Vec<f64>,
    degree: usize,
}

impl KnotVector {
    /// Validates the knots against a degree and a control count.
    ///
    /// Requires `n ≥ m`, `τ_m < τ_{m+1}`, `τ_n < τ_{n+1}` and multiplicities
    /// of at most `m + 1` (equivalently `τ_k < τ_{k+m+1}`).
    pub fn new(knots: Vec<f64>, degree: usize, control_count: usize) -> Result<Self> {
        let bad = |msg: String| Err(GeoError::InvalidKnots(msg));
        if degree < 1 {
            return bad("degree must be at least 1".into());
        }
        if control_count < degree + 1 {
            return bad(format!(
                "degree {degree} needs at least {} control points, got {control_count}",
                degree + 1
            ));
        }
        let n = control_count - 1;
        if knots.len() != degree + n + 2 {
            return bad(format!(
                "degree {degree} with {control_count} control points needs {} knots, got {}",
                degree + n + 2,
                knots.len()
            ));
        }
        if let Some(i) = knots.iter().position(|k| !k.is_finite()) {
            return bad(format!("knot {i} is not finite"));
        }
        if let Some(i) = knots.windows(2).position(|w| w[1] < w[0]) {
            return bad(format!("knots decrease at index {}", i + 1));
        }
        if let Some(k) = (0..knots.len() - degree - 1).find(|&k| knots[k] >= knots[k + degree + 1])
        {
            return bad(format!(
                "knot {} has multiplicity above {}",
                knots[k],
                degree + 1
            ));
        }
        let nonempty = |a: f64, b: f64| a.partial_cmp(&b) == Some(std::cmp::Ordering::Less);
        if !nonempty(knots[degree], knots[degree + 1]) || !nonempty(knots[n], knots[n + 1]) {
            return bad("the first and last spans of the parameter interval are empty".into());
        }
        Ok(KnotVector { knots, degree })
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn control_count(&self) -> usize {
        self.knots.len() - self.degree - 1
    }

    /// `[τ_m, τ_{n+1}]`.
    pub fn interval(&self) -> (f64, f64) {
        (self.knots[self.degree], self.knots[self.control_count()])
    }

    /// Number of knots equal to `t`.
    pub fn multiplicity(&self, t: f64) -> usize {
        self.knots.iter().filter(|&&k| k == t).count()
    }
}

/// Index `l` with `τ_l ≤ t < τ_{l+1}`; the right end of the interval maps to
/// the last nonempty span.
pub fn locate_span(knots: &KnotVector, t: f64) -> Result<usize> {
    let (lo, hi) = knots.interval();
    if !(t >= lo && t <= hi) {
        return Err(GeoError::ParameterOutOfRange {
            name: "t",
            value: t,
            range: "the knot parameter interval",
        });
    }
    let tau = knots.knots();
    let (m, n) = (knots.degree(), knots.control_count() - 1);
    if t == hi {
        return Ok((m..=n).rev().find(|&l| tau[l] < tau[l + 1]).unwrap_or(n));
    }
    // Last l in [m, n] with τ_l ≤ t.
    let l = m + tau[m..=n].partition_point(|&k| k <= t) - 1;
    Ok(l)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SplineDef {
    knots: KnotVector,
    controls: ControlPolygon,
    closed: bool,
}

impl SplineDef {
    pub fn new(knots: Vec<f64>, degree: usize, controls: ControlPolygon) -> Result<Self> {
        if controls.weights().is_some() {
            return Err(GeoError::InvalidControlPolygon(
                "splines take unweighted control points".into(),
            ));
        }
        let knots = KnotVector::new(knots, degree, controls.points().len())?;
        Ok(SplineDef {
            knots,
            controls,
            closed: false,
        })
    }

    /// Closed spline of degree `m`: the first `m` controls are appended again
    /// and the knots are `0, 1, …, N + 2m`, so the curve runs over `[m, N + m]`
    /// and returns to its start.
    pub fn closed(controls: &ControlPolygon, degree: usize) -> Result<Self> {
        let base = controls.points();
        if degree < 1 {
            return Err(GeoError::InvalidKnots("degree must be at least 1".into()));
        }
        if base.len() < degree + 1 {
            return Err(GeoError::InvalidControlPolygon(format!(
                "a closed spline of degree {degree} needs at least {} control points, got {}",
                degree + 1,
                base.len()
            )));
        }
        let mut pts = base.to_vec();
        pts.extend(base[..degree].iter().cloned());
        let knots = (0..pts.len() + degree + 1).map(|k| k as f64).collect();
        let mut def = SplineDef::new(knots, degree, ControlPolygon::new(pts)?)?;
        def.closed = true;
        Ok(def)
    }

    pub fn knots(&self) -> &KnotVector {
        &self.knots
    }

    pub fn controls(&self) -> &ControlPolygon {
        &self.controls
    }

    pub fn degree(&self) -> usize {
        self.knots.degree
    }

    pub fn is_closed(&self) -> bool {
        self.closed
    }

    pub fn interval(&self) -> (f64, f64) {
        self.knots.interval()
    }

    /// Maps `u ∈ [0, 1]` affinely onto the parameter interval.
    pub fn param_at(&self, u: f64) -> f64 {
        let (lo, hi) = self.interval();
        if u == 1.0 {
            hi
        } else {
            lo + u * (hi - lo)
        }
    }
}

/// Which denominator the local parameter uses at level `r`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DeBoorIndexing {
    /// `τ_{i+m-r+1} - τ_i`, the classical B-spline recursion.
    #[default]
    Classical,
    /// `τ_{i+m-r} - τ_i`. Degenerates at the last level, where the
    /// denominator is always zero; kept for comparison only.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct DeBoorOptions {
    pub indexing: DeBoorIndexing,
    /// At a knot of multiplicity `μ`, stop after `m - μ` levels and return
    /// `p_{l-μ}^{m-μ}`.
    pub shorten_at_knots: bool,
}

impl Default for DeBoorOptions {
    fn default() -> Self {
        DeBoorOptions {
            indexing: DeBoorIndexing::Classical,
            shorten_at_knots: true,
        }
    }
}

pub fn de_boor<S: GeodesicSpace + ?Sized>(
    space: &S,
    spline: &SplineDef,
    t: f64,
) -> Result<SpacePoint> {
    de_boor_with(space, spline, t, DeBoorOptions::default())
}

pub fn de_boor_with<S: GeodesicSpace + ?Sized>(
    space: &S,
    spline: &SplineDef,
    t: f64,
    opts: DeBoorOptions,
) -> Result<SpacePoint> {
    let l = locate_span(&spline.knots, t)?;
    let m = spline.degree();
    let tau = spline.knots.knots();
    let pts = spline.controls.points();
    pts[l - m..=l]
        .iter()
        .try_for_each(|p| space.check_point(p))?;

    let mu = if opts.shorten_at_knots && tau[l] == t {
        spline.knots.multiplicity(t).min(m)
    } else {
        0
    };
    let levels = m - mu;
    let top = l - mu;
    // row[j] holds p_{l-m+j}^r.
    let mut row: Vec<SpacePoint> = pts[l - m..=top].to_vec();
    for r in 1..=levels {
        for i in (l - m + r..=top).rev() {
            let upper = match opts.indexing {
                DeBoorIndexing::Classical => i + m - r + 1,
                DeBoorIndexing::AsPrinted => i + m - r,
            };
            let denom = tau[upper] - tau[i];
            if denom == 0.0 {
                return Err(GeoError::InvalidKnots(format!(
                    "zero knot difference τ[{upper}] - τ[{i}] at level {r}"
                )));
            }
            let alpha = (t - tau[i]) / denom;
            let j = i - (l - m);
            row[j] = space.affine(alpha, &row[j - 1], &row[j])?;
        }
    }
    Ok(row.swap_remove(top - (l - m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bezier::de_casteljau;
    use crate::spaces::{EuclideanSpace, SphereSpace};

    fn plane_poly(raw: &[[f64; 2]]) -> (EuclideanSpace, ControlPolygon) {
        let e = EuclideanSpace::new(2).unwrap();
        let pts = raw.iter().map(|c| e.point(c).unwrap()).collect();
        (e, ControlPolygon::new(pts).unwrap())
    }

    // Cox–de Boor basis recursion with the 0/0 := 0 convention.
    fn basis(knots: &[f64], i: usize, m: usize, t: f64, last: bool) -> f64 {
        if m == 0 {
            let inside = knots[i] <= t && t < knots[i + 1];
            let closing = last && t == knots[i + 1] && knots[i] < knots[i + 1];
            return if inside || closing { 1.0 } else { 0.0 };
        }
        let mut v = 0.0;
        let d1 = knots[i + m] - knots[i];
        if d1 > 0.0 {
            v += (t - knots[i]) / d1 * basis(knots, i, m - 1, t, last);
        }
        let d2 = knots[i + m + 1] - knots[i + 1];
        if d2 > 0.0 {
            v += (knots[i + m + 1] - t) / d2 * basis(knots, i + 1, m - 1, t, last);
        }
        v
    }

    fn oracle(knots: &[f64], m: usize, pts: &[[f64; 2]], t: f64) -> [f64; 2] {
        let at_end = t == knots[pts.len()];
        let mut out = [0.0; 2];
        for (i, p) in pts.iter().enumerate() {
            let b = basis(knots, i, m, t, at_end);
            out[0] += b * p[0];
            out[1] += b * p[1];
        }
        out
    }

    #[test]
    fn span_lookup() {
        let kv = KnotVector::new((0..8).map(f64::from).collect(), 3, 4).unwrap();
        assert_eq!(kv.interval(), (3.0, 4.0));
        assert_eq!(locate_span(&kv, 3.5).unwrap(), 3);
        assert_eq!(locate_span(&kv, 4.0).unwrap(), 3);
        let kv = KnotVector::new((0..10).map(f64::from).collect(), 3, 6).unwrap();
        assert_eq!(locate_span(&kv, 4.0).unwrap(), 4);
        assert_eq!(locate_span(&kv, 6.0).unwrap(), 5);
        assert!(locate_span(&kv, 2.9).is_err());
        assert!(locate_span(&kv, 6.1).is_err());
    }

    #[test]
    fn right_end_skips_empty_spans() {
        let kv = KnotVector::new(vec![0., 0., 0., 1., 2., 2., 2.], 2, 4).unwrap();
        assert_eq!(locate_span(&kv, 2.0).unwrap(), 3);
    }

    #[test]
    fn knot_validation() {
        assert!(KnotVector::new(vec![0., 0., 0., 0., 1., 1., 1., 1.], 3, 4).is_ok());
        assert!(KnotVector::new(vec![0., 0., 1., 1., 1.], 3, 4).is_err());
        assert!(KnotVector::new(vec![0., 0., 0., 0., 0., 1., 1., 1., 1.], 3, 5).is_err());
        assert!(KnotVector::new(vec![0., 1., 0.5, 2., 3., 4., 5., 6.], 3, 4).is_err());
        assert!(KnotVector::new(vec![0., 1., 2., 3., 4.], 1, 2).is_err());
        assert!(KnotVector::new(vec![0., 1., 2., 3.], 0, 3).is_err());
        assert!(KnotVector::new(vec![0., 1., 2.], 2, 1).is_err());
    }

    #[test]
    fn bezier_knots_reproduce_de_casteljau() {
        let raw = [[0.0, 0.0], [0.0, 1.0], [1.0, 1.0], [1.0, 0.0]];
        let (e, poly) = plane_poly(&raw);
        let sp = SplineDef::new(vec![0., 0., 0., 0., 1., 1., 1., 1.], 3, poly.clone()).unwrap();
        for j in 0..=100 {
            let t = j as f64 / 100.0;
            let a = de_boor(&e, &sp, t).unwrap();
            let b = de_casteljau(&e, &poly, t).unwrap();
            assert!(e.distance(&a, &b).unwrap() < 1e-12, "t={t}");
        }
    }

    #[test]
    fn clamped_cubic_matches_basis_form() {
        let raw = [
            [0.0, 0.0],
            [1.0, 2.0],
            [2.0, -1.0],
            [4.0, 0.5],
            [5.0, 3.0],
            [6.0, 0.0],
        ];
        let knots = vec![0., 0., 0., 0., 1., 2.5, 4., 4., 4., 4.];
        let (e, poly) = plane_poly(&raw);
        let sp = SplineDef::new(knots.clone(), 3, poly).unwrap();
        assert_eq!(de_boor(&e, &sp, 0.0).unwrap().coords(), &raw[0]);
        for j in 0..=100 {
            let t = 4.0 * j as f64 / 100.0;
            let got = de_boor(&e, &sp, t).unwrap();
            let want = oracle(&knots, 3, &raw, t);
            let err = (got.coords()[0] - want[0]).hypot(got.coords()[1] - want[1]);
            assert!(err < 1e-10, "t={t} err={err}");
        }
        let end = de_boor(&e, &sp, 4.0).unwrap();
        assert!(e.distance(&end, &e.point(&raw[5]).unwrap()).unwrap() < 1e-12);
    }

    #[test]
    fn shortened_and_full_schemes_agree() {
        let raw = [
            [0.0, 0.0],
            [1.0, 2.0],
            [2.0, -1.0],
            [4.0, 0.5],
            [5.0, 3.0],
            [6.0, 0.0],
        ];
        let knots = vec![0., 0., 0., 0., 2., 2., 4., 4., 4., 4.];
        let (e, poly) = plane_poly(&raw);
        let sp = SplineDef::new(knots, 3, poly).unwrap();
        let full = DeBoorOptions {
            shorten_at_knots: false,
            ..Default::default()
        };
        let a = de_boor(&e, &sp, 2.0).unwrap();
        let b = de_boor_with(&e, &sp, 2.0, full).unwrap();
        assert!(e.distance(&a, &b).unwrap() < 1e-12);
    }

    #[test]
    fn printed_indexing_degenerates() {
        let (e, poly) = plane_poly(&[[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]]);
        let sp = SplineDef::new(vec![0., 0., 0., 1., 1., 1.], 2, poly).unwrap();
        let opts = DeBoorOptions {
            indexing: DeBoorIndexing::AsPrinted,
            shorten_at_knots: false,
        };
        assert!(matches!(
            de_boor_with(&e, &sp, 0.5, opts),
            Err(GeoError::InvalidKnots(_))
        ));
    }

    #[test]
    fn constant_polygon_gives_constant_curve() {
        let s = SphereSpace::new();
        let x = s.project([0.3, -0.2, 0.9]).unwrap();
        let poly = ControlPolygon::new(vec![x.clone(); 5]).unwrap();
        let sp = SplineDef::new((0..9).map(f64::from).collect(), 3, poly.clone()).unwrap();
        let cl = SplineDef::closed(&poly, 3).unwrap();
        for u in [0.0, 0.3, 0.77, 1.0] {
            assert_eq!(de_boor(&s, &sp, sp.param_at(u)).unwrap(), x);
            assert_eq!(de_boor(&s, &cl, cl.param_at(u)).unwrap(), x);
        }
    }

    #[test]
    fn closed_cubic_is_periodic() {
        let raw = [[0.0, 0.0], [2.0, 0.0], [2.0, 2.0], [0.0, 2.0]];
        let (e, poly) = plane_poly(&raw);
        let sp = SplineDef::closed(&poly, 3).unwrap();
        assert_eq!(sp.interval(), (3.0, 7.0));
        assert_eq!(sp.controls().points().len(), 7);
        let a = de_boor(&e, &sp, 3.0).unwrap();
        let b = de_boor(&e, &sp, 7.0).unwrap();
        assert!(e.distance(&a, &b).unwrap() < 1e-10);
        // Uniform cubic: (p0 + 4 p1 + p2) / 6 at the start of the interval.
        assert!(
            (a.coords()[0] - 5.0 / 3.0).abs() < 1e-12 && (a.coords()[1] - 1.0 / 3.0).abs() < 1e-12
        );
        assert!(SplineDef::closed(&poly, 4).is_err());
    }

    #[test]
    fn rejects_out_of_interval_parameters() {
        let (e, poly) = plane_poly(&[[0.0, 0.0], [1.0, 1.0], [2.0, 0.0]]);
        let sp = SplineDef::new(vec![0., 0., 0., 1., 1., 1.], 2, poly).unwrap();
        assert!(de_boor(&e, &sp, -0.1).is_err());
        assert!(de_boor(&e, &sp, 1.1).is_err());
        assert!(de_boor(&e, &sp, f64::NAN).is_err());
    }
}
