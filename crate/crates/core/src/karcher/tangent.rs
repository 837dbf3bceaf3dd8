use crate::bezier::ControlPolygon;
use crate::error::{GeoError, Result};
use crate::geodesic::{GeodesicSpace, TangentVector};

use super::centroid_curve;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Endpoint {
    Start,
    End,
}

/// Finite-difference velocity of the centroid curve at an endpoint next to
/// the closed form `n log_{p_0} p_1` (start) or `-n log_{p_n} p_{n-1}` (end).
#[derive(Debug, Clone, PartialEq)]
pub struct TangentCheck {
    pub fd: TangentVector,
    pub exact: TangentVector,
    /// Norm of `fd - exact` at the endpoint.
    pub defect: f64,
}

pub fn endpoint_tangent_check<S: GeodesicSpace + ?Sized>(
    space: &S,
    poly: &ControlPolygon,
    h: f64,
    end: Endpoint,
) -> Result<TangentCheck> {
    if !(h > 0.0 && h <= 0.1) {
        return Err(GeoError::ParameterOutOfRange {
            name: "h",
            value: h,
            range: "(0, 0.1]",
        });
    }
    let pts = poly.points();
    let n = poly.degree();
    let (fd, exact) = match end {
        Endpoint::Start => {
            let q = centroid_curve(space, poly, h)?;
            let fd = space.log(&pts[0], &q)?.scaled(1.0 / h);
            (fd, space.log(&pts[0], &pts[1])?.scaled(n as f64))
        }
        Endpoint::End => {
            let q = centroid_curve(space, poly, 1.0 - h)?;
            let fd = space.log(&pts[n], &q)?.scaled(-1.0 / h);
            (fd, space.log(&pts[n], &pts[n - 1])?.scaled(-(n as f64)))
        }
    };
    let defect = space.tangent_norm(&fd.sub(&exact)?)?;
    Ok(TangentCheck { fd, exact, defect })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::karcher::equilateral_triangle;
    use crate::spaces::{EuclideanSpace, SphereSpace};

    #[test]
    fn euclidean_cubic_tangents() {
        let e = EuclideanSpace::new(2).unwrap();
        let poly = ControlPolygon::new(
            [[0.0, 0.0], [1.0, 2.0], [3.0, 2.0], [4.0, 0.0]]
                .iter()
                .map(|c| e.point(c).unwrap())
                .collect(),
        )
        .unwrap();
        let c = endpoint_tangent_check(&e, &poly, 1e-2, Endpoint::Start).unwrap();
        assert_eq!(c.exact.components(), &[3.0, 6.0]);
        let c2 = endpoint_tangent_check(&e, &poly, 5e-3, Endpoint::Start).unwrap();
        assert!(c2.defect / c.defect <= 0.75);
        let end = endpoint_tangent_check(&e, &poly, 1e-3, Endpoint::End).unwrap();
        assert!((end.exact.components()[0] - 3.0).abs() < 1e-12);
        assert!(end.defect < 0.1);
    }

    #[test]
    fn sphere_quadratic_first_order() {
        let s = SphereSpace::new();
        let poly = ControlPolygon::new(equilateral_triangle(std::f64::consts::FRAC_PI_3).to_vec())
            .unwrap();
        let d: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
            .iter()
            .map(|&h| {
                endpoint_tangent_check(&s, &poly, h, Endpoint::Start)
                    .unwrap()
                    .defect
            })
            .collect();
        assert!(d[1] / d[0] <= 0.75 && d[2] / d[1] <= 0.75, "{d:?}");
    }

    #[test]
    fn step_range() {
        let e = EuclideanSpace::new(1).unwrap();
        let poly =
            ControlPolygon::new(vec![e.point(&[0.0]).unwrap(), e.point(&[1.0]).unwrap()]).unwrap();
        assert!(endpoint_tangent_check(&e, &poly, 0.0, Endpoint::Start).is_err());
        assert!(endpoint_tangent_check(&e, &poly, 0.2, Endpoint::End).is_err());
    }
}
