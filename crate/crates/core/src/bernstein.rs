//! Bernstein polynomials `B_i^n(t) = C(n,i) t^i (1-t)^(n-i)`.
//!
//! Values come from the triangular recurrence
//! `B_i^r = (1-t) B_i^(r-1) + t B_(i-1)^(r-1)`, so no factorials appear.

use crate::error::{check_unit, GeoError, Result};

/// All `B_0^n(t), …, B_n^n(t)`.
pub fn bernstein_all(n: usize, t: f64) -> Result<Vec<f64>> {
    check_unit("t", t)?;
    Ok(bernstein_row(n, t))
}

pub fn bernstein(i: usize, n: usize, t: f64) -> Result<f64> {
    if i > n {
        return Err(GeoError::IndexOutOfRange {
            index: i,
            degree: n,
        });
    }
    Ok(bernstein_all(n, t)?[i])
}

pub(crate) fn bernstein_row(n: usize, t: f64) -> Vec<f64> {
    let s = 1.0 - t;
    let mut row = vec![0.0; n + 1];
    row[0] = 1.0;
    for r in 1..=n {
        for i in (1..=r).rev() {
            row[i] = s * row[i] + t * row[i - 1];
        }
        row[0] *= s;
    }
    row
}

/// Binomial coefficients `C(n, 0..=n)` via Pascal's triangle.
pub fn binomial_row(n: usize) -> Vec<f64> {
    let mut row = vec![0.0; n + 1];
    row[0] = 1.0;
    for r in 1..=n {
        for i in (1..=r).rev() {
            row[i] += row[i - 1];
        }
    }
    row
}
