//! Polyline previews.
//!
//! Planar data is drawn as is. Three-dimensional data (sphere points, SPD
//! entries `(a, b, c)`, E3 translations, the first three Euclidean
//! coordinates) goes through a fixed orthographic camera with screen axes
//! `(-1, 1, 0)/√2` and `(-1, -1, 2)/√6`.

use std::fmt::Write;

use crate::geodesic::{SpaceKind, SpacePoint};

const WIDTH: f64 = 640.0;
const HEIGHT: f64 = 480.0;
const MARGIN: f64 = 24.0;

pub struct Layer {
    pub points: Vec<[f64; 2]>,
    pub stroke: &'static str,
    pub dashed: bool,
    pub markers: bool,
}

fn camera(p: [f64; 3]) -> [f64; 2] {
    let s2 = std::f64::consts::SQRT_2;
    let s6 = 6f64.sqrt();
    [(-p[0] + p[1]) / s2, (-p[0] - p[1] + 2.0 * p[2]) / s6]
}

/// Screen-plane position of a point (y up).
pub fn project(p: &SpacePoint) -> [f64; 2] {
    let c = p.coords();
    match p.space() {
        SpaceKind::E3 => camera([c[4], c[8], c[12]]),
        SpaceKind::Sphere | SpaceKind::Spd2 => camera([c[0], c[1], c[2]]),
        _ => match c.len() {
            1 => [c[0], 0.0],
            2 => [c[0], c[1]],
            _ => camera([c[0], c[1], c[2]]),
        },
    }
}

pub fn render(layers: &[Layer]) -> String {
    let all = layers.iter().flat_map(|l| l.points.iter());
    let (mut lo, mut hi) = ([f64::INFINITY; 2], [f64::NEG_INFINITY; 2]);
    for p in all {
        for k in 0..2 {
            lo[k] = lo[k].min(p[k]);
            hi[k] = hi[k].max(p[k]);
        }
    }
    if !lo[0].is_finite() {
        lo = [0.0; 2];
        hi = [1.0; 2];
    }
    let span = (hi[0] - lo[0]).max(hi[1] - lo[1]).max(1e-12);
    let scale = ((WIDTH - 2.0 * MARGIN).min(HEIGHT - 2.0 * MARGIN)) / span;
    let to_screen = |p: &[f64; 2]| {
        (
            MARGIN + (p[0] - lo[0]) * scale,
            HEIGHT - MARGIN - (p[1] - lo[1]) * scale,
        )
    };

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{HEIGHT}" viewBox="0 0 {WIDTH} {HEIGHT}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for layer in layers {
        let pts: Vec<String> = layer
            .points
            .iter()
            .map(|p| {
                let (x, y) = to_screen(p);
                format!("{x:.3},{y:.3}")
            })
            .collect();
        let dash = if layer.dashed {
            r#" stroke-dasharray="4 3""#
        } else {
            ""
        };
        let _ = writeln!(
            out,
            r#"<polyline fill="none" stroke="{}" stroke-width="1.5"{dash} points="{}"/>"#,
            layer.stroke,
            pts.join(" ")
        );
        if layer.markers {
            for p in &layer.points {
                let (x, y) = to_screen(p);
                let _ = writeln!(
                    out,
                    r#"<circle cx="{x:.3}" cy="{y:.3}" r="3" fill="{}"/>"#,
                    layer.stroke
                );
            }
        }
    }
    out.push_str("</svg>\n");
    out
}
