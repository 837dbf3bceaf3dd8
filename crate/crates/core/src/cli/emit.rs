//! CSV and JSON output documents.

use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use super::config::CurveConfig;
use crate::bezier::CurveSample;
use crate::geodesic::{SpaceKind, SpacePoint};
use crate::karcher::CounterexampleReport;

/// 17 significant digits, enough to round-trip any f64.
pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn coord_names(kind: SpaceKind, dim: usize) -> Vec<String> {
    match kind {
        SpaceKind::Sphere => ["x", "y", "z"].map(String::from).to_vec(),
        SpaceKind::Manhattan => ["x", "y"].map(String::from).to_vec(),
        SpaceKind::Spd2 => ["a", "b", "c"].map(String::from).to_vec(),
        SpaceKind::E3 => (0..16).map(|k| format!("m{}{}", k / 4, k % 4)).collect(),
        SpaceKind::Euclidean | SpaceKind::Paris => (0..dim).map(|i| format!("x{i}")).collect(),
    }
}

fn row(lead: &[String], p: &SpacePoint) -> String {
    lead.iter()
        .cloned()
        .chain(p.coords().iter().map(|&c| num(c)))
        .collect::<Vec<_>>()
        .join(",")
}

/// SHA-256 of the canonical JSON form of the effective config.
pub fn inputs_hash(config: &CurveConfig) -> String {
    let bytes = serde_json::to_vec(config).expect("config serializes");
    Sha256::digest(&bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

pub fn provenance(verb: &str, config: &CurveConfig) -> Value {
    json!({
        "tool": "geocurve",
        "version": env!("CARGO_PKG_VERSION"),
        "verb": verb,
        "algorithm": config.algorithm.as_str(),
        "space": config.space.clone(),
        "inputs_hash": inputs_hash(config),
    })
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value serializes");
    s.push('\n');
    s
}

pub fn samples_csv(kind: SpaceKind, samples: &[CurveSample]) -> String {
    let dim = samples.first().map_or(0, |s| s.point.dim());
    let mut out = std::iter::once("t".to_string())
        .chain(coord_names(kind, dim))
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    for s in samples {
        out.push_str(&row(&[num(s.t)], &s.point));
        out.push('\n');
    }
    out
}

pub fn samples_json(verb: &str, config: &CurveConfig, samples: &[CurveSample]) -> String {
    pretty(&json!({
        "provenance": provenance(verb, config),
        "config": config,
        "samples": samples,
    }))
}

pub fn split_csv(kind: SpaceKind, left: &[SpacePoint], right: &[SpacePoint]) -> String {
    let dim = left.first().map_or(0, SpacePoint::dim);
    let mut out = ["piece".to_string(), "index".to_string()]
        .into_iter()
        .chain(coord_names(kind, dim))
        .collect::<Vec<_>>()
        .join(",");
    out.push('\n');
    for (name, pts) in [("left", left), ("right", right)] {
        for (i, p) in pts.iter().enumerate() {
            out.push_str(&row(&[name.to_string(), i.to_string()], p));
            out.push('\n');
        }
    }
    out
}

pub fn split_json(
    verb: &str,
    config: &CurveConfig,
    left: &[SpacePoint],
    right: &[SpacePoint],
) -> String {
    pretty(&json!({
        "provenance": provenance(verb, config),
        "config": config,
        "left": left,
        "right": right,
    }))
}

pub fn compare_csv(rows: &[(f64, f64)], max: f64) -> String {
    let mut out = String::from("t,distance\n");
    for (t, d) in rows {
        out.push_str(&format!("{},{}\n", num(*t), num(*d)));
    }
    out.push_str(&format!("# max_distance {}\n", num(max)));
    out
}

pub fn compare_json(verb: &str, config: &CurveConfig, rows: &[(f64, f64)], max: f64) -> String {
    let rows: Vec<Value> = rows
        .iter()
        .map(|(t, d)| json!({"t": t, "distance": d}))
        .collect();
    pretty(&json!({
        "provenance": provenance(verb, config),
        "config": config,
        "rows": rows,
        "max_distance": max,
    }))
}

fn report_pairs(r: &CounterexampleReport) -> Vec<(&'static str, String)> {
    let h = r.p_half.coords();
    vec![
        ("alpha", num(r.alpha)),
        ("cos_theta", num(r.cos_theta)),
        ("z", num(r.z)),
        ("p_half_x", num(h[0])),
        ("p_half_y", num(h[1])),
        ("p_half_z", num(h[2])),
        ("midpoint_error", num(r.midpoint_error)),
        ("min_abs_inner", num(r.min_abs_inner)),
        ("lower_bound", num(r.lower_bound)),
        ("verdict", r.verdict.to_string()),
    ]
}

pub fn report_csv(r: &CounterexampleReport) -> String {
    let mut out = String::from("key,value\n");
    for (k, v) in report_pairs(r) {
        out.push_str(&format!("{k},{v}\n"));
    }
    out
}

pub fn report_json(verb: &str, config: &CurveConfig, r: &CounterexampleReport) -> String {
    pretty(&json!({
        "provenance": provenance(verb, config),
        "alpha": r.alpha,
        "cos_theta": r.cos_theta,
        "z": r.z,
        "p_half": r.p_half.coords(),
        "midpoint_error": r.midpoint_error,
        "min_abs_inner": r.min_abs_inner,
        "lower_bound": r.lower_bound,
        "verdict": r.verdict,
    }))
}
