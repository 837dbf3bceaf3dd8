//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! Runs as a plain binary (`harness = false`) so the lines are printed even
//! without `--nocapture`. Exits non-zero if any criterion fails.

mod common;

use std::f64::consts::{FRAC_PI_2, FRAC_PI_3, FRAC_PI_6};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use common::*;
use geocurve::bezier::{
    condition1_defect, de_casteljau, rational_de_casteljau, split, ControlPolygon,
};
use geocurve::karcher::{
    casteljau_lower_bounds, centroid_curve, endpoint_tangent_check, in_general_position,
    karcher_mean, segment_median, sphere_counterexample, stagewise_energies, Endpoint,
    WeightedMeanProblem,
};
use geocurve::spaces::{spd2_affine, E3Space, EuclideanSpace, PoseE3, Spd2Space, SphereSpace};
use geocurve::spline::{de_boor, de_boor_with, DeBoorOptions, SplineDef};
use geocurve::{GeodesicSpace, SpacePoint};
use rand::Rng;

type Outcome = Result<String, String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn coords(p: &SpacePoint) -> Vec<f64> {
    p.coords().to_vec()
}

fn bernstein_equivalence() -> Outcome {
    let e3 = EuclideanSpace::new(3).unwrap();
    let mut r = rng(1);
    let mut worst = 0.0f64;
    for n in 1..=6 {
        for _ in 0..100 {
            let pts: Vec<Vec<f64>> = (0..=n).map(|_| coords(&random_euclid(&mut r, 3))).collect();
            let poly = ControlPolygon::new(pts.iter().map(|c| euclid(c)).collect()).unwrap();
            for j in 0..=10 {
                let t = j as f64 / 10.0;
                let p = de_casteljau(&e3, &poly, t).map_err(|e| e.to_string())?;
                worst = worst.max(max_abs_diff(p.coords(), &bernstein_sum(&pts, t)));
            }
        }
    }
    ensure(worst <= 1e-12, || format!("max error {worst:e} > 1e-12"))?;
    Ok(format!("max error {worst:.1e} over 6x100x11 evaluations"))
}

fn rational_quotient_form() -> Outcome {
    let e3 = EuclideanSpace::new(3).unwrap();
    let mut r = rng(2);
    let (mut worst, mut worst_equal) = (0.0f64, 0.0f64);
    for n in 1..=5 {
        for _ in 0..100 {
            let pts: Vec<Vec<f64>> = (0..=n).map(|_| coords(&random_euclid(&mut r, 3))).collect();
            let sp: Vec<SpacePoint> = pts.iter().map(|c| euclid(c)).collect();
            let w: Vec<f64> = (0..=n).map(|_| r.random_range(0.1..10.0)).collect();
            let c = r.random_range(0.1..10.0);
            let rational = ControlPolygon::with_weights(sp.clone(), w.clone()).unwrap();
            let equal = ControlPolygon::with_weights(sp.clone(), vec![c; n + 1]).unwrap();
            let plain = ControlPolygon::new(sp).unwrap();
            for j in 0..=10 {
                let t = j as f64 / 10.0;
                let p = rational_de_casteljau(&e3, &rational, t).map_err(|e| e.to_string())?;
                worst = worst.max(max_abs_diff(p.coords(), &rational_quotient(&pts, &w, t)));
                let q = rational_de_casteljau(&e3, &equal, t).map_err(|e| e.to_string())?;
                let b = de_casteljau(&e3, &plain, t).map_err(|e| e.to_string())?;
                worst_equal = worst_equal.max(max_abs_diff(q.coords(), b.coords()));
            }
        }
    }
    ensure(worst <= 1e-10, || format!("quotient error {worst:e} > 1e-10"))?;
    ensure(worst_equal <= 1e-12, || {
        format!("equal-weight error {worst_equal:e} > 1e-12")
    })?;
    Ok(format!(
        "quotient {worst:.1e}, equal weights {worst_equal:.1e}"
    ))
}

fn subdivision() -> Outcome {
    let e3 = EuclideanSpace::new(3).unwrap();
    let mut r = rng(3);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let poly = ControlPolygon::new((0..4).map(|_| random_euclid(&mut r, 3)).collect()).unwrap();
        for s in [0.25, 0.5, 0.8] {
            let (left, right) = split(&e3, &poly, s).map_err(|e| e.to_string())?;
            for j in 0..=100 {
                let u = j as f64 / 100.0;
                let l = de_casteljau(&e3, &left, u).unwrap();
                let rr = de_casteljau(&e3, &right, u).unwrap();
                let pl = de_casteljau(&e3, &poly, s * u).unwrap();
                let pr = de_casteljau(&e3, &poly, s + (1.0 - s) * u).unwrap();
                worst = worst
                    .max(max_abs_diff(l.coords(), pl.coords()))
                    .max(max_abs_diff(rr.coords(), pr.coords()));
            }
        }
    }
    let mut defect = 0.0f64;
    for _ in 0..100 {
        let [x, y, z] = [0, 1, 2].map(|_| random_euclid(&mut r, 3));
        let (s, tau) = (r.random_range(0.0..1.0), r.random_range(0.0..1.0));
        defect = defect.max(condition1_defect(&e3, &x, &y, &z, s, tau).unwrap());
    }
    ensure(worst <= 1e-12, || format!("split error {worst:e} > 1e-12"))?;
    ensure(defect <= 1e-12, || format!("condition defect {defect:e} > 1e-12"))?;
    Ok(format!("split error {worst:.1e}, condition defect {defect:.1e}"))
}

fn de_boor_oracle() -> Outcome {
    let e3 = EuclideanSpace::new(3).unwrap();
    let mut r = rng(4);
    let (mut worst, mut bez, mut shortened) = (0.0f64, 0.0f64, 0.0f64);
    for m in 2..=4 {
        for _ in 0..30 {
            let count = m + 1 + r.random_range(0..5);
            let pts: Vec<Vec<f64>> = (0..count).map(|_| coords(&random_euclid(&mut r, 3))).collect();
            let poly = ControlPolygon::new(pts.iter().map(|c| euclid(c)).collect()).unwrap();
            let knots = clamped_knots(&mut r, m, count);
            let spline = SplineDef::new(knots.clone(), m, poly).map_err(|e| e.to_string())?;
            for j in 0..=100 {
                let t = j as f64 / 100.0;
                let p = de_boor(&e3, &spline, t).map_err(|e| e.to_string())?;
                worst = worst.max(max_abs_diff(p.coords(), &spline_oracle(&knots, m, &pts, t)));
            }
        }
        // Bézier knots.
        for _ in 0..30 {
            let poly = ControlPolygon::new((0..=m).map(|_| random_euclid(&mut r, 3)).collect()).unwrap();
            let mut knots = vec![0.0; m + 1];
            knots.extend(vec![1.0; m + 1]);
            let spline = SplineDef::new(knots, m, poly.clone()).unwrap();
            for j in 0..=100 {
                let t = j as f64 / 100.0;
                let a = de_boor(&e3, &spline, t).unwrap();
                let b = de_casteljau(&e3, &poly, t).unwrap();
                bez = bez.max(max_abs_diff(a.coords(), b.coords()));
            }
        }
        // Interior knot of every multiplicity up to m.
        for mu in 1..=m {
            for _ in 0..10 {
                let count = m + 1 + mu + 1;
                let poly = ControlPolygon::new((0..count).map(|_| random_euclid(&mut r, 3)).collect()).unwrap();
                let knot = r.random_range(0.2..0.8);
                let mut knots = vec![0.0; m + 1];
                knots.extend(vec![knot; mu]);
                knots.push(0.9);
                knots.extend(vec![1.0; m + 1]);
                let spline = SplineDef::new(knots, m, poly).map_err(|e| e.to_string())?;
                let full = DeBoorOptions {
                    shorten_at_knots: false,
                    ..DeBoorOptions::default()
                };
                let a = de_boor_with(&e3, &spline, knot, DeBoorOptions::default()).unwrap();
                let b = de_boor_with(&e3, &spline, knot, full).unwrap();
                shortened = shortened.max(max_abs_diff(a.coords(), b.coords()));
            }
        }
    }
    ensure(worst <= 1e-10, || format!("oracle error {worst:e} > 1e-10"))?;
    ensure(bez <= 1e-12, || format!("Bézier knot error {bez:e} > 1e-12"))?;
    ensure(shortened <= 1e-12, || {
        format!("full vs shortened {shortened:e} > 1e-12")
    })?;
    Ok(format!(
        "Cox–de Boor {worst:.1e}, Bézier knots {bez:.1e}, full vs shortened {shortened:.1e}"
    ))
}

fn spd_closed_form() -> Outcome {
    let space = Spd2Space::new();
    let mut r = rng(5);
    let (mut worst, mut mean) = (0.0f64, 0.0f64);
    for _ in 0..100 {
        let (x, y) = (spd(&mut r), spd(&mut r));
        let oracle = spd_midpoint_oracle(&x, &y);
        let o = [oracle[(0, 0)], oracle[(0, 1)], oracle[(1, 1)]];
        let mid = spd2_affine(0.5, &x, &y).map_err(|e| e.to_string())?;
        worst = worst.max(max_abs_diff(&[mid.a, mid.b, mid.c], &o));
        let problem = WeightedMeanProblem::new(vec![x.to_point(), y.to_point()], vec![0.5, 0.5]).unwrap();
        let sol = karcher_mean(&space, &problem, None).map_err(|e| e.to_string())?;
        mean = mean.max(max_abs_diff(sol.point.coords(), &o));
    }
    ensure(worst <= 1e-10, || format!("affine error {worst:e} > 1e-10"))?;
    ensure(mean <= 1e-9, || format!("Karcher error {mean:e} > 1e-9"))?;
    Ok(format!("affine {worst:.1e}, Karcher {mean:.1e}"))
}

fn karcher_two_points() -> Outcome {
    let sphere = SphereSpace::new();
    let mut r = rng(6);
    let mut worst = 0.0f64;
    for _ in 0..50 {
        let c = unit_vector(&mut r);
        let (x, y) = (sphere_near(&mut r, &c, 0.7), sphere_near(&mut r, &c, 0.7));
        for j in 1..=9 {
            let t = j as f64 / 10.0;
            let problem = WeightedMeanProblem::new(vec![x.clone(), y.clone()], vec![1.0 - t, t]).unwrap();
            let sol = karcher_mean(&sphere, &problem, None).map_err(|e| e.to_string())?;
            let o = slerp_oracle(t, &v3(&x), &v3(&y));
            worst = worst.max((v3(&sol.point) - o).norm());
        }
    }
    ensure(worst <= 1e-9, || format!("error {worst:e} > 1e-9"))?;
    Ok(format!("max error {worst:.1e} over 50 pairs x 9 weights"))
}

fn bound_chain() -> Outcome {
    let sphere = SphereSpace::new();
    let mut r = rng(7);
    let mut violation = 0.0f64;
    for _ in 0..500 {
        let n = r.random_range(1..=5);
        let c = unit_vector(&mut r);
        let pts: Vec<SpacePoint> = (0..=n).map(|_| sphere_near(&mut r, &c, 0.7)).collect();
        let x = sphere_near(&mut r, &c, 0.7);
        let t = r.random_range(0.0..=1.0);
        let b = casteljau_lower_bounds(&sphere, &pts, t, &x).map_err(|e| e.to_string())?;
        violation = violation
            .max(b.bound1 - b.energy)
            .max(b.bound2 - b.bound1);
    }
    ensure(violation <= 1e-12, || format!("chain violated by {violation:e}"))?;

    let (mut mono, mut strict_checked, mut strict_failed) = (0.0f64, 0, 0);
    for _ in 0..200 {
        let n = r.random_range(2..=5);
        let poly = ControlPolygon::new(sphere_cluster(&mut r, n + 1, 0.6)).unwrap();
        let t = r.random_range(0.05..0.95);
        for tt in [t, 0.5] {
            let e = stagewise_energies(&sphere, &poly, tt).map_err(|e| e.to_string())?;
            for w in e.windows(2) {
                mono = mono.max(w[0] - w[1]);
            }
            if tt == 0.5 && in_general_position(&sphere, poly.points()).unwrap() {
                strict_checked += 1;
                if e.windows(2).any(|w| w[1] <= w[0]) {
                    strict_failed += 1;
                }
            }
        }
    }
    ensure(mono <= 1e-10, || format!("stagewise decrease {mono:e} > 1e-10"))?;
    ensure(strict_checked > 0, || "no general-position draws".into())?;
    ensure(strict_failed == 0, || {
        format!("{strict_failed} general-position draws not strictly increasing")
    })?;
    Ok(format!(
        "max chain violation {violation:.1e}, max stage decrease {mono:.1e}, {strict_checked} strict draws"
    ))
}

fn endpoint_tangents() -> Outcome {
    let sphere = SphereSpace::new();
    let mut r = rng(8);
    let mut worst = 0.0f64;
    for _ in 0..20 {
        let poly = ControlPolygon::new(sphere_cluster(&mut r, 3, 0.6)).unwrap();
        for end in [Endpoint::Start, Endpoint::End] {
            let d: Vec<f64> = [1e-2, 5e-3, 2.5e-3]
                .iter()
                .map(|&h| endpoint_tangent_check(&sphere, &poly, h, end).map(|c| c.defect))
                .collect::<Result<_, _>>()
                .map_err(|e| e.to_string())?;
            for w in d.windows(2) {
                worst = worst.max(w[1] / w[0]);
            }
        }
    }
    ensure(worst <= 0.75, || format!("defect ratio {worst:.3} > 0.75"))?;
    Ok(format!("worst ratio per halving {worst:.3}"))
}

fn counterexample() -> Outcome {
    let sphere = SphereSpace::new();
    let mut lines = Vec::new();
    for alpha in [FRAC_PI_6, FRAC_PI_3, FRAC_PI_2] {
        let rep = sphere_counterexample(alpha).map_err(|e| e.to_string())?;
        // θ is the arc between the two first-level midpoints.
        let poly = ControlPolygon::new(rep.controls.clone()).unwrap();
        let m01 = sphere.affine(0.5, &rep.controls[0], &rep.controls[1]).unwrap();
        let m12 = sphere.affine(0.5, &rep.controls[1], &rep.controls[2]).unwrap();
        let cos_theta = v3(&m01).dot(&v3(&m12));
        let closed = (1.0 + 3.0 * alpha.cos()) / (2.0 + 2.0 * alpha.cos());
        let mid = de_casteljau(&sphere, &poly, 0.5).unwrap();
        ensure(rep.verdict, || format!("alpha {alpha}: verdict false"))?;
        ensure((cos_theta - closed).abs() <= 1e-10, || {
            format!("alpha {alpha}: cos theta {cos_theta} vs {closed}")
        })?;
        ensure((v3(&mid) - v3(&rep.p_half)).norm() <= 1e-10, || {
            format!("alpha {alpha}: midpoint mismatch")
        })?;
        ensure(rep.z < 1.0, || format!("alpha {alpha}: z = {}", rep.z))?;
        ensure(rep.min_abs_inner > 1e-8, || {
            format!("alpha {alpha}: min inner {:e}", rep.min_abs_inner)
        })?;
        // The centroid itself is only defined inside the pi/4 ball.
        if sphere.check_karcher_domain(&rep.controls).is_ok() {
            let centroid = centroid_curve(&sphere, &poly, 0.5).unwrap();
            let gap = sphere.distance(&mid, &centroid).unwrap();
            ensure(gap > 1e-8, || format!("alpha {alpha}: curves agree at 1/2"))?;
        }
        lines.push(format!("min {:.2e}", rep.min_abs_inner));
    }
    Ok(lines.join(", "))
}

fn equivariance() -> Outcome {
    let sphere = SphereSpace::new();
    let e3 = E3Space::new();
    let mut r = rng(10);
    let mut worst = 0.0f64;
    let params: Vec<f64> = (0..=10).map(|j| j as f64 / 10.0).collect();
    for _ in 0..100 {
        let rot = rotation(&mut r);
        let pts = sphere_cluster(&mut r, 4, 0.6);
        let moved: Vec<SpacePoint> = pts.iter().map(|p| rotate(&rot, p)).collect();
        let poly = ControlPolygon::new(pts.clone()).unwrap();
        let poly_r = ControlPolygon::new(moved.clone()).unwrap();

        let spline_pts = sphere_cluster(&mut r, 6, 0.6);
        let knots = clamped_knots(&mut r, 3, 6);
        let spline = SplineDef::new(knots.clone(), 3, ControlPolygon::new(spline_pts.clone()).unwrap()).unwrap();
        let spline_r = SplineDef::new(
            knots,
            3,
            ControlPolygon::new(spline_pts.iter().map(|p| rotate(&rot, p)).collect()).unwrap(),
        )
        .unwrap();

        for &t in &params {
            let pairs = [
                (de_casteljau(&sphere, &poly, t), de_casteljau(&sphere, &poly_r, t)),
                (de_boor(&sphere, &spline, t), de_boor(&sphere, &spline_r, t)),
                (centroid_curve(&sphere, &poly, t), centroid_curve(&sphere, &poly_r, t)),
            ];
            for (a, b) in pairs {
                let (a, b) = (a.map_err(|e| e.to_string())?, b.map_err(|e| e.to_string())?);
                worst = worst.max(max_abs_diff(rotate(&rot, &a).coords(), b.coords()));
            }
        }
    }
    for _ in 0..100 {
        let g = pose(&mut r, 3.0);
        let poses: Vec<PoseE3> = (0..4).map(|_| pose(&mut r, 1.0)).collect();
        let poly = ControlPolygon::new(poses.iter().map(PoseE3::to_point).collect()).unwrap();
        let poly_g = ControlPolygon::new(poses.iter().map(|p| g.compose(p).to_point()).collect()).unwrap();
        for &t in &params {
            let a = de_casteljau(&e3, &poly, t).map_err(|e| e.to_string())?;
            let b = de_casteljau(&e3, &poly_g, t).map_err(|e| e.to_string())?;
            let ga = g.compose(&PoseE3::from_point(&a).unwrap());
            worst = worst.max(pose_diff(&ga, &PoseE3::from_point(&b).unwrap()));
        }
    }
    ensure(worst <= 1e-9, || format!("max error {worst:e} > 1e-9"))?;
    Ok(format!("max error {worst:.1e}"))
}

fn median_breakdown() -> Outcome {
    let e2 = EuclideanSpace::new(2).unwrap();
    let mut r = rng(11);
    let step = 1e-3;
    let steps = 2000;
    let mut worst = 0.0f64;
    for _ in 0..3 {
        let p0 = [r.random_range(0.0..1.0), r.random_range(0.0..1.0)];
        let p1 = [r.random_range(0.0..1.0), r.random_range(0.0..1.0)];
        let f = |t: f64, x: f64, y: f64| {
            (1.0 - t) * (x - p0[0]).hypot(y - p0[1]) + t * (x - p1[0]).hypot(y - p1[1])
        };
        for t in [0.3, 0.5, 0.7] {
            let mut best = (f64::INFINITY, 0.0, 0.0);
            for i in 0..=steps {
                let x = -0.5 + i as f64 * step;
                for j in 0..=steps {
                    let y = -0.5 + j as f64 * step;
                    let v = f(t, x, y);
                    if v < best.0 {
                        best = (v, x, y);
                    }
                }
            }
            let m = segment_median(&e2, &euclid(&p0), &euclid(&p1), t).map_err(|e| e.to_string())?;
            let c = m.coords();
            let fm = f(t, c[0], c[1]);
            ensure(fm <= best.0 + 1e-12, || {
                format!("t={t}: F(median) {fm} exceeds grid minimum {}", best.0)
            })?;
            if t != 0.5 {
                let d = (c[0] - best.1).hypot(c[1] - best.2);
                worst = worst.max(d);
                ensure(d <= 2e-3, || format!("t={t}: median {d:e} from grid minimizer"))?;
            } else {
                let on_segment = (c[0] - p0[0]).hypot(c[1] - p0[1])
                    + (c[0] - p1[0]).hypot(c[1] - p1[1])
                    - (p0[0] - p1[0]).hypot(p0[1] - p1[1]);
                ensure(on_segment.abs() <= 1e-12, || "t=0.5: median off the segment".into())?;
            }
        }
    }
    Ok(format!("max distance to grid minimizer {worst:.1e}"))
}

struct Run {
    code: Option<i32>,
    stdout: Vec<u8>,
    stderr: Vec<u8>,
    files: Vec<Option<Vec<u8>>>,
}

fn run_cli(args: &[&str], files: &[&Path]) -> Run {
    for f in files {
        let _ = std::fs::remove_file(f);
    }
    let out = Command::new(env!("CARGO_BIN_EXE_geocurve"))
        .args(args)
        .output()
        .expect("binary runs");
    Run {
        code: out.status.code(),
        stdout: out.stdout,
        stderr: out.stderr,
        files: files.iter().map(|f| std::fs::read(f).ok()).collect(),
    }
}

fn configs() -> Vec<PathBuf> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("configs");
    let mut v: Vec<PathBuf> = std::fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    v.sort();
    v
}

fn cli_determinism() -> Outcome {
    let tmp = tempfile::tempdir().map_err(|e| e.to_string())?;
    let out = tmp.path().join("out");
    let svg = tmp.path().join("out.svg");
    let (o, s) = (out.to_str().unwrap(), svg.to_str().unwrap());
    let mut runs = 0;
    let mut check = |args: Vec<&str>, files: &[&Path]| -> Result<Option<i32>, String> {
        let a = run_cli(&args, files);
        let b = run_cli(&args, files);
        runs += 2;
        ensure(
            a.code == b.code && a.stdout == b.stdout && a.stderr == b.stderr && a.files == b.files,
            || format!("runs differ: {}", args.join(" ")),
        )?;
        Ok(a.code)
    };
    let cfgs = configs();
    ensure(cfgs.len() >= 10, || "bundled configs missing".into())?;
    for cfg in &cfgs {
        let c = cfg.to_str().unwrap();
        let name = cfg.file_stem().unwrap().to_string_lossy().into_owned();
        for fmt in ["csv", "json"] {
            let code = check(
                vec!["sample", "--config", c, "--format", fmt, "--out", o, "--svg", s],
                &[&out, &svg],
            )?;
            ensure(code == Some(0), || format!("sample {name} exited {code:?}"))?;
            let code = check(vec!["split", "--config", c, "--format", fmt, "--out", o], &[&out])?;
            ensure(matches!(code, Some(0 | 3)), || format!("split {name} exited {code:?}"))?;
            let code = check(vec!["compare", "--config", c, "--format", fmt], &[])?;
            ensure(matches!(code, Some(0 | 3)), || format!("compare {name} exited {code:?}"))?;
        }
        let code = check(vec!["validate", "--config", c], &[])?;
        ensure(code == Some(0), || format!("validate {name} exited {code:?}"))?;
    }
    for fmt in ["csv", "json"] {
        let code = check(vec!["counterexample", "--format", fmt, "--out", o], &[&out])?;
        ensure(code == Some(0), || format!("counterexample exited {code:?}"))?;
    }

    // Error paths.
    let write = |name: &str, text: &str| {
        let p = tmp.path().join(name);
        std::fs::write(&p, text).unwrap();
        p
    };
    let bad_json = write("bad.json", "{ not json");
    let unknown = write("unknown.json", r#"{"space": {"kind": "sphere"}, "algorithm": "bezier", "colour": 1}"#);
    let far = write(
        "far.json",
        r#"{"space": {"kind": "sphere"}, "algorithm": "centroid",
            "control_points": [[1, 0, 0], [0, 1, 0], [0, 0, 1]]}"#,
    );
    let capped = write(
        "capped.json",
        r#"{"space": {"kind": "sphere"}, "algorithm": "centroid",
            "control_points": [[1, 0, 0.2], [0.8, 0.5, 0.6], [0.4, 0.1, 0.9]],
            "solver": {"max_iter": 1}}"#,
    );
    let good = cfgs[0].to_str().unwrap().to_string();
    let missing = tmp.path().join("missing.json");
    let nowhere = tmp.path().join("no/such/dir/out.csv");
    let cases: Vec<(Vec<&str>, i32)> = vec![
        (vec!["sample", "--config", bad_json.to_str().unwrap()], 2),
        (vec!["sample", "--config", unknown.to_str().unwrap()], 2),
        (vec!["frobnicate"], 2),
        (vec!["sample"], 2),
        (vec!["sample", "--config", &good, "--samples", "1"], 3),
        (vec!["sample", "--config", far.to_str().unwrap()], 3),
        (vec!["sample", "--config", capped.to_str().unwrap(), "--out", o], 4),
        (vec!["sample", "--config", missing.to_str().unwrap()], 5),
        (vec!["sample", "--config", &good, "--out", nowhere.to_str().unwrap()], 5),
    ];
    for (args, want) in cases {
        let code = check(args.clone(), &[&out])?;
        ensure(code == Some(want), || {
            format!("{} exited {code:?}, expected {want}", args.join(" "))
        })?;
        ensure(!out.exists(), || format!("{} left an output file", args.join(" ")))?;
    }
    Ok(format!("{runs} runs over {} configs", cfgs.len()))
}

type Criterion = fn() -> Outcome;

fn main() {
    let criteria: [(&str, Criterion); 12] = [
        ("Bernstein equivalence", bernstein_equivalence),
        ("rational quotient form", rational_quotient_form),
        ("subdivision exactness", subdivision),
        ("de Boor against Cox–de Boor", de_boor_oracle),
        ("SPD closed form", spd_closed_form),
        ("two-point Karcher mean is slerp", karcher_two_points),
        ("lower-bound chain and stagewise energies", bound_chain),
        ("centroid endpoint tangents", endpoint_tangents),
        ("equilateral spherical triangle", counterexample),
        ("equivariance", equivariance),
        ("segment median", median_breakdown),
        ("CLI determinism and exit codes", cli_determinism),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(f)).unwrap_or_else(|p| {
            let msg = p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
