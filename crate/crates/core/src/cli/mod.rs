//! The `geocurve` command line.
//!
//! Verbs: `sample`, `split`, `compare`, `counterexample`, `validate`.
//! Exit codes: 0 success, 2 parse error, 3 validation error, 4 solver
//! failure, 5 I/O error. Diagnostics are one line on stderr and name the
//! offending field.

pub mod config;
pub mod emit;
pub mod svg;

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bezier::{
    aitken_neville, de_casteljau, rational_de_casteljau, sample_curve, sample_params, split,
    CurveSample,
};
use crate::error::GeoError;
use crate::geodesic::SpacePoint;
use crate::karcher::{
    centroid_solution_with, sample_centroid_curve_with, sphere_counterexample, StartMode,
};
use crate::spline::de_boor;
use config::{Algorithm, Curve, CurveConfig, Job};
use svg::Layer;

pub const EXIT_PARSE: i32 = 2;
pub const EXIT_VALIDATION: i32 = 3;
pub const EXIT_SOLVER: i32 = 4;
pub const EXIT_IO: i32 = 5;

#[derive(Debug, Clone, PartialEq)]
pub struct CliError {
    pub code: i32,
    pub field: String,
    pub message: String,
}

impl CliError {
    fn new(code: i32, field: &str, message: impl Into<String>) -> Self {
        CliError {
            code,
            field: field.to_string(),
            message: message.into().replace('\n', " "),
        }
    }

    pub fn parse(field: &str, message: impl Into<String>) -> Self {
        Self::new(EXIT_PARSE, field, message)
    }

    pub fn validation(field: &str, message: impl Into<String>) -> Self {
        Self::new(EXIT_VALIDATION, field, message)
    }

    pub fn io(field: &str, message: impl Into<String>) -> Self {
        Self::new(EXIT_IO, field, message)
    }

    pub fn geo(field: &str, e: GeoError) -> Self {
        let code = match e {
            GeoError::NonConvergence { .. } => EXIT_SOLVER,
            _ => EXIT_VALIDATION,
        };
        Self::new(code, field, e.to_string())
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "error: {}: {}", self.field, self.message)
    }
}

impl std::error::Error for CliError {}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "geocurve", version, about = "Curves in geodesic spaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct IoArgs {
    /// JSON curve definition.
    #[arg(long)]
    pub config: PathBuf,
    /// Output file (stdout when omitted).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Also write an SVG preview.
    #[arg(long)]
    pub svg: Option<PathBuf>,
    /// Override the sample count of the config.
    #[arg(long)]
    pub samples: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate the configured curve at uniform parameters.
    Sample(IoArgs),
    /// Split a Bézier polygon at `split_at`.
    Split(IoArgs),
    /// Distance between the Bézier and the centroid curve of the same polygon.
    Compare(IoArgs),
    /// Quadratic Bézier midpoint versus the centroid curve on an
    /// equilateral spherical triangle.
    Counterexample {
        #[arg(long)]
        config: Option<PathBuf>,
        /// Side length of the triangle (default pi/3).
        #[arg(long)]
        alpha: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Check a config without evaluating it.
    Validate {
        #[arg(long)]
        config: PathBuf,
    },
}

/// Output of one command: the main document and an optional SVG.
#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub text: String,
    pub svg: Option<String>,
}

pub fn load_config(path: &Path) -> Result<CurveConfig, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io("config", format!("{}: {e}", path.display())))?;
    CurveConfig::from_json(&text)
}

/// Samples of a curve-valued job, in increasing parameter order.
pub fn sample_job(job: &Job) -> Result<Vec<CurveSample>, CliError> {
    let space = job.space.as_ref();
    let m = job.config.samples;
    let field = job.config.algorithm.as_str();
    let res = match &job.curve {
        Curve::Bezier(p) => sample_curve(m, |t| de_casteljau(space, p, t)),
        Curve::Rational(p) => sample_curve(m, |t| rational_de_casteljau(space, p, t)),
        Curve::Spline(s) => sample_params(m).and_then(|us| {
            us.into_iter()
                .map(|u| {
                    let t = s.param_at(u);
                    Ok(CurveSample {
                        t,
                        point: de_boor(space, s, t)?,
                    })
                })
                .collect()
        }),
        Curve::Centroid(p, mode) => {
            sample_centroid_curve_with(space, p, m, *mode, job.karcher_options())
        }
        Curve::Neville { nodes, points } => {
            sample_curve(m, |t| aitken_neville(space, nodes, points, t))
        }
        Curve::Split(..) | Curve::Counterexample(_) => {
            return Err(CliError::validation(
                "algorithm",
                format!("{field} does not produce a sampled curve"),
            ))
        }
    };
    res.map_err(|e| CliError::geo(field, e))
}

/// `(t, d(p(t), q(t)))` for the Bézier curve `p` and centroid curve `q`.
pub fn compare_job(job: &Job) -> Result<Vec<(f64, f64)>, CliError> {
    let poly = match &job.curve {
        Curve::Bezier(p) | Curve::Centroid(p, _) => p,
        _ => {
            return Err(CliError::validation(
                "algorithm",
                "compare needs a bezier or centroid config",
            ))
        }
    };
    let space = job.space.as_ref();
    space
        .check_karcher_domain(poly.points())
        .map_err(|e| CliError::geo("control_points", e))?;
    let mut prev: Option<SpacePoint> = None;
    let mut rows = Vec::new();
    for t in sample_params(job.config.samples).map_err(|e| CliError::geo("samples", e))? {
        let p = de_casteljau(space, poly, t).map_err(|e| CliError::geo("bezier", e))?;
        let q = centroid_solution_with(space, poly, t, prev.as_ref(), job.karcher_options())
            .map_err(|e| CliError::geo("centroid", e))?
            .point;
        let d = space
            .distance(&p, &q)
            .map_err(|e| CliError::geo("centroid", e))?;
        rows.push((t, d));
        prev = Some(q);
    }
    Ok(rows)
}

fn polyline(points: &[SpacePoint], stroke: &'static str, dashed: bool, markers: bool) -> Layer {
    Layer {
        points: points.iter().map(svg::project).collect(),
        stroke,
        dashed,
        markers,
    }
}

fn curve_points(samples: &[CurveSample]) -> Vec<SpacePoint> {
    samples.iter().map(|s| s.point.clone()).collect()
}

fn run_sample(job: &Job, format: Format, want_svg: bool) -> Result<Output, CliError> {
    match &job.curve {
        Curve::Split(..) => return run_split(job, format, want_svg),
        Curve::Counterexample(_) => return run_counterexample(job, format, want_svg),
        _ => {}
    }
    let samples = sample_job(job)?;
    let kind = job.space.kind();
    let text = match format {
        Format::Csv => emit::samples_csv(kind, &samples),
        Format::Json => emit::samples_json("sample", &job.config, &samples),
    };
    let svg = want_svg.then(|| {
        svg::render(&[
            polyline(job.control_points(), "gray", true, true),
            polyline(&curve_points(&samples), "steelblue", false, false),
        ])
    });
    Ok(Output { text, svg })
}

fn run_split(job: &Job, format: Format, want_svg: bool) -> Result<Output, CliError> {
    let (poly, s) = match (&job.curve, job.config.split_at) {
        (Curve::Split(p, s), _) => (p.clone(), *s),
        (Curve::Bezier(p), Some(s)) if s > 0.0 && s < 1.0 => (p.clone(), s),
        (Curve::Bezier(_), _) => {
            return Err(CliError::validation("split_at", "must lie in (0, 1)"))
        }
        _ => {
            return Err(CliError::validation(
                "algorithm",
                "split needs a split or bezier config",
            ))
        }
    };
    let (left, right) =
        split(job.space.as_ref(), &poly, s).map_err(|e| CliError::geo("split_at", e))?;
    let kind = job.space.kind();
    let text = match format {
        Format::Csv => emit::split_csv(kind, left.points(), right.points()),
        Format::Json => emit::split_json("split", &job.config, left.points(), right.points()),
    };
    let svg = want_svg.then(|| {
        svg::render(&[
            polyline(poly.points(), "gray", true, true),
            polyline(left.points(), "firebrick", false, true),
            polyline(right.points(), "steelblue", false, true),
        ])
    });
    Ok(Output { text, svg })
}

fn run_compare(job: &Job, format: Format, want_svg: bool) -> Result<Output, CliError> {
    let rows = compare_job(job)?;
    let max = rows.iter().map(|r| r.1).fold(0.0, f64::max);
    let text = match format {
        Format::Csv => emit::compare_csv(&rows, max),
        Format::Json => emit::compare_json("compare", &job.config, &rows, max),
    };
    let svg = if want_svg {
        let space = job.space.as_ref();
        let poly = match &job.curve {
            Curve::Bezier(p) | Curve::Centroid(p, _) => p,
            _ => unreachable!("checked by compare_job"),
        };
        let m = job.config.samples;
        let p = sample_curve(m, |t| de_casteljau(space, poly, t))
            .map_err(|e| CliError::geo("bezier", e))?;
        let q = sample_centroid_curve_with(space, poly, m, StartMode::Warm, job.karcher_options())
            .map_err(|e| CliError::geo("centroid", e))?;
        Some(svg::render(&[
            polyline(poly.points(), "gray", true, true),
            polyline(&curve_points(&p), "dimgray", false, false),
            polyline(&curve_points(&q), "steelblue", false, false),
        ]))
    } else {
        None
    };
    Ok(Output { text, svg })
}

fn run_counterexample(job: &Job, format: Format, want_svg: bool) -> Result<Output, CliError> {
    let alpha = match job.curve {
        Curve::Counterexample(a) => a,
        _ => {
            return Err(CliError::validation(
                "algorithm",
                "counterexample needs a counterexample config",
            ))
        }
    };
    let report = sphere_counterexample(alpha).map_err(|e| CliError::geo("alpha", e))?;
    let text = match format {
        Format::Csv => emit::report_csv(&report),
        Format::Json => emit::report_json("counterexample", &job.config, &report),
    };
    let svg = if want_svg {
        let space = job.space.as_ref();
        let poly = crate::bezier::ControlPolygon::new(report.controls.clone())
            .map_err(|e| CliError::geo("alpha", e))?;
        let p = sample_curve(job.config.samples, |t| de_casteljau(space, &poly, t))
            .map_err(|e| CliError::geo("bezier", e))?;
        let mut triangle = report.controls.clone();
        triangle.push(triangle[0].clone());
        Some(svg::render(&[
            polyline(&triangle, "gray", true, true),
            polyline(&curve_points(&p), "dimgray", false, false),
            polyline(std::slice::from_ref(&report.p_half), "firebrick", false, true),
        ]))
    } else {
        None
    };
    Ok(Output { text, svg })
}

fn prepare(path: &Path, samples: Option<usize>) -> Result<Job, CliError> {
    let mut config = load_config(path)?;
    if let Some(m) = samples {
        config.samples = m;
    }
    Job::prepare(config)
}

/// Runs a parsed command and returns the document(s) to emit.
pub fn execute(command: &Command) -> Result<Output, CliError> {
    match command {
        Command::Sample(a) => {
            run_sample(&prepare(&a.config, a.samples)?, a.format, a.svg.is_some())
        }
        Command::Split(a) => run_split(&prepare(&a.config, a.samples)?, a.format, a.svg.is_some()),
        Command::Compare(a) => {
            run_compare(&prepare(&a.config, a.samples)?, a.format, a.svg.is_some())
        }
        Command::Counterexample {
            config,
            alpha,
            format,
            ..
        } => {
            let mut cfg = match config {
                Some(p) => load_config(p)?,
                None => CurveConfig::counterexample(None),
            };
            if cfg.algorithm != Algorithm::Counterexample {
                return Err(CliError::validation(
                    "algorithm",
                    "counterexample needs a counterexample config",
                ));
            }
            if alpha.is_some() {
                cfg.alpha = *alpha;
            }
            run_counterexample(&Job::prepare(cfg)?, *format, false)
        }
        Command::Validate { config } => {
            let job = prepare(config, None)?;
            Ok(Output {
                text: format!(
                    "ok: {} in {} with {} control points\n",
                    job.config.algorithm.as_str(),
                    job.space.kind(),
                    job.control_points().len()
                ),
                svg: None,
            })
        }
    }
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so a failed run never leaves a partial file.
pub fn write_atomic(path: &Path, contents: &str, field: &str) -> Result<(), CliError> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    let err = |e: std::io::Error| CliError::io(field, format!("{}: {}", path.display(), e.kind()));
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(err)?;
    tmp.write_all(contents.as_bytes()).map_err(err)?;
    tmp.persist(path).map_err(|e| err(e.error))?;
    Ok(())
}

fn emit(command: &Command, out: Output) -> Result<(), CliError> {
    let (out_path, svg_path) = match command {
        Command::Sample(a) | Command::Split(a) | Command::Compare(a) => {
            (a.out.as_deref(), a.svg.as_deref())
        }
        Command::Counterexample { out, .. } => (out.as_deref(), None),
        Command::Validate { .. } => (None, None),
    };
    if let (Some(path), Some(svg)) = (svg_path, &out.svg) {
        write_atomic(path, svg, "svg")?;
    }
    match out_path {
        Some(path) => write_atomic(path, &out.text, "out"),
        None => std::io::stdout()
            .write_all(out.text.as_bytes())
            .map_err(|e| CliError::io("stdout", e.to_string())),
    }
}

/// Entry point of the binary; returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_PARSE } else { 0 };
        }
    };
    match execute(&cli.command).and_then(|out| emit(&cli.command, out)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("geocurve: {e}");
            e.code
        }
    }
}
