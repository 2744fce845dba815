//! Command-line front-end: one subcommand per audit, JSON or CSV reports,
//! optional SVG plots.
//!
//! Exit status is 0 on success, 1 when the audited property fails and 2 on
//! malformed input, with a JSON error object on standard error.

use std::fmt::Write as _;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::charge::{total_variation, RadialCounting};
use crate::error::{Error, Result};
use crate::gauge::{check_gauge_class, check_gx, GaugeClassReport, GrowthGauge, GxReport};
use crate::periodic::{
    check_second_derivative, check_trig_convex, default_tol, min_rho, rho_indicator_estimate, PeriodicFunction,
    RadialSamples, TrigConvexityReport,
};
use crate::plot::{render_plot, Plot, Series};
use crate::testfn::{membership_audit, subharmonicity_audit, AuditGrid, MembershipReport, SubharmonicityReport, TestFunctionSpec};
use crate::verify::{
    run_sweep, uniqueness_audit, MajorantSource, SequenceGenerator, SweepDescriptor, SweepReport, USide,
    UniquenessAudit, DEFAULT_LEVELS,
};
use crate::zeros::{counting_measure, Region};

/// Environment variable holding the worker-thread count.
pub const THREADS_ENV: &str = "TRIGDISK_THREADS";

#[derive(Debug, Parser)]
#[command(name = "trigdisk", version, about = "Audits for weighted zero distributions in the unit disk")]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Json,
    Csv,
}

#[derive(Debug, Clone, Args)]
pub struct Common {
    /// Input JSON file (`-` reads standard input).
    pub input: PathBuf,
    /// Report destination (standard output when omitted).
    #[arg(short, long)]
    pub output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Also write an SVG plot to this path.
    #[arg(long)]
    pub plot: Option<PathBuf>,
    /// Seed for randomized probe points.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// ρ-trigonometric convexity of a periodic function.
    CheckH {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 512)]
        grid: usize,
        /// Defaults to 1e-9, or 1e-6·(1 + max|h|) for sampled inputs.
        #[arg(long)]
        tol: Option<f64>,
    },
    /// Growth-gauge class conditions.
    CheckG {
        #[command(flatten)]
        common: Common,
        /// Require g(1) ≤ 1.
        #[arg(long)]
        normalized: bool,
        #[arg(long, default_value_t = 1024)]
        grid: usize,
        #[arg(long, default_value_t = 1e-9)]
        tol: f64,
    },
    /// Subharmonicity and membership audit of the test function g((1−r)/r)·h(θ).
    TestfnAudit {
        #[command(flatten)]
        common: Common,
        /// Overrides the `rho` of the input spec.
        #[arg(long)]
        rho: Option<f64>,
        #[arg(long, default_value_t = 256)]
        nr: usize,
        #[arg(long, default_value_t = 512)]
        ntheta: usize,
        /// Extra random probe points (drawn from `--seed`).
        #[arg(long, default_value_t = 0)]
        probes: usize,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
    /// Weighted radial counting function μ^rad(r; h).
    Count {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        r: f64,
        /// Density sample points in the exported curve.
        #[arg(long, default_value_t = 256)]
        curve_points: usize,
    },
    /// Both sides of the main inequality over a family sweep.
    Gap {
        #[command(flatten)]
        common: Common,
        /// Truncations ε (repeatable); replaces the descriptor's list.
        #[arg(long)]
        epsilon: Vec<f64>,
        /// Use h / max h for weights exceeding 1.
        #[arg(long)]
        rescale_h: bool,
    },
    /// Divergence audit of the uniqueness conditions along ε_j = 2^{−j}.
    Uniqueness {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = DEFAULT_LEVELS)]
        levels: usize,
    },
    /// Finite-radius ρ-indicator estimate and its convexity check.
    Indicator {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        rho: f64,
        #[arg(long, default_value_t = 512)]
        grid: usize,
    },
}

impl Command {
    pub fn common(&self) -> &Common {
        match self {
            Command::CheckH { common, .. }
            | Command::CheckG { common, .. }
            | Command::TestfnAudit { common, .. }
            | Command::Count { common, .. }
            | Command::Gap { common, .. }
            | Command::Uniqueness { common, .. }
            | Command::Indicator { common, .. } => common,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckHOutput {
    pub h: String,
    pub rho: f64,
    pub range: [f64; 2],
    pub convexity: TrigConvexityReport,
    pub second_derivative: TrigConvexityReport,
    pub checks_agree: bool,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CheckGOutput {
    pub g: String,
    pub normalized_required: bool,
    pub class: GaugeClassReport,
    pub gx: GxReport,
    pub passed: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestfnOutput {
    pub spec: TestFunctionSpec,
    pub b_rho: f64,
    pub subharmonicity: SubharmonicityReport,
    pub membership: MembershipReport,
    pub passed: bool,
}

fn unit_weight() -> PeriodicFunction {
    PeriodicFunction::constant(1.0)
}

/// Input of `count`: a charge or divisor and an optional weight (default 1).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountInput {
    pub mu: USide,
    #[serde(default = "unit_weight")]
    pub h: PeriodicFunction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CountOutput {
    pub r: f64,
    pub h: String,
    pub value: f64,
    /// Same count against the total variation `|μ|`.
    pub total_variation_value: f64,
    /// Zeros with multiplicity in `|z| ≤ r` when the input is a divisor.
    pub closed_disk_count: Option<u64>,
    pub curve: Vec<[f64; 2]>,
}

/// Input of `uniqueness`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessInput {
    pub zeros: SequenceGenerator,
    #[serde(rename = "M", default)]
    pub m: MajorantSource,
    pub g: GrowthGauge,
    pub h: PeriodicFunction,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IndicatorOutput {
    pub rho: f64,
    pub estimate: PeriodicFunction,
    pub convexity: TrigConvexityReport,
    /// Smallest ρ at which the estimate is trigonometrically convex.
    pub min_rho: Option<f64>,
    pub passed: bool,
}

/// A finished report: serializations plus whether the audited property held.
pub struct Artifact {
    pub json: String,
    pub csv: String,
    pub plot: Option<Plot>,
    pub passed: bool,
}

struct SigFigFormatter(serde_json::ser::PrettyFormatter<'static>);

impl serde_json::ser::Formatter for SigFigFormatter {
    fn write_f64<W: ?Sized + Write>(&mut self, w: &mut W, v: f64) -> io::Result<()> {
        write!(w, "{v:.16e}")
    }
    fn write_f32<W: ?Sized + Write>(&mut self, w: &mut W, v: f32) -> io::Result<()> {
        write!(w, "{:.16e}", v as f64)
    }
    fn begin_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_array(w)
    }
    fn end_array<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array(w)
    }
    fn begin_array_value<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_array_value(w, first)
    }
    fn end_array_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_array_value(w)
    }
    fn begin_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object(w)
    }
    fn end_object<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object(w)
    }
    fn begin_object_key<W: ?Sized + Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
        self.0.begin_object_key(w, first)
    }
    fn begin_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.begin_object_value(w)
    }
    fn end_object_value<W: ?Sized + Write>(&mut self, w: &mut W) -> io::Result<()> {
        self.0.end_object_value(w)
    }
}

/// Pretty JSON with every float written to 17 significant digits
/// (non-finite values become `null`).
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigFigFormatter(Default::default()));
    value.serialize(&mut ser).expect("in-memory serialization cannot fail");
    buf.push(b'\n');
    String::from_utf8(buf).expect("serde_json emits UTF-8")
}

fn e17(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.16e}")
    } else {
        String::new()
    }
}

#[derive(Debug)]
enum Failure {
    Parse(String),
    Lib(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

#[derive(Serialize)]
struct ErrorObject<'a> {
    error: ErrorBody<'a>,
}

#[derive(Serialize)]
struct ErrorBody<'a> {
    kind: &'a str,
    message: String,
}

fn error_kind(e: &Error) -> &'static str {
    match e {
        Error::InvalidArgument { .. } => "invalid_argument",
        Error::Precondition(_) => "precondition",
        Error::NonFinite { .. } => "non_finite",
        Error::SamplingTooCoarse { .. } => "sampling_too_coarse",
        Error::VanishesOnCircle { .. } => "vanishes_on_circle",
        Error::NotTrigConvex { .. } => "not_trig_convex",
        Error::Io { .. } => "io",
        Error::Member { .. } => "family_member",
    }
}

fn emit_error(kind: &str, message: String) {
    let obj = ErrorObject {
        error: ErrorBody { kind, message },
    };
    let _ = io::stderr().write_all(serde_json::to_string(&obj).unwrap_or_default().as_bytes());
    let _ = io::stderr().write_all(b"\n");
}

fn read_input(path: &Path) -> std::result::Result<String, Failure> {
    let mut s = String::new();
    let res = if path == Path::new("-") {
        io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::File::open(path).and_then(|mut f| f.read_to_string(&mut s)).map(|_| ())
    };
    res.map_err(|e| Failure::Parse(format!("cannot read {}: {e}", path.display())))?;
    Ok(s)
}

fn parse<T: for<'de> Deserialize<'de>>(text: &str, what: &str) -> std::result::Result<T, Failure> {
    serde_json::from_str(text).map_err(|e| Failure::Parse(format!("{what}: {e}")))
}

/// Compute the report of one command from the input text.
pub fn execute(command: &Command, input: &str) -> Result<Artifact> {
    match execute_inner(command, input) {
        Ok(a) => Ok(a),
        Err(Failure::Lib(e)) => Err(e),
        Err(Failure::Parse(m)) => Err(Error::invalid("input", m)),
    }
}

fn execute_inner(command: &Command, input: &str) -> std::result::Result<Artifact, Failure> {
    let seed = command.common().seed;
    Ok(match command {
        Command::CheckH { rho, grid, tol, .. } => {
            let h: PeriodicFunction = parse(input, "periodic function")?;
            h.validate()?;
            let tol = tol.unwrap_or_else(|| default_tol(&h));
            let convexity = check_trig_convex(&h, *rho, *grid, tol)?;
            let second_derivative = check_second_derivative(&h, *rho, *grid, tol)?;
            let (lo, hi) = h.range_on_grid(*grid);
            let out = CheckHOutput {
                h: h.descriptor(),
                rho: *rho,
                range: [lo, hi],
                checks_agree: convexity.passed == second_derivative.passed,
                passed: convexity.passed,
                convexity,
                second_derivative,
            };
            let mut csv = String::from("check,rho,n_grid,tol,passed,max_defect\n");
            for (name, r) in [("chord", &out.convexity), ("second_derivative", &out.second_derivative)] {
                let _ = writeln!(csv, "{name},{},{},{},{},{}", e17(r.rho), r.n_grid, e17(r.tol), r.passed, e17(r.max_defect));
            }
            let n = *grid;
            let pts = h
                .grid_values(n)
                .into_iter()
                .enumerate()
                .map(|(j, v)| [std::f64::consts::TAU * j as f64 / n as f64, v])
                .collect();
            Artifact {
                json: to_json(&out),
                csv,
                plot: Some(Plot {
                    title: format!("{} (rho = {rho})", out.h),
                    x_label: "theta".into(),
                    y_label: "h(theta)".into(),
                    series: vec![Series::new("h", pts)],
                }),
                passed: out.passed,
            }
        }
        Command::CheckG {
            normalized, grid, tol, ..
        } => {
            let g: GrowthGauge = parse(input, "growth gauge")?;
            g.validate()?;
            let class = check_gauge_class(&g, *grid, *tol);
            let gx = check_gx(&g, *grid, *tol);
            let passed = class.convex_ok
                && class.zero_at_zero_ok
                && (!normalized || class.normalized_ok)
                && gx.all_ok();
            let out = CheckGOutput {
                g: g.descriptor(),
                normalized_required: *normalized,
                class,
                gx,
                passed,
            };
            let c = &out.class;
            let csv = format!(
                "convex_ok,zero_at_zero_ok,normalized_ok,g_at_one,max_convexity_defect,derivative_bound_ok,ratio_monotone_ok,min_slack,passed\n{},{},{},{},{},{},{},{},{}\n",
                c.convex_ok,
                c.zero_at_zero_ok,
                c.normalized_ok,
                e17(c.g_at_one),
                e17(c.max_convexity_defect),
                out.gx.derivative_bound_ok,
                out.gx.ratio_monotone_ok,
                e17(out.gx.min_slack),
                passed
            );
            let xs: Vec<f64> = (1..=200).map(|i| 2.0 * i as f64 / 200.0).collect();
            let gv = |x: f64| g.eval(x).unwrap_or(f64::NAN);
            Artifact {
                json: to_json(&out),
                csv,
                plot: Some(Plot {
                    title: out.g.clone(),
                    x_label: "x".into(),
                    y_label: "value".into(),
                    series: vec![
                        Series::new("g(x)", xs.iter().map(|&x| [x, gv(x)]).collect()),
                        Series::new("g(x)/x", xs.iter().map(|&x| [x, gv(x) / x]).collect()),
                    ],
                }),
                passed,
            }
        }
        Command::TestfnAudit {
            rho,
            nr,
            ntheta,
            probes,
            tol,
            ..
        } => {
            let mut spec: TestFunctionSpec = parse(input, "test-function spec")?;
            if let Some(r) = rho {
                spec.rho = *r;
            }
            spec.validate()?;
            let grid = AuditGrid {
                probes: *probes,
                seed,
                ..AuditGrid::new(*nr, *ntheta)
            };
            let subharmonicity = subharmonicity_audit(&spec, &grid, *tol)?;
            let membership = membership_audit(&spec, *ntheta, *tol)?;
            let passed = subharmonicity.passed() && membership.passed();
            let mut csv = String::from("r,min_laplacian\n");
            for [r, m] in &subharmonicity.row_min {
                let _ = writeln!(csv, "{},{}", e17(*r), e17(*m));
            }
            let plot = Plot {
                title: format!("min over theta of the polar Laplacian (rho = {})", spec.rho),
                x_label: "r".into(),
                y_label: "min Laplacian".into(),
                series: vec![Series::new("min_theta Δv", subharmonicity.row_min.clone())],
            };
            let out = TestfnOutput {
                b_rho: spec.b_rho(),
                spec,
                subharmonicity,
                membership,
                passed,
            };
            Artifact {
                json: to_json(&out),
                csv,
                plot: Some(plot),
                passed,
            }
        }
        Command::Count { r, curve_points, .. } => {
            let inp: CountInput = parse(input, "count input")?;
            inp.h.validate()?;
            if !(*r >= 0.0 && *r < 1.0) {
                return Err(Error::invalid("r", format!("must lie in [0, 1), got {r}")).into());
            }
            let charge = inp.mu.to_charge();
            charge.validate()?;
            let rc = RadialCounting::new(&charge, &inp.h);
            let value = rc.value(*r)?;
            let total_variation_value = RadialCounting::new(&total_variation(&charge), &inp.h).value(*r)?;
            let closed_disk_count = match &inp.mu {
                USide::Divisor(d) => Some(counting_measure(d, &Region::ClosedDisk { r: *r })),
                USide::Charge(_) => None,
            };
            let curve = rc.curve(*curve_points)?;
            let csv = rc.to_csv(*curve_points)?;
            let out = CountOutput {
                r: *r,
                h: inp.h.descriptor(),
                value,
                total_variation_value,
                closed_disk_count,
                curve,
            };
            Artifact {
                json: to_json(&out),
                csv,
                plot: Some(Plot {
                    title: format!("radial counting function, h = {}", out.h),
                    x_label: "r".into(),
                    y_label: "mu_rad(r; h)".into(),
                    series: vec![Series::new("mu_rad", out.curve.clone())],
                }),
                passed: true,
            }
        }
        Command::Gap {
            epsilon, rescale_h, ..
        } => {
            let mut desc: SweepDescriptor = parse(input, "sweep descriptor")?;
            if !epsilon.is_empty() {
                desc.epsilon = epsilon.clone();
            }
            desc.rescale_h |= *rescale_h;
            let report: SweepReport = run_sweep(&desc)?;
            let series = (0..desc.family.len())
                .map(|i| {
                    let pts = report
                        .rows
                        .iter()
                        .filter(|r| r.member == i)
                        .map(|r| [-r.epsilon.log10(), r.gap])
                        .collect();
                    Series::new(format!("member {i}"), pts)
                })
                .collect();
            Artifact {
                json: to_json(&report),
                csv: report.to_csv(),
                plot: Some(Plot {
                    title: "lhs - rhs per family member".into(),
                    x_label: "-log10 epsilon".into(),
                    y_label: "gap".into(),
                    series,
                }),
                passed: true,
            }
        }
        Command::Uniqueness { levels, .. } => {
            let inp: UniquenessInput = parse(input, "uniqueness input")?;
            let audit: UniquenessAudit = uniqueness_audit(&inp.zeros, &inp.m, &inp.g, &inp.h, *levels)?;
            let mut csv = String::from("j,epsilon,cuM,cuZ\n");
            for (j, ((e, m), z)) in audit
                .schedule
                .iter()
                .zip(&audit.cu_m_partials)
                .zip(&audit.cu_z_partials)
                .enumerate()
            {
                let _ = writeln!(csv, "{},{},{},{}", j + 1, e17(*e), e17(*m), e17(*z));
            }
            let xs: Vec<f64> = audit.schedule.iter().map(|e| -e.ln()).collect();
            let pair = |v: &[f64]| xs.iter().zip(v).map(|(x, y)| [*x, *y]).collect();
            Artifact {
                json: to_json(&audit),
                csv,
                plot: Some(Plot {
                    title: format!("uniqueness partial sums: {:?}", audit.classification),
                    x_label: "-log epsilon".into(),
                    y_label: "partial sum".into(),
                    series: vec![
                        Series::new("cuM", pair(&audit.cu_m_partials)),
                        Series::new("cuZ", pair(&audit.cu_z_partials)),
                    ],
                }),
                // both classifications are legitimate outcomes of the audit
                passed: true,
            }
        }
        Command::Indicator { rho, grid, .. } => {
            let samples: RadialSamples = parse(input, "radial samples")?;
            let estimate = rho_indicator_estimate(&samples, *rho)?;
            let convexity = check_trig_convex(&estimate, *rho, *grid, default_tol(&estimate))?;
            let min_rho = min_rho(&estimate, 1e-3).ok();
            let passed = convexity.passed;
            let n = *grid;
            let pts: Vec<[f64; 2]> = estimate
                .grid_values(n)
                .into_iter()
                .enumerate()
                .map(|(j, v)| [std::f64::consts::TAU * j as f64 / n as f64, v])
                .collect();
            let mut csv = String::from("theta,value\n");
            for [t, v] in &pts {
                let _ = writeln!(csv, "{},{}", e17(*t), e17(*v));
            }
            let out = IndicatorOutput {
                rho: *rho,
                estimate,
                convexity,
                min_rho,
                passed,
            };
            Artifact {
                json: to_json(&out),
                csv,
                plot: Some(Plot {
                    title: format!("rho-indicator estimate (rho = {rho})"),
                    x_label: "theta".into(),
                    y_label: "h_u(theta)".into(),
                    series: vec![Series::new("estimate", pts)],
                }),
                passed,
            }
        }
    })
}

fn configure_threads() -> std::result::Result<(), String> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .trim()
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| format!("{THREADS_ENV} must be a positive integer, got {raw:?}"))?;
    // a pool may already exist when embedded in tests; that is harmless
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn write_out(path: Option<&Path>, text: &str) -> Result<()> {
    let res = match path {
        Some(p) => std::fs::write(p, text),
        None => io::stdout().lock().write_all(text.as_bytes()),
    };
    res.map_err(|e| Error::Io {
        path: path.map_or("<stdout>".into(), |p| p.display().to_string()),
        reason: e.to_string(),
    })
}

/// Run one parsed configuration and return the process exit status.
pub fn run(config: &RunConfig) -> i32 {
    if let Err(m) = configure_threads() {
        emit_error("invalid_argument", m);
        return 2;
    }
    let common = config.command.common();
    let artifact = read_input(&common.input).and_then(|text| execute_inner(&config.command, &text));
    let artifact = match artifact {
        Ok(a) => a,
        Err(Failure::Parse(m)) => {
            emit_error("parse", m);
            return 2;
        }
        Err(Failure::Lib(e)) => {
            emit_error(error_kind(&e), e.to_string());
            return 2;
        }
    };
    let body = match common.format {
        Format::Json => &artifact.json,
        Format::Csv => &artifact.csv,
    };
    let written = write_out(common.output.as_deref(), body).and_then(|_| match (&common.plot, &artifact.plot) {
        (Some(path), Some(plot)) => render_plot(plot, path),
        _ => Ok(()),
    });
    if let Err(e) = written {
        emit_error(error_kind(&e), e.to_string());
        return 2;
    }
    if artifact.passed {
        0
    } else {
        1
    }
}

/// Parse `args` (program name first) and run.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match RunConfig::try_parse_from(args) {
        Ok(config) => run(&config),
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = e.print();
                0
            } else {
                emit_error("usage", e.to_string());
                2
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn common() -> Common {
        Common {
            input: PathBuf::from("-"),
            output: None,
            format: Format::Json,
            plot: None,
            seed: 0,
        }
    }

    #[test]
    fn json_floats_have_17_digits() {
        let s = to_json(&vec![0.1, -2.5, f64::NAN]);
        assert!(s.contains("1.0000000000000001e-1"));
        assert!(s.contains("-2.5000000000000000e0"));
        assert!(s.contains("null"));
        let back: Vec<Option<f64>> = serde_json::from_str(&s).unwrap();
        assert_eq!(back[0], Some(0.1));
    }

    #[test]
    fn check_h_truncated_cosine() {
        let cmd = Command::CheckH {
            common: common(),
            rho: 2.0,
            grid: 256,
            tol: None,
        };
        let a = execute(&cmd, r#"{"kind":"truncated_cosine","rho":2}"#).unwrap();
        assert!(a.passed);
        let out: CheckHOutput = serde_json::from_str(&a.json).unwrap();
        assert!(out.convexity.passed && out.checks_agree);
    }

    #[test]
    fn check_g_normalization() {
        let cmd = |normalized| Command::CheckG {
            common: common(),
            normalized,
            grid: 256,
            tol: 1e-9,
        };
        let g = r#"{"kind":"linear","slope":3}"#;
        assert!(!execute(&cmd(true), g).unwrap().passed);
        assert!(execute(&cmd(false), g).unwrap().passed);
    }

    #[test]
    fn malformed_input_is_an_error() {
        let cmd = Command::Count {
            common: common(),
            r: 0.5,
            curve_points: 8,
        };
        assert!(execute(&cmd, "{not json").is_err());
        assert!(execute(&cmd, r#"{"mu": [[0.5, 0.0, 1]]}"#).is_ok());
        let cmd = Command::Count {
            common: common(),
            r: 1.0,
            curve_points: 8,
        };
        assert!(execute(&cmd, r#"{"mu": [[0.5, 0.0, 1]]}"#).is_err());
    }
}
