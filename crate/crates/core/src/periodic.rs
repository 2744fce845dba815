//! 2π-periodic weights and the ρ-trigonometric convexity checks.
//!
//! A function `h` is ρ-trigonometrically convex when, on every arc
//! `θ₁ < θ < θ₂` shorter than `π/ρ`, it lies below the sinusoid
//! `a cos ρθ + b sin ρθ` that agrees with it at the arc ends:
//!
//! ```text
//! h(θ) ≤ sin ρ(θ₂−θ) / sin ρ(θ₂−θ₁) · h(θ₁) + sin ρ(θ−θ₁) / sin ρ(θ₂−θ₁) · h(θ₂)
//! ```
//!
//! For ρ = 0 the class consists of constants. Two numerical checks are
//! provided: a direct scan of the interpolation inequality over mesh
//! triples ([`check_trig_convex`]) and a discrete form of
//! `h″ + ρ²h ≥ 0` ([`check_second_derivative`]).

use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Reduce an angle to `(−π, π]`.
pub fn normalize_angle(theta: f64) -> f64 {
    let t = theta.rem_euclid(TAU);
    if t > PI {
        t - TAU
    } else {
        t
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, Default)]
#[serde(rename_all = "snake_case")]
pub enum Interpolation {
    /// Band-limited interpolation; reproduces sinusoids of order < N/2 exactly.
    #[default]
    Trigonometric,
    /// Periodic piecewise-linear interpolation, for data with kinks.
    Linear,
}

/// Uniform samples `h(2πj/N)`, `j = 0..N`, with an interpolation scheme.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(try_from = "SamplesRepr", into = "SamplesRepr")]
pub struct Samples {
    values: Vec<f64>,
    interpolation: Interpolation,
    // Real Fourier coefficients for trigonometric interpolation:
    // a[0] is the mean, a[k], b[k] for 1 ≤ k < N/2, a[N/2] the Nyquist term.
    cos_coef: Vec<f64>,
    sin_coef: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct SamplesRepr {
    values: Vec<f64>,
    #[serde(default)]
    interpolation: Interpolation,
}

impl TryFrom<SamplesRepr> for Samples {
    type Error = Error;
    fn try_from(r: SamplesRepr) -> Result<Self> {
        Samples::new(r.values, r.interpolation)
    }
}

impl From<Samples> for SamplesRepr {
    fn from(s: Samples) -> Self {
        SamplesRepr {
            values: s.values,
            interpolation: s.interpolation,
        }
    }
}

impl PartialEq for Samples {
    fn eq(&self, other: &Self) -> bool {
        self.values == other.values && self.interpolation == other.interpolation
    }
}

impl Samples {
    pub const MIN_LEN: usize = 16;

    pub fn new(values: Vec<f64>, interpolation: Interpolation) -> Result<Self> {
        let n = values.len();
        if n < Self::MIN_LEN || !n.is_multiple_of(2) {
            return Err(Error::invalid(
                "values",
                format!("need an even number of samples >= {}, got {n}", Self::MIN_LEN),
            ));
        }
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::invalid("values", "samples must be finite"));
        }
        let (cos_coef, sin_coef) = match interpolation {
            Interpolation::Trigonometric => fourier_coefficients(&values),
            Interpolation::Linear => (Vec::new(), Vec::new()),
        };
        Ok(Samples {
            values,
            interpolation,
            cos_coef,
            sin_coef,
        })
    }

    /// Sample `f` on the uniform grid of `n` nodes.
    pub fn from_fn(n: usize, interpolation: Interpolation, f: impl Fn(f64) -> f64) -> Result<Self> {
        let values = (0..n).map(|j| f(TAU * j as f64 / n as f64)).collect();
        Samples::new(values, interpolation)
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn interpolation(&self) -> Interpolation {
        self.interpolation
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    fn eval(&self, theta: f64) -> f64 {
        let n = self.values.len();
        let pos = theta.rem_euclid(TAU) * n as f64 / TAU;
        let nearest = pos.round();
        if (pos - nearest).abs() < 1e-12 {
            return self.values[nearest as usize % n];
        }
        match self.interpolation {
            Interpolation::Linear => {
                let j = pos.floor();
                let w = pos - j;
                let j = j as usize % n;
                (1.0 - w) * self.values[j] + w * self.values[(j + 1) % n]
            }
            Interpolation::Trigonometric => {
                let x = pos * TAU / n as f64;
                let step = Complex64::new(x.cos(), x.sin());
                let mut rot = step;
                let mut acc = self.cos_coef[0];
                for k in 1..n / 2 {
                    acc += self.cos_coef[k] * rot.re + self.sin_coef[k] * rot.im;
                    rot *= step;
                    // renormalize to keep the recurrence on the unit circle
                    if k % 64 == 0 {
                        rot /= rot.norm();
                    }
                }
                acc + self.cos_coef[n / 2] * (0.5 * n as f64 * x).cos()
            }
        }
    }
}

fn fourier_coefficients(values: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let n = values.len();
    let half = n / 2;
    let table: Vec<(f64, f64)> = (0..n)
        .map(|m| {
            let a = TAU * m as f64 / n as f64;
            (a.cos(), a.sin())
        })
        .collect();
    let mut a = vec![0.0; half + 1];
    let mut b = vec![0.0; half + 1];
    for k in 0..=half {
        let (mut sc, mut ss) = (0.0, 0.0);
        for (j, v) in values.iter().enumerate() {
            let (c, s) = table[(k * j) % n];
            sc += v * c;
            ss += v * s;
        }
        let scale = if k == 0 || k == half { 1.0 } else { 2.0 };
        a[k] = scale * sc / n as f64;
        b[k] = scale * ss / n as f64;
    }
    b[0] = 0.0;
    b[half] = 0.0;
    (a, b)
}

/// A 2π-periodic real function.
///
/// All variants are 2π-periodic by construction: angles are reduced to
/// `(−π, π]` before evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PeriodicFunction {
    /// `cos ρθ` for `|θ| < π/(2ρ)`, zero elsewhere on `(−π, π]`.
    TruncatedCosine { rho: f64 },
    Constant { c: f64 },
    /// Support function `θ ↦ max_s Re(s e^{−iθ})` of a finite point set.
    Support { points: Vec<Complex64> },
    Samples(Samples),
    PositivePart { inner: Box<PeriodicFunction> },
    /// `max(0, −inner)`; used by Jordan decompositions of product densities.
    NegativePart { inner: Box<PeriodicFunction> },
    Scaled { c: f64, inner: Box<PeriodicFunction> },
    Sum {
        left: Box<PeriodicFunction>,
        right: Box<PeriodicFunction>,
    },
}

impl PeriodicFunction {
    pub fn truncated_cosine(rho: f64) -> Result<Self> {
        if !(rho.is_finite() && rho >= 0.0) {
            return Err(Error::invalid("rho", format!("must be finite and >= 0, got {rho}")));
        }
        Ok(PeriodicFunction::TruncatedCosine { rho })
    }

    pub fn constant(c: f64) -> Self {
        PeriodicFunction::Constant { c }
    }

    pub fn samples(values: Vec<f64>, interpolation: Interpolation) -> Result<Self> {
        Samples::new(values, interpolation).map(PeriodicFunction::Samples)
    }

    pub fn sampled_fn(n: usize, interpolation: Interpolation, f: impl Fn(f64) -> f64) -> Result<Self> {
        Samples::from_fn(n, interpolation, f).map(PeriodicFunction::Samples)
    }

    pub fn scaled(c: f64, inner: PeriodicFunction) -> Result<Self> {
        if !(c.is_finite() && c >= 0.0) {
            return Err(Error::invalid("c", format!("scale must be finite and >= 0, got {c}")));
        }
        Ok(PeriodicFunction::Scaled {
            c,
            inner: Box::new(inner),
        })
    }

    pub fn sum(left: PeriodicFunction, right: PeriodicFunction) -> Self {
        PeriodicFunction::Sum {
            left: Box::new(left),
            right: Box::new(right),
        }
    }

    pub fn negative_part(inner: PeriodicFunction) -> Self {
        PeriodicFunction::NegativePart {
            inner: Box::new(inner),
        }
    }

    /// Check the variant invariants recursively.
    pub fn validate(&self) -> Result<()> {
        use PeriodicFunction::*;
        match self {
            TruncatedCosine { rho } => {
                Self::truncated_cosine(*rho)?;
            }
            Constant { c } => {
                if !c.is_finite() {
                    return Err(Error::invalid("c", "constant must be finite"));
                }
            }
            Support { points } => {
                if points.is_empty() {
                    return Err(Error::invalid("points", "support set must be nonempty"));
                }
                if points.iter().any(|p| !(p.re.is_finite() && p.im.is_finite())) {
                    return Err(Error::invalid("points", "points must be finite"));
                }
            }
            Samples(_) => {}
            PositivePart { inner } | NegativePart { inner } => inner.validate()?,
            Scaled { c, inner } => {
                if !(c.is_finite() && *c >= 0.0) {
                    return Err(Error::invalid("c", "scale must be finite and >= 0"));
                }
                inner.validate()?;
            }
            Sum { left, right } => {
                left.validate()?;
                right.validate()?;
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, String> {
        let h: PeriodicFunction = serde_json::from_str(s).map_err(|e| e.to_string())?;
        h.validate().map_err(|e| e.to_string())?;
        Ok(h)
    }

    pub fn eval(&self, theta: f64) -> f64 {
        use PeriodicFunction::*;
        let theta = normalize_angle(theta);
        match self {
            TruncatedCosine { rho } => {
                if *rho == 0.0 || theta.abs() < PI / (2.0 * rho) {
                    (rho * theta).cos()
                } else {
                    0.0
                }
            }
            Constant { c } => *c,
            Support { points } => {
                let (c, s) = (theta.cos(), theta.sin());
                points
                    .iter()
                    .map(|p| p.re * c + p.im * s)
                    .fold(f64::NEG_INFINITY, f64::max)
            }
            Samples(s) => s.eval(theta),
            PositivePart { inner } => inner.eval(theta).max(0.0),
            NegativePart { inner } => (-inner.eval(theta)).max(0.0),
            Scaled { c, inner } => c * inner.eval(theta),
            Sum { left, right } => left.eval(theta) + right.eval(theta),
        }
    }

    /// Values on the uniform grid `θ_j = 2πj/n`.
    pub fn grid_values(&self, n: usize) -> Vec<f64> {
        (0..n)
            .into_par_iter()
            .map(|j| self.eval(TAU * j as f64 / n as f64))
            .collect()
    }

    /// `(min, max)` over the uniform grid of `n` nodes.
    pub fn range_on_grid(&self, n: usize) -> (f64, f64) {
        self.grid_values(n)
            .into_iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| (lo.min(v), hi.max(v)))
    }

    /// True when any sampled data enters the function.
    pub fn has_samples(&self) -> bool {
        use PeriodicFunction::*;
        match self {
            Samples(_) => true,
            PositivePart { inner } | NegativePart { inner } | Scaled { inner, .. } => inner.has_samples(),
            Sum { left, right } => left.has_samples() || right.has_samples(),
            _ => false,
        }
    }

    /// Angles in `(−π, π]` where `h` may fail to be continuously differentiable.
    ///
    /// Exact for closed forms; zero crossings under `PositivePart` and
    /// `NegativePart` are located by a 4096-node scan plus bisection.
    pub fn kinks(&self) -> Vec<f64> {
        use PeriodicFunction::*;
        let mut out = match self {
            TruncatedCosine { rho } => {
                if *rho == 0.0 {
                    vec![]
                } else {
                    let a = PI / (2.0 * rho);
                    if a < PI {
                        vec![-a, a]
                    } else {
                        vec![PI]
                    }
                }
            }
            Constant { .. } => vec![],
            Support { points } => support_kinks(points),
            Samples(s) => match s.interpolation {
                Interpolation::Trigonometric => vec![],
                Interpolation::Linear => (0..s.len())
                    .map(|j| normalize_angle(TAU * j as f64 / s.len() as f64))
                    .collect(),
            },
            PositivePart { inner } | NegativePart { inner } => {
                let mut k = inner.kinks();
                k.extend(zero_crossings(inner, 4096));
                k
            }
            Scaled { inner, .. } => inner.kinks(),
            Sum { left, right } => {
                let mut k = left.kinks();
                k.extend(right.kinks());
                k
            }
        };
        out.sort_by(f64::total_cmp);
        out.dedup_by(|a, b| (*a - *b).abs() < 1e-14);
        out
    }

    /// Short human-readable descriptor used in reports.
    pub fn descriptor(&self) -> String {
        use PeriodicFunction::*;
        match self {
            TruncatedCosine { rho } => format!("truncated_cosine(rho={rho})"),
            Constant { c } => format!("constant({c})"),
            Support { points } => format!("support({} points)", points.len()),
            Samples(s) => format!("samples(n={}, {:?})", s.len(), s.interpolation),
            PositivePart { inner } => format!("positive_part({})", inner.descriptor()),
            NegativePart { inner } => format!("negative_part({})", inner.descriptor()),
            Scaled { c, inner } => format!("{c}*{}", inner.descriptor()),
            Sum { left, right } => format!("({} + {})", left.descriptor(), right.descriptor()),
        }
    }
}

fn support_kinks(points: &[Complex64]) -> Vec<f64> {
    let h = |theta: f64| {
        let (c, s) = (theta.cos(), theta.sin());
        points.iter().map(|p| p.re * c + p.im * s).fold(f64::NEG_INFINITY, f64::max)
    };
    let mut out = Vec::new();
    for (i, p) in points.iter().enumerate() {
        for q in &points[i + 1..] {
            let d = p - q;
            if d.norm() == 0.0 {
                continue;
            }
            // Re(d e^{−iθ}) = 0  ⇔  θ = arg d ± π/2
            for theta in [d.arg() + PI / 2.0, d.arg() - PI / 2.0] {
                let (c, s) = (theta.cos(), theta.sin());
                let v = p.re * c + p.im * s;
                if (v - h(theta)).abs() <= 1e-12 * (1.0 + v.abs()) {
                    out.push(normalize_angle(theta));
                }
            }
        }
    }
    out
}

fn zero_crossings(h: &PeriodicFunction, n: usize) -> Vec<f64> {
    let grid: Vec<f64> = (0..=n).map(|j| -PI + TAU * j as f64 / n as f64).collect();
    let vals: Vec<f64> = grid.iter().map(|&t| h.eval(t)).collect();
    let mut out = Vec::new();
    for j in 0..n {
        let (a, b) = (vals[j], vals[j + 1]);
        if a == 0.0 {
            out.push(normalize_angle(grid[j]));
        } else if a * b < 0.0 {
            let (mut lo, mut hi) = (grid[j], grid[j + 1]);
            let sign_lo = a.signum();
            for _ in 0..60 {
                let mid = 0.5 * (lo + hi);
                if h.eval(mid).signum() == sign_lo {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            out.push(normalize_angle(0.5 * (lo + hi)));
        }
    }
    out
}

/// `h⁺ = max(0, h)`.
pub fn positive_part(h: PeriodicFunction) -> PeriodicFunction {
    PeriodicFunction::PositivePart { inner: Box::new(h) }
}

/// Support function of a nonempty finite set of points.
pub fn support_function(points: &[Complex64]) -> Result<PeriodicFunction> {
    let h = PeriodicFunction::Support {
        points: points.to_vec(),
    };
    h.validate()?;
    Ok(h)
}

/// One offending (or worst) triple of a convexity scan.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Witness {
    pub theta1: f64,
    pub theta: f64,
    pub theta2: f64,
    pub defect: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrigConvexityReport {
    pub rho: f64,
    pub n_grid: usize,
    pub tol: f64,
    pub passed: bool,
    /// Largest violation found; `passed ⇔ max_defect ≤ tol`.
    pub max_defect: f64,
    pub witnesses: Vec<Witness>,
}

const MAX_WITNESSES: usize = 8;

fn validate_check_args(rho: f64, n_grid: usize, tol: f64) -> Result<()> {
    if n_grid < 16 {
        return Err(Error::invalid("n_grid", format!("must be >= 16, got {n_grid}")));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid("tol", format!("must be finite and > 0, got {tol}")));
    }
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::invalid("rho", format!("must be finite and >= 0, got {rho}")));
    }
    Ok(())
}

/// Default check tolerance: `1e-9` for closed forms, `1e-6·(1 + max|h|)` once samples are involved.
pub fn default_tol(h: &PeriodicFunction) -> f64 {
    if h.has_samples() {
        let (lo, hi) = h.range_on_grid(1024);
        1e-6 * (1.0 + lo.abs().max(hi.abs()))
    } else {
        1e-9
    }
}

fn collect_witnesses(mut found: Vec<Witness>) -> Vec<Witness> {
    found.sort_by(|a, b| b.defect.total_cmp(&a.defect));
    found.truncate(MAX_WITNESSES);
    found
}

/// Scan the interpolation inequality over triples of an `n_grid` mesh.
///
/// Endpoints range over mesh nodes with `θ₂ − θ₁ ≤ π/ρ − π/(ρ·n_grid)`
/// (and at most two periods); `n_grid/8` interior nodes are tested per pair.
pub fn check_trig_convex(
    h: &PeriodicFunction,
    rho: f64,
    n_grid: usize,
    tol: f64,
) -> Result<TrigConvexityReport> {
    validate_check_args(rho, n_grid, tol)?;
    let vals = h.grid_values(n_grid);
    let step = TAU / n_grid as f64;

    if rho == 0.0 {
        let (imin, imax) = argminmax(&vals);
        let spread = vals[imax] - vals[imin];
        let passed = spread <= tol;
        let witnesses = if passed {
            vec![]
        } else {
            let (a, b) = (imin.min(imax), imin.max(imax));
            let (t1, t2) = (a as f64 * step, b as f64 * step);
            vec![Witness {
                theta1: t1,
                theta: 0.5 * (t1 + t2),
                theta2: t2,
                defect: spread,
            }]
        };
        return Ok(TrigConvexityReport {
            rho,
            n_grid,
            tol,
            passed,
            max_defect: spread,
            witnesses,
        });
    }

    let max_arc = PI / rho - PI / (rho * n_grid as f64);
    let d_max = ((max_arc / step).floor() as usize).min(2 * n_grid);
    // stay strictly below π/ρ
    let d_max = if d_max as f64 * step * rho >= PI { d_max - 1 } else { d_max };
    let sines: Vec<f64> = (0..=d_max).map(|j| (rho * j as f64 * step).sin()).collect();
    let interior = (n_grid / 8).max(1);

    let per_start: Vec<(f64, Vec<Witness>)> = (0..n_grid)
        .into_par_iter()
        .map(|i| {
            let mut worst = f64::NEG_INFINITY;
            let mut bad = Vec::new();
            let mut worst_w = None;
            for d in 2..=d_max {
                let denom = sines[d];
                let h1 = vals[i];
                let h2 = vals[(i + d) % n_grid];
                let count = d - 1;
                let m = interior.min(count);
                for k in 0..m {
                    let o = if count <= interior {
                        1 + k
                    } else {
                        1 + (k * (count - 1)) / (m - 1).max(1)
                    };
                    let hv = vals[(i + o) % n_grid];
                    let bound = (sines[d - o] * h1 + sines[o] * h2) / denom;
                    let defect = hv - bound;
                    if defect > worst {
                        worst = defect;
                        worst_w = Some((d, o, defect));
                    }
                    if defect > tol && bad.len() < MAX_WITNESSES {
                        bad.push(witness(i, d, o, step, defect));
                    }
                }
            }
            if bad.is_empty() {
                if let Some((d, o, defect)) = worst_w {
                    if defect > tol {
                        bad.push(witness(i, d, o, step, defect));
                    }
                }
            }
            (worst, bad)
        })
        .collect();

    let max_defect = per_start.iter().map(|p| p.0).fold(f64::NEG_INFINITY, f64::max);
    let max_defect = if max_defect.is_finite() { max_defect } else { 0.0 };
    let witnesses = collect_witnesses(per_start.into_iter().flat_map(|p| p.1).collect());
    Ok(TrigConvexityReport {
        rho,
        n_grid,
        tol,
        passed: max_defect <= tol,
        max_defect,
        witnesses,
    })
}

fn witness(i: usize, d: usize, o: usize, step: f64, defect: f64) -> Witness {
    let t1 = i as f64 * step;
    Witness {
        theta1: t1,
        theta: t1 + o as f64 * step,
        theta2: t1 + d as f64 * step,
        defect,
    }
}

fn argminmax(v: &[f64]) -> (usize, usize) {
    let mut imin = 0;
    let mut imax = 0;
    for (i, x) in v.iter().enumerate() {
        if *x < v[imin] {
            imin = i;
        }
        if *x > v[imax] {
            imax = i;
        }
    }
    (imin, imax)
}

/// Discrete `h″ + ρ²h ≥ 0` at step `s = 2π/n_grid`.
///
/// Uses `(h(θ+s) + h(θ−s) − 2 cos(ρs) h(θ)) / s²`, which equals
/// `D²h + (2(1 − cos ρs)/s²)·h` and vanishes identically on `a cos ρθ + b sin ρθ`.
/// Across a convex kink the value is a positive spike growing like `1/s`.
/// The report's `max_defect` is the largest value of `−(h″ + ρ²h)`.
pub fn check_second_derivative(
    h: &PeriodicFunction,
    rho: f64,
    n_grid: usize,
    tol: f64,
) -> Result<TrigConvexityReport> {
    validate_check_args(rho, n_grid, tol)?;
    let vals = h.grid_values(n_grid);
    let s = TAU / n_grid as f64;
    let c = (rho * s).cos();
    let n = n_grid;
    let mut max_defect = f64::NEG_INFINITY;
    let mut bad = Vec::new();
    for j in 0..n {
        let lhs = (vals[(j + 1) % n] + vals[(j + n - 1) % n] - 2.0 * c * vals[j]) / (s * s);
        let defect = -lhs;
        max_defect = max_defect.max(defect);
        if defect > tol {
            let t = j as f64 * s;
            bad.push(Witness {
                theta1: t - s,
                theta: t,
                theta2: t + s,
                defect,
            });
        }
    }
    Ok(TrigConvexityReport {
        rho,
        n_grid,
        tol,
        passed: max_defect <= tol,
        max_defect,
        witnesses: collect_witnesses(bad),
    })
}

/// Radial samples `u(R_j e^{iθ_i})` of a function on the plane.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialSamples {
    pub radii: Vec<f64>,
    pub thetas: Vec<f64>,
    /// `values[j][i] = u(R_j e^{iθ_i})`.
    pub values: Vec<Vec<f64>>,
}

impl RadialSamples {
    /// Sample `u` on `θ_i = 2πi/n_theta` at each radius.
    pub fn from_fn(radii: &[f64], n_theta: usize, u: impl Fn(Complex64) -> f64) -> Self {
        let thetas: Vec<f64> = (0..n_theta).map(|i| TAU * i as f64 / n_theta as f64).collect();
        let values = radii
            .iter()
            .map(|&r| thetas.iter().map(|&t| u(Complex64::from_polar(r, t))).collect())
            .collect();
        RadialSamples {
            radii: radii.to_vec(),
            thetas,
            values,
        }
    }
}

/// Finite-radius stand-in for the ρ-indicator `limsup u(re^{iθ})/r^ρ`.
///
/// Takes, per angle, the max of `u/R^ρ` over the upper half of the radii.
pub fn rho_indicator_estimate(u: &RadialSamples, rho: f64) -> Result<PeriodicFunction> {
    if !(rho.is_finite() && rho > 0.0) {
        return Err(Error::invalid("rho", format!("must be > 0, got {rho}")));
    }
    if u.radii.len() < 3 {
        return Err(Error::invalid("radii", "need at least 3 radii"));
    }
    if u.radii.windows(2).any(|w| !(w[1] > w[0])) || u.radii[0] <= 0.0 {
        return Err(Error::invalid("radii", "radii must be positive and strictly increasing"));
    }
    let n = u.thetas.len();
    if n < Samples::MIN_LEN || !n.is_multiple_of(2) {
        return Err(Error::invalid("thetas", "need an even number of angles >= 16"));
    }
    let step = TAU / n as f64;
    let uniform = u
        .thetas
        .iter()
        .enumerate()
        .all(|(i, t)| (t - i as f64 * step).abs() <= 1e-9);
    if !uniform {
        return Err(Error::invalid("thetas", "angles must be the uniform grid 2πi/N"));
    }
    if u.values.len() != u.radii.len() || u.values.iter().any(|row| row.len() != n) {
        return Err(Error::invalid("values", "shape must be radii × thetas"));
    }
    let first = u.radii.len() / 2;
    let values = (0..n)
        .map(|i| {
            (first..u.radii.len())
                .map(|j| u.values[j][i] / u.radii[j].powf(rho))
                .fold(f64::NEG_INFINITY, f64::max)
        })
        .collect();
    PeriodicFunction::samples(values, Interpolation::Trigonometric)
}

/// Largest ρ tried when searching for the smallest admissible one.
pub const RHO_MAX: f64 = 64.0;
const MIN_RHO_GRID: usize = 1024;

/// Smallest ρ ∈ [0, 64] (to within `tol`) at which `h` passes [`check_trig_convex`].
///
/// Bisection is valid because nonnegative ρ-trigonometrically convex
/// functions stay so for every larger ρ.
pub fn min_rho(h: &PeriodicFunction, tol: f64) -> Result<f64> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid("tol", "must be finite and > 0"));
    }
    let check_tol = default_tol(h);
    let (lo_val, _) = h.range_on_grid(MIN_RHO_GRID);
    if lo_val < -check_tol {
        return Err(Error::Precondition(format!(
            "min_rho needs h >= 0 on the grid, found {lo_val}"
        )));
    }
    let passes = |rho: f64| -> Result<bool> {
        Ok(check_trig_convex(h, rho, MIN_RHO_GRID, check_tol)?.passed)
    };
    if passes(0.0)? {
        return Ok(0.0);
    }
    if !passes(RHO_MAX)? {
        return Err(Error::NotTrigConvex { rho_max: RHO_MAX });
    }
    let (mut lo, mut hi) = (0.0, RHO_MAX);
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if passes(mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(hi)
}
