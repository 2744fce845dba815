//! Convex growth gauges `g: ℝ⁺ → ℝ⁺` with `g(0) = 0`.
//!
//! Gauges enter the test functions as the radial factor `g((1−r)/r)`.
//! Convexity with `g(0) = 0` gives `g′(x) ≥ g(x)/x`, so `g(x)/x` is
//! nondecreasing and `g` itself is increasing; [`check_gx`] verifies these
//! facts on a mesh.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum GrowthGauge {
    /// `x^p`, `p ≥ 1`.
    Power { p: f64 },
    /// `slope·x`.
    Linear { slope: f64 },
    /// Piecewise-linear interpolation of `points`, starting at `(0, 0)` and
    /// extended past the last point with the last slope.
    #[serde(rename = "piecewise")]
    PiecewiseLinear { points: Vec<[f64; 2]> },
}

impl GrowthGauge {
    pub fn power(p: f64) -> Result<Self> {
        let g = GrowthGauge::Power { p };
        g.validate()?;
        Ok(g)
    }

    pub fn linear(slope: f64) -> Result<Self> {
        let g = GrowthGauge::Linear { slope };
        g.validate()?;
        Ok(g)
    }

    /// Breakpoints must start at the origin with strictly increasing `x`.
    /// Convexity is not enforced here; [`check_gauge_class`] reports it.
    pub fn piecewise(points: Vec<[f64; 2]>) -> Result<Self> {
        let g = GrowthGauge::PiecewiseLinear { points };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            GrowthGauge::Power { p } => {
                if !(p.is_finite() && *p >= 1.0) {
                    return Err(Error::invalid("p", format!("power gauge needs p >= 1, got {p}")));
                }
            }
            GrowthGauge::Linear { slope } => {
                if !(slope.is_finite() && *slope > 0.0) {
                    return Err(Error::invalid("slope", format!("must be > 0, got {slope}")));
                }
            }
            GrowthGauge::PiecewiseLinear { points } => {
                if points.len() < 2 {
                    return Err(Error::invalid("points", "need at least two breakpoints"));
                }
                if points[0] != [0.0, 0.0] {
                    return Err(Error::invalid("points", "first breakpoint must be (0, 0)"));
                }
                if points.iter().flatten().any(|v| !v.is_finite()) {
                    return Err(Error::invalid("points", "breakpoints must be finite"));
                }
                if points.windows(2).any(|w| !(w[1][0] > w[0][0])) {
                    return Err(Error::invalid("points", "x must be strictly increasing"));
                }
                if points.iter().any(|p| p[1] < 0.0) {
                    return Err(Error::invalid("points", "values must be >= 0"));
                }
            }
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, String> {
        let g: GrowthGauge = serde_json::from_str(s).map_err(|e| e.to_string())?;
        g.validate().map_err(|e| e.to_string())?;
        Ok(g)
    }

    /// `g(x)` for `x ≥ 0`. Negative `x` is rejected.
    pub fn eval(&self, x: f64) -> Result<f64> {
        if !(x >= 0.0) {
            return Err(Error::invalid("x", format!("gauge argument must be >= 0, got {x}")));
        }
        Ok(self.eval_unchecked(x))
    }

    pub(crate) fn eval_unchecked(&self, x: f64) -> f64 {
        match self {
            GrowthGauge::Power { p } => {
                if x == 0.0 {
                    0.0
                } else {
                    x.powf(*p)
                }
            }
            GrowthGauge::Linear { slope } => slope * x,
            GrowthGauge::PiecewiseLinear { points } => {
                let k = points.partition_point(|p| p[0] <= x);
                // segment [k-1, k], or the last one when x is past the end
                let i = k.clamp(1, points.len() - 1);
                let (a, b) = (points[i - 1], points[i]);
                a[1] + (b[1] - a[1]) * (x - a[0]) / (b[0] - a[0])
            }
        }
    }

    /// Points where `g` is not differentiable.
    pub fn kinks(&self) -> Vec<f64> {
        match self {
            GrowthGauge::PiecewiseLinear { points } => points[1..points.len() - 1].iter().map(|p| p[0]).collect(),
            _ => vec![],
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            GrowthGauge::Power { p } => format!("power(p={p})"),
            GrowthGauge::Linear { slope } => format!("linear(slope={slope})"),
            GrowthGauge::PiecewiseLinear { points } => format!("piecewise({} points)", points.len()),
        }
    }
}

/// Result of the gauge class conditions: convexity, `g(0) = 0`, `g(1) ≤ 1`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaugeClassReport {
    pub convex_ok: bool,
    pub zero_at_zero_ok: bool,
    pub normalized_ok: bool,
    pub max_convexity_defect: f64,
    pub g_at_one: f64,
}

impl GaugeClassReport {
    pub fn all_ok(&self) -> bool {
        self.convex_ok && self.zero_at_zero_ok && self.normalized_ok
    }
}

/// Midpoint convexity on the mesh `2i/n_grid` of `(0, 2]` at dyadic spans,
/// plus the value checks at 0 and 1.
pub fn check_gauge_class(g: &GrowthGauge, n_grid: usize, tol: f64) -> GaugeClassReport {
    let n = n_grid.max(2);
    let xs: Vec<f64> = (0..=n).map(|i| 2.0 * i as f64 / n as f64).collect();
    let vals: Vec<f64> = xs.iter().map(|&x| g.eval_unchecked(x)).collect();
    let mut max_defect = f64::NEG_INFINITY;
    let mut span = 1;
    while span <= n / 2 {
        for i in span..=n - span {
            let chord = 0.5 * (vals[i - span] + vals[i + span]);
            let defect = (vals[i] - chord) / (1.0 + chord.abs());
            max_defect = max_defect.max(defect);
        }
        span *= 2;
    }
    let g0 = g.eval_unchecked(0.0);
    let g1 = g.eval_unchecked(1.0);
    GaugeClassReport {
        convex_ok: max_defect <= tol,
        zero_at_zero_ok: g0 == 0.0,
        normalized_ok: g1 <= 1.0 + tol,
        max_convexity_defect: max_defect,
        g_at_one: g1,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GxReport {
    /// `D⁺g(x) ≥ g(x)/x` on the mesh.
    pub derivative_bound_ok: bool,
    pub increasing_ok: bool,
    /// `x ↦ g(x)/x` nondecreasing on the mesh.
    pub ratio_monotone_ok: bool,
    /// Smallest relative slack `(D⁺g − g/x) / (1 + g/x)`.
    pub min_slack: f64,
    pub n_points: usize,
}

impl GxReport {
    pub fn all_ok(&self) -> bool {
        self.derivative_bound_ok && self.increasing_ok && self.ratio_monotone_ok
    }
}

/// Log-spaced mesh of `(0, 1]` from `1e-6` to `1`.
pub fn log_mesh(n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n)
        .map(|k| 10f64.powf(-6.0 + 6.0 * k as f64 / (n - 1) as f64))
        .collect()
}

/// Check `g′(x) ≥ g(x)/x` (forward differences) and monotonicity on a log mesh.
pub fn check_gx(g: &GrowthGauge, n_grid: usize, tol: f64) -> GxReport {
    let xs = log_mesh(n_grid);
    let mut min_slack = f64::INFINITY;
    let mut increasing_ok = true;
    let mut ratio_monotone_ok = true;
    let mut prev: Option<(f64, f64)> = None;
    for &x in &xs {
        let gx = g.eval_unchecked(x);
        let dx = 1e-6 * x;
        let fwd = (g.eval_unchecked(x + dx) - gx) / dx;
        let ratio = gx / x;
        min_slack = min_slack.min((fwd - ratio) / (1.0 + ratio.abs()));
        if let Some((pg, pr)) = prev {
            if gx < pg - tol * (1.0 + pg.abs()) {
                increasing_ok = false;
            }
            if ratio < pr - tol * (1.0 + pr.abs()) {
                ratio_monotone_ok = false;
            }
        }
        prev = Some((gx, ratio));
    }
    GxReport {
        derivative_bound_ok: min_slack >= -tol,
        increasing_ok,
        ratio_monotone_ok,
        min_slack,
        n_points: xs.len(),
    }
}
