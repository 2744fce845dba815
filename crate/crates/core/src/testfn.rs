//! Test functions `v(re^{iθ}) = g((1−r)/r)·h(θ)` on the unit disk.
//!
//! For a convex gauge `g` with `g(0) = 0` and a nonnegative
//! ρ-trigonometrically convex `h`, `v` is positive, bounded by `b_ρ`,
//! vanishes at the unit circle and is subharmonic on `r_ρ < |z| < 1`,
//! where `r_ρ = max{1/2, 1 − 1/ρ²}`. The audits here check those claims on
//! polar grids with centered finite differences.

use std::f64::consts::{PI, TAU};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gauge::GrowthGauge;
use crate::periodic::{normalize_angle, PeriodicFunction};

/// Inner radius of the annulus on which the test function is subharmonic.
pub fn r_rho(rho: f64) -> Result<f64> {
    if !(rho.is_finite() && rho >= 0.0) {
        return Err(Error::invalid("rho", format!("must be finite and >= 0, got {rho}")));
    }
    if rho == 0.0 {
        return Ok(0.5);
    }
    let rho2 = rho * rho;
    Ok(((rho2 - 1.0) / rho2).max(0.5))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TestFunctionSpec {
    pub gauge: GrowthGauge,
    pub h: PeriodicFunction,
    pub rho: f64,
}

const MAX_GRID: usize = 4096;

impl TestFunctionSpec {
    pub fn new(gauge: GrowthGauge, h: PeriodicFunction, rho: f64) -> Result<Self> {
        let spec = TestFunctionSpec { gauge, h, rho };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        self.gauge.validate()?;
        self.h.validate()?;
        r_rho(self.rho)?;
        Ok(())
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, String> {
        let spec: TestFunctionSpec = serde_json::from_str(s).map_err(|e| e.to_string())?;
        spec.validate().map_err(|e| e.to_string())?;
        Ok(spec)
    }

    pub fn r_rho(&self) -> f64 {
        r_rho(self.rho).expect("validated rho")
    }

    /// `max_θ h` over a 4096-node grid.
    pub fn h_max(&self) -> f64 {
        self.h.range_on_grid(MAX_GRID).1
    }

    /// `b_ρ = g((1−r_ρ)/r_ρ) · max_θ h`.
    pub fn b_rho(&self) -> f64 {
        let r = self.r_rho();
        self.gauge.eval_unchecked((1.0 - r) / r) * self.h_max()
    }

    /// `v(r, θ)` without the range check on `r`.
    pub fn value(&self, r: f64, theta: f64) -> f64 {
        self.gauge.eval_unchecked(((1.0 - r) / r).max(0.0)) * self.h.eval(theta)
    }

    /// Lower bound for `Δv` at smooth points:
    /// `(1/r²)(1/(1−r) − ρ²) g(1/r − 1) h(θ)`.
    pub fn laplacian_lower_bound(&self, r: f64, theta: f64) -> f64 {
        (1.0 / (r * r)) * (1.0 / (1.0 - r) - self.rho * self.rho) * self.value(r, theta)
    }
}

/// `g((1−r)/r)·h(θ)` for `0 < r < 1`.
pub fn eval_test(spec: &TestFunctionSpec, r: f64, theta: f64) -> Result<f64> {
    if !(r > 0.0 && r < 1.0) {
        return Err(Error::invalid("r", format!("must lie in (0, 1), got {r}")));
    }
    Ok(spec.value(r, theta))
}

/// Five-point polar Laplacian `v_rr + v_r/r + v_θθ/r²` with centered differences.
pub fn polar_laplacian(
    v: impl Fn(f64, f64) -> f64,
    r: f64,
    theta: f64,
    dr: f64,
    dtheta: f64,
) -> Result<f64> {
    if !(dr > 0.0 && dtheta > 0.0) {
        return Err(Error::invalid("dr", "steps must be > 0"));
    }
    if !(r - dr > 0.0 && r + dr < 1.0) {
        return Err(Error::invalid(
            "r",
            format!("stencil [{}, {}] leaves the disk annulus (0, 1)", r - dr, r + dr),
        ));
    }
    let c = v(r, theta);
    let (rp, rm) = (v(r + dr, theta), v(r - dr, theta));
    let (tp, tm) = (v(r, theta + dtheta), v(r, theta - dtheta));
    let v_rr = (rp - 2.0 * c + rm) / (dr * dr);
    let v_r = (rp - rm) / (2.0 * dr);
    let v_tt = (tp - 2.0 * c + tm) / (dtheta * dtheta);
    Ok(v_rr + v_r / r + v_tt / (r * r))
}

/// Polar audit grid. Radii run over `[r_min, r_max]` in `n_r` steps;
/// angles sit at half-steps `−π + (j + ½)·2π/n_theta`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AuditGrid {
    pub n_r: usize,
    pub n_theta: usize,
    /// Distance kept from `r_ρ` and from the unit circle.
    pub margin: f64,
    /// Extra uniformly random probe points.
    pub probes: usize,
    pub seed: u64,
}

impl Default for AuditGrid {
    fn default() -> Self {
        AuditGrid {
            n_r: 256,
            n_theta: 512,
            margin: 0.01,
            probes: 0,
            seed: 0,
        }
    }
}

impl AuditGrid {
    pub fn new(n_r: usize, n_theta: usize) -> Self {
        AuditGrid {
            n_r,
            n_theta,
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LaplacianWitness {
    pub r: f64,
    pub theta: f64,
    pub laplacian: f64,
    pub lower_bound: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SubharmonicityReport {
    pub rho: f64,
    pub r_rho: f64,
    pub r_min: f64,
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
    pub dr: f64,
    pub dtheta: f64,
    pub tol: f64,
    /// `1 + max |v|` over the grid; thresholds are `tol·scale`.
    pub scale: f64,
    pub min_laplacian: f64,
    pub lower_bound_ok: bool,
    /// `Δv ≥ (1/r²)(1/(1−r) − ρ²) g h − tol·scale` at every audited node.
    pub posgh_ok: bool,
    pub min_posgh_slack: f64,
    pub audited_nodes: usize,
    /// Nodes whose stencil straddles a kink of `g` or `h`; their finite
    /// differences are spikes of positive sign (distributional positivity
    /// of the second derivative), so they are kept out of the minimum.
    pub excluded_nodes: usize,
    pub excluded_min_laplacian: Option<f64>,
    /// `(r, min over θ of Δv)` per audited radius.
    pub row_min: Vec<[f64; 2]>,
    pub witnesses: Vec<LaplacianWitness>,
}

impl SubharmonicityReport {
    pub fn passed(&self) -> bool {
        self.lower_bound_ok && self.posgh_ok
    }
}

fn near_any(x: f64, kinks: &[f64], width: f64, periodic: bool) -> bool {
    kinks.iter().any(|&k| {
        let d = if periodic {
            normalize_angle(x - k).abs()
        } else {
            (x - k).abs()
        };
        d <= width * (1.0 + 1e-9)
    })
}

struct Row {
    r: f64,
    min: f64,
    min_slack: f64,
    audited: usize,
    excluded: usize,
    excluded_min: f64,
    witnesses: Vec<LaplacianWitness>,
    max_abs_v: f64,
}

/// Polar-Laplacian scan of `v` over `[r_ρ + margin, 1 − margin] × [−π, π)`.
pub fn subharmonicity_audit(spec: &TestFunctionSpec, grid: &AuditGrid, tol: f64) -> Result<SubharmonicityReport> {
    if grid.n_r < 32 || grid.n_theta < 64 {
        return Err(Error::invalid(
            "grid",
            format!("need n_r >= 32 and n_theta >= 64, got {}x{}", grid.n_r, grid.n_theta),
        ));
    }
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::invalid("tol", "must be finite and > 0"));
    }
    spec.validate()?;
    let r_rho = spec.r_rho();
    let r_min = r_rho + grid.margin;
    let r_max = 1.0 - grid.margin;
    if !(r_min < r_max) {
        return Err(Error::invalid("margin", "audit region is empty"));
    }
    let dr = (r_max - r_min) / grid.n_r as f64;
    let dtheta = TAU / grid.n_theta as f64;
    if r_min - dr <= r_rho {
        return Err(Error::invalid("margin", "stencil reaches r_rho; increase the margin"));
    }
    let theta_kinks = spec.h.kinks();
    let r_kinks: Vec<f64> = spec.gauge.kinks().iter().map(|x| 1.0 / (1.0 + x)).collect();
    let v = |r: f64, t: f64| spec.value(r, t);

    let audit_point = |r: f64, theta: f64, row: &mut Row| -> Result<()> {
        row.max_abs_v = row.max_abs_v.max(v(r, theta).abs());
        let lap = polar_laplacian(v, r, theta, dr, dtheta)?;
        if near_any(theta, &theta_kinks, dtheta, true) || near_any(r, &r_kinks, dr, false) {
            row.excluded += 1;
            row.excluded_min = row.excluded_min.min(lap);
            return Ok(());
        }
        row.audited += 1;
        let bound = spec.laplacian_lower_bound(r, theta);
        row.min = row.min.min(lap);
        row.min_slack = row.min_slack.min(lap - bound);
        if (lap < -tol || lap < bound - tol) && row.witnesses.len() < 4 {
            row.witnesses.push(LaplacianWitness {
                r,
                theta,
                laplacian: lap,
                lower_bound: bound,
            });
        }
        Ok(())
    };

    let new_row = |r: f64| Row {
        r,
        min: f64::INFINITY,
        min_slack: f64::INFINITY,
        audited: 0,
        excluded: 0,
        excluded_min: f64::INFINITY,
        witnesses: vec![],
        max_abs_v: 0.0,
    };

    let mut rows: Vec<Row> = (0..=grid.n_r)
        .into_par_iter()
        .map(|i| -> Result<Row> {
            let r = r_min + i as f64 * dr;
            let mut row = new_row(r);
            for j in 0..grid.n_theta {
                let theta = -PI + (j as f64 + 0.5) * dtheta;
                audit_point(r, theta, &mut row)?;
            }
            Ok(row)
        })
        .collect::<Result<_>>()?;

    if grid.probes > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(grid.seed);
        let mut row = new_row(f64::NAN);
        for _ in 0..grid.probes {
            let r = rng.gen_range(r_min..r_max);
            let theta = rng.gen_range(-PI..PI);
            audit_point(r, theta, &mut row)?;
        }
        rows.push(row);
    }

    let scale = 1.0 + rows.iter().map(|r| r.max_abs_v).fold(0.0, f64::max);
    let threshold = tol * scale;
    let min_laplacian = rows.iter().map(|r| r.min).fold(f64::INFINITY, f64::min);
    let min_slack = rows.iter().map(|r| r.min_slack).fold(f64::INFINITY, f64::min);
    let excluded: usize = rows.iter().map(|r| r.excluded).sum();
    let excluded_min = rows.iter().map(|r| r.excluded_min).fold(f64::INFINITY, f64::min);
    let row_min = rows
        .iter()
        .filter(|r| r.r.is_finite() && r.audited > 0)
        .map(|r| [r.r, r.min])
        .collect();
    let witnesses = rows
        .iter()
        .flat_map(|r| r.witnesses.iter().cloned())
        .filter(|w| w.laplacian < -threshold || w.laplacian < w.lower_bound - threshold)
        .take(16)
        .collect();
    Ok(SubharmonicityReport {
        rho: spec.rho,
        r_rho,
        r_min,
        r_max,
        n_r: grid.n_r,
        n_theta: grid.n_theta,
        dr,
        dtheta,
        tol,
        scale,
        min_laplacian,
        lower_bound_ok: min_laplacian >= -threshold,
        posgh_ok: min_slack >= -threshold,
        min_posgh_slack: min_slack,
        audited_nodes: rows.iter().map(|r| r.audited).sum(),
        excluded_nodes: excluded,
        excluded_min_laplacian: (excluded > 0).then_some(excluded_min),
        row_min,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MembershipReport {
    pub positive_ok: bool,
    pub bounded_ok: bool,
    pub boundary_zero_ok: bool,
    pub min_value: f64,
    pub sup: f64,
    pub b_rho: f64,
    /// `(ε, max_θ v(1−ε, θ))` along the schedule `0.1, 0.01, 0.001`.
    pub boundary_values: Vec<[f64; 2]>,
}

impl MembershipReport {
    pub fn passed(&self) -> bool {
        self.positive_ok && self.bounded_ok && self.boundary_zero_ok
    }
}

pub const BOUNDARY_SCHEDULE: [f64; 3] = [0.1, 0.01, 0.001];
const MEMBERSHIP_RADII: usize = 256;

/// Positivity, the bound `sup v ≤ b_ρ`, and decay toward the unit circle.
///
/// The decay test asks the boundary maxima to be nonincreasing along the
/// schedule with the last at most a tenth of the first; convexity of `g`
/// with `g(0) = 0` guarantees a ratio below `0.009 / 0.111`.
pub fn membership_audit(spec: &TestFunctionSpec, n_boundary: usize, tol: f64) -> Result<MembershipReport> {
    spec.validate()?;
    let n = n_boundary.max(16);
    let r_rho = spec.r_rho();
    let thetas: Vec<f64> = (0..n).map(|j| TAU * j as f64 / n as f64).collect();
    let hs: Vec<f64> = thetas.iter().map(|&t| spec.h.eval(t)).collect();
    let (mut lo, mut sup) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..MEMBERSHIP_RADII {
        let r = r_rho + (1.0 - r_rho) * (i as f64 + 0.5) / MEMBERSHIP_RADII as f64;
        let gr = spec.gauge.eval_unchecked((1.0 - r) / r);
        for h in &hs {
            let v = gr * h;
            lo = lo.min(v);
            sup = sup.max(v);
        }
    }
    let boundary_values: Vec<[f64; 2]> = BOUNDARY_SCHEDULE
        .iter()
        .map(|&eps| {
            let r = 1.0 - eps;
            let gr = spec.gauge.eval_unchecked((1.0 - r) / r);
            let m = hs.iter().map(|h| gr * h).fold(f64::NEG_INFINITY, f64::max);
            [eps, m]
        })
        .collect();
    let decreasing = boundary_values.windows(2).all(|w| w[1][1] <= w[0][1] + tol);
    let first = boundary_values[0][1];
    let last = boundary_values[boundary_values.len() - 1][1];
    let b_rho = spec.b_rho();
    Ok(MembershipReport {
        positive_ok: lo >= -tol,
        bounded_ok: sup <= b_rho + tol,
        boundary_zero_ok: decreasing && last <= 0.1 * first.abs() + tol,
        min_value: lo,
        sup,
        b_rho,
        boundary_values,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::{positive_part, Interpolation};

    fn spec(g: GrowthGauge, h: PeriodicFunction, rho: f64) -> TestFunctionSpec {
        TestFunctionSpec::new(g, h, rho).unwrap()
    }

    #[test]
    fn r_rho_values() {
        assert_eq!(r_rho(0.0).unwrap(), 0.5);
        assert_eq!(r_rho(1.0).unwrap(), 0.5);
        assert_eq!(r_rho(2.0).unwrap(), 0.75);
        assert_eq!(r_rho(3.0).unwrap(), 8.0 / 9.0);
        assert!((r_rho(2f64.sqrt()).unwrap() - 0.5).abs() <= 1e-15);
        assert!(r_rho(-1.0).is_err());
    }

    #[test]
    fn eval_test_examples() {
        let s = spec(GrowthGauge::power(1.0).unwrap(), PeriodicFunction::constant(1.0), 0.0);
        assert_eq!(eval_test(&s, 0.5, 0.3).unwrap(), 1.0);
        assert!(eval_test(&s, 1.0, 0.0).is_err());
        assert!(eval_test(&s, 0.0, 0.0).is_err());
        let mut prev = f64::INFINITY;
        for eps in [1e-1, 1e-3, 1e-6, 1e-9] {
            let v = eval_test(&s, 1.0 - eps, 0.0).unwrap();
            assert!(v < prev);
            prev = v;
        }
        assert!(prev < 1e-8);
        let s = spec(
            GrowthGauge::power(2.0).unwrap(),
            PeriodicFunction::truncated_cosine(1.0).unwrap(),
            1.0,
        );
        assert!((eval_test(&s, 2.0 / 3.0, 0.0).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn laplacian_of_harmonic_and_quadratic() {
        let (dr, dt) = (1e-3, 1e-3);
        let l = polar_laplacian(|r, _| r.ln(), 0.6, 0.2, dr, dt).unwrap();
        assert!(l.abs() < 1e-5, "{l}");
        let l = polar_laplacian(|r, t| r * t.cos(), 0.6, 0.2, dr, dt).unwrap();
        assert!(l.abs() < 1e-5, "{l}");
        let l = polar_laplacian(|r, _| r * r, 0.6, 0.2, dr, dt).unwrap();
        assert!((l - 4.0).abs() < 1e-5, "{l}");
        assert!(polar_laplacian(|r, _| r, 0.999, 0.0, 0.01, 0.01).is_err());
        assert!(polar_laplacian(|r, _| r, 0.005, 0.0, 0.01, 0.01).is_err());
    }

    #[test]
    fn laplacian_second_order_convergence() {
        // v = r³ cos θ has Δv = 8 r cos θ
        let v = |r: f64, t: f64| r.powi(3) * t.cos();
        let exact = 8.0 * 0.6 * 0.4f64.cos();
        let e1 = (polar_laplacian(v, 0.6, 0.4, 0.02, 0.02).unwrap() - exact).abs();
        let e2 = (polar_laplacian(v, 0.6, 0.4, 0.01, 0.01).unwrap() - exact).abs();
        let ratio = e1 / e2;
        assert!((ratio - 4.0).abs() < 0.1, "ratio {ratio}");
    }

    #[test]
    fn audit_linear_constant() {
        // Δ(1/r − 1) = 1/r³ > 0
        let s = spec(GrowthGauge::power(1.0).unwrap(), PeriodicFunction::constant(1.0), 0.0);
        let rep = subharmonicity_audit(&s, &AuditGrid::default(), 1e-6).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!((rep.r_min - 0.51).abs() < 1e-15 && (rep.r_max - 0.99).abs() < 1e-15);
        assert!((rep.min_laplacian - 1.0 / 0.99f64.powi(3)).abs() < 1e-3);
        assert_eq!(rep.excluded_nodes, 0);
    }

    #[test]
    fn audit_square_truncated_cosine() {
        let s = spec(
            GrowthGauge::power(2.0).unwrap(),
            PeriodicFunction::truncated_cosine(1.0).unwrap(),
            1.0,
        );
        let rep = subharmonicity_audit(&s, &AuditGrid::default(), 1e-6).unwrap();
        assert!(rep.passed(), "{rep:?}");
        assert!(rep.excluded_nodes > 0);
        assert!(rep.excluded_min_laplacian.unwrap() > 0.0);
    }

    #[test]
    fn audit_positive_part_cos3() {
        let h = positive_part(
            PeriodicFunction::sampled_fn(64, Interpolation::Trigonometric, |t| (3.0 * t).cos()).unwrap(),
        );
        let s = spec(GrowthGauge::power(1.0).unwrap(), h, 3.0);
        for (nr, nt) in [(128, 256), (256, 512)] {
            let rep = subharmonicity_audit(&s, &AuditGrid::new(nr, nt), 1e-6).unwrap();
            assert!((rep.r_min - (8.0 / 9.0 + 0.01)).abs() < 1e-15);
            assert!(rep.passed(), "{nr}x{nt}: {:?}", rep.witnesses);
        }
    }

    #[test]
    fn audit_detects_non_subharmonic_region() {
        // h = truncated cosine of order 3 is not 1-trigonometrically convex:
        // with ρ declared as 1 the annulus starts at 1/2 where Δv < 0 inside the bump
        let s = spec(
            GrowthGauge::power(1.0).unwrap(),
            PeriodicFunction::truncated_cosine(3.0).unwrap(),
            1.0,
        );
        let rep = subharmonicity_audit(&s, &AuditGrid::default(), 1e-6).unwrap();
        assert!(!rep.lower_bound_ok);
        assert!(!rep.witnesses.is_empty());
    }

    #[test]
    fn audit_rejects_coarse_grids() {
        let s = spec(GrowthGauge::power(1.0).unwrap(), PeriodicFunction::constant(1.0), 0.0);
        assert!(subharmonicity_audit(&s, &AuditGrid::new(16, 512), 1e-6).is_err());
        assert!(subharmonicity_audit(&s, &AuditGrid::new(256, 32), 1e-6).is_err());
    }

    #[test]
    fn probes_are_deterministic() {
        let s = spec(GrowthGauge::power(2.0).unwrap(), PeriodicFunction::constant(0.5), 1.0);
        let grid = AuditGrid {
            probes: 50,
            seed: 7,
            ..AuditGrid::new(64, 128)
        };
        let a = subharmonicity_audit(&s, &grid, 1e-6).unwrap();
        let b = subharmonicity_audit(&s, &grid, 1e-6).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.audited_nodes, 65 * 128 + 50);
    }

    #[test]
    fn membership_examples() {
        let s = spec(GrowthGauge::power(1.0).unwrap(), PeriodicFunction::constant(1.0), 0.0);
        let m = membership_audit(&s, 256, 1e-12).unwrap();
        assert!(m.passed(), "{m:?}");
        assert_eq!(m.b_rho, 1.0);
        assert!(m.sup <= 1.0 && m.sup > 0.99);
        let h = PeriodicFunction::sampled_fn(64, Interpolation::Trigonometric, |t| 0.5 + 0.5 * t.cos()).unwrap();
        let s = spec(GrowthGauge::power(2.0).unwrap(), h, 3.0);
        let m = membership_audit(&s, 256, 1e-12).unwrap();
        assert!(m.positive_ok && m.bounded_ok && m.boundary_zero_ok);
        assert!((m.b_rho - 1.0 / 64.0).abs() < 1e-15);
        assert!(m.b_rho <= 1.0);
        for w in m.boundary_values.windows(2) {
            assert!(w[1][1] < w[0][1]);
        }
    }

    #[test]
    fn bounded_by_b_rho_everywhere_in_annulus() {
        let g = GrowthGauge::piecewise(vec![[0.0, 0.0], [0.2, 0.02], [1.0, 0.9]]).unwrap();
        let s = spec(g, PeriodicFunction::truncated_cosine(2.0).unwrap(), 2.0);
        let b = s.b_rho();
        for i in 1..500 {
            let r = s.r_rho() + (1.0 - s.r_rho()) * i as f64 / 500.0;
            for j in 0..64 {
                assert!(eval_test(&s, r, TAU * j as f64 / 64.0).unwrap() <= b + 1e-15);
            }
        }
    }
}
