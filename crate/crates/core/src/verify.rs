//! Both sides of the weighted zero-distribution inequality, empirical
//! estimates of its additive constant, and divergence audits for the
//! uniqueness conditions.
//!
//! For a gauge `g` (convex, `g(0) = 0`, `g(1) ≤ 1`) and a weight `h`
//! (ρ-trigonometrically convex with values in `[0, 1]`) the sides are
//!
//! ```text
//! lhs = ∫_{(1/2, 1−ε)} g((1−t)/t) dμ_u^rad(t; h)
//! rhs = ∫_{(1/2, 1−ε)} g((1−t)/t) dμ_M^rad(t; h)
//! ```
//!
//! and the inequality asserts `lhs ≤ rhs + C` with `C` independent of
//! `(g, h)`. The constant is not computed a priori; [`empirical_constant`]
//! reports the largest observed gap over a finite family.

use std::f64::consts::TAU;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charge::{stieltjes, DiskCharge, RadialCounting};
use crate::error::{Error, Result};
use crate::gauge::{check_gauge_class, GaugeClassReport, GrowthGauge};
use crate::periodic::{check_trig_convex, default_tol, normalize_angle, PeriodicFunction, TrigConvexityReport};
use crate::testfn::r_rho;
use crate::zeros::{BlaschkeReport, Divisor};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize, Default)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AngleRule {
    Fixed {
        theta0: f64,
    },
    /// `θ_k = 2πkφ` with `φ` the golden-ratio conjugate.
    #[default]
    Equidistributed,
}

impl AngleRule {
    fn angle(&self, k: u64) -> f64 {
        match self {
            AngleRule::Fixed { theta0 } => *theta0,
            AngleRule::Equidistributed => {
                let phi = (5f64.sqrt() - 1.0) / 2.0;
                normalize_angle(TAU * (k as f64 * phi).fract())
            }
        }
    }
}

/// Parametric zero sequences emitting finite truncations at `1 − ε`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SequenceGenerator {
    /// `r_k = 1 − k^{−α}`, `k = 1, 2, …`.
    PowerLaw {
        alpha: f64,
        #[serde(default)]
        angle_rule: AngleRule,
    },
    /// `r_k = 1 − q^k`, `k = 1, 2, …`.
    Geometric {
        q: f64,
        #[serde(default)]
        angle_rule: AngleRule,
    },
    Explicit { divisor: Divisor },
}

impl SequenceGenerator {
    pub fn validate(&self) -> Result<()> {
        match self {
            SequenceGenerator::PowerLaw { alpha, .. } if !(alpha.is_finite() && *alpha > 0.0) => {
                Err(Error::invalid("alpha", format!("must be > 0, got {alpha}")))
            }
            SequenceGenerator::Geometric { q, .. } if !(*q > 0.0 && *q < 1.0) => {
                Err(Error::invalid("q", format!("must lie in (0, 1), got {q}")))
            }
            _ => Ok(()),
        }
    }

    /// Points `(r, θ, multiplicity)` with `r < 1 − ε`, in increasing radius.
    pub fn points(&self, eps: f64) -> Result<Vec<(f64, f64, u32)>> {
        self.validate()?;
        if !(eps > 0.0 && eps < 1.0) {
            return Err(Error::invalid("eps", format!("truncation must lie in (0, 1), got {eps}")));
        }
        let cut = 1.0 - eps;
        let mut out = Vec::new();
        match self {
            SequenceGenerator::PowerLaw { alpha, angle_rule } => {
                for k in 1u64.. {
                    let r = 1.0 - (k as f64).powf(-alpha);
                    if r >= cut {
                        break;
                    }
                    out.push((r, angle_rule.angle(k), 1));
                }
            }
            SequenceGenerator::Geometric { q, angle_rule } => {
                for k in 1u64.. {
                    let r = 1.0 - q.powi(k as i32);
                    if r >= cut {
                        break;
                    }
                    out.push((r, angle_rule.angle(k), 1));
                }
            }
            SequenceGenerator::Explicit { divisor } => {
                out.extend(divisor.truncate(eps).entries().map(|(p, m)| (p.r, p.theta, m)));
            }
        }
        Ok(out)
    }

    pub fn truncate(&self, eps: f64) -> Result<Divisor> {
        let mut d = Divisor::new();
        for (r, t, m) in self.points(eps)? {
            d.insert(r, t, m)?;
        }
        Ok(d)
    }
}

/// One `(g, h, ρ)` member of a test family.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FamilyMember {
    pub g: GrowthGauge,
    pub h: PeriodicFunction,
    pub rho: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CaseOptions {
    /// Replace `h` by `h / max h` when `max h > 1` instead of rejecting it.
    pub rescale_h: bool,
    pub n_grid: usize,
}

impl Default for CaseOptions {
    fn default() -> Self {
        CaseOptions {
            rescale_h: false,
            n_grid: 512,
        }
    }
}

/// A family member whose class conditions have been checked.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityCase {
    pub member: FamilyMember,
    /// The weight actually used (rescaled when requested).
    pub h_used: PeriodicFunction,
    pub rescale_factor: Option<f64>,
    pub gauge_report: GaugeClassReport,
    pub h_report: TrigConvexityReport,
    pub h_range: (f64, f64),
}

const RANGE_GRID: usize = 4096;

impl InequalityCase {
    pub fn new(member: FamilyMember, opts: CaseOptions) -> Result<Self> {
        member.g.validate()?;
        member.h.validate()?;
        r_rho(member.rho)?;
        let gauge_report = check_gauge_class(&member.g, 256, 1e-9);
        if !gauge_report.all_ok() {
            return Err(Error::Precondition(format!(
                "gauge {} is outside the class: {gauge_report:?}",
                member.g.descriptor()
            )));
        }
        let (lo, hi) = member.h.range_on_grid(RANGE_GRID);
        let tol = default_tol(&member.h);
        if lo < -tol {
            return Err(Error::Precondition(format!(
                "weight {} takes negative values (min {lo})",
                member.h.descriptor()
            )));
        }
        let (h_used, rescale_factor) = if hi > 1.0 + tol {
            if !opts.rescale_h {
                return Err(Error::Precondition(format!(
                    "weight {} exceeds 1 (max {hi}); enable rescaling to use h/max h",
                    member.h.descriptor()
                )));
            }
            (PeriodicFunction::scaled(1.0 / hi, member.h.clone())?, Some(1.0 / hi))
        } else {
            (member.h.clone(), None)
        };
        let h_report = check_trig_convex(&h_used, member.rho, opts.n_grid, default_tol(&h_used))?;
        if !h_report.passed {
            return Err(Error::Precondition(format!(
                "weight {} is not {}-trigonometrically convex (max defect {})",
                member.h.descriptor(),
                member.rho,
                h_report.max_defect
            )));
        }
        Ok(InequalityCase {
            member,
            h_used,
            rescale_factor,
            gauge_report,
            h_report,
            h_range: (lo, hi),
        })
    }

    /// `t ↦ g((1−t)/t)`.
    pub fn kernel(&self, t: f64) -> f64 {
        self.member.g.eval_unchecked(((1.0 - t) / t).max(0.0))
    }

    pub fn sides(&self, u: &USide, m: &DiskCharge, eps: f64) -> Result<InequalityReport> {
        if !(eps > 0.0 && eps < 0.5) {
            return Err(Error::invalid("eps", format!("must lie in (0, 1/2), got {eps}")));
        }
        let b = 1.0 - eps;
        let u_charge = u.to_charge();
        let lhs = stieltjes(|t| self.kernel(t), &RadialCounting::new(&u_charge, &self.h_used), 0.5, b)?;
        let rhs = stieltjes(|t| self.kernel(t), &RadialCounting::new(m, &self.h_used), 0.5, b)?;
        let rho = self.member.rho;
        Ok(InequalityReport {
            lhs,
            rhs_integral: rhs,
            gap: lhs - rhs,
            epsilon: eps,
            g_descriptor: self.member.g.descriptor(),
            h_descriptor: self.h_used.descriptor(),
            rho,
            r_rho: r_rho(rho)?,
            shifted_annulus: rho > std::f64::consts::SQRT_2,
        })
    }
}

/// The left-hand side data: a zero divisor or a positive charge.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum USide {
    Divisor(Divisor),
    Charge(DiskCharge),
}

impl USide {
    pub fn to_charge(&self) -> DiskCharge {
        match self {
            USide::Divisor(d) => d.atomize(),
            USide::Charge(c) => c.clone(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InequalityReport {
    pub lhs: f64,
    pub rhs_integral: f64,
    /// `lhs − rhs_integral`.
    pub gap: f64,
    pub epsilon: f64,
    pub g_descriptor: String,
    pub h_descriptor: String,
    pub rho: f64,
    pub r_rho: f64,
    /// `ρ > √2`: the test function lives on `r_ρ < |z| < 1` with `r_ρ > 1/2`,
    /// and the band `1/2 < |z| ≤ r_ρ` is absorbed into the constant.
    pub shifted_annulus: bool,
}

/// Check the class conditions and compute both sides at truncation `ε`.
pub fn main_inequality_sides(
    u: &USide,
    m: &DiskCharge,
    member: FamilyMember,
    eps: f64,
    opts: CaseOptions,
) -> Result<InequalityReport> {
    InequalityCase::new(member, opts)?.sides(u, m, eps)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalConstant {
    /// `max(0, max gap)` over the family.
    pub value: f64,
    /// Index of the member attaining the largest gap.
    pub argmax: Option<usize>,
    pub gaps: Vec<f64>,
    pub epsilon: f64,
}

/// Largest nonnegative gap over a family of checked cases.
pub fn empirical_constant(u: &USide, m: &DiskCharge, family: &[InequalityCase], eps: f64) -> Result<EmpiricalConstant> {
    let gaps: Vec<f64> = family
        .par_iter()
        .enumerate()
        .map(|(index, case)| {
            case.sides(u, m, eps).map(|r| r.gap).map_err(|e| Error::Member {
                index,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;
    let argmax = gaps
        .iter()
        .enumerate()
        .max_by(|a, b| a.1.total_cmp(b.1))
        .map(|(i, _)| i);
    let value = argmax.map(|i| gaps[i].max(0.0)).unwrap_or(0.0);
    Ok(EmpiricalConstant {
        value,
        argmax,
        gaps,
        epsilon: eps,
    })
}

/// Check every member, tagging failures with the member index.
pub fn build_family(members: &[FamilyMember], opts: CaseOptions) -> Result<Vec<InequalityCase>> {
    members
        .par_iter()
        .enumerate()
        .map(|(index, m)| {
            InequalityCase::new(m.clone(), opts).map_err(|e| Error::Member {
                index,
                source: Box::new(e),
            })
        })
        .collect()
}

/// Source of the majorant's Riesz measure in a uniqueness audit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MajorantSource {
    Sequence(SequenceGenerator),
    Charge(DiskCharge),
}

impl Default for MajorantSource {
    fn default() -> Self {
        MajorantSource::Charge(DiskCharge::default())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Classification {
    /// The majorant side stalls while the zero side keeps growing.
    ForcesZero,
    Inconclusive,
}

/// Thresholds of the stall/divergence heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StallCriterion {
    pub tau: f64,
    pub k: usize,
}

impl Default for StallCriterion {
    fn default() -> Self {
        StallCriterion { tau: 1e-3, k: 3 }
    }
}

impl StallCriterion {
    fn increments(&self, partials: &[f64]) -> Vec<(f64, f64)> {
        let n = partials.len();
        (n.saturating_sub(self.k)..n)
            .filter(|&i| i > 0)
            .map(|i| (partials[i] - partials[i - 1], partials[i].abs()))
            .collect()
    }

    /// Last `k` increments each at most `τ` times the running value.
    pub fn stalls(&self, partials: &[f64]) -> bool {
        let inc = self.increments(partials);
        inc.len() == self.k && inc.iter().all(|(d, cur)| d.abs() <= self.tau * cur)
    }

    /// Last `k` increments each above `τ` times the running value.
    pub fn grows(&self, partials: &[f64]) -> bool {
        let inc = self.increments(partials);
        inc.len() == self.k && inc.iter().all(|(d, cur)| *d > self.tau * cur)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct UniquenessAudit {
    /// `ε_j = 2^{−j}`, `j = 1..=J`.
    pub schedule: Vec<f64>,
    /// `∫_{(1/2, 1−ε_j)} g(2(1−t)) dμ_M^rad(t; h)`.
    #[serde(rename = "cuM_partials")]
    pub cu_m_partials: Vec<f64>,
    /// `Σ_{1/2 < r_k < 1−ε_j} g(1−r_k) h(θ_k)`.
    #[serde(rename = "cuZ_partials")]
    pub cu_z_partials: Vec<f64>,
    pub classification: Classification,
    pub criterion: StallCriterion,
    pub majorant_stalls: bool,
    pub zeros_grow: bool,
}

pub const DEFAULT_LEVELS: usize = 20;

pub fn dyadic_schedule(levels: usize) -> Vec<f64> {
    (1..=levels).map(|j| 0.5f64.powi(j as i32)).collect()
}

/// Partial sums `Σ_{1/2 < r_k < 1−ε_j} kernel(r_k) h(θ_k) m_k` along the schedule.
fn sequence_partials(
    gen: &SequenceGenerator,
    kernel: impl Fn(f64) -> f64,
    h: &PeriodicFunction,
    schedule: &[f64],
) -> Result<Vec<f64>> {
    let finest = schedule.iter().copied().fold(f64::INFINITY, f64::min);
    let mut buckets = vec![0.0; schedule.len()];
    for (r, theta, m) in gen.points(finest)? {
        if r <= 0.5 {
            continue;
        }
        // first level whose cut 1 − ε_j lies above r
        if let Some(j) = schedule.iter().position(|&e| r < 1.0 - e) {
            buckets[j] += kernel(r) * h.eval(theta) * m as f64;
        }
    }
    Ok(buckets
        .iter()
        .scan(0.0, |acc, b| {
            *acc += b;
            Some(*acc)
        })
        .collect())
}

/// Audit the two uniqueness conditions along `ε_j = 2^{−j}`, `j = 1..=levels`.
pub fn uniqueness_audit(
    z: &SequenceGenerator,
    m: &MajorantSource,
    g: &GrowthGauge,
    h: &PeriodicFunction,
    levels: usize,
) -> Result<UniquenessAudit> {
    uniqueness_audit_with(z, m, g, h, levels, StallCriterion::default())
}

pub fn uniqueness_audit_with(
    z: &SequenceGenerator,
    m: &MajorantSource,
    g: &GrowthGauge,
    h: &PeriodicFunction,
    levels: usize,
    criterion: StallCriterion,
) -> Result<UniquenessAudit> {
    if levels < 8 {
        return Err(Error::invalid("levels", format!("need at least 8 levels, got {levels}")));
    }
    g.validate()?;
    h.validate()?;
    z.validate()?;
    if !(g.eval_unchecked(1.0) > 0.0) {
        return Err(Error::Precondition("g(1) must be > 0".into()));
    }
    if !(h.range_on_grid(RANGE_GRID).1 > 0.0) {
        return Err(Error::Precondition("h must not vanish identically".into()));
    }
    let schedule = dyadic_schedule(levels);
    let cu_z = sequence_partials(z, |r| g.eval_unchecked(1.0 - r), h, &schedule)?;
    let m_kernel = |t: f64| g.eval_unchecked((2.0 * (1.0 - t)).max(0.0));
    let cu_m = match m {
        MajorantSource::Sequence(gen) => {
            gen.validate()?;
            sequence_partials(gen, m_kernel, h, &schedule)?
        }
        MajorantSource::Charge(c) => {
            c.validate()?;
            let counting = RadialCounting::new(c, h);
            schedule
                .par_iter()
                .map(|&e| {
                    if 1.0 - e > 0.5 {
                        stieltjes(m_kernel, &counting, 0.5, 1.0 - e)
                    } else {
                        Ok(0.0)
                    }
                })
                .collect::<Result<_>>()?
        }
    };
    let majorant_stalls = criterion.stalls(&cu_m);
    let zeros_grow = criterion.grows(&cu_z);
    Ok(UniquenessAudit {
        schedule,
        cu_m_partials: cu_m,
        cu_z_partials: cu_z,
        classification: if majorant_stalls && zeros_grow {
            Classification::ForcesZero
        } else {
            Classification::Inconclusive
        },
        criterion,
        majorant_stalls,
        zeros_grow,
    })
}

/// Blaschke sums `Σ (1 − r_k)` of successive truncations, with convergence
/// indicated by the stall criterion on the whole trend.
pub fn blaschke_trend(gen: &SequenceGenerator, levels: usize) -> Result<Vec<BlaschkeReport>> {
    let schedule = dyadic_schedule(levels);
    let mut sums = vec![0.0; levels];
    let finest = schedule[levels - 1];
    for (r, _, m) in gen.points(finest)? {
        if let Some(j) = schedule.iter().position(|&e| r < 1.0 - e) {
            sums[j] += (1.0 - r) * m as f64;
        }
    }
    let partials: Vec<f64> = sums
        .iter()
        .scan(0.0, |acc, s| {
            *acc += s;
            Some(*acc)
        })
        .collect();
    let converges = StallCriterion::default().stalls(&partials);
    Ok(partials
        .iter()
        .zip(&schedule)
        .map(|(&sum, &eps)| BlaschkeReport {
            sum,
            truncation: Some(eps),
            convergent_indicated: converges,
        })
        .collect())
}

/// Input of a family sweep: `u`, `M`, the family and the truncations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepDescriptor {
    pub u: USide,
    #[serde(rename = "M")]
    pub m: DiskCharge,
    pub family: Vec<FamilyMember>,
    pub epsilon: Vec<f64>,
    #[serde(default)]
    pub rescale_h: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub member: usize,
    pub epsilon: f64,
    pub g: String,
    pub h: String,
    pub rho: f64,
    pub lhs: f64,
    pub rhs: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepReport {
    pub rows: Vec<SweepRow>,
    pub constants: Vec<EmpiricalConstant>,
}

pub fn run_sweep(desc: &SweepDescriptor) -> Result<SweepReport> {
    if desc.family.is_empty() {
        return Err(Error::invalid("family", "must not be empty"));
    }
    if desc.epsilon.is_empty() {
        return Err(Error::invalid("epsilon", "must not be empty"));
    }
    desc.m.validate()?;
    if let USide::Charge(c) = &desc.u {
        c.validate()?;
    }
    let opts = CaseOptions {
        rescale_h: desc.rescale_h,
        ..Default::default()
    };
    let cases = build_family(&desc.family, opts)?;
    let mut rows = Vec::new();
    let mut constants = Vec::new();
    for &eps in &desc.epsilon {
        let reports: Vec<InequalityReport> = cases
            .par_iter()
            .enumerate()
            .map(|(index, c)| {
                c.sides(&desc.u, &desc.m, eps).map_err(|e| Error::Member {
                    index,
                    source: Box::new(e),
                })
            })
            .collect::<Result<_>>()?;
        for (i, r) in reports.iter().enumerate() {
            rows.push(SweepRow {
                member: i,
                epsilon: eps,
                g: r.g_descriptor.clone(),
                h: r.h_descriptor.clone(),
                rho: r.rho,
                lhs: r.lhs,
                rhs: r.rhs_integral,
                gap: r.gap,
            });
        }
        constants.push(empirical_constant(&desc.u, &desc.m, &cases, eps)?);
    }
    Ok(SweepReport { rows, constants })
}

impl SweepReport {
    /// One row per member per `ε`.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("member,epsilon,rho,lhs,rhs,gap,g,h\n");
        for r in &self.rows {
            let _ = writeln!(
                s,
                "{},{:.16e},{:.16e},{:.16e},{:.16e},{:.16e},\"{}\",\"{}\"",
                r.member, r.epsilon, r.rho, r.lhs, r.rhs, r.gap, r.g, r.h
            );
        }
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::periodic::{positive_part, Interpolation};
    use std::f64::consts::PI;

    fn member(g: GrowthGauge, h: PeriodicFunction, rho: f64) -> FamilyMember {
        FamilyMember { g, h, rho }
    }

    fn basic() -> FamilyMember {
        member(GrowthGauge::power(1.0).unwrap(), PeriodicFunction::constant(1.0), 0.0)
    }

    fn divisor() -> Divisor {
        Divisor::from_entries(&[(0.3, 0.0, 1), (0.55, 1.0, 2), (0.7, -2.0, 1), (0.9, 3.0, 3), (0.97, 0.4, 1)])
            .unwrap()
    }

    #[test]
    fn hand_evaluated_sides() {
        let u = USide::Divisor(Divisor::from_entries(&[(0.8, 0.0, 1)]).unwrap());
        let m = DiskCharge::from_atoms(vec![crate::charge::Atom::new(0.9, 0.0, 1.0)]).unwrap();
        let r = main_inequality_sides(&u, &m, basic(), 0.01, CaseOptions::default()).unwrap();
        assert!((r.lhs - 0.25).abs() < 1e-15);
        assert!((r.rhs_integral - 1.0 / 9.0).abs() < 1e-15);
        assert!((r.gap - (0.25 - 1.0 / 9.0)).abs() < 1e-15);
        assert!(!r.shifted_annulus);
    }

    #[test]
    fn equality_and_subdivisor() {
        let d = divisor();
        let m = d.atomize();
        let r = main_inequality_sides(&USide::Divisor(d.clone()), &m, basic(), 1e-3, CaseOptions::default()).unwrap();
        assert_eq!(r.gap, 0.0);
        let half = Divisor::from_entries(&[(0.55, 1.0, 1), (0.9, 3.0, 2)]).unwrap();
        let r = main_inequality_sides(&USide::Divisor(half), &m, basic(), 1e-3, CaseOptions::default()).unwrap();
        assert!(r.gap <= 0.0);
    }

    #[test]
    fn divisor_lhs_equals_direct_sum() {
        let d = divisor();
        let h = positive_part(PeriodicFunction::sampled_fn(64, Interpolation::Trigonometric, f64::cos).unwrap());
        let case = InequalityCase::new(member(GrowthGauge::power(2.0).unwrap(), h.clone(), 1.0), CaseOptions::default())
            .unwrap();
        let eps = 0.02;
        let r = case.sides(&USide::Divisor(d.clone()), &DiskCharge::default(), eps).unwrap();
        let direct: f64 = d
            .entries()
            .filter(|(p, _)| p.r > 0.5 && p.r < 1.0 - eps)
            .map(|(p, m)| m as f64 * ((1.0 - p.r) / p.r).powi(2) * h.eval(p.theta))
            .sum();
        assert!((r.lhs - direct).abs() < 1e-14);
        assert_eq!(r.rhs_integral, 0.0);
    }

    #[test]
    fn preconditions_reject_out_of_class() {
        let opts = CaseOptions::default();
        let bad_g = member(GrowthGauge::linear(3.0).unwrap(), PeriodicFunction::constant(1.0), 0.0);
        assert!(matches!(InequalityCase::new(bad_g, opts), Err(Error::Precondition(_))));
        let big_h = member(GrowthGauge::power(1.0).unwrap(), PeriodicFunction::constant(2.0), 0.0);
        assert!(InequalityCase::new(big_h.clone(), opts).is_err());
        let case = InequalityCase::new(
            big_h,
            CaseOptions {
                rescale_h: true,
                ..opts
            },
        )
        .unwrap();
        assert!((case.rescale_factor.unwrap() - 0.5).abs() < 1e-15);
        assert!((case.h_used.eval(0.3) - 1.0).abs() < 1e-15);
        let not_trc = member(
            GrowthGauge::power(1.0).unwrap(),
            PeriodicFunction::truncated_cosine(3.0).unwrap(),
            1.0,
        );
        assert!(InequalityCase::new(not_trc, opts).is_err());
        let case = InequalityCase::new(basic(), opts).unwrap();
        assert!(case.sides(&USide::Divisor(divisor()), &DiskCharge::default(), 0.5).is_err());
    }

    #[test]
    fn empirical_constant_cases() {
        let d = divisor();
        let m = d.atomize();
        let family = build_family(
            &[
                basic(),
                member(GrowthGauge::power(2.0).unwrap(), PeriodicFunction::truncated_cosine(2.0).unwrap(), 2.0),
            ],
            CaseOptions::default(),
        )
        .unwrap();
        let c = empirical_constant(&USide::Divisor(d.clone()), &m, &family, 1e-3).unwrap();
        assert_eq!(c.value, 0.0);
        let sub = Divisor::from_entries(&[(0.7, -2.0, 1)]).unwrap();
        let c = empirical_constant(&USide::Divisor(sub), &m, &family, 1e-3).unwrap();
        assert_eq!(c.value, 0.0);
        let err = build_family(
            &[basic(), member(GrowthGauge::linear(2.0).unwrap(), PeriodicFunction::constant(1.0), 0.0)],
            CaseOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, Error::Member { index: 1, .. }));
    }

    #[test]
    fn generator_truncation() {
        let g = SequenceGenerator::PowerLaw {
            alpha: 1.0,
            angle_rule: AngleRule::Fixed { theta0: 0.5 },
        };
        let pts = g.points(0.01).unwrap();
        assert_eq!(pts.len(), 99);
        assert!(pts.iter().all(|p| p.0 < 0.99 && p.1 == 0.5));
        let geo = SequenceGenerator::Geometric {
            q: 0.5,
            angle_rule: AngleRule::Equidistributed,
        };
        let d = geo.truncate(1e-3).unwrap();
        assert_eq!(d.total_multiplicity(), 9);
        assert!(SequenceGenerator::Geometric {
            q: 1.0,
            angle_rule: AngleRule::default()
        }
        .points(0.1)
        .is_err());
        assert!(g.points(0.0).is_err());
    }

    #[test]
    fn uniqueness_dichotomy() {
        let g = GrowthGauge::power(1.0).unwrap();
        let h = PeriodicFunction::constant(1.0);
        let m = MajorantSource::default();
        let harmonic = SequenceGenerator::PowerLaw {
            alpha: 1.0,
            angle_rule: AngleRule::default(),
        };
        let a = uniqueness_audit(&harmonic, &m, &g, &h, 20).unwrap();
        assert_eq!(a.classification, Classification::ForcesZero);
        assert!(a.cu_m_partials.iter().all(|&v| v == 0.0));
        // growth like log(1/ε): successive dyadic levels add ≈ log 2
        let last = a.cu_z_partials[19] - a.cu_z_partials[18];
        assert!((last - 2f64.ln()).abs() < 1e-3, "{last}");
        let squares = SequenceGenerator::PowerLaw {
            alpha: 2.0,
            angle_rule: AngleRule::default(),
        };
        let a = uniqueness_audit(&squares, &m, &g, &h, 20).unwrap();
        assert_eq!(a.classification, Classification::Inconclusive);
        assert!(a.cu_z_partials.iter().all(|&v| v < PI * PI / 6.0 - 1.0 + 1e-6));
        for w in a.cu_z_partials.windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn uniqueness_with_diverging_majorant() {
        let g = GrowthGauge::power(1.0).unwrap();
        let h = PeriodicFunction::constant(1.0);
        let m = DiskCharge::default()
            .with_density(
                crate::charge::RadialProfile::BoundaryPower {
                    coeff: 1.0,
                    exponent: 2.0,
                },
                PeriodicFunction::constant(1.0),
            )
            .unwrap();
        let z = SequenceGenerator::PowerLaw {
            alpha: 1.0,
            angle_rule: AngleRule::default(),
        };
        let a = uniqueness_audit(&z, &MajorantSource::Charge(m), &g, &h, 20).unwrap();
        assert_eq!(a.classification, Classification::Inconclusive);
        assert!(!a.majorant_stalls);
        // ∫_{1/2}^{1−ε} 2/(1−t) dt = 2 log(1/(2ε))
        for (p, e) in a.cu_m_partials.iter().zip(&a.schedule) {
            let exact = 2.0 * (1.0 / (2.0 * e)).ln();
            assert!((p - exact).abs() < 1e-4 * (1.0 + exact), "{p} vs {exact}");
        }
        for w in a.cu_m_partials.windows(2) {
            assert!(w[1] >= w[0]);
        }
    }

    #[test]
    fn uniqueness_preconditions() {
        let z = SequenceGenerator::PowerLaw {
            alpha: 1.0,
            angle_rule: AngleRule::default(),
        };
        let g = GrowthGauge::power(1.0).unwrap();
        let m = MajorantSource::default();
        assert!(uniqueness_audit(&z, &m, &g, &PeriodicFunction::constant(0.0), 20).is_err());
        assert!(uniqueness_audit(&z, &m, &g, &PeriodicFunction::constant(1.0), 5).is_err());
    }

    #[test]
    fn blaschke_trend_classifies() {
        let harmonic = SequenceGenerator::PowerLaw {
            alpha: 1.0,
            angle_rule: AngleRule::default(),
        };
        let t = blaschke_trend(&harmonic, 20).unwrap();
        assert!(!t[19].convergent_indicated);
        let squares = SequenceGenerator::PowerLaw {
            alpha: 2.0,
            angle_rule: AngleRule::default(),
        };
        let t = blaschke_trend(&squares, 24).unwrap();
        assert!(t[23].sum < PI * PI / 6.0);
    }

    #[test]
    fn sweep_json_and_csv() {
        let raw = r#"{
            "u": [[0.6, 0.0, 1], [0.8, 1.0, 2]],
            "M": {"atoms": [[0.6, 0.0, 1.0], [0.8, 1.0, 2.0]]},
            "family": [
                {"g": {"kind": "power", "p": 1}, "h": {"kind": "constant", "c": 1}, "rho": 0},
                {"g": {"kind": "power", "p": 2}, "h": {"kind": "truncated_cosine", "rho": 2}, "rho": 2}
            ],
            "epsilon": [0.01, 0.001]
        }"#;
        let desc: SweepDescriptor = serde_json::from_str(raw).unwrap();
        assert!(matches!(desc.u, USide::Divisor(_)));
        let rep = run_sweep(&desc).unwrap();
        assert_eq!(rep.rows.len(), 4);
        assert!(rep.rows.iter().all(|r| r.gap == 0.0));
        let csv = rep.to_csv();
        assert_eq!(csv.lines().count(), 5);
        assert!(csv.starts_with("member,epsilon"));
    }
}
