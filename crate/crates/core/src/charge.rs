//! Signed charges on the unit disk and their weighted radial counting functions.
//!
//! A [`DiskCharge`] is a finite list of point masses plus product densities
//! `radial(t) dt ⊗ angular(θ) dθ/2π`. The radial counting function with
//! weight `h` integrates `h(arg z)` over the closed disk `|z| ≤ r`, while
//! Stieltjes integrals against it run over the open interval `(a, b)`:
//! an atom sitting at `t = a` is counted by the former and skipped by the
//! latter.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::periodic::PeriodicFunction;
use crate::quad;

/// A point mass `mass·δ(re^{iθ})`; serialized as `[r, theta, mass]`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 3]", into = "[f64; 3]")]
pub struct Atom {
    pub r: f64,
    pub theta: f64,
    pub mass: f64,
}

impl From<[f64; 3]> for Atom {
    fn from(a: [f64; 3]) -> Self {
        Atom {
            r: a[0],
            theta: a[1],
            mass: a[2],
        }
    }
}

impl From<Atom> for [f64; 3] {
    fn from(a: Atom) -> Self {
        [a.r, a.theta, a.mass]
    }
}

impl Atom {
    pub fn new(r: f64, theta: f64, mass: f64) -> Self {
        Atom { r, theta, mass }
    }
}

/// Radial density profile on `[0, 1)`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RadialProfile {
    Constant { c: f64 },
    /// `coeff·(1 − t)^{−exponent}`.
    BoundaryPower { coeff: f64, exponent: f64 },
    /// Values at `t_i = i/N`, `i = 0..N`, linearly interpolated and held
    /// constant past the last node.
    Samples { values: Vec<f64> },
    PositivePart { inner: Box<RadialProfile> },
    NegativePart { inner: Box<RadialProfile> },
}

impl RadialProfile {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            RadialProfile::Constant { c } => *c,
            RadialProfile::BoundaryPower { coeff, exponent } => coeff * (1.0 - t).powf(-exponent),
            RadialProfile::Samples { values } => {
                let n = values.len();
                let pos = (t * n as f64).max(0.0);
                let i = pos.floor() as usize;
                if i + 1 >= n {
                    values[n - 1]
                } else {
                    let w = pos - i as f64;
                    (1.0 - w) * values[i] + w * values[i + 1]
                }
            }
            RadialProfile::PositivePart { inner } => inner.eval(t).max(0.0),
            RadialProfile::NegativePart { inner } => (-inner.eval(t)).max(0.0),
        }
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            RadialProfile::Constant { c } if !c.is_finite() => Err(Error::invalid("c", "must be finite")),
            RadialProfile::BoundaryPower { coeff, exponent } if !(coeff.is_finite() && exponent.is_finite()) => {
                Err(Error::invalid("exponent", "must be finite"))
            }
            RadialProfile::Samples { values } if values.len() < 2 || values.iter().any(|v| !v.is_finite()) => {
                Err(Error::invalid("values", "need at least 2 finite radial samples"))
            }
            RadialProfile::PositivePart { inner } | RadialProfile::NegativePart { inner } => inner.validate(),
            _ => Ok(()),
        }
    }

    fn positive_part(&self) -> Self {
        RadialProfile::PositivePart {
            inner: Box::new(self.clone()),
        }
    }

    fn negative_part(&self) -> Self {
        RadialProfile::NegativePart {
            inner: Box::new(self.clone()),
        }
    }
}

/// `radial(t) dt ⊗ angular(θ) dθ/2π`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProductDensity {
    pub radial: RadialProfile,
    pub angular: PeriodicFunction,
}

impl ProductDensity {
    /// `(1/2π) ∫ h·angular dθ`, the angular factor of `∫ h(arg z) dμ`.
    pub fn angular_weight(&self, h: &PeriodicFunction) -> f64 {
        quad::angular_mean(|t| h.eval(t) * self.angular.eval(t))
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum OneOrMany {
    One(ProductDensity),
    Many(Vec<ProductDensity>),
}

fn de_densities<'de, D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Vec<ProductDensity>, D::Error> {
    Ok(match Option::<OneOrMany>::deserialize(d)? {
        None => vec![],
        Some(OneOrMany::One(p)) => vec![p],
        Some(OneOrMany::Many(v)) => v,
    })
}

fn ser_densities<S: serde::Serializer>(v: &[ProductDensity], s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        [one] => one.serialize(s),
        many => many.serialize(s),
    }
}

/// A real Borel charge on the unit disk: atoms plus product densities.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct DiskCharge {
    #[serde(default)]
    pub atoms: Vec<Atom>,
    #[serde(
        rename = "density",
        default,
        skip_serializing_if = "Vec::is_empty",
        serialize_with = "ser_densities",
        deserialize_with = "de_densities"
    )]
    pub densities: Vec<ProductDensity>,
}

impl DiskCharge {
    pub fn from_atoms(atoms: Vec<Atom>) -> Result<Self> {
        let c = DiskCharge {
            atoms,
            densities: vec![],
        };
        c.validate()?;
        Ok(c)
    }

    pub fn with_density(mut self, radial: RadialProfile, angular: PeriodicFunction) -> Result<Self> {
        self.densities.push(ProductDensity { radial, angular });
        self.validate()?;
        Ok(self)
    }

    pub fn validate(&self) -> Result<()> {
        for a in &self.atoms {
            if !(a.r >= 0.0 && a.r < 1.0) {
                return Err(Error::invalid("atoms", format!("atom radius {} outside [0, 1)", a.r)));
            }
            if !(a.theta.is_finite() && a.mass.is_finite()) {
                return Err(Error::invalid("atoms", "atom angle and mass must be finite"));
            }
        }
        for d in &self.densities {
            d.radial.validate()?;
            d.angular.validate()?;
        }
        Ok(())
    }

    pub fn from_json(s: &str) -> std::result::Result<Self, String> {
        let c: DiskCharge = serde_json::from_str(s).map_err(|e| e.to_string())?;
        c.validate().map_err(|e| e.to_string())?;
        Ok(c)
    }

    pub fn is_positive(&self) -> bool {
        self.atoms.iter().all(|a| a.mass >= 0.0)
            && self.densities.iter().all(|d| {
                let ang = d.angular.range_on_grid(1024).0 >= 0.0;
                let rad = (0..1024).all(|i| d.radial.eval(i as f64 / 1024.0) >= 0.0);
                ang && rad
            })
    }

    /// Concatenate atom lists and density parts.
    pub fn union(&self, other: &DiskCharge) -> DiskCharge {
        let mut out = self.clone();
        out.atoms.extend_from_slice(&other.atoms);
        out.densities.extend(other.densities.iter().cloned());
        out
    }
}

/// Upper and lower variations `(μ⁺, μ⁻)` with `μ = μ⁺ − μ⁻`.
///
/// A product density `R ⊗ A` splits as `R⁺A⁺ + R⁻A⁻` and `R⁺A⁻ + R⁻A⁺`.
pub fn jordan(mu: &DiskCharge) -> (DiskCharge, DiskCharge) {
    let mut plus = DiskCharge::default();
    let mut minus = DiskCharge::default();
    for a in &mu.atoms {
        if a.mass > 0.0 {
            plus.atoms.push(*a);
        } else if a.mass < 0.0 {
            minus.atoms.push(Atom { mass: -a.mass, ..*a });
        }
    }
    for d in &mu.densities {
        let (rp, rm) = (d.radial.positive_part(), d.radial.negative_part());
        let ap = crate::periodic::positive_part(d.angular.clone());
        let am = PeriodicFunction::negative_part(d.angular.clone());
        let part = |radial: &RadialProfile, angular: &PeriodicFunction| ProductDensity {
            radial: radial.clone(),
            angular: angular.clone(),
        };
        plus.densities.push(part(&rp, &ap));
        plus.densities.push(part(&rm, &am));
        minus.densities.push(part(&rp, &am));
        minus.densities.push(part(&rm, &ap));
    }
    (plus, minus)
}

/// Total variation `|μ| = μ⁺ + μ⁻`.
pub fn total_variation(mu: &DiskCharge) -> DiskCharge {
    let (p, m) = jordan(mu);
    p.union(&m)
}

/// `μ^rad(r; h) = ∫_{|z| ≤ r} h(arg z) dμ(z)` for `0 ≤ r < 1`.
pub fn radial_counting(mu: &DiskCharge, r: f64, h: &PeriodicFunction) -> Result<f64> {
    if !(r < 1.0) {
        return Err(Error::invalid("r", format!("must be < 1, got {r}")));
    }
    RadialCounting::new(mu, h).value(r)
}

/// Weighted radial counting function as step data plus density parts.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RadialCounting {
    /// `(t_k, jump_k)` sorted by radius; equal radii are merged.
    pub jumps: Vec<[f64; 2]>,
    /// `(radial profile, angular weight)` of each density part.
    pub density: Vec<(RadialProfile, f64)>,
    pub weight_descriptor: String,
}

impl RadialCounting {
    pub fn new(mu: &DiskCharge, h: &PeriodicFunction) -> Self {
        let mut atoms: Vec<&Atom> = mu.atoms.iter().collect();
        // stable: ties keep input order
        atoms.sort_by(|a, b| a.r.total_cmp(&b.r));
        let mut jumps: Vec<[f64; 2]> = Vec::new();
        for a in atoms {
            let w = a.mass * h.eval(a.theta);
            match jumps.last_mut() {
                Some(last) if last[0] == a.r => last[1] += w,
                _ => jumps.push([a.r, w]),
            }
        }
        let density = mu
            .densities
            .iter()
            .map(|d| (d.radial.clone(), d.angular_weight(h)))
            .collect();
        RadialCounting {
            jumps,
            density,
            weight_descriptor: h.descriptor(),
        }
    }

    pub fn breakpoints(&self) -> Vec<f64> {
        self.jumps.iter().map(|j| j[0]).collect()
    }

    /// Cumulative atom mass at each breakpoint.
    pub fn values(&self) -> Vec<f64> {
        self.jumps
            .iter()
            .scan(0.0, |acc, j| {
                *acc += j[1];
                Some(*acc)
            })
            .collect()
    }

    /// Value at radius `r` (closed disk: a jump at `r` is included).
    pub fn value(&self, r: f64) -> Result<f64> {
        if !(r < 1.0) {
            return Err(Error::invalid("r", format!("must be < 1, got {r}")));
        }
        let k = self.jumps.partition_point(|j| j[0] <= r);
        let mut v = self.jumps[..k].iter().fold(0.0, |acc, j| acc + j[1]);
        for (profile, w) in &self.density {
            if *w != 0.0 && r > 0.0 {
                v += w * quad::integrate(|t| profile.eval(t), 0.0, r)?;
            }
        }
        Ok(v)
    }

    /// `(r, value)` pairs: every breakpoint, plus `n_density` radii in `[0, 1)`
    /// when density parts are present.
    pub fn curve(&self, n_density: usize) -> Result<Vec<[f64; 2]>> {
        let mut rs = self.breakpoints();
        if !self.density.is_empty() {
            rs.extend((0..n_density).map(|i| i as f64 / n_density as f64));
            rs.sort_by(f64::total_cmp);
            rs.dedup();
        }
        rs.into_iter().map(|r| Ok([r, self.value(r)?])).collect()
    }

    /// CSV export with header `r,value`.
    pub fn to_csv(&self, n_density: usize) -> Result<String> {
        let mut s = String::from("r,value\n");
        for [r, v] in self.curve(n_density)? {
            let _ = writeln!(s, "{r:.16e},{v:.16e}");
        }
        Ok(s)
    }
}

/// `∫_{(a,b)} G(t) dμ^rad(t)` over the open interval.
///
/// Jumps at `t = a` or `t = b` are excluded; density parts use the
/// midpoint rule of [`quad::radial_nodes`].
pub fn stieltjes(g: impl Fn(f64) -> f64, mu_rad: &RadialCounting, a: f64, b: f64) -> Result<f64> {
    if !(a < b && b <= 1.0) {
        return Err(Error::invalid("b", format!("need a < b <= 1, got ({a}, {b})")));
    }
    let mut acc = 0.0;
    for j in &mu_rad.jumps {
        if j[0] > a && j[0] < b {
            let v = g(j[0]);
            if !v.is_finite() {
                return Err(Error::NonFinite { at: j[0], value: v });
            }
            acc += v * j[1];
        }
    }
    for (profile, w) in &mu_rad.density {
        if *w != 0.0 {
            acc += w * quad::integrate(|t| g(t) * profile.eval(t), a, b)?;
        }
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SlicingReport {
    pub lhs: f64,
    pub rhs: f64,
    pub agreed: bool,
}

/// Compare `∫_{|z|>r} f(|z|) k(arg z) dμ` computed directly with
/// `∫_{(r,1)} f dμ^rad(·; k)`.
pub fn slicing_identity_check(
    mu: &DiskCharge,
    f: impl Fn(f64) -> f64,
    k: &PeriodicFunction,
    r: f64,
    tol: f64,
) -> Result<SlicingReport> {
    let mut lhs = 0.0;
    for a in mu.atoms.iter().filter(|a| a.r > r) {
        lhs += f(a.r) * k.eval(a.theta) * a.mass;
    }
    if !mu.densities.is_empty() {
        let t_nodes = quad::radial_nodes(r, 1.0);
        let n = quad::ANGULAR_NODES;
        for d in &mu.densities {
            let ang: Vec<f64> = (0..n)
                .map(|j| {
                    let th = std::f64::consts::TAU * j as f64 / n as f64;
                    k.eval(th) * d.angular.eval(th)
                })
                .collect();
            for &(t, w) in &t_nodes {
                let ft = f(t) * d.radial.eval(t) * w;
                lhs += ang.iter().map(|a| ft * a).sum::<f64>() / n as f64;
            }
        }
    }
    let rhs = stieltjes(&f, &RadialCounting::new(mu, k), r, 1.0)?;
    Ok(SlicingReport {
        lhs,
        rhs,
        agreed: (lhs - rhs).abs() <= tol * (1.0 + lhs.abs()),
    })
}
