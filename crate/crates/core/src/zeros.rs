//! Zero sequences as divisors, weighted zero counting, finite Blaschke
//! products and argument-principle zero counts.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::f64::consts::{PI, TAU};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::charge::{Atom, DiskCharge};
use crate::error::{Error, Result};
use crate::periodic::{normalize_angle, PeriodicFunction};

/// A point of the disk in polar form with `θ ∈ (−π, π]` (and `θ = 0` at the origin).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiskPoint {
    pub r: f64,
    pub theta: f64,
}

impl DiskPoint {
    pub fn new(r: f64, theta: f64) -> Result<Self> {
        if !(0.0..1.0).contains(&r) {
            return Err(Error::invalid("r", format!("point radius {r} outside [0, 1)")));
        }
        if !theta.is_finite() {
            return Err(Error::invalid("theta", "angle must be finite"));
        }
        let theta = if r == 0.0 { 0.0 } else { normalize_angle(theta) + 0.0 };
        Ok(DiskPoint { r, theta })
    }

    pub fn to_complex(self) -> Complex64 {
        Complex64::from_polar(self.r, self.theta)
    }
}

impl Eq for DiskPoint {}

impl PartialOrd for DiskPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for DiskPoint {
    fn cmp(&self, other: &Self) -> Ordering {
        self.r.total_cmp(&other.r).then(self.theta.total_cmp(&other.theta))
    }
}

/// Finite divisor: points of the disk with positive integer multiplicities.
///
/// Serialized as `[[r, theta, multiplicity], …]` ordered by radius.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<[f64; 3]>", into = "Vec<(f64, f64, u32)>")]
pub struct Divisor {
    entries: BTreeMap<DiskPoint, u32>,
}

impl TryFrom<Vec<[f64; 3]>> for Divisor {
    type Error = Error;
    fn try_from(v: Vec<[f64; 3]>) -> Result<Self> {
        let mut d = Divisor::new();
        for [r, t, m] in v {
            if !(m >= 1.0 && m.fract() == 0.0 && m <= u32::MAX as f64) {
                return Err(Error::invalid("multiplicity", format!("must be a positive integer, got {m}")));
            }
            d.insert(r, t, m as u32)?;
        }
        Ok(d)
    }
}

impl From<Divisor> for Vec<(f64, f64, u32)> {
    fn from(d: Divisor) -> Self {
        d.entries().map(|(p, m)| (p.r, p.theta, m)).collect()
    }
}

impl Divisor {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_entries(entries: &[(f64, f64, u32)]) -> Result<Self> {
        let mut d = Divisor::new();
        for &(r, t, m) in entries {
            d.insert(r, t, m)?;
        }
        Ok(d)
    }

    /// Add `multiplicity` at the point; repeated points accumulate.
    pub fn insert(&mut self, r: f64, theta: f64, multiplicity: u32) -> Result<()> {
        if multiplicity == 0 {
            return Err(Error::invalid("multiplicity", "must be >= 1"));
        }
        let p = DiskPoint::new(r, theta)?;
        *self.entries.entry(p).or_insert(0) += multiplicity;
        Ok(())
    }

    pub fn entries(&self) -> impl Iterator<Item = (DiskPoint, u32)> + '_ {
        self.entries.iter().map(|(p, m)| (*p, *m))
    }

    /// Multiplicity at a point (0 off the support).
    pub fn multiplicity(&self, p: &DiskPoint) -> u32 {
        self.entries.get(p).copied().unwrap_or(0)
    }

    pub fn support_len(&self) -> usize {
        self.entries.len()
    }

    pub fn total_multiplicity(&self) -> u64 {
        self.entries.values().map(|&m| m as u64).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn union(&self, other: &Divisor) -> Divisor {
        let mut out = self.clone();
        for (p, m) in other.entries() {
            *out.entries.entry(p).or_insert(0) += m;
        }
        out
    }

    /// Unit-mass atoms with the multiplicity as mass.
    pub fn atomize(&self) -> DiskCharge {
        DiskCharge {
            atoms: self.entries().map(|(p, m)| Atom::new(p.r, p.theta, m as f64)).collect(),
            densities: vec![],
        }
    }

    /// Entries with radius strictly below `1 − ε`.
    pub fn truncate(&self, eps: f64) -> Divisor {
        Divisor {
            entries: self
                .entries
                .iter()
                .filter(|(p, _)| p.r < 1.0 - eps)
                .map(|(p, m)| (*p, *m))
                .collect(),
        }
    }
}

/// Regions for [`counting_measure`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Region {
    /// `|z| ≤ r`.
    ClosedDisk { r: f64 },
    /// `|z| < r`.
    OpenDisk { r: f64 },
    /// `r_min < |z| ≤ r_max` with `arg z` in the counterclockwise arc
    /// `[theta_min, theta_max)`.
    AnnulusSector {
        r_min: f64,
        r_max: f64,
        theta_min: f64,
        theta_max: f64,
    },
}

impl Region {
    pub fn contains(&self, p: &DiskPoint) -> bool {
        match *self {
            Region::ClosedDisk { r } => p.r <= r,
            Region::OpenDisk { r } => p.r < r,
            Region::AnnulusSector {
                r_min,
                r_max,
                theta_min,
                theta_max,
            } => {
                let width = theta_max - theta_min;
                let offset = (p.theta - theta_min).rem_euclid(TAU);
                p.r > r_min && p.r <= r_max && (width >= TAU || offset < width)
            }
        }
    }
}

/// Number of divisor points in the region, with multiplicity.
pub fn counting_measure(z: &Divisor, region: &Region) -> u64 {
    z.entries()
        .filter(|(p, _)| region.contains(p))
        .map(|(_, m)| m as u64)
        .sum()
}

/// `Z ⊂ Z′`: `Z(z) ≤ Z′(z)` at every point.
pub fn divisor_embedding(z: &Divisor, z_prime: &Divisor) -> bool {
    z.entries().all(|(p, m)| m <= z_prime.multiplicity(&p))
}

/// `Σ_{|z_k| ≤ r} h(arg z_k)` with multiplicities.
pub fn weighted_count_sum(z: &Divisor, r: f64, h: &PeriodicFunction) -> Result<f64> {
    if !(r < 1.0) {
        return Err(Error::invalid("r", format!("must be < 1, got {r}")));
    }
    Ok(z.entries()
        .take_while(|(p, _)| p.r <= r)
        .fold(0.0, |acc, (p, m)| acc + m as f64 * h.eval(p.theta)))
}

/// Finite Blaschke product vanishing exactly on a divisor.
#[derive(Debug, Clone, PartialEq)]
pub struct BlaschkeProduct {
    divisor: Divisor,
    zeros: Vec<(Complex64, u32)>,
}

impl BlaschkeProduct {
    pub fn new(divisor: Divisor) -> Self {
        let zeros = divisor.entries().map(|(p, m)| (p.to_complex(), m)).collect();
        BlaschkeProduct { divisor, zeros }
    }

    pub fn divisor(&self) -> &Divisor {
        &self.divisor
    }

    /// `B(z)` for `|z| < 1`.
    pub fn eval(&self, z: Complex64) -> Result<Complex64> {
        if !(z.norm() < 1.0) {
            return Err(Error::invalid("z", format!("|z| = {} is not < 1", z.norm())));
        }
        Ok(self.eval_unchecked(z))
    }

    /// Product of `((|a|/a)(a − z)/(1 − āz))^m`, with `z^m` for `a = 0`.
    pub fn eval_unchecked(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(1.0, 0.0);
        for &(a, m) in &self.zeros {
            if z == a {
                return Complex64::new(0.0, 0.0);
            }
            let factor = if a == Complex64::new(0.0, 0.0) {
                z
            } else {
                (a.norm() / a) * (a - z) / (1.0 - a.conj() * z)
            };
            acc *= factor.powu(m);
        }
        acc
    }
}

/// Zeros of `f` inside `|z| < r` by the argument principle on `n_samples` points.
///
/// Phase increments between consecutive samples must stay below `π/2`;
/// `|f| < 1e-13` on a sample is reported as failure.
pub fn winding_zero_count(f: impl Fn(Complex64) -> Complex64, r: f64, n_samples: usize) -> Result<u64> {
    if !(r > 0.0 && r.is_finite()) {
        return Err(Error::invalid("r", "circle radius must be > 0"));
    }
    if n_samples < 8 {
        return Err(Error::invalid("n_samples", "need at least 8 samples"));
    }
    let values: Vec<Complex64> = (0..n_samples)
        .map(|k| f(Complex64::from_polar(r, TAU * k as f64 / n_samples as f64)))
        .collect();
    for (index, v) in values.iter().enumerate() {
        let modulus = v.norm();
        if !(modulus >= 1e-13) {
            return Err(Error::VanishesOnCircle { index, modulus });
        }
    }
    let mut total = 0.0;
    for k in 0..n_samples {
        let jump = (values[(k + 1) % n_samples] / values[k]).arg();
        if jump.abs() > PI / 2.0 {
            return Err(Error::SamplingTooCoarse { index: k, jump });
        }
        total += jump;
    }
    let winding = (total / TAU).round();
    if winding < 0.0 {
        return Err(Error::Precondition(format!("negative winding number {winding}")));
    }
    Ok(winding as u64)
}

/// Winding counts on several circles, computed in parallel.
pub fn winding_zero_counts(
    f: impl Fn(Complex64) -> Complex64 + Sync,
    radii: &[f64],
    n_samples: usize,
) -> Vec<Result<u64>> {
    radii.par_iter().map(|&r| winding_zero_count(&f, r, n_samples)).collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BlaschkeReport {
    /// `Σ multiplicity·(1 − r_k)`.
    pub sum: f64,
    /// Truncation `ε` when the divisor was cut at `1 − ε` from an infinite family.
    pub truncation: Option<f64>,
    pub convergent_indicated: bool,
}

/// Blaschke sum of a finite divisor; finite divisors always converge, the
/// interesting question is the trend along truncations (see `verify`).
pub fn blaschke_condition(z: &Divisor) -> BlaschkeReport {
    let sum = z.entries().fold(0.0, |acc, (p, m)| acc + m as f64 * (1.0 - p.r));
    BlaschkeReport {
        sum,
        truncation: None,
        convergent_indicated: sum.is_finite(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charge::radial_counting;
    use crate::periodic::{positive_part, Interpolation};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn cos_plus() -> PeriodicFunction {
        positive_part(PeriodicFunction::sampled_fn(64, Interpolation::Trigonometric, f64::cos).unwrap())
    }

    #[test]
    fn counting_examples() {
        let z = Divisor::from_entries(&[(0.5, 0.0, 2)]).unwrap();
        assert_eq!(counting_measure(&z, &Region::ClosedDisk { r: 0.5 }), 2);
        assert_eq!(counting_measure(&z, &Region::OpenDisk { r: 0.5 }), 0);
        let empty = Divisor::new();
        for region in [
            Region::ClosedDisk { r: 0.9 },
            Region::AnnulusSector {
                r_min: 0.0,
                r_max: 0.99,
                theta_min: -PI,
                theta_max: PI,
            },
        ] {
            assert_eq!(counting_measure(&empty, &region), 0);
        }
        let z = Divisor::from_entries(&[(0.3, 0.0, 1), (0.6, PI, 3)]).unwrap();
        assert_eq!(counting_measure(&z, &Region::ClosedDisk { r: 0.4 }), 1);
        let sector = Region::AnnulusSector {
            r_min: 0.5,
            r_max: 0.7,
            theta_min: 3.0,
            theta_max: 3.5,
        };
        assert_eq!(counting_measure(&z, &sector), 3);
    }

    #[test]
    fn divisor_normalizes_and_merges() {
        let mut d = Divisor::new();
        d.insert(0.5, PI, 1).unwrap();
        d.insert(0.5, -PI, 2).unwrap();
        d.insert(0.0, 1.3, 1).unwrap();
        d.insert(0.0, -0.2, 1).unwrap();
        assert_eq!(d.support_len(), 2);
        assert_eq!(d.total_multiplicity(), 5);
        assert!(d.insert(1.0, 0.0, 1).is_err());
        assert!(d.insert(0.3, 0.0, 0).is_err());
        let json = serde_json::to_string(&d).unwrap();
        assert_eq!(json, format!("[[0.0,0.0,2],[0.5,{PI:?},3]]"));
        assert_eq!(serde_json::from_str::<Divisor>("[[0.0,0.0,2.0],[0.5,3.141592653589793,3]]").unwrap(), d);
        let back: Divisor = serde_json::from_str(&json).unwrap();
        assert_eq!(back, d);
        assert!(serde_json::from_str::<Divisor>("[[0.5,0.0,1.5]]").is_err());
        assert!(serde_json::from_str::<Divisor>("[[0.5,0.0,0]]").is_err());
    }

    #[test]
    fn embedding_examples() {
        let a = Divisor::from_entries(&[(0.5, 0.0, 1)]).unwrap();
        let b = Divisor::from_entries(&[(0.5, 0.0, 2)]).unwrap();
        assert!(divisor_embedding(&a, &a));
        assert!(divisor_embedding(&a, &b));
        assert!(!divisor_embedding(&b, &a));
        let c = Divisor::from_entries(&[(0.2, 1.0, 1)]).unwrap();
        assert!(!divisor_embedding(&a, &c));
        assert!(divisor_embedding(&Divisor::new(), &c));
    }

    #[test]
    fn weighted_sum_examples() {
        let z = Divisor::from_entries(&[(0.3, 0.0, 1), (0.6, PI, 3), (0.8, 1.0, 2)]).unwrap();
        let one = PeriodicFunction::constant(1.0);
        for r in [0.0, 0.3, 0.5, 0.6, 0.79, 0.8, 0.95] {
            let w = weighted_count_sum(&z, r, &one).unwrap();
            assert_eq!(w, counting_measure(&z, &Region::ClosedDisk { r }) as f64);
        }
        let z = Divisor::from_entries(&[(0.8, PI / 2.0, 1)]).unwrap();
        assert!(weighted_count_sum(&z, 0.85, &cos_plus()).unwrap().abs() < 1e-15);
        assert!(weighted_count_sum(&z, 1.0, &one).is_err());
    }

    #[test]
    fn weighted_sum_matches_atomized_counting() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let weights = [
            PeriodicFunction::constant(1.0),
            cos_plus(),
            PeriodicFunction::truncated_cosine(2.0).unwrap(),
        ];
        for case in 0..50 {
            let mut z = Divisor::new();
            for _ in 0..rng.gen_range(0..15) {
                z.insert(rng.gen_range(0.0..0.99), rng.gen_range(-PI..PI), rng.gen_range(1..4)).unwrap();
            }
            let r = rng.gen_range(0.0..0.99);
            let h = &weights[case % weights.len()];
            let a = weighted_count_sum(&z, r, h).unwrap();
            let b = radial_counting(&z.atomize(), r, h).unwrap();
            assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "{a} vs {b}");
        }
    }

    #[test]
    fn blaschke_examples() {
        let b = BlaschkeProduct::new(Divisor::from_entries(&[(0.5, 0.0, 1)]).unwrap());
        assert_eq!(b.eval(Complex64::new(0.5, 0.0)).unwrap(), Complex64::new(0.0, 0.0));
        assert!(b.eval(Complex64::new(1.0, 0.0)).is_err());
        let a = Divisor::from_entries(&[(0.37, 2.1, 1)]).unwrap();
        let b0 = BlaschkeProduct::new(a).eval(Complex64::new(0.0, 0.0)).unwrap();
        assert!((b0.norm() - 0.37).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let d = Divisor::from_entries(&[(0.0, 0.0, 2), (0.9, 1.0, 1), (0.4, -2.0, 3)]).unwrap();
        let b = BlaschkeProduct::new(d);
        for _ in 0..100 {
            let z = Complex64::from_polar(rng.gen_range(0.0..0.999), rng.gen_range(-PI..PI));
            let v = b.eval(z).unwrap();
            assert!(v.norm() < 1.0);
            assert!(v.norm().ln() <= 0.0);
        }
    }

    #[test]
    fn winding_examples() {
        let b = BlaschkeProduct::new(Divisor::from_entries(&[(0.5, 0.0, 2)]).unwrap());
        assert_eq!(winding_zero_count(|z| b.eval_unchecked(z), 0.7, 4096).unwrap(), 2);
        let b = BlaschkeProduct::new(Divisor::from_entries(&[(0.5, 0.0, 1), (0.9, PI, 1)]).unwrap());
        assert_eq!(winding_zero_count(|z| b.eval_unchecked(z), 0.7, 4096).unwrap(), 1);
        for r in [0.1, 0.5, 0.99, 3.0] {
            assert_eq!(winding_zero_count(|_| Complex64::new(1.0, 0.0), r, 64).unwrap(), 0);
        }
    }

    #[test]
    fn winding_failures() {
        let b = BlaschkeProduct::new(Divisor::from_entries(&[(0.5, 0.0, 1)]).unwrap());
        assert!(matches!(
            winding_zero_count(|z| b.eval_unchecked(z), 0.5, 64),
            Err(Error::VanishesOnCircle { .. })
        ));
        // z^40 winds 40 times; 32 samples cannot follow it
        assert!(matches!(
            winding_zero_count(|z| z.powu(40), 0.5, 32),
            Err(Error::SamplingTooCoarse { .. })
        ));
        assert!(winding_zero_count(|z| 1.0 / z, 0.5, 64).is_err());
    }

    #[test]
    fn blaschke_sums() {
        let conv = Divisor::from_entries(
            &(2..200).map(|k| (1.0 - 1.0 / (k * k) as f64, k as f64, 1)).collect::<Vec<_>>(),
        )
        .unwrap();
        assert!(blaschke_condition(&conv).sum < PI * PI / 6.0 - 1.0);
        let harm = Divisor::from_entries(&(2..200).map(|k| (1.0 - 1.0 / k as f64, k as f64, 1)).collect::<Vec<_>>())
            .unwrap();
        let s = blaschke_condition(&harm).sum;
        let expected: f64 = (2..200).map(|k| 1.0 / k as f64).sum();
        assert!((s - expected).abs() < 1e-12);
        assert_eq!(blaschke_condition(&Divisor::new()).sum, 0.0);
    }
}
