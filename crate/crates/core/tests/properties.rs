use std::f64::consts::PI;

use proptest::prelude::*;

use trigdisk::charge::{jordan, Atom, DiskCharge, RadialCounting};
use trigdisk::cli::to_json;
use trigdisk::gauge::GrowthGauge;
use trigdisk::periodic::{check_trig_convex, positive_part, Interpolation, PeriodicFunction};
use trigdisk::verify::{CaseOptions, FamilyMember, InequalityCase, USide};
use trigdisk::zeros::{counting_measure, weighted_count_sum, Divisor, Region};

const N: usize = 256;
const TOL: f64 = 1e-6;

/// `c + a cos(kθ − φ)` with `c ≥ 0`: k-trigonometrically convex, sign-changing when `a > c`.
fn shifted_sinusoid(k: u32, a: f64, phase: f64, c: f64) -> PeriodicFunction {
    PeriodicFunction::sampled_fn(64, Interpolation::Trigonometric, move |t| c + a * (k as f64 * t - phase).cos())
        .unwrap()
}

fn divisor_strategy() -> impl Strategy<Value = Divisor> {
    prop::collection::vec((0.0..0.99f64, -PI..PI, 1u32..4), 1..15).prop_map(|v| Divisor::from_entries(&v).unwrap())
}

fn charge_strategy() -> impl Strategy<Value = DiskCharge> {
    prop::collection::vec((0.0..0.99f64, -PI..PI, -2.0..2.0f64), 0..30)
        .prop_map(|v| DiskCharge::from_atoms(v.into_iter().map(|(r, t, m)| Atom::new(r, t, m)).collect()).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn positive_part_stays_in_class(k in 1u32..4, a in 0.1..1.0f64, phase in -PI..PI, c in 0.0..1.0f64) {
        let h = shifted_sinusoid(k, a, phase, c);
        let rho = k as f64;
        prop_assert!(check_trig_convex(&h, rho, N, TOL).unwrap().passed);
        prop_assert!(check_trig_convex(&positive_part(h), rho, N, TOL).unwrap().passed);
    }

    #[test]
    fn class_grows_with_rho(k in 1u32..4, a in 0.1..1.0f64, phase in -PI..PI, c in 0.0..1.0f64, extra in 0.0..3.0f64) {
        let hp = positive_part(shifted_sinusoid(k, a, phase, c));
        prop_assert!(check_trig_convex(&hp, k as f64 + extra, N, TOL).unwrap().passed);
    }

    #[test]
    fn decreasing_prefix_limit(rho in 0.5..4.0f64) {
        let h = PeriodicFunction::truncated_cosine(rho).unwrap();
        for n in 1..=5 {
            let hn = PeriodicFunction::sum(h.clone(), PeriodicFunction::constant(1.0 / n as f64));
            prop_assert!(check_trig_convex(&hn, rho, N, 1e-9).unwrap().passed);
        }
        prop_assert!(check_trig_convex(&h, rho, N, 1e-9).unwrap().passed);
    }

    #[test]
    fn adjacent_jumps_shrink_under_refinement(k in 1u32..4, a in 0.1..1.0f64, phase in -PI..PI, c in 0.0..1.0f64) {
        let hp = positive_part(shifted_sinusoid(k, a, phase, c));
        let jump = |n: usize| {
            let v = hp.grid_values(n);
            (0..n).map(|i| (v[(i + 1) % n] - v[i]).abs()).fold(0.0, f64::max)
        };
        prop_assert!(jump(1024) < jump(256));
    }

    #[test]
    fn counting_monotone_and_additive(d in divisor_strategy(), e in divisor_strategy(), r in 0.0..0.99f64, s in 0.0..0.99f64) {
        let (lo, hi) = if r < s { (r, s) } else { (s, r) };
        let small = Region::ClosedDisk { r: lo };
        let ball = Region::ClosedDisk { r: hi };
        prop_assert!(counting_measure(&d, &small) <= counting_measure(&d, &ball));
        let u = d.union(&e);
        prop_assert_eq!(counting_measure(&u, &ball), counting_measure(&d, &ball) + counting_measure(&e, &ball));
        let one = PeriodicFunction::constant(1.0);
        let w = weighted_count_sum(&d, hi, &one).unwrap();
        prop_assert_eq!(w, counting_measure(&d, &ball) as f64);
    }

    #[test]
    fn jordan_reassembles(mu in charge_strategy(), r in 0.0..0.99f64) {
        let h = PeriodicFunction::truncated_cosine(2.0).unwrap();
        let (p, m) = jordan(&mu);
        prop_assert!(p.is_positive() && m.is_positive());
        let whole = RadialCounting::new(&mu, &h).value(r).unwrap();
        let split = RadialCounting::new(&p, &h).value(r).unwrap() - RadialCounting::new(&m, &h).value(r).unwrap();
        prop_assert!((whole - split).abs() <= 1e-12 * (1.0 + whole.abs()));
    }

    #[test]
    fn divisor_json_round_trip(d in divisor_strategy()) {
        let back: Divisor = serde_json::from_str(&to_json(&d)).unwrap();
        prop_assert_eq!(back, d);
    }

    #[test]
    fn kernel_order(p in 1.0..4.0f64, t in 0.5..0.999f64) {
        let g = GrowthGauge::power(p).unwrap();
        prop_assert!(g.eval((1.0 - t) / t).unwrap() <= g.eval(2.0 * (1.0 - t)).unwrap() * (1.0 + 1e-12));
    }

    #[test]
    fn subdivisor_gap_nonpositive_and_lhs_grows(d in divisor_strategy(), keep in prop::collection::vec(any::<bool>(), 15), p in 1.0..3.0f64) {
        let sub = Divisor::from_entries(
            &d.entries()
                .zip(keep.iter().cycle())
                .filter(|(_, k)| **k)
                .map(|((pt, m), _)| (pt.r, pt.theta, m))
                .collect::<Vec<_>>(),
        )
        .unwrap();
        let case = InequalityCase::new(
            FamilyMember { g: GrowthGauge::power(p).unwrap(), h: PeriodicFunction::truncated_cosine(2.0).unwrap(), rho: 2.0 },
            CaseOptions::default(),
        )
        .unwrap();
        let m = d.atomize();
        let u = USide::Divisor(sub);
        let coarse = case.sides(&u, &m, 1e-2).unwrap();
        let fine = case.sides(&u, &m, 1e-3).unwrap();
        prop_assert!(coarse.gap <= 1e-15 && fine.gap <= 1e-15);
        prop_assert!(fine.lhs >= coarse.lhs);
    }
}
