//! Both sides of the weighted zero-distribution inequality over a family
//! of (g, h, ρ), and the empirical additive constant.

use trigdisk::gauge::GrowthGauge;
use trigdisk::periodic::PeriodicFunction;
use trigdisk::verify::{build_family, empirical_constant, CaseOptions, FamilyMember, USide};
use trigdisk::zeros::Divisor;

fn main() -> Result<(), trigdisk::error::Error> {
    let members = vec![
        FamilyMember {
            g: GrowthGauge::power(1.0)?,
            h: PeriodicFunction::constant(1.0),
            rho: 0.0,
        },
        FamilyMember {
            g: GrowthGauge::power(2.0)?,
            h: PeriodicFunction::truncated_cosine(2.0)?,
            rho: 2.0,
        },
        FamilyMember {
            g: GrowthGauge::linear(0.5)?,
            h: PeriodicFunction::truncated_cosine(0.5)?,
            rho: 0.5,
        },
    ];
    let family = build_family(&members, CaseOptions::default())?;

    // majorant charge: atoms of a divisor; zeros: the same atoms pushed toward the circle
    let base: Vec<(f64, f64, u32)> = (1..=40).map(|k| (1.0 - 1.0 / (k as f64 + 1.0), k as f64, 1)).collect();
    let m = Divisor::from_entries(&base)?.atomize();
    let inward = Divisor::from_entries(&base.iter().map(|&(r, t, k)| (1.0 - 0.8 * (1.0 - r), t, k)).collect::<Vec<_>>())?;
    let equal = USide::Divisor(Divisor::from_entries(&base)?);
    let shifted = USide::Divisor(inward);

    for eps in [1e-2, 1e-3, 1e-4] {
        for case in &family {
            let r = case.sides(&shifted, &m, eps)?;
            println!(
                "eps {eps:.0e}  {:<22} {:<24} lhs {:>9.5}  rhs {:>9.5}  gap {:>9.5}",
                r.g_descriptor, r.h_descriptor, r.lhs, r.rhs_integral, r.gap
            );
        }
        let c_eq = empirical_constant(&equal, &m, &family, eps)?;
        let c_sh = empirical_constant(&shifted, &m, &family, eps)?;
        println!("  empirical constant: equality case {:.3e}, shifted zeros {:.5} (member {:?})\n", c_eq.value, c_sh.value, c_sh.argmax);
    }
    Ok(())
}
