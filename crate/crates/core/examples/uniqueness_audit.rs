//! Divergence audit of the uniqueness conditions along ε_j = 2^{−j}:
//! zeros `1 − 1/k` violate the Blaschke condition, zeros `1 − 1/k²` do not.
//!
//! `α = 1.5` is a convergent case the 20-level heuristic still calls
//! ForcesZero: its tail decays like `2^{−j/3}`, too slowly to stall by level 20.

use trigdisk::gauge::GrowthGauge;
use trigdisk::periodic::PeriodicFunction;
use trigdisk::verify::{blaschke_trend, uniqueness_audit, AngleRule, MajorantSource, SequenceGenerator};

fn main() -> Result<(), trigdisk::error::Error> {
    let g = GrowthGauge::power(1.0)?;
    let h = PeriodicFunction::constant(1.0);
    for alpha in [1.0, 1.5, 2.0] {
        let zeros = SequenceGenerator::PowerLaw {
            alpha,
            angle_rule: AngleRule::Equidistributed,
        };
        let audit = uniqueness_audit(&zeros, &MajorantSource::default(), &g, &h, 20)?;
        println!("alpha = {alpha}: {:?}", audit.classification);
        for j in [4, 9, 14, 19] {
            println!(
                "  eps = 2^-{:<2} cuM {:.4}  cuZ {:.6}",
                j + 1,
                audit.cu_m_partials[j],
                audit.cu_z_partials[j]
            );
        }
        let trend = blaschke_trend(&zeros, 20)?;
        println!("  Blaschke sum at eps = 2^-20: {:.4} (convergence indicated: {})", trend[19].sum, trend[19].convergent_indicated);
    }
    Ok(())
}
