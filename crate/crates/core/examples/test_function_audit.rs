//! Finite-difference subharmonicity and membership audits of
//! `v(re^{iθ}) = g((1−r)/r)·h(θ)` on `r_ρ < r < 1`.

use trigdisk::gauge::GrowthGauge;
use trigdisk::periodic::PeriodicFunction;
use trigdisk::testfn::{membership_audit, subharmonicity_audit, AuditGrid, TestFunctionSpec};

fn main() -> Result<(), trigdisk::error::Error> {
    let grid = AuditGrid {
        probes: 2000,
        seed: 7,
        ..AuditGrid::new(256, 512)
    };
    for (g, rho) in [(GrowthGauge::power(1.0)?, 1.0), (GrowthGauge::power(2.0)?, 2.0), (GrowthGauge::power(2.0)?, 3.0)] {
        let spec = TestFunctionSpec::new(g, PeriodicFunction::truncated_cosine(rho)?, rho)?;
        let sub = subharmonicity_audit(&spec, &grid, 1e-6)?;
        let mem = membership_audit(&spec, 512, 1e-9)?;
        println!("{} × {} (rho = {rho}, r_rho = {:.4}, b_rho = {:.4})", spec.gauge.descriptor(), spec.h.descriptor(), sub.r_rho, spec.b_rho());
        println!(
            "  min Δv = {:.3e} over {} nodes ({} kink-adjacent excluded), lower bound held: {}",
            sub.min_laplacian, sub.audited_nodes, sub.excluded_nodes, sub.posgh_ok
        );
        println!("  v ≥ 0: {}, sup v = {:.4} ≤ b_rho: {}", mem.positive_ok, mem.sup, mem.bounded_ok);
        for [eps, v] in &mem.boundary_values {
            println!("    max v at |z| = 1 - {eps}: {v:.3e}");
        }
    }
    Ok(())
}
