//! Class conditions for growth gauges and the facts `g′ ≥ g/x`, `g(x)/x` increasing.

use trigdisk::gauge::{check_gauge_class, check_gx, GrowthGauge};

fn main() -> Result<(), trigdisk::error::Error> {
    let gauges = [
        GrowthGauge::power(1.0)?,
        GrowthGauge::power(2.5)?,
        GrowthGauge::linear(3.0)?,
        GrowthGauge::piecewise(vec![[0.0, 0.0], [0.4, 0.1], [1.0, 0.8], [3.0, 5.0]])?,
        // concave: rejected by the convexity check
        GrowthGauge::piecewise(vec![[0.0, 0.0], [0.5, 0.8], [1.0, 1.0]])?,
    ];
    for g in &gauges {
        let class = check_gauge_class(g, 1024, 1e-9);
        let gx = check_gx(g, 1024, 1e-9);
        println!("{}", g.descriptor());
        println!(
            "  convex {:<5}  g(0)=0 {:<5}  g(1) = {:.3} (normalized {})",
            class.convex_ok, class.zero_at_zero_ok, class.g_at_one, class.normalized_ok
        );
        println!(
            "  g' >= g/x {:<5}  g(x)/x increasing {:<5}  min slack {:.3e}",
            gx.derivative_bound_ok, gx.ratio_monotone_ok, gx.min_slack
        );
        let row: Vec<String> = [0.5, 0.9, 0.99]
            .iter()
            .map(|&t: &f64| format!("t={t}: {:.4} ≤ {:.4}", g.eval((1.0 - t) / t).unwrap(), g.eval(2.0 * (1.0 - t)).unwrap()))
            .collect();
        println!("  kernel order g((1-t)/t) ≤ g(2(1-t)): {}", row.join(", "));
    }
    Ok(())
}
