//! Composite midpoint rules used for radial densities.

use std::f64::consts::TAU;

use crate::error::{Error, Result};

const BULK_PANELS: usize = 2048;
const LEVELS: usize = 20;
const LEVEL_PANELS: usize = 128;

/// Midpoint nodes and weights on `(a, b)`, refined geometrically toward `b`.
///
/// The bulk `[a, b − L/2]` gets 2048 panels; each of the 20 halving levels
/// `[b − L/2^k, b − L/2^{k+1}]` and the final sliver get 128 panels each.
/// No node touches `b`, so integrands blowing up at `t = 1` are admissible.
pub fn radial_nodes(a: f64, b: f64) -> Vec<(f64, f64)> {
    let len = b - a;
    let mut out = Vec::with_capacity(BULK_PANELS + (LEVELS + 1) * LEVEL_PANELS);
    let mut push_segment = |lo: f64, hi: f64, n: usize| {
        let h = (hi - lo) / n as f64;
        for i in 0..n {
            out.push((lo + (i as f64 + 0.5) * h, h));
        }
    };
    push_segment(a, b - 0.5 * len, BULK_PANELS);
    let mut lo = b - 0.5 * len;
    for _ in 0..LEVELS {
        let hi = b - (b - lo) * 0.5;
        push_segment(lo, hi, LEVEL_PANELS);
        lo = hi;
    }
    push_segment(lo, b, LEVEL_PANELS);
    out
}

/// `∫_a^b f(t) dt` with [`radial_nodes`]. Fails on a non-finite integrand value.
pub fn integrate(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    if !(b > a) {
        return Ok(0.0);
    }
    let mut acc = 0.0;
    for (t, w) in radial_nodes(a, b) {
        let v = f(t);
        if !v.is_finite() {
            return Err(Error::NonFinite { at: t, value: v });
        }
        acc += v * w;
    }
    Ok(acc)
}

/// Nodes of the periodic trapezoid rule used for angular averages.
pub const ANGULAR_NODES: usize = 4096;

/// `(1/2π) ∫₀^{2π} f(θ) dθ` by the periodic trapezoid rule.
pub fn angular_mean(f: impl Fn(f64) -> f64) -> f64 {
    let n = ANGULAR_NODES;
    (0..n).map(|j| f(TAU * j as f64 / n as f64)).sum::<f64>() / n as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_and_endpoint_singularity() {
        let v = integrate(|t| t * t, 0.0, 1.0).unwrap();
        assert!((v - 1.0 / 3.0).abs() < 1e-7);
        // ∫_{1/2}^1 (1−t)^{−1/2} dt = 2·√(1/2)
        let v = integrate(|t| (1.0 - t).powf(-0.5), 0.5, 1.0).unwrap();
        assert!((v - 2.0 * 0.5f64.sqrt()).abs() < 2e-3, "{v}");
        assert!(radial_nodes(0.5, 1.0).iter().all(|(t, _)| *t < 1.0));
    }

    #[test]
    fn angular_mean_of_trig() {
        assert!((angular_mean(|t| t.cos().powi(2)) - 0.5).abs() < 1e-14);
        assert!(angular_mean(|t| (3.0 * t).sin()).abs() < 1e-14);
    }
}
