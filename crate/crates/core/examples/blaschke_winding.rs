//! Zero counting by the argument principle on finite Blaschke products,
//! checked against the counting measure of the divisor.

use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use trigdisk::zeros::{blaschke_condition, counting_measure, winding_zero_counts, BlaschkeProduct, Divisor, Region};

fn main() -> Result<(), trigdisk::error::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    let mut d = Divisor::new();
    for _ in 0..8 {
        d.insert(rng.gen_range(0.0..0.95), rng.gen_range(-PI..PI), rng.gen_range(1..=2))?;
    }
    println!("divisor: {}", serde_json::to_string(&d).expect("serializable"));
    println!("Blaschke sum Σ(1 - |a|) = {:.4}", blaschke_condition(&d).sum);

    let b = BlaschkeProduct::new(d.clone());
    let radii = [0.1, 0.3, 0.5, 0.7, 0.9, 0.99];
    let counts = winding_zero_counts(|z| b.eval_unchecked(z), &radii, 4096);
    for (r, c) in radii.iter().zip(counts) {
        let expected = counting_measure(&d, &Region::ClosedDisk { r: *r });
        match c {
            Ok(n) => println!("|z| = {r}: winding {n}, counted {expected}"),
            Err(e) => println!("|z| = {r}: {e}"),
        }
    }
    let sector = Region::AnnulusSector {
        r_min: 0.5,
        r_max: 0.95,
        theta_min: 0.0,
        theta_max: PI,
    };
    println!("zeros in 0.5 < |z| ≤ 0.95, 0 ≤ arg z < π: {}", counting_measure(&d, &sector));
    Ok(())
}
