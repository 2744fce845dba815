//! Weighted radial counting functions of a charge with atoms and a density,
//! Stieltjes integrals against them, and the slicing identity.

use std::f64::consts::PI;

use trigdisk::charge::{jordan, slicing_identity_check, stieltjes, Atom, DiskCharge, RadialCounting, RadialProfile};
use trigdisk::periodic::PeriodicFunction;

fn main() -> Result<(), trigdisk::error::Error> {
    let mu = DiskCharge::from_atoms(vec![
        Atom::new(0.3, 0.0, 1.0),
        Atom::new(0.6, PI / 3.0, 2.0),
        Atom::new(0.8, PI, -0.5),
    ])?
    .with_density(
        RadialProfile::BoundaryPower {
            coeff: 0.1,
            exponent: 0.5,
        },
        PeriodicFunction::constant(1.0),
    )?;
    let h = PeriodicFunction::truncated_cosine(1.0)?;
    let rc = RadialCounting::new(&mu, &h);
    for r in [0.2, 0.3, 0.5, 0.6, 0.9, 0.99] {
        println!("mu_rad({r}; h) = {:.6}", rc.value(r)?);
    }
    let (plus, minus) = jordan(&mu);
    println!("positive part carries {} atoms, negative part {}", plus.atoms.len(), minus.atoms.len());

    let kernel = |t: f64| ((1.0 - t) / t).powi(2);
    println!("∫_(1/2, 0.99) ((1-t)/t)² dmu_rad = {:.6}", stieltjes(kernel, &rc, 0.5, 0.99)?);

    let rep = slicing_identity_check(&mu, |t| t * t, &h, 0.25, 1e-6)?;
    println!("slicing identity: direct {:.8}, via mu_rad {:.8}, agreed {}", rep.lhs, rep.rhs, rep.agreed);

    let csv = rc.to_csv(8)?;
    println!("first CSV rows:\n{}", csv.lines().take(5).collect::<Vec<_>>().join("\n"));
    Ok(())
}
