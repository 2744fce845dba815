//! Chord test and second-difference test for ρ-trigonometric convexity,
//! positive parts, support functions and the smallest admissible ρ.

use num_complex::Complex64;
use trigdisk::periodic::{
    check_second_derivative, check_trig_convex, default_tol, min_rho, positive_part, support_function, Interpolation,
    PeriodicFunction,
};

fn main() -> Result<(), trigdisk::error::Error> {
    let cases = [
        ("truncated cosine, rho = 2", PeriodicFunction::truncated_cosine(2.0)?),
        ("(cos θ)⁺ sampled", positive_part(PeriodicFunction::sampled_fn(64, Interpolation::Trigonometric, f64::cos)?)),
        (
            "support of {1, i, -1-i}",
            support_function(&[Complex64::new(1.0, 0.0), Complex64::new(0.0, 1.0), Complex64::new(-1.0, -1.0)])?,
        ),
        ("−|sin θ|", PeriodicFunction::sampled_fn(64, Interpolation::Linear, |t| -t.sin().abs())?),
    ];
    println!("{:<28} {:>5} {:>7} {:>12} {:>9}", "h", "rho", "chord", "max defect", "C2 test");
    for (name, h) in &cases {
        for rho in [0.5, 1.0, 2.0, 3.0] {
            let tol = default_tol(h);
            let chord = check_trig_convex(h, rho, 512, tol)?;
            let c2 = check_second_derivative(h, rho, 512, tol)?;
            println!(
                "{name:<28} {rho:>5} {:>7} {:>12.3e} {:>9}",
                chord.passed, chord.max_defect, c2.passed
            );
        }
        match min_rho(h, 1e-3) {
            Ok(r) => println!("{name:<28} smallest rho ≈ {r:.4}\n"),
            Err(e) => println!("{name:<28} {e}\n"),
        }
    }
    Ok(())
}
