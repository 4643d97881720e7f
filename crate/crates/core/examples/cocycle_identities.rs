// Transfer matrices of the eigenvalue equation: unit determinant, SU(1,1)
// after conjugation, and a constant Wronskian along bounded solutions.

use uamo::cocycle::{conjugation_residual, eigen_transfer, propagate_solution, two_step_map};
use uamo::duality::wronskian_drift;
use uamo::linalg::{C64, ONE, ZERO};
use uamo::spectrum::{band_arcs, BandOptions};
use uamo::{Couplings, Frequency, Phase};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = Couplings::new(0.45, 0.9)?;
    let f = Frequency::real(2f64.sqrt() - 1.0)?;
    let ph = Phase::new(0.37);
    let z = C64::from_polar(1.0, 2.1);
    for n in 0..4 {
        let t = eigen_transfer(&c, &f, ph, n, z)?;
        println!("n = {n}: |det − 1| = {:.1e}, conjugation residual {:.1e}", (t.det() - 1.0).norm(), conjugation_residual(&c, &f, ph, n, z)?);
    }
    let g = two_step_map(&c, z, 0.37)?;
    println!("two-step map SU(1,1) defect {:.1e}", g.defect());
    let sub = Couplings::new(0.8, 0.6)?;
    let golden = Frequency::real((5f64.sqrt() - 1.0) / 2.0)?;
    let approx = band_arcs(&sub, &Frequency::rational(34, 55)?, &BandOptions::default())?;
    let zeta = approx.arcs[0].mid();
    let u = propagate_solution(&sub, &golden, ph, zeta, [ONE, ZERO], -1, 1000)?;
    let v = propagate_solution(&sub, &golden, ph, zeta, [ZERO, ONE], -1, 1000)?;
    println!("Wronskian drift over 1000 steps at ζ = {zeta:.5}: {:.1e}", wronskian_drift(&u, &v)?);
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("cocycle_identities example failed");
}
