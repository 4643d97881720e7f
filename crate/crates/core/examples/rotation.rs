// Integrated density of states as the fibered rotation number: flat on each
// gap, increasing across bands.

use uamo::cocycle::{rotation_number, CocycleSpec, Family};
use uamo::{Couplings, Frequency};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = Couplings::new(0.6, 0.8)?;
    let f = Frequency::rational(2, 5)?;
    let mut prev = 0.0;
    for k in 0..=24 {
        let zeta = std::f64::consts::TAU * k as f64 / 25.0;
        let rot = rotation_number(&CocycleSpec::new(Family::TwoStep, c, f, zeta), 20_000, 0.0)?;
        println!("ζ = {zeta:.4}  rot = {rot:.5}  2q·rot = {:.3}", 10.0 * rot);
        if rot + 1e-3 < prev {
            return Err(format!("rotation number decreased at ζ = {zeta}").into());
        }
        prev = rot;
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("rotation example failed");
}
