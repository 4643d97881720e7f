// Aubry–André duality: (λ1, λ2) and (λ2, λ1) share their spectrum, and the
// Fourier transform of a dual Floquet wave solves the original eigenvalue
// equation.

use uamo::duality::{dual_floquet_wave, duality_residual, isospectrality_check};
use uamo::spectrum::{band_arcs_at_phase, BandOptions};
use uamo::{Couplings, Frequency};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = Couplings::new(0.6, 0.8)?;
    let f = Frequency::rational(2, 5)?;
    let opts = BandOptions::default();
    println!("Hausdorff distance to the dual spectrum: {:.2e}", isospectrality_check(&c, &f, &opts)?);
    let xi = 0.3;
    let dual_bands = band_arcs_at_phase(&c.swapped(), &f, xi, &opts)?;
    for arc in &dual_bands.arcs {
        let wave = dual_floquet_wave(&c, &f, xi, arc.mid())?;
        let r = duality_residual(&c, &f, wave.theta.0, wave.z, &wave.base, xi, 30)?;
        println!("ζ = {:.5}  θ = {:.5}  dual residual {:.1e}  transformed residual {:.1e}", arc.mid(), wave.theta.0, r.input_residual, r.residual);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("duality example failed");
}
