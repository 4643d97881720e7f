// Smallest tour: build the walk at Φ = 2/5, count its bands and check the
// regime.

use uamo::arithmetic::phase_classify;
use uamo::spectrum::{band_arcs, BandOptions};
use uamo::{Couplings, Frequency};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = Couplings::new(0.6, 0.8)?;
    let f = Frequency::rational(2, 5)?;
    let bands = band_arcs(&c, &f, &BandOptions::default())?;
    println!("regime {:?}", phase_classify(&c));
    println!("{} bands, total measure {:.6}", bands.arcs.len(), bands.measure());
    for (i, a) in bands.arcs.iter().enumerate() {
        println!("  band {i}: [{:.6}, {:.6}]", a.lo, a.hi);
    }
    if bands.arcs.len() != 10 {
        return Err(format!("expected 10 bands, got {}", bands.arcs.len()).into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("hello example failed");
}
