// Bands at Φ = 3/8, the gaps between them and their integer labels
// 2·ids ≡ kΦ (mod 1).

use uamo::spectrum::{band_arcs, gap_labels, gaps, symmetry_check, BandOptions, DEFAULT_WIDTH_FLOOR};
use uamo::{Couplings, Frequency};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = Couplings::new(0.6, 0.8)?;
    let f = Frequency::rational(3, 8)?;
    let bs = band_arcs(&c, &f, &BandOptions::default())?;
    println!("{} bands, touching points {:?}", bs.arcs.len(), bs.closed_gaps);
    let sym = symmetry_check(&bs);
    println!("symmetry deviations: conjugation {:.1e}, negation {:.1e}", sym.conjugation, sym.negation);
    let labeled = gap_labels(&c, &f, &gaps(&bs, DEFAULT_WIDTH_FLOOR), 20_000, None)?;
    println!("{:>10} {:>10} {:>8} {:>6}", "midpoint", "width", "ids", "label");
    for g in &labeled {
        let label = g.label.ok_or("unlabeled gap")?;
        println!("{:>10.5} {:>10.5} {:>8.5} {:>6}", g.arc.mid(), g.width, g.ids.unwrap_or(f64::NAN), label);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("bands_and_gaps example failed");
}
