// Butterfly sweep: band arcs for every reduced p/q with q ≤ 10 at
// (1/√2, 1/√3), written as CSV.

use uamo::cli::butterfly_csv;
use uamo::spectrum::{butterfly, BandOptions};
use uamo::Couplings;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = Couplings::new(std::f64::consts::FRAC_1_SQRT_2, 3f64.sqrt().recip())?;
    let records = butterfly(&c, 10, &BandOptions::default())?;
    for r in &records {
        let bs = r.result.as_ref().map_err(|e| format!("{}/{}: {e}", r.p, r.q))?;
        if bs.arcs.len() != 2 * r.q as usize {
            return Err(format!("{}/{} has {} bands", r.p, r.q, bs.arcs.len()).into());
        }
    }
    let csv = butterfly_csv(&records);
    println!("{} frequencies, {} rows", records.len(), csv.lines().count() - 1);
    for line in csv.lines().take(6) {
        println!("{line}");
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("butterfly example failed");
}
