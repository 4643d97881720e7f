// Lyapunov exponents at the golden mean: on the spectrum the supercritical
// walk sits at the floor log[λ2(1+λ1')/(λ1(1+λ2'))], in a gap it is larger,
// and the subcritical mirror has zero exponent on the spectrum.

use uamo::arithmetic::lyapunov_floor;
use uamo::cocycle::{lyapunov_exponent, CocycleSpec, Family};
use uamo::spectrum::{band_arcs, gaps, BandOptions};
use uamo::{Couplings, Frequency};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = Couplings::new(0.6, 0.8)?;
    let golden = Frequency::real((5f64.sqrt() - 1.0) / 2.0)?;
    let approx = band_arcs(&c, &Frequency::rational(13, 21)?, &BandOptions::default())?;
    let widest = approx.arcs.iter().max_by(|a, b| a.len().total_cmp(&b.len())).ok_or("no bands")?;
    let gap = gaps(&approx, 1e-3).into_iter().max_by(|a, b| a.width.total_cmp(&b.width)).ok_or("no gaps")?;
    let floor = lyapunov_floor(&c)?;
    let n = 20_000;
    for (name, zeta) in [("band", widest.mid()), ("gap", gap.arc.mid())] {
        let l = lyapunov_exponent(&CocycleSpec::new(Family::TwoStep, c, golden, zeta), n, 8)?;
        let m = lyapunov_exponent(&CocycleSpec::new(Family::TwoStep, c.swapped(), golden, zeta), n, 8)?;
        println!("{name:>4} ζ = {zeta:.5}: L = {:.6} (floor {floor:.6}), mirror L = {:.2e}", l.value, m.value);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("lyapunov example failed");
}
