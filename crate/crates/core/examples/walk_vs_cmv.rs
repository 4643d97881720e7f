// The split-step walk is a generalized extended CMV matrix in disguise:
// compare both on a window and inspect the Verblunsky coefficients.

use uamo::model::{gecmv_vs_walk_check, verblunsky_gauged, walk_apply, StateWindow};
use uamo::{Couplings, Frequency, Phase};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let c = Couplings::new(0.6, 0.8)?;
    let f = Frequency::real((5f64.sqrt() - 1.0) / 2.0)?;
    let phase = Phase::new(0.1);
    let m = gecmv_vs_walk_check(&c, &f, phase, 16)?;
    println!("walk vs CMV deviation {:.1e} with interleaving {:?}", m.deviation, m.interleaving);
    for j in -2..=3 {
        let p = verblunsky_gauged(&c, &f, phase, j);
        println!("  α_{j} = {:.5}  ρ_{j} = {:.5}", p.alpha, p.rho);
    }
    let mut state = StateWindow::delta(0, true);
    for _ in 0..20 {
        state = walk_apply(&c, &f, phase, &state);
    }
    println!("norm after 20 steps: {:.15}", state.norm());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("walk_vs_cmv example failed");
}
