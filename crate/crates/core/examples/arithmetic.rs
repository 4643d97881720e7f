// Frequency arithmetic: continued fractions, the Diophantine condition and
// the nonresonance condition on the phase.

use uamo::arithmetic::{continued_fraction, diophantine_check, nonresonance_check, DiophantineParams};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let golden = (5f64.sqrt() - 1.0) / 2.0;
    let cf = continued_fraction(golden, 12)?;
    println!("golden mean quotients {:?}", cf.partial_quotients);
    println!("convergents {:?}", cf.convergents);
    let params = DiophantineParams { kappa: 0.2, tau: 1.01, horizon: 10_000 };
    for (name, phi) in [("golden", golden), ("√2 − 1", 2f64.sqrt() - 1.0), ("3/8", 0.375)] {
        let d = diophantine_check(phi, params)?;
        println!("{name:>7}: Diophantine {} (worst n = {}, ratio {:.3})", d.pass, d.worst_n, d.worst_ratio);
    }
    let nr = nonresonance_check(0.25, golden, 1.01, 1000, None)?;
    println!("θ = 1/4: nonresonant {} with {} small divisors", nr.pass, nr.violations.len());
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("arithmetic example failed");
}
