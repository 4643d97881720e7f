// Drives the `uamo` command line in-process: classify, label the gaps at 2/5
// and write a small butterfly with its JSON sidecar.

use uamo::cli::{run_from, EXIT_OK};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let classify = run_from(["uamo", "classify", "--couplings", "0.5,0.5"]);
    let v: serde_json::Value = serde_json::from_str(&classify.stdout)?;
    println!("classify 0.5,0.5 -> {}", v["regime"]);

    let gaps = run_from(["uamo", "gaps", "--freq", "2/5", "--couplings", "0.6,0.8"]);
    let v: serde_json::Value = serde_json::from_str(&gaps.stdout)?;
    for g in v["gaps"].as_array().ok_or("no gaps")? {
        println!("  gap width {:.6}  label {}", g["width"].as_f64().unwrap_or(f64::NAN), g["label"]);
    }

    let out = std::env::temp_dir().join(format!("uamo-example-{}.csv", std::process::id()));
    let run = run_from(["uamo", "butterfly", "--qmax", "6", "--format", "csv", "--out", out.to_str().ok_or("path")?]);
    println!("butterfly -> {}", run.stdout);
    let csv = std::fs::read_to_string(&out)?;
    let sidecar = out.with_extension("csv.json");
    let _ = std::fs::remove_file(&out);
    let _ = std::fs::remove_file(&sidecar);

    if classify.code != EXIT_OK || gaps.code != EXIT_OK || run.code != EXIT_OK {
        return Err("a command failed".into());
    }
    // 2q rows for each of the φ(q) reduced fractions p/q
    let expected: usize = [(2, 1), (3, 2), (4, 2), (5, 4), (6, 2)].iter().map(|(q, phi)| 2 * q * phi).sum();
    if csv.lines().count() != 1 + expected {
        return Err(format!("unexpected row count {}", csv.lines().count() - 1).into());
    }
    Ok(())
}

#[allow(dead_code)]
fn main() {
    run_example().expect("command_line example failed");
}
