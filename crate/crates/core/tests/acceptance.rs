//! Runs every acceptance criterion and prints one line per criterion.
//! Exits nonzero if any non-informational criterion fails.

use std::process::ExitCode;

use sextic_index::verify::{all_passed, run_all, DEFAULT_SEED};

fn main() -> ExitCode {
    let seed = std::env::var("ACCEPTANCE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(DEFAULT_SEED);
    println!("acceptance suite, seed {seed}");
    let results = run_all(seed);
    for r in &results {
        println!("{r}");
    }
    let passed = results.iter().filter(|r| r.passed && !r.informational).count();
    let scored = results.iter().filter(|r| !r.informational).count();
    println!(
        "{passed}/{scored} criteria passed, {} informational",
        results.len() - scored
    );
    if all_passed(&results) {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
