//! Runs the randomized property suites at their full trial counts.
//!
//! cargo run --release --example property_suites -- [seed]

use std::time::Instant;

use torus_minimal::properties::{
    circloid_suite, disk_complement_suite, fill_suite, holonomy_suite, trivial_continuum_suite, SuiteOutcome,
    CIRCLOID_TRIALS, CONTINUUM_TRIALS, DISK_TRIALS, FILL_TRIALS, HOLONOMY_TRIALS,
};

fn main() {
    let seed = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(0);
    let start = Instant::now();
    let suites: [(fn(u64, usize) -> SuiteOutcome, usize); 5] = [
        (fill_suite, FILL_TRIALS),
        (disk_complement_suite, DISK_TRIALS),
        (trivial_continuum_suite, CONTINUUM_TRIALS),
        (circloid_suite, CIRCLOID_TRIALS),
        (holonomy_suite, HOLONOMY_TRIALS),
    ];
    for (suite, trials) in suites {
        let t = Instant::now();
        let o = suite(seed, trials);
        println!(
            "{:<18} trials {:>5}  violations {:>3}  {:>7.1?}  {}",
            o.name,
            o.trials,
            o.violations,
            t.elapsed(),
            o.first_failure.unwrap_or_default()
        );
    }
    println!("elapsed {:.1?}", start.elapsed());
}
