//! Recomputes every worked example and prints a pass/fail line for each.

use hadamard::suite::run_suite;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() {
    let report = run_suite(&mut ChaCha8Rng::seed_from_u64(hadamard::cli::DEFAULT_SEED));
    for c in &report.checks {
        println!("{} {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    std::process::exit(if report.passed { 0 } else { 1 });
}
