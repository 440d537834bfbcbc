//! Frobenius on the six solutions of four general 4-planes in 8-space:
//! the solutions are the spans of pairs of four lines, so Frobenius acts
//! through S4 on 2-subsets.
//!
//! Run with `cargo run --release --example derksen_frobenius`.

use schubert_galois::fieldlinalg::primes_from;
use schubert_galois::gr48::{run_sampling, Family, SamplingConfig};

fn main() {
    let config = SamplingConfig {
        family: Family::Derksen,
        primes: primes_from(1009, 20),
        trials: 12,
        seed: 2024,
        max_attempts: 16,
    };
    let report = run_sampling(&config);
    println!(
        "seed {}: {} samples, {} redraws",
        config.seed, report.unflagged, report.flagged
    );
    for (t, f) in &report.frequencies {
        println!("  {t:<14} {f:.3}");
    }
    // expected: 1/24, 9/24, 8/24, 6/24
    let v = report.verdict.expect("samples");
    println!("{}", v.summary());
}
