//! Frobenius sampling for the two families whose Galois group is the
//! dihedral group of order 8.
//!
//! Run with `cargo run --release --example d4_families`.

use schubert_galois::fieldlinalg::primes_from;
use schubert_galois::gr48::{run_sampling, Family, SamplingConfig};

fn main() {
    for family in [Family::D4a, Family::D4b] {
        let config = SamplingConfig {
            family,
            primes: primes_from(1009, 10),
            trials: 40,
            seed: 8,
            max_attempts: 16,
        };
        let report = run_sampling(&config);
        println!("{family}: {} samples", report.unflagged);
        for (t, f) in &report.frequencies {
            println!("  {t:<10} {f:.3}");
        }
        // expected: 1/8, 2/8, 3/8, 2/8
        println!("  {}", report.verdict.expect("samples").summary());
    }
}
