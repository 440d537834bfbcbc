//! Candidate components of the space of solution pairs, and the rulings
//! that eliminate all but the dense one.
//!
//! Run with `cargo run --example excess_candidates`.

use schubert_galois::partitions::parse_problem;
use schubert_galois::transitivity::{enumerate_candidates, verdict};

fn main() {
    for text in ["4,8: (2,2)^4", "4,8: (1)^16", "3,7: (2,2)*(1)^8", "3,6: (1)^9"] {
        let sp = parse_problem(text).expect("valid notation");
        let candidates = enumerate_candidates(&sp);
        println!("{sp}: {} candidates", candidates.len());
        match verdict(&sp) {
            Ok(v) => {
                for rec in &v.records {
                    println!("  {}  {:?}", rec.datum, rec.ruling);
                }
                for idx in &v.unresolved {
                    println!("  {idx}  not ruled on");
                }
                println!("  verdict {:?}", v.kind);
            }
            Err(e) => println!("  {e}"),
        }
    }
}
