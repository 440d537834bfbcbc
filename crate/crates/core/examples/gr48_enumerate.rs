//! The reduced problems on Gr(4,8) and the fourteen with imprimitive
//! Galois groups.
//!
//! Run with `cargo run --release --example gr48_enumerate`.

use std::collections::BTreeMap;

use schubert_galois::gr48::{classify, enumerate_reduced, Status};
use schubert_galois::partitions::GrassContext;

fn main() {
    let ctx = GrassContext::new(4, 8).unwrap();
    let all = enumerate_reduced(ctx, 2);
    println!("{} reduced problems with at least two solutions", all.len());
    let mut by_status: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for sp in &all {
        let st = classify(sp).unwrap();
        by_status
            .entry(format!("{:?}", st.status))
            .or_default()
            .push(format!("{}  r={}", st.problem, st.r));
    }
    for (status, problems) in &by_status {
        println!("{status}: {}", problems.len());
        if status != &format!("{:?}", Status::AtLeastAlternatingPerPaper) {
            for p in problems {
                println!("    {p}");
            }
        }
    }
}
