//! Reducing a problem to an equivalent one on a smaller Grassmannian.
//!
//! Run with `cargo run --example reduce_problem -- "3,11: (5,4)*(6,1)*(1)^8"`.

use schubert_galois::counting::count_solutions;
use schubert_galois::partitions::parse_problem;
use schubert_galois::reduction::{reduce, ReductionOutcome};

fn main() {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "3,11: (5,4)*(6,1)*(1)^8".into());
    let sp = parse_problem(&text).expect("valid notation");
    let (outcome, trace) = reduce(&sp);
    println!("input  {sp}   r = {}", count_solutions(&sp));
    print!("{trace}");
    match outcome {
        ReductionOutcome::Reduced(red) => println!("output {red}   r = {}", count_solutions(&red)),
        ReductionOutcome::Point => println!("output: a single point"),
        ReductionOutcome::Trivial => println!("output: no solutions"),
    }
    // the trace replays from its recorded witnesses
    assert!(trace.replay(&sp).is_some());
}
