//! Solution counts of the Gr(4,8) problems, plus a two-row Kostka number.
//!
//! Run with `cargo run --example count_solutions`.

use schubert_galois::counting::{count_solutions, kostka_two_row};
use schubert_galois::partitions::parse_problem;

fn main() {
    for text in [
        "4,8: (1)^16",
        "4,8: (2,2)*(1)^12",
        "4,8: (1,1,1)*(3)*(1)^10",
        "4,8: (2,2)^2*(1)^8",
        "4,8: (2,2)^3*(1)^4",
        "4,8: (2,2)^4",
        "2,9: (3)^2*(2)^2*(1)^4",
    ] {
        let sp = parse_problem(text).expect("valid notation");
        println!("{:<32} r = {}", sp.to_string(), count_solutions(&sp));
    }
    // on Gr(2, n) a special problem counts two-row tableaux of content a
    println!("K(10,10,10,9,9) = {}", kostka_two_row(24, &[10, 10, 10, 9, 9]));
}
