//! Certificates that every reduced problem on Gr(2,n) has an at least
//! alternating Galois group.
//!
//! Run with `cargo run --release --example certify_gr2 -- 9`.

use schubert_galois::vakil2n::{certify_alternating, reduced_gr2_problems, CertRule};

fn main() {
    let n: usize = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(8);
    let problems = reduced_gr2_problems(n);
    let mut certified = 0;
    for sp in &problems {
        let cert = certify_alternating(sp).expect("reduced Gr(2,n) problem");
        cert.check().expect("certificate is internally consistent");
        if cert.is_alternating() {
            certified += 1;
        }
        let root = cert.root_node();
        println!("{:<36} r={:<5} {:?}", sp.to_string(), root.r, root.rule);
    }
    println!("{certified} of {} problems on Gr(2,{n}) certified", problems.len());

    let sp = schubert_galois::vakil2n::gr2_problem(&[2, 2, 2, 2, 2, 2]).unwrap();
    let cert = certify_alternating(&sp).unwrap();
    println!(
        "\n{sp}: {} nodes, {} use the equal-parts closed forms\n{cert}",
        cert.nodes.len(),
        cert.count_rule(CertRule::ClosedFormEqualParts)
    );
}
