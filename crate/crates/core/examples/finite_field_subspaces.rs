//! Exact linear algebra over finite fields: extension fields, subspace
//! intersections, eigenvalues as roots of characteristic polynomials.
//!
//! Run with `cargo run --example finite_field_subspaces`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use schubert_galois::fieldlinalg::{factor_degrees, random_subspace, roots, Fq, Matrix, Poly};

fn main() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let f = Fq::prime(10007).unwrap();
    let a = random_subspace(&f, 4, 8, &mut rng);
    let b = random_subspace(&f, 4, 8, &mut rng);
    let c = random_subspace(&f, 5, 8, &mut rng);
    println!("dim A∩B = {}, dim A∩C = {}", a.meet_dim(&f, &b), a.meet_dim(&f, &c));

    let m = Matrix::random(&f, 4, 4, &mut rng);
    let chi = m.char_poly(&f);
    let fd = factor_degrees(&f, &chi).expect("nonzero polynomial");
    println!("char poly {}  factor degrees {:?}", chi.display(&f), fd.degrees);
    for r in roots(&f, &chi) {
        println!("  eigenvalue {}", f.display(&r));
    }

    // over the splitting field every factor has a root
    let big = Fq::extension(10007, fd.degrees.iter().product::<usize>().max(1), &mut rng).unwrap();
    let lifted = Poly::new(chi.coeffs().iter().map(|c| big.lift_prime(c)).collect());
    println!("roots over F_p^{}: {}", big.degree(), roots(&big, &lifted).len());
}
