use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use schubert_galois::fieldlinalg::{factor_degrees, random_subspace, roots, Fq, Matrix, Poly, Subspace};

#[test]
fn random_quartics_follow_s4_cycle_types() {
    let f = Fq::prime(1_000_003).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let mut seen: BTreeMap<Vec<usize>, usize> = BTreeMap::new();
    let mut total = 0;
    while total < 10_000 {
        let mut c: Vec<_> = (0..4).map(|_| f.random(&mut rng)).collect();
        c.push(f.one());
        let fd = factor_degrees(&f, &Poly::new(c)).unwrap();
        if !fd.squarefree {
            continue;
        }
        assert_eq!(fd.degrees.iter().sum::<usize>(), 4);
        *seen.entry(fd.degrees).or_default() += 1;
        total += 1;
    }
    // class sizes of S4 over 24
    let expected = [
        (vec![1, 1, 1, 1], 1.0),
        (vec![2, 1, 1], 6.0),
        (vec![2, 2], 3.0),
        (vec![3, 1], 8.0),
        (vec![4], 6.0),
    ];
    for (t, size) in expected {
        let freq = *seen.get(&t).unwrap_or(&0) as f64 / total as f64;
        assert!((freq - size / 24.0).abs() < 0.05, "{t:?}: {freq}");
    }
}

#[test]
fn eigenvalues_are_char_poly_roots() {
    let f = Fq::prime(10007).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut checked = 0;
    for _ in 0..50 {
        let m = Matrix::random(&f, 4, 4, &mut rng);
        let cp = m.char_poly(&f);
        for r in roots(&f, &cp) {
            let shifted = m.sub(&f, &Matrix::identity(&f, 4).scale(&f, &r));
            assert!(shifted.rank(&f) < 4);
            checked += 1;
        }
        // a non-root leaves full rank
        let x = f.random(&mut rng);
        if !f.is_zero(&cp.eval(&f, &x)) {
            assert_eq!(m.sub(&f, &Matrix::identity(&f, 4).scale(&f, &x)).rank(&f), 4);
        }
    }
    assert!(checked > 10);
}

#[test]
fn generic_four_planes_in_eight_space() {
    let f = Fq::prime(32003).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for _ in 0..20 {
        let a = random_subspace(&f, 4, 8, &mut rng);
        let b = random_subspace(&f, 4, 8, &mut rng);
        assert_eq!(a.intersect(&f, &b).unwrap().dim(), 0);
        assert_eq!(a.span(&f, &b).unwrap(), Subspace::whole(&f, 8));
    }
}

#[test]
fn seeded_subspaces_repeat() {
    let f = Fq::prime(101).unwrap();
    let a = random_subspace(&f, 3, 6, &mut ChaCha8Rng::seed_from_u64(99));
    let b = random_subspace(&f, 3, 6, &mut ChaCha8Rng::seed_from_u64(99));
    assert_eq!(a, b);
    assert_eq!(a.dim(), 3);
}

#[test]
fn frobenius_on_subspaces() {
    let mut rng = ChaCha8Rng::seed_from_u64(31);
    let f = Fq::extension(103, 4, &mut rng).unwrap();
    let base = Fq::prime(103).unwrap();
    for _ in 0..10 {
        let a = random_subspace(&f, rng.gen_range(1..5), 6, &mut rng);
        let b = random_subspace(&f, rng.gen_range(1..5), 6, &mut rng);
        let fa = a.frobenius_map(&f);
        let fb = b.frobenius_map(&f);
        assert_eq!(
            a.intersect(&f, &b).unwrap().frobenius_map(&f),
            fa.intersect(&f, &fb).unwrap()
        );
        assert_eq!(a.span(&f, &b).unwrap().frobenius_map(&f), fa.span(&f, &fb).unwrap());
        let mut c = a.clone();
        for _ in 0..4 {
            c = c.frobenius_map(&f);
        }
        assert_eq!(c, a);
        // defined over F_p: fixed
        let rational = random_subspace(&base, 3, 6, &mut rng).lift_prime(&f);
        assert_eq!(rational.frobenius_map(&f), rational);
    }
}

#[test]
fn quadratic_subspace_has_orbit_two() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let f = Fq::extension(19, 2, &mut rng).unwrap();
    let t = f.generator();
    // the line through (1, t) is defined over F_{p^2} but not F_p
    let line = Subspace::span_of(&f, 2, &[vec![f.one(), t]]);
    let image = line.frobenius_map(&f);
    assert_ne!(image, line);
    assert_eq!(image.frobenius_map(&f), line);
    assert!(!line.defined_over_prime(&f));
}
