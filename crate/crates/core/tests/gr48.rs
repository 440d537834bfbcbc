use std::collections::BTreeSet;

use schubert_galois::fieldlinalg::primes_from;
use schubert_galois::gr48::{
    classify, cycle_type_of, enumerate_reduced, frobenius_sample_d4, frobenius_sample_derksen, identify_group,
    imprimitive_catalog, induced_pair_cycle_type, run_sampling, CycleType, Family, ObservedSample, SamplingConfig,
    Status,
};
use schubert_galois::partitions::GrassContext;

fn ct(v: &[usize]) -> CycleType {
    CycleType::new(v.to_vec())
}

#[test]
fn reduced_problems_on_gr48() {
    let ctx = GrassContext::new(4, 8).unwrap();
    let all = enumerate_reduced(ctx, 2);
    assert_eq!(all.len(), 2987);
    let keys: BTreeSet<_> = all.iter().collect();
    assert_eq!(keys.len(), all.len());
    let catalog = imprimitive_catalog();
    for (sp, _) in &catalog {
        assert!(all.contains(sp), "{sp} missing from the enumeration");
    }
    let mut imprimitive = 0;
    for sp in &all {
        let st = classify(sp).unwrap();
        assert_ne!(st.status, Status::UnresolvedByThisTool);
        if st.status != Status::AtLeastAlternatingPerPaper {
            imprimitive += 1;
        }
    }
    assert_eq!(imprimitive, 14);
}

/// Every permutation of 4 points, by brute force over `S_4`.
#[test]
fn pair_action_matches_brute_force() {
    let mut perms = Vec::new();
    for a in 0..4 {
        for b in 0..4 {
            for c in 0..4 {
                for d in 0..4 {
                    let p = [a, b, c, d];
                    if p.iter().collect::<BTreeSet<_>>().len() == 4 {
                        perms.push(p);
                    }
                }
            }
        }
    }
    assert_eq!(perms.len(), 24);
    let pairs: Vec<(usize, usize)> = (0..4).flat_map(|i| (i + 1..4).map(move |j| (i, j))).collect();
    for p in perms {
        let on_pairs: Vec<usize> = pairs
            .iter()
            .map(|&(i, j)| {
                let (x, y) = (p[i].min(p[j]), p[i].max(p[j]));
                pairs.iter().position(|&q| q == (x, y)).unwrap()
            })
            .collect();
        assert_eq!(
            induced_pair_cycle_type(&cycle_type_of(&p)).unwrap(),
            cycle_type_of(&on_pairs)
        );
    }
}

#[test]
fn derksen_samples_are_verified() {
    let mut samples = Vec::new();
    for (i, p) in primes_from(10007, 3).into_iter().enumerate() {
        for t in 0..40u64 {
            match frobenius_sample_derksen(p, 1000 * i as u64 + t) {
                Ok(s) => samples.push(s),
                Err(e) => assert!(e.is_resample(), "{e}"),
            }
        }
    }
    assert!(samples.len() >= 100);
    for s in &samples {
        assert_eq!(s.permutation.len(), 6);
        assert!(s.blocks_preserved);
    }
    let v = identify_group(&samples, 6).unwrap();
    assert!(v.is_consistent(), "{}", v.summary());
    assert_eq!(v.group.as_deref(), Some("S4 on pairs"));
    assert!(v.coverage_complete);
}

fn d4_samples(family: Family, n: usize) -> Vec<ObservedSample> {
    let config = SamplingConfig {
        family,
        primes: primes_from(10007, 4),
        trials: n / 4,
        seed: 7,
        max_attempts: 8,
    };
    let report = run_sampling(&config);
    assert_eq!(report.errors, 0);
    report.records.into_iter().filter_map(|r| r.sample).collect()
}

fn check_d4(family: Family) {
    let samples = d4_samples(family, 400);
    assert!(samples.len() >= 400);
    let v = identify_group(&samples, 4).unwrap();
    assert!(v.is_consistent(), "{}", v.summary());
    assert!(!v.observed.contains_key(&ct(&[3, 1])));
    assert_eq!(v.group.as_deref(), Some("D4"));
    assert!(v.coverage_complete);
    let n = samples.len() as f64;
    for (t, expect) in [
        (ct(&[1, 1, 1, 1]), 1.0 / 8.0),
        (ct(&[2, 1, 1]), 2.0 / 8.0),
        (ct(&[2, 2]), 3.0 / 8.0),
        (ct(&[4]), 2.0 / 8.0),
    ] {
        let got = *v.observed.get(&t).unwrap_or(&0) as f64 / n;
        assert!((got - expect).abs() <= 0.15, "{t}: {got} vs {expect}");
    }
}

#[test]
fn d4_family_a() {
    check_d4(Family::D4a);
}

#[test]
fn d4_family_b() {
    check_d4(Family::D4b);
}

#[test]
fn single_d4_sample() {
    let s = frobenius_sample_d4(Family::D4a, 10007, 3).unwrap();
    assert_eq!(s.permutation.len(), 4);
    assert!(s.blocks_preserved);
}

#[test]
fn sampling_is_independent_of_thread_count() {
    let config = SamplingConfig {
        family: Family::Derksen,
        primes: primes_from(10007, 2),
        trials: 12,
        seed: 42,
        max_attempts: 8,
    };
    let run = |threads| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| run_sampling(&config))
    };
    let one = run(1);
    let four = run(4);
    assert_eq!(one, four);
    assert_eq!(
        serde_json::to_string(&one).unwrap(),
        serde_json::to_string(&four).unwrap()
    );
}
