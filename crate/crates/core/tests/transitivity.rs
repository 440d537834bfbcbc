use schubert_galois::counting::count_solutions;
use schubert_galois::partitions::{all_problems, parse_problem, GrassContext, Partition, SchubertProblem};
use schubert_galois::transitivity::{
    codim_table_consistent, enumerate_candidates, flag_schubert_dim, generic_meet, u_s_dimension, verdict_gr3,
    verdict_special, IndexDatum, Ruling,
};

fn subsets(m: usize, d: usize) -> Vec<Vec<usize>> {
    (0u32..1 << m)
        .map(|mask| (1..=m).filter(|j| mask >> (j - 1) & 1 == 1).collect::<Vec<_>>())
        .filter(|s| s.len() <= d)
        .collect()
}

/// dim U_S through the fibration U_S -> B_S, each piece a Schubert variety
/// in a flag manifold.
fn u_s_by_fibration(lam: &Partition, s: &[usize], d: usize, ctx: GrassContext) -> Option<i64> {
    let (k, n) = (ctx.k(), ctx.n());
    let m = lam.len();
    let meet = |j: usize| s.iter().filter(|&&x| x <= j).count();
    let a: Vec<usize> = (1..=m).map(|j| n - k + j - lam.part(j)).collect();
    let b: Vec<usize> = (1..=m).map(|j| 2 * j - meet(j)).collect();
    let fiber = flag_schubert_dim(&a, &b, n).unwrap()? as i64;
    let a: Vec<usize> = (1..=m).collect();
    let b: Vec<usize> = (1..=m).map(meet).collect();
    let half = flag_schubert_dim(&a, &b, k).unwrap()? as i64;
    let ell: i64 = (1..=s.len()).map(|i| (d - i) as i64).sum();
    Some(fiber + 2 * half + ell)
}

#[test]
fn components_formula_matches_fibration() {
    for (k, n) in [(2, 6), (3, 7), (3, 8), (4, 8), (4, 9)] {
        let ctx = GrassContext::new(k, n).unwrap();
        for lam in ctx.partitions() {
            if lam.is_empty() || lam.part(1) >= n - k || lam.part(k) > 0 {
                continue;
            }
            for d in 0..k {
                for s in subsets(lam.len(), d) {
                    let formula = u_s_dimension(&lam, &s, d, ctx).unwrap();
                    if let Some(v) = u_s_by_fibration(&lam, &s, d, ctx) {
                        assert_eq!(formula, v, "{lam} S={s:?} d={d} on {ctx}");
                    }
                }
            }
        }
    }
}

#[test]
fn empty_set_gives_expected_dimension() {
    let ctx = GrassContext::new(4, 9).unwrap();
    for lam in ctx.partitions().into_iter().filter(|l| l.part(1) < 5 && l.part(4) == 0) {
        let n = lam.flag_dimension(ctx).unwrap() as i64;
        for d in 0..4 {
            assert_eq!(u_s_dimension(&lam, &[], d, ctx).unwrap(), n - 2 * lam.weight() as i64);
        }
    }
}

#[test]
fn two_two_fourth_power_candidates() {
    let sp = parse_problem("4,8: (2,2)^4").unwrap();
    let c = enumerate_candidates(&sp);
    assert_eq!(c.len(), 2);
    assert!(c.contains(&IndexDatum::trivial(4)));
    assert!(c.contains(&IndexDatum {
        d: 2,
        sets: vec![vec![2]; 4]
    }));
}

fn special_problems(ctx: GrassContext) -> Vec<SchubertProblem> {
    fn parts(left: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for a in (1..=max.min(left)).rev() {
            cur.push(a);
            parts(left - a, a, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    parts(ctx.dim(), ctx.cols(), &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|p| SchubertProblem::special(ctx, &p).unwrap())
        .collect()
}

#[test]
fn every_reduced_special_problem_is_doubly_transitive() {
    let mut seen = 0;
    for n in 3..=8 {
        for k in 1..n.min(5) {
            let ctx = GrassContext::new(k, n).unwrap();
            for sp in special_problems(ctx) {
                if !sp.is_reduced().is_reduced() || count_solutions(&sp) < 2u32.into() {
                    continue;
                }
                let v = verdict_special(&sp).unwrap();
                assert!(v.is_doubly_transitive(), "{sp}: {:?}", v.unresolved);
                let b = generic_meet(ctx);
                assert!(v
                    .records
                    .iter()
                    .filter(|r| r.datum.d != b)
                    .all(|r| r.ruling != Ruling::Dense));
                if k == 2 {
                    assert!(enumerate_candidates(&sp)
                        .iter()
                        .all(|c| c.sets.iter().all(|s| s.is_empty() || s == &[1])));
                }
                seen += 1;
            }
        }
    }
    assert!(seen > 10);
}

#[test]
fn every_reduced_gr3_problem_is_doubly_transitive() {
    let mut seen = 0;
    for n in 4..=8 {
        let ctx = GrassContext::new(3, n).unwrap();
        for sp in all_problems(ctx) {
            if !sp.is_reduced().is_reduced() || count_solutions(&sp) < 2u32.into() {
                continue;
            }
            let v = verdict_gr3(&sp).unwrap();
            assert!(v.is_doubly_transitive(), "{sp}: {:?}", v.unresolved);
            if v.via_dual {
                assert!(n < 6);
                seen += 1;
                continue;
            }
            let dense = v.dense();
            let critical = sp.conditions().iter().position(|c| c.part(2) == n - 4);
            match critical {
                None => assert_eq!(dense, vec![&IndexDatum::trivial(sp.len())]),
                Some(i) => {
                    assert_eq!(dense.len(), 1);
                    assert_eq!(dense[0].d, 1);
                    assert_eq!(dense[0].positions_with(&[2]), vec![i]);
                }
            }
            seen += 1;
        }
    }
    assert!(seen > 10);
}

#[test]
fn codim_table_is_consistent() {
    for n in 6..=9 {
        let ctx = GrassContext::new(3, n).unwrap();
        for lam in ctx.partitions() {
            if lam.is_empty() || lam.part(1) >= n - 3 || lam.part(3) > 0 {
                continue;
            }
            assert!(codim_table_consistent(&lam, ctx).unwrap(), "{lam} on {ctx}");
        }
    }
}
