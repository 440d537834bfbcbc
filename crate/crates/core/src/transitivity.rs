//! Excess components of the pairs-of-solutions space and double
//! transitivity verdicts.
//!
//! For `(H_1, H_2)` with `dim H_1 ∩ H_2 = d`, the flags of type `λ` meeting
//! both planes split into pieces `U_S`, `S ⊆ [m]`, `|S| ≤ d`. A choice of one
//! piece per condition is an [`IndexDatum`]; it can carry a component of full
//! dimension only when its excess sum equals `d(n-2k+d)`. The verdicts below
//! rule out every such component except one.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::count_solutions;
use crate::partitions::{GrassContext, Partition, SchubertProblem};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TransitivityError {
    #[error("flag types must have equal length with a strictly and b weakly increasing, a_m <= n")]
    MalformedFlagTypes,
    #[error("index set {set:?} is not a subset of [{m}] of size at most d = {d}")]
    BadIndexSet { set: Vec<usize>, m: usize, d: usize },
    #[error("d = {d} must satisfy 0 <= d < k = {k}")]
    BadDimension { d: usize, k: usize },
    #[error("{0} does not satisfy the reduced-compatible bounds lambda_1 < n-k, lambda_k = 0")]
    NotReducedCompatible(Partition),
    #[error("{0}")]
    Precondition(String),
}

/// `dim X(ℓ_•)` for flags of type `a` containing a fixed flag of type `b` in
/// an `n`-dimensional space; `None` when that Schubert variety is empty.
pub fn flag_schubert_dim(a: &[usize], b: &[usize], n: usize) -> Result<Option<usize>, TransitivityError> {
    if a.len() != b.len()
        || a.windows(2).any(|w| w[0] >= w[1])
        || b.windows(2).any(|w| w[0] > w[1])
        || a.last().is_some_and(|&x| x > n)
    {
        return Err(TransitivityError::MalformedFlagTypes);
    }
    let mut dim = 0;
    let (mut pa, mut pb) = (0, 0);
    for (&aj, &bj) in a.iter().zip(b) {
        if aj - pa < bj - pb {
            return Ok(None);
        }
        dim += (n - aj) * ((aj - pa) - (bj - pb));
        pa = aj;
        pb = bj;
    }
    Ok(Some(dim))
}

/// `Σ_{j∈S} (λ_j - k + d + |[j] \ S|)` for a sorted 1-based set `S`.
pub fn excess_contribution(lambda: &Partition, set: &[usize], k: usize, d: usize) -> i64 {
    set.iter()
        .enumerate()
        .map(|(pos, &j)| {
            let outside = (j - 1 - pos) as i64;
            lambda.part(j) as i64 - k as i64 + d as i64 + outside
        })
        .sum()
}

fn check_set(lambda: &Partition, set: &[usize], d: usize) -> Result<(), TransitivityError> {
    let m = lambda.len();
    if set.len() > d || set.windows(2).any(|w| w[0] >= w[1]) || set.iter().any(|&j| j == 0 || j > m) {
        return Err(TransitivityError::BadIndexSet {
            set: set.to_vec(),
            m,
            d,
        });
    }
    Ok(())
}

/// `dim U_S = N(λ) - 2|λ| + Σ_{j∈S} (λ_j - k + d + |[j] \ S|)`.
pub fn u_s_dimension(lambda: &Partition, set: &[usize], d: usize, ctx: GrassContext) -> Result<i64, TransitivityError> {
    let k = ctx.k();
    if d >= k {
        return Err(TransitivityError::BadDimension { d, k });
    }
    if lambda.part(1) >= ctx.cols() || lambda.part(k) > 0 {
        return Err(TransitivityError::NotReducedCompatible(lambda.clone()));
    }
    check_set(lambda, set, d)?;
    let n_lambda = lambda.flag_dimension(ctx).expect("fits") as i64;
    Ok(n_lambda - 2 * lambda.weight() as i64 + excess_contribution(lambda, set, k, d))
}

/// One piece `U_{S^i}` per condition, over pairs meeting in dimension `d`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct IndexDatum {
    pub d: usize,
    /// `S^i` as sorted 1-based row indices.
    pub sets: Vec<Vec<usize>>,
}

impl IndexDatum {
    pub fn trivial(s: usize) -> Self {
        IndexDatum {
            d: 0,
            sets: vec![Vec::new(); s],
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.sets.iter().all(Vec::is_empty)
    }

    /// Positions `i` with `S^i = set`.
    pub fn positions_with(&self, set: &[usize]) -> Vec<usize> {
        (0..self.sets.len()).filter(|&i| self.sets[i] == set).collect()
    }

    /// Left side of the excess equation.
    pub fn excess(&self, sp: &SchubertProblem) -> i64 {
        let k = sp.context().k();
        sp.conditions()
            .iter()
            .zip(&self.sets)
            .map(|(lam, set)| excess_contribution(lam, set, k, self.d))
            .sum()
    }

    /// `dim 𝒞_{S,d} - N(𝛌)`.
    pub fn dimension_offset(&self, sp: &SchubertProblem) -> i64 {
        self.excess(sp) - excess_target(sp.context(), self.d)
    }
}

impl fmt::Display for IndexDatum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, s) in self.sets.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            if s.is_empty() {
                write!(f, "∅")?;
            } else {
                let inner: Vec<String> = s.iter().map(usize::to_string).collect();
                write!(f, "{{{}}}", inner.join(","))?;
            }
        }
        write!(f, "; d={})", self.d)
    }
}

/// `d(n - 2k + d)`, the codimension of the stratum `dim H_1 ∩ H_2 = d`.
pub fn excess_target(ctx: GrassContext, d: usize) -> i64 {
    let (n, k, d) = (ctx.n() as i64, ctx.k() as i64, d as i64);
    d * (n - 2 * k + d)
}

/// Whether `𝒞_{S,d}` has the dimension of the space of flag tuples.
pub fn excess_condition(sp: &SchubertProblem, idx: &IndexDatum) -> Result<bool, TransitivityError> {
    let k = sp.context().k();
    if idx.d >= k {
        return Err(TransitivityError::BadDimension { d: idx.d, k });
    }
    if idx.sets.len() != sp.len() {
        return Err(TransitivityError::Precondition(format!(
            "index has {} sets for {} conditions",
            idx.sets.len(),
            sp.len()
        )));
    }
    for (lam, set) in sp.conditions().iter().zip(&idx.sets) {
        check_set(lam, set, idx.d)?;
    }
    Ok(idx.dimension_offset(sp) == 0)
}

/// `max{0, 2k - n}`, the generic dimension of `H_1 ∩ H_2`.
pub fn generic_meet(ctx: GrassContext) -> usize {
    (2 * ctx.k()).saturating_sub(ctx.n())
}

/// Subsets of `[m]` of size at most `d`, each sorted.
fn small_subsets(m: usize, d: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for j in 1..=m {
        let grown: Vec<Vec<usize>> = out
            .iter()
            .filter(|s| s.len() < d)
            .map(|s| {
                let mut t = s.clone();
                t.push(j);
                t
            })
            .collect();
        out.extend(grown);
    }
    out.sort();
    out
}

/// Every `(S, d)`, `0 <= d < k`, satisfying the excess equation.
///
/// Depth-first over the conditions with the range of sums still reachable
/// from the remaining conditions used to cut branches.
pub fn enumerate_candidates(sp: &SchubertProblem) -> Vec<IndexDatum> {
    (0..sp.context().k()).flat_map(|d| candidates_at(sp, d)).collect()
}

pub fn candidates_at(sp: &SchubertProblem, d: usize) -> Vec<IndexDatum> {
    let k = sp.context().k();
    let conds = sp.conditions();
    let options: Vec<Vec<(Vec<usize>, i64)>> = conds
        .iter()
        .map(|lam| {
            small_subsets(lam.len(), d)
                .into_iter()
                .map(|s| {
                    let c = excess_contribution(lam, &s, k, d);
                    (s, c)
                })
                .collect()
        })
        .collect();
    let s = conds.len();
    let mut lo = vec![0i64; s + 1];
    let mut hi = vec![0i64; s + 1];
    for i in (0..s).rev() {
        lo[i] = lo[i + 1] + options[i].iter().map(|o| o.1).min().unwrap();
        hi[i] = hi[i + 1] + options[i].iter().map(|o| o.1).max().unwrap();
    }
    let target = excess_target(sp.context(), d);
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(s);
    search(0, 0, target, &options, &lo, &hi, &mut cur, &mut |sets| {
        out.push(IndexDatum { d, sets: sets.to_vec() })
    });
    out
}

#[allow(clippy::too_many_arguments)]
fn search(
    i: usize,
    acc: i64,
    target: i64,
    options: &[Vec<(Vec<usize>, i64)>],
    lo: &[i64],
    hi: &[i64],
    cur: &mut Vec<Vec<usize>>,
    emit: &mut dyn FnMut(&[Vec<usize>]),
) {
    if acc + lo[i] > target || acc + hi[i] < target {
        return;
    }
    if i == options.len() {
        emit(cur);
        return;
    }
    for (set, c) in &options[i] {
        cur.push(set.clone());
        search(i + 1, acc + c, target, options, lo, hi, cur, emit);
        cur.pop();
    }
}

/// One component of `Ψ_a H_1 ∩ Ψ_a H_2`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialComponent {
    pub dimension: i64,
    /// The component of `K` meeting `H_1 ∩ H_2`.
    pub meets_intersection: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecialComponents {
    pub components: Vec<SpecialComponent>,
    pub irreducible: bool,
}

/// Components of `Ψ_a H_1 ∩ Ψ_a H_2` for `dim H_1 ∩ H_2 = d`, with
/// `N(a) = (n-k+1-a)(k-1+a)`.
pub fn special_components(a: usize, d: usize, ctx: GrassContext) -> Result<SpecialComponents, TransitivityError> {
    let (k, n) = (ctx.k(), ctx.n());
    if d >= k {
        return Err(TransitivityError::BadDimension { d, k });
    }
    if a == 0 || a > n - k {
        return Err(TransitivityError::Precondition(format!(
            "need 1 <= a <= n-k, got a = {a}"
        )));
    }
    let na = ((n - k + 1 - a) * (k - 1 + a)) as i64;
    let generic = SpecialComponent {
        dimension: na - 2 * a as i64,
        meets_intersection: false,
    };
    if d == 0 || a + d < k {
        return Ok(SpecialComponents {
            components: vec![generic],
            irreducible: true,
        });
    }
    let excess = SpecialComponent {
        dimension: na - a as i64 - (k - d) as i64,
        meets_intersection: true,
    };
    Ok(SpecialComponents {
        components: vec![generic, excess],
        irreducible: false,
    })
}

/// Why a candidate cannot be the dense component of the pairs space.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Ruling {
    /// The component over the generic stratum; it is the one that survives.
    Dense,
    /// Over `d < max{0, 2k-n}` there are no pairs of planes.
    EmptyStratum,
    /// For flags in general position the required Schubert intersection is
    /// empty: `available < required`.
    Nonempty { available: i64, required: i64 },
    /// Nonemptiness forces a reducedness violation at these positions.
    ForcesNonReduced { positions: Vec<usize>, detail: String },
    /// `H ∈ Ω_μ` with `μ_2 = n-4` forces `dim H_1 ∩ H_2 >= 1`.
    MeetForced { position: usize },
    /// The conditions on `L = H_1 ∩ H_2` and `M = ⟨H_1, H_2⟩` cannot both
    /// be satisfiable: `|S_{1}| + 2|S_{12}| <= 2` against `>= 3 + |S_∅|`.
    LineAndSpan {
        l_available: i64,
        l_required: i64,
        m_available: i64,
        m_required: i64,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub datum: IndexDatum,
    pub ruling: Ruling,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum VerdictKind {
    DoublyTransitive,
    CandidatesOnly,
    /// A candidate could not be ruled out; the argument does not go through.
    Fail,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Verdict {
    pub kind: VerdictKind,
    pub records: Vec<CandidateRecord>,
    /// Candidates the argument could not rule out, beyond the dense one.
    pub unresolved: Vec<IndexDatum>,
    /// The records refer to the dual problem on `Gr(n-k, n)`.
    #[serde(default)]
    pub via_dual: bool,
}

impl Verdict {
    pub fn is_doubly_transitive(&self) -> bool {
        self.kind == VerdictKind::DoublyTransitive
    }

    pub fn dense(&self) -> Vec<&IndexDatum> {
        self.records
            .iter()
            .filter(|r| r.ruling == Ruling::Dense)
            .map(|r| &r.datum)
            .collect()
    }
}

fn gate(sp: &SchubertProblem) -> Result<(), TransitivityError> {
    if !sp.is_reduced().is_reduced() {
        return Err(TransitivityError::Precondition(format!("{sp} is not reduced")));
    }
    if count_solutions(sp) < 2u32.into() {
        return Err(TransitivityError::Precondition(format!(
            "{sp} has fewer than two solutions"
        )));
    }
    Ok(())
}

/// Replays the special-problem argument: over the generic stratum the pairs
/// space has one component; every full-dimensional candidate over a larger
/// meet either fails the nonemptiness bound in `Gr(d, n)` or forces some
/// `a_i >= n-k`.
pub fn verdict_special(sp: &SchubertProblem) -> Result<Verdict, TransitivityError> {
    let a = sp
        .special_parts()
        .ok_or_else(|| TransitivityError::Precondition(format!("{sp} is not special")))?;
    gate(sp)?;
    let ctx = sp.context();
    let (k, n) = (ctx.k() as i64, ctx.n() as i64);
    let b = generic_meet(ctx);
    let mut records = Vec::new();
    let mut unresolved = Vec::new();
    for idx in enumerate_candidates(sp) {
        let ruling = if idx.d < b {
            Ruling::EmptyStratum
        } else if idx.d == b {
            if idx.is_trivial() {
                Ruling::Dense
            } else {
                unresolved.push(idx.clone());
                continue;
            }
        } else {
            let d = idx.d as i64;
            let t = idx.positions_with(&[1]);
            let required: i64 = t.iter().map(|&i| a[i] as i64 + k - d).sum();
            let available = d * (n - d);
            if available < required {
                Ruling::Nonempty { available, required }
            } else {
                // available >= required and the excess equation give |T| <= d,
                // hence d·(A-k+d) >= d(n-2k+d) for A the largest a_i on T
                let max_pos = t.iter().copied().max_by_key(|&i| (a[i], std::cmp::Reverse(i)));
                match max_pos {
                    Some(i) if t.len() as i64 <= d && a[i] as i64 >= n - k => Ruling::ForcesNonReduced {
                        positions: vec![i],
                        detail: format!("a_{} = {} >= n-k = {}", i + 1, a[i], n - k),
                    },
                    _ => {
                        unresolved.push(idx.clone());
                        continue;
                    }
                }
            }
        };
        records.push(CandidateRecord { datum: idx, ruling });
    }
    let dense = records.iter().filter(|r| r.ruling == Ruling::Dense).count();
    let kind = if unresolved.is_empty() && dense == 1 {
        VerdictKind::DoublyTransitive
    } else {
        VerdictKind::Fail
    };
    Ok(Verdict {
        kind,
        records,
        unresolved,
        via_dual: false,
    })
}

/// `(Σ_{S_{1}} (λ_1+1) + Σ_{S_{2}} λ_2 + Σ_{S_{12}} (λ_1+λ_2+2), 2(n-2))`:
/// codimension of the conditions on `L` and `dim Gr(2, n)`.
pub fn line_requirement(sp: &SchubertProblem, idx: &IndexDatum) -> (i64, i64) {
    let n = sp.context().n() as i64;
    let req = sp
        .conditions()
        .iter()
        .zip(&idx.sets)
        .map(|(lam, s)| {
            let (l1, l2) = (lam.part(1) as i64, lam.part(2) as i64);
            match s.as_slice() {
                [] => 0,
                [1] => l1 + 1,
                [2] => l2,
                _ => l1 + l2 + 2,
            }
        })
        .sum();
    (req, 2 * (n - 2))
}

/// `(2Σ_{S_∅}(λ_1+λ_2+1) + Σ_{S_{1}}(λ_1+2λ_2-1) + Σ_{S_{2}}(2λ_1+λ_2)
/// + Σ_{S_{12}}(λ_1+λ_2-2), 4(n-4))`: codimension of the conditions on `M`
/// and `dim Gr(4, n)`.
pub fn span_requirement(sp: &SchubertProblem, idx: &IndexDatum) -> (i64, i64) {
    let n = sp.context().n() as i64;
    let req = sp
        .conditions()
        .iter()
        .zip(&idx.sets)
        .map(|(lam, s)| {
            let (l1, l2) = (lam.part(1) as i64, lam.part(2) as i64);
            match s.as_slice() {
                [] => 2 * (l1 + l2 + 1),
                [1] => l1 + 2 * l2 - 1,
                [2] => 2 * l1 + l2,
                _ => l1 + l2 - 2,
            }
        })
        .sum();
    (req, 4 * (n - 4))
}

/// Replays the `Gr(3, n)` argument stratum by stratum.
///
/// * `d = 0`: the trivial datum is dense unless some `μ_2 = n-4`, which
///   forces every pair of solutions to meet.
/// * `d = 1`: nonemptiness of the conditions on the common line gives
///   `2 >= 2|S_{1}| + |S_{2}|`; every option but `S = {2}` at the unique
///   `μ_2 = n-4` then breaks reducedness.
/// * `d = 2`: the conditions on `L` and on `M` cannot both be nonempty.
///
/// The argument needs pairs of 3-planes to be generically disjoint, so
/// `n >= 6`. For `n < 6` the dual problem lives on `Gr(n-3, n)` with
/// `n-3 <= 2`, where every reduced problem is special; that verdict is
/// returned with `via_dual` set.
pub fn verdict_gr3(sp: &SchubertProblem) -> Result<Verdict, TransitivityError> {
    let ctx = sp.context();
    if ctx.k() != 3 {
        return Err(TransitivityError::Precondition(format!("{ctx} is not a Gr(3,n)")));
    }
    gate(sp)?;
    if generic_meet(ctx) > 0 {
        let mut v = verdict_special(&sp.dualize())?;
        v.via_dual = true;
        return Ok(v);
    }
    let n = ctx.n();
    let conds = sp.conditions();
    let critical: Vec<usize> = (0..conds.len())
        .filter(|&i| n >= 4 && conds[i].part(2) == n - 4 && conds[i].part(2) > 0)
        .collect();
    if critical.len() > 1 {
        return Err(TransitivityError::Precondition(format!(
            "conditions {critical:?} all have mu_2 = n-4; impossible for a reduced problem"
        )));
    }
    let b = generic_meet(ctx);
    let mut records = Vec::new();
    let mut unresolved = Vec::new();
    for idx in enumerate_candidates(sp) {
        let ruling = match idx.d {
            d if d < b => Some(Ruling::EmptyStratum),
            0 => match critical.first() {
                Some(&p) => Some(Ruling::MeetForced { position: p }),
                None if idx.is_trivial() => Some(Ruling::Dense),
                None => None,
            },
            1 => rule_gr3_line(sp, &idx, &critical),
            _ => {
                let (l_required, l_available) = line_requirement(sp, &idx);
                let (m_required, m_available) = span_requirement(sp, &idx);
                (l_required > l_available || m_required > m_available).then_some(Ruling::LineAndSpan {
                    l_available,
                    l_required,
                    m_available,
                    m_required,
                })
            }
        };
        match ruling {
            Some(ruling) => records.push(CandidateRecord { datum: idx, ruling }),
            None => unresolved.push(idx),
        }
    }
    let dense = records.iter().filter(|r| r.ruling == Ruling::Dense).count();
    let kind = if unresolved.is_empty() && dense == 1 {
        VerdictKind::DoublyTransitive
    } else {
        VerdictKind::Fail
    };
    Ok(Verdict {
        kind,
        records,
        unresolved,
        via_dual: false,
    })
}

fn rule_gr3_line(sp: &SchubertProblem, idx: &IndexDatum, critical: &[usize]) -> Option<Ruling> {
    let n = sp.context().n() as i64;
    let conds = sp.conditions();
    let s1 = idx.positions_with(&[1]);
    let s2 = idx.positions_with(&[2]);
    let required: i64 = s1.iter().map(|&i| conds[i].part(1) as i64 + 2).sum::<i64>()
        + s2.iter().map(|&i| conds[i].part(2) as i64 + 1).sum::<i64>();
    if required > n - 1 {
        return Some(Ruling::Nonempty {
            available: n - 1,
            required,
        });
    }
    match (s1.as_slice(), s2.as_slice()) {
        ([], [i]) if critical == [*i] => Some(Ruling::Dense),
        ([i], []) if conds[*i].part(1) as i64 >= n - 3 => Some(Ruling::ForcesNonReduced {
            positions: vec![*i],
            detail: format!("lambda_1 = {} = n-3", conds[*i].part(1)),
        }),
        ([], [i, j]) if (conds[*i].part(2) + conds[*j].part(2)) as i64 >= n - 3 => Some(Ruling::ForcesNonReduced {
            positions: vec![*i, *j],
            detail: format!("lambda_2 + lambda_2' = {} = n-3", conds[*i].part(2) + conds[*j].part(2)),
        }),
        _ => None,
    }
}

/// Dispatches to the argument that applies; other problems get their
/// candidates reported without a ruling.
pub fn verdict(sp: &SchubertProblem) -> Result<Verdict, TransitivityError> {
    if sp.is_special() {
        return verdict_special(sp);
    }
    if sp.context().k() == 3 {
        return verdict_gr3(sp);
    }
    gate(sp)?;
    Ok(Verdict {
        kind: VerdictKind::CandidatesOnly,
        records: Vec::new(),
        unresolved: enumerate_candidates(sp),
        via_dual: false,
    })
}

/// Conditions on `L = H_1 ∩ H_2 ∈ Gr(2, n)` and `M = ⟨H_1, H_2⟩ ∈ Gr(4, n)`
/// imposed by a flag in `U_S(λ, H_1, H_2)`, `k = 3`, `d = 2`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodimTableRow {
    pub set: Vec<usize>,
    pub mu: Partition,
    pub nu: Partition,
    pub a: usize,
}

/// The four rows `S = ∅, {1}, {2}, {1,2}` for `λ = (λ_1, λ_2)`, with
/// `a = max{λ_1, λ_2 + 1}`. Rows whose partitions would have a negative
/// part (`λ_2 = 0` and `S ∋ 2`) are omitted.
pub fn codim_table(lambda: &Partition) -> Vec<CodimTableRow> {
    let (l1, l2) = (lambda.part(1), lambda.part(2));
    let a = l1.max(l2 + 1);
    let p = |v: Vec<usize>| Partition::new(v).ok();
    let mut rows = Vec::new();
    let mut push = |set: Vec<usize>, mu: Option<Partition>, nu: Option<Partition>| {
        if let (Some(mu), Some(nu)) = (mu, nu) {
            rows.push(CodimTableRow { set, mu, nu, a });
        }
    };
    push(vec![], p(vec![0, 0]), p(vec![a, a, l2 + 1, l2 + 1]));
    push(vec![1], p(vec![l1 + 1, 0]), p(vec![a - 1, l2, l2, 0]));
    if l2 > 0 {
        push(vec![2], p(vec![l2, 0]), p(vec![l1, l1, l2, 0]));
        push(vec![1, 2], p(vec![l1 + 1, l2 + 1]), p(vec![l1 - 1, l2 - 1, 0, 0]));
    }
    rows
}

/// Checks the table against `dim U_S` at `k = 3`, `d = 2`. With
/// `e(S) = dim U_S - (N(λ) - 2|λ|)`:
///
/// * `|μ| - e(S) = 2[1 ∈ S] + 2[S = {1,2}]`,
/// * `|ν| + e(S) >= 2|λ| + 2 - 4[1 ∈ S] - 2[2 ∈ S]`, with equality when
///   `λ_1 > λ_2`.
///
/// Summed over the conditions these are exactly the two nonemptiness
/// inequalities used at `d = 2`.
pub fn codim_table_consistent(lambda: &Partition, ctx: GrassContext) -> Result<bool, TransitivityError> {
    if ctx.k() != 3 {
        return Err(TransitivityError::Precondition("the table is for Gr(3,n)".into()));
    }
    let base = u_s_dimension(lambda, &[], 2, ctx)?;
    let w = lambda.weight() as i64;
    for row in codim_table(lambda) {
        let e = u_s_dimension(lambda, &row.set, 2, ctx)? - base;
        let has1 = row.set.contains(&1) as i64;
        let has2 = row.set.contains(&2) as i64;
        let both = (row.set.len() == 2) as i64;
        if row.mu.weight() as i64 - e != 2 * has1 + 2 * both {
            return Ok(false);
        }
        let generic = 2 * w + 2 - 4 * has1 - 2 * has2;
        let m = row.nu.weight() as i64 + e;
        let strict_row = lambda.part(1) > lambda.part(2);
        if m < generic || (strict_row && m != generic) {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::parse_problem;

    fn p(v: &[usize]) -> Partition {
        Partition::new(v.to_vec()).unwrap()
    }

    #[test]
    fn xeldot_examples() {
        assert_eq!(flag_schubert_dim(&[2, 4], &[1, 3], 8).unwrap(), Some(6));
        assert_eq!(flag_schubert_dim(&[1, 2], &[0, 2], 8).unwrap(), None);
        assert_eq!(flag_schubert_dim(&[3], &[1], 7).unwrap(), Some(8));
        assert!(flag_schubert_dim(&[2, 2], &[0, 0], 5).is_err());
    }

    #[test]
    fn u_s_for_two_two() {
        let ctx = GrassContext::new(4, 8).unwrap();
        let tt = p(&[2, 2]);
        let n = tt.flag_dimension(ctx).unwrap() as i64;
        assert_eq!(u_s_dimension(&tt, &[], 2, ctx).unwrap(), n - 8);
        assert_eq!(u_s_dimension(&tt, &[2], 2, ctx).unwrap(), n - 7);
        assert!(u_s_dimension(&tt, &[1, 2], 1, ctx).is_err());
    }

    #[test]
    fn excess_for_two_two() {
        let sp = parse_problem("4,8: (2,2)^4").unwrap();
        let idx = IndexDatum {
            d: 2,
            sets: vec![vec![2]; 4],
        };
        assert!(excess_condition(&sp, &idx).unwrap());
        let idx = IndexDatum {
            d: 1,
            sets: vec![vec![1], vec![], vec![], vec![]],
        };
        assert!(!excess_condition(&sp, &idx).unwrap());
        let c = enumerate_candidates(&sp);
        assert_eq!(
            c,
            vec![
                IndexDatum::trivial(4),
                IndexDatum {
                    d: 2,
                    sets: vec![vec![2]; 4]
                }
            ]
        );
    }

    #[test]
    fn special_component_cases() {
        let ctx = GrassContext::new(4, 8).unwrap();
        let r = special_components(1, 3, ctx).unwrap();
        assert_eq!(r.components.len(), 2);
        assert_eq!(r.components[0].dimension, r.components[1].dimension);
        assert!(special_components(1, 2, ctx).unwrap().irreducible);
        assert!(special_components(3, 0, ctx).unwrap().irreducible);
    }

    #[test]
    fn special_verdicts() {
        let v = verdict_special(&parse_problem("2,4: (1)^4").unwrap()).unwrap();
        assert!(v.is_doubly_transitive());
        assert!(verdict_special(&parse_problem("4,8: (2,2)^4").unwrap()).is_err());
    }

    #[test]
    fn gr3_dichotomy() {
        let v = verdict_gr3(&parse_problem("3,6: (1)^9").unwrap()).unwrap();
        assert!(v.is_doubly_transitive());
        assert_eq!(v.dense(), vec![&IndexDatum::trivial(9)]);
        let sp = parse_problem("3,6: (2,2)*(1)^5").unwrap();
        let v = verdict_gr3(&sp).unwrap();
        assert!(v.is_doubly_transitive(), "{v:?}");
        assert_eq!(v.dense()[0].d, 1);
        assert_eq!(v.dense()[0].sets[0], vec![2]);
    }

    #[test]
    fn table_rows() {
        let rows = codim_table(&p(&[3, 1]));
        assert_eq!(rows[3].mu, p(&[4, 2]));
        assert_eq!(rows[0].nu, p(&[3, 3, 2, 2]));
        let ctx = GrassContext::new(3, 8).unwrap();
        assert!(codim_table_consistent(&p(&[3, 1]), ctx).unwrap());
        assert!(codim_table_consistent(&p(&[2, 2]), ctx).unwrap());
    }
}
