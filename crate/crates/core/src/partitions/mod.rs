//! Partitions, Grassmannian contexts and Schubert problems.
//!
//! A partition is stored without trailing zeros and is not tied to a box;
//! whether it fits `k x (n-k)` is checked against a [`GrassContext`] at the
//! point of use, since reductions move partitions between Grassmannians.

mod notation;

use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use notation::{parse_problem, NotationError, ProblemJson};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts {0:?} are not weakly decreasing")]
    NotDecreasing(Vec<usize>),
    #[error("invalid Grassmannian Gr({k},{n}): need 0 < k < n")]
    BadContext { k: usize, n: usize },
    #[error("partition {partition} does not fit the {rows}x{cols} box")]
    OutsideBox {
        partition: Partition,
        rows: usize,
        cols: usize,
    },
    #[error("codimensions sum to {total}, expected k(n-k) = {expected}")]
    CodimensionMismatch { total: usize, expected: usize },
}

/// A weakly decreasing sequence of nonnegative integers, trailing zeros removed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: impl Into<Vec<usize>>) -> Result<Self, PartitionError> {
        let mut parts = parts.into();
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(PartitionError::NotDecreasing(parts));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition { parts })
    }

    pub fn empty() -> Self {
        Partition { parts: Vec::new() }
    }

    /// Single-row partition `(a)`.
    pub fn special(a: usize) -> Self {
        Partition::new(vec![a]).expect("single row")
    }

    /// Single-column partition `(1^b)`.
    pub fn dual_special(b: usize) -> Self {
        Partition { parts: vec![1; b] }
    }

    /// Full `rows x cols` rectangle.
    pub fn rectangle(rows: usize, cols: usize) -> Self {
        if cols == 0 {
            return Partition::empty();
        }
        Partition {
            parts: vec![cols; rows],
        }
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// The `i`-th part, 1-based; zero past the last nonzero part.
    pub fn part(&self, i: usize) -> usize {
        debug_assert!(i >= 1);
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    /// Index of the last nonzero part.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Codimension `|λ|`.
    pub fn weight(&self) -> usize {
        self.parts.iter().sum()
    }

    /// Conjugate partition (column lengths).
    pub fn transpose(&self) -> Partition {
        let width = self.parts.first().copied().unwrap_or(0);
        let parts = (1..=width)
            .map(|c| self.parts.iter().take_while(|&&p| p >= c).count())
            .collect();
        Partition { parts }
    }

    pub fn fits(&self, ctx: GrassContext) -> bool {
        self.parts.len() <= ctx.k && self.part(1) <= ctx.cols()
    }

    pub fn check_fits(&self, ctx: GrassContext) -> Result<(), PartitionError> {
        if self.fits(ctx) {
            Ok(())
        } else {
            Err(PartitionError::OutsideBox {
                partition: self.clone(),
                rows: ctx.k,
                cols: ctx.cols(),
            })
        }
    }

    pub fn is_special(&self) -> bool {
        self.parts.len() == 1
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.parts.len() <= self.parts.len() && other.parts.iter().zip(&self.parts).all(|(o, s)| o <= s)
    }

    /// Dimension `N(λ)` of the partial flag manifold `Fℓ(λ, V)` carrying the
    /// subspaces `F_{n-k+j-λ_j}`, `j = 1..m`, that define the Schubert variety.
    pub fn flag_dimension(&self, ctx: GrassContext) -> Result<usize, PartitionError> {
        self.check_fits(ctx)?;
        let (k, n) = (ctx.k, ctx.n);
        let m = self.len();
        if m == 0 {
            return Ok(0);
        }
        let first = self.part(1);
        let mut dim = (n - k + 1 - first) * (k + first - 1);
        for j in 2..=m {
            let (prev, cur) = (self.part(j - 1), self.part(j));
            dim += (prev - cur + 1) * (k + cur - j);
        }
        Ok(dim)
    }

    pub(crate) fn from_sorted_unchecked(parts: Vec<usize>) -> Self {
        debug_assert!(parts.windows(2).all(|w| w[0] >= w[1]));
        debug_assert!(parts.last() != Some(&0));
        Partition { parts }
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = PartitionError;

    fn try_from(parts: Vec<usize>) -> Result<Self, Self::Error> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Self {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, ")")
    }
}

/// The Grassmannian `Gr(k, n)` of `k`-planes in an `n`-dimensional space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct GrassContext {
    k: usize,
    n: usize,
}

impl GrassContext {
    pub fn new(k: usize, n: usize) -> Result<Self, PartitionError> {
        if k == 0 || k >= n {
            return Err(PartitionError::BadContext { k, n });
        }
        Ok(GrassContext { k, n })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Width `n - k` of the box.
    pub fn cols(&self) -> usize {
        self.n - self.k
    }

    /// `dim Gr(k, n) = k(n-k)`.
    pub fn dim(&self) -> usize {
        self.k * (self.n - self.k)
    }

    pub fn dual(&self) -> GrassContext {
        GrassContext {
            k: self.n - self.k,
            n: self.n,
        }
    }

    /// The point class `((n-k)^k)`.
    pub fn full_box(&self) -> Partition {
        Partition::rectangle(self.k, self.cols())
    }

    /// All partitions fitting the box, including the empty one, ordered by
    /// weight and then lexicographically.
    pub fn partitions(&self) -> Vec<Partition> {
        let mut out = Vec::new();
        let mut cur = Vec::new();
        box_partitions(self.k, self.cols(), &mut cur, &mut out);
        out.sort_by(|a, b| a.weight().cmp(&b.weight()).then_with(|| a.cmp(b)));
        out
    }
}

/// Every Schubert problem on `ctx`, each multiset of conditions
/// listed once. Grows quickly; intended for small Grassmannians.
pub fn all_problems(ctx: GrassContext) -> Vec<SchubertProblem> {
    let shapes: Vec<Partition> = ctx.partitions().into_iter().filter(|p| !p.is_empty()).collect();
    let mut out = Vec::new();
    let mut cur = Vec::new();
    multisets(&shapes, shapes.len(), ctx.dim(), &mut cur, &mut out, ctx);
    out
}

fn multisets(
    shapes: &[Partition],
    below: usize,
    left: usize,
    cur: &mut Vec<Partition>,
    out: &mut Vec<SchubertProblem>,
    ctx: GrassContext,
) {
    if left == 0 {
        out.push(SchubertProblem {
            ctx,
            conditions: cur.clone(),
        });
        return;
    }
    // indices taken in decreasing order so each multiset appears once
    for i in (0..below).rev() {
        let w = shapes[i].weight();
        if w <= left {
            cur.push(shapes[i].clone());
            multisets(shapes, i + 1, left - w, cur, out, ctx);
            cur.pop();
        }
    }
}

fn box_partitions(rows: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
    out.push(Partition::from_sorted_unchecked(cur.clone()));
    if cur.len() == rows {
        return;
    }
    for p in 1..=max {
        cur.push(p);
        box_partitions(rows, p, cur, out);
        cur.pop();
    }
}

impl fmt::Display for GrassContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Gr({},{})", self.k, self.n)
    }
}

/// An ordered list of Schubert conditions on `Gr(k, n)` whose codimensions
/// add up to `k(n-k)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "ProblemJson", into = "ProblemJson")]
pub struct SchubertProblem {
    ctx: GrassContext,
    conditions: Vec<Partition>,
}

impl SchubertProblem {
    pub fn new(ctx: GrassContext, conditions: Vec<Partition>) -> Result<Self, PartitionError> {
        for c in &conditions {
            c.check_fits(ctx)?;
        }
        let total: usize = conditions.iter().map(Partition::weight).sum();
        if total != ctx.dim() {
            return Err(PartitionError::CodimensionMismatch {
                total,
                expected: ctx.dim(),
            });
        }
        Ok(SchubertProblem { ctx, conditions })
    }

    /// Special problem `(a_1, ..., a_s)` on `Gr(k, n)`.
    pub fn special(ctx: GrassContext, parts: &[usize]) -> Result<Self, PartitionError> {
        let conditions = parts
            .iter()
            .filter(|&&a| a > 0)
            .map(|&a| Partition::special(a))
            .collect();
        SchubertProblem::new(ctx, conditions)
    }

    pub fn context(&self) -> GrassContext {
        self.ctx
    }

    pub fn conditions(&self) -> &[Partition] {
        &self.conditions
    }

    pub fn len(&self) -> usize {
        self.conditions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.conditions.is_empty()
    }

    pub fn is_special(&self) -> bool {
        self.conditions.iter().all(Partition::is_special)
    }

    /// Row lengths `a_i` of a special problem, in list order.
    pub fn special_parts(&self) -> Option<Vec<usize>> {
        self.is_special()
            .then(|| self.conditions.iter().map(|c| c.part(1)).collect())
    }

    /// `N(𝛌) = Σ N(λ^i)`, the dimension of the space of flag tuples.
    pub fn flag_dimension(&self) -> usize {
        self.conditions
            .iter()
            .map(|c| c.flag_dimension(self.ctx).expect("validated"))
            .sum()
    }

    /// Conditions sorted decreasingly; equal for problems differing by order.
    pub fn canonical_key(&self) -> Vec<Partition> {
        let mut key = self.conditions.clone();
        key.sort_by(|a, b| b.cmp(a));
        key
    }

    pub fn canonical(&self) -> SchubertProblem {
        SchubertProblem {
            ctx: self.ctx,
            conditions: self.canonical_key(),
        }
    }

    /// The equivalent problem on `Gr(n-k, n)` with every condition transposed.
    pub fn dualize(&self) -> SchubertProblem {
        SchubertProblem {
            ctx: self.ctx.dual(),
            conditions: self.conditions.iter().map(Partition::transpose).collect(),
        }
    }

    /// Checks every clause of the reducedness definition; the report lists
    /// all violations in scan order.
    pub fn is_reduced(&self) -> ReducedReport {
        ReducedReport {
            violations: reduced_violations(self.ctx.k, self.ctx.n, &self.conditions),
        }
    }
}

impl fmt::Display for SchubertProblem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}: ", self.ctx.k, self.ctx.n)?;
        let mut first = true;
        let mut i = 0;
        while i < self.conditions.len() {
            let c = &self.conditions[i];
            let run = self.conditions[i..].iter().take_while(|x| *x == c).count();
            if !first {
                write!(f, "*")?;
            }
            first = false;
            if run > 1 {
                write!(f, "{c}^{run}")?;
            } else {
                write!(f, "{c}")?;
            }
            i += run;
        }
        Ok(())
    }
}

/// Which clause of the reducedness definition fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Clause {
    /// `μ_1 = n-k`
    A,
    /// `μ_k > 0`
    B,
    /// `μ_i + ν_{k+1-i} ≥ n-k`
    C,
    /// `μ_i + ν_{k-i} > n-k`, `i < k`
    D,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Violation {
    pub clause: Clause,
    /// Position of `μ` in the condition list.
    pub mu: usize,
    /// Position of `ν` for the pair clauses.
    pub nu: Option<usize>,
    /// The row index `i` (1-based) for the pair clauses.
    pub row: Option<usize>,
    /// For clause (c): whether the inequality is strict (empty intersection).
    pub strict: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReducedReport {
    pub violations: Vec<Violation>,
}

impl ReducedReport {
    pub fn is_reduced(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn first(&self) -> Option<&Violation> {
        self.violations.first()
    }
}

/// Pairs range over distinct positions in the list (two copies of the same
/// partition still count as a pair, as they come from different flags).
pub(crate) fn reduced_violations(k: usize, n: usize, conds: &[Partition]) -> Vec<Violation> {
    let cols = n - k;
    let mut out = Vec::new();
    for (i, mu) in conds.iter().enumerate() {
        if mu.part(1) == cols && cols > 0 {
            out.push(Violation {
                clause: Clause::A,
                mu: i,
                nu: None,
                row: None,
                strict: false,
            });
        }
    }
    for (i, mu) in conds.iter().enumerate() {
        if mu.part(k) > 0 {
            out.push(Violation {
                clause: Clause::B,
                mu: i,
                nu: None,
                row: None,
                strict: false,
            });
        }
    }
    for (a, mu) in conds.iter().enumerate() {
        for (b, nu) in conds.iter().enumerate() {
            if a == b {
                continue;
            }
            for row in 1..=k {
                let sum = mu.part(row) + nu.part(k + 1 - row);
                if sum >= cols {
                    out.push(Violation {
                        clause: Clause::C,
                        mu: a,
                        nu: Some(b),
                        row: Some(row),
                        strict: sum > cols,
                    });
                }
            }
        }
    }
    for (a, mu) in conds.iter().enumerate() {
        for (b, nu) in conds.iter().enumerate() {
            if a == b {
                continue;
            }
            for row in 1..k {
                if mu.part(row) + nu.part(k - row) > cols {
                    out.push(Violation {
                        clause: Clause::D,
                        mu: a,
                        nu: Some(b),
                        row: Some(row),
                        strict: true,
                    });
                }
            }
        }
    }
    out
}

/// Whether two conditions at distinct positions are compatible with
/// reducedness (neither clause (c) nor (d) fires in either order).
pub(crate) fn pair_is_reduced(k: usize, n: usize, mu: &Partition, nu: &Partition) -> bool {
    let cols = n - k;
    let one_way = |x: &Partition, y: &Partition| {
        (1..=k).all(|i| x.part(i) + y.part(k + 1 - i) < cols) && (1..k).all(|i| x.part(i) + y.part(k - i) <= cols)
    };
    one_way(mu, nu) && one_way(nu, mu)
}

/// Whether a single condition passes clauses (a) and (b).
pub(crate) fn single_is_reduced(k: usize, n: usize, mu: &Partition) -> bool {
    mu.part(1) < n - k && mu.part(k) == 0
}

impl PartialOrd for SchubertProblem {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for SchubertProblem {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ctx
            .cmp(&other.ctx)
            .then_with(|| self.conditions.cmp(&other.conditions))
    }
}
