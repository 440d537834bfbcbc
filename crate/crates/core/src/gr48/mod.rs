//! Schubert problems on `Gr(4, 8)`: enumeration of the reduced ones, the
//! fourteen with imprimitive Galois groups, and finite-field constructions of
//! their solutions for Frobenius sampling.

mod sampling;
mod solvers;

use std::fmt;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::count_solutions;
use crate::fieldlinalg::FieldError;
use crate::partitions::{pair_is_reduced, single_is_reduced, GrassContext, Partition, SchubertProblem};

pub use sampling::{
    cycle_type_of, frobenius_sample_d4, frobenius_sample_derksen, identify_group, induced_pair_cycle_type,
    instance_seed, run_sampling, CatalogGroup, CycleType, Family, GroupVerdict, ObservedSample, SampleRecord,
    SampleReport, SamplingConfig, CATALOG,
};
pub use solvers::{
    solve_d4_family_a, solve_d4_family_b, solve_derksen, solve_gr24_four_lines, D4Solution, DerksenSolution,
    FamilyAData, FamilyBData, Gr24Solution,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Gr48Error {
    #[error("expected a problem on Gr(4,8), got {0}")]
    WrongContext(String),
    #[error("{0} is not reduced")]
    NotReduced(String),
    #[error("general position fails: {0}")]
    GeneralPosition(String),
    #[error("eliminant is not squarefree")]
    NotSquarefree,
    #[error("solution check failed: {0}")]
    Verification(String),
    #[error("cycle type {0:?} does not describe a permutation of 4 points")]
    BadCycleType(Vec<usize>),
    #[error("no samples to identify")]
    NoSamples,
    #[error(transparent)]
    Field(#[from] FieldError),
}

impl Gr48Error {
    /// Degenerate instances are redrawn rather than reported.
    pub fn is_resample(&self) -> bool {
        matches!(self, Gr48Error::GeneralPosition(_) | Gr48Error::NotSquarefree)
    }
}

/// Every reduced problem on `ctx` with at least `min_solutions` solutions,
/// each multiset of conditions once, sorted.
///
/// Reduced conditions fit in the `(k-1) × (n-k-1)` box, so the search runs
/// over multisets of those shapes with pairwise compatibility pruning.
pub fn enumerate_reduced(ctx: GrassContext, min_solutions: usize) -> Vec<SchubertProblem> {
    let (k, n) = (ctx.k(), ctx.n());
    let shapes: Vec<Partition> = ctx
        .partitions()
        .into_iter()
        .filter(|p| !p.is_empty() && single_is_reduced(k, n, p))
        .collect();
    let compat: Vec<Vec<bool>> = shapes
        .iter()
        .map(|a| shapes.iter().map(|b| pair_is_reduced(k, n, a, b)).collect())
        .collect();
    let mut lists = Vec::new();
    let mut cur = Vec::new();
    multisets(&shapes, &compat, shapes.len(), ctx.dim(), &mut cur, &mut lists);
    let min = BigUint::from(min_solutions);
    let mut out: Vec<SchubertProblem> = lists
        .into_par_iter()
        .filter_map(|idx| {
            let conds = idx.iter().map(|&i| shapes[i].clone()).collect();
            let sp = SchubertProblem::new(ctx, conds).expect("weights add up");
            (count_solutions(&sp) >= min).then(|| sp.canonical())
        })
        .collect();
    out.sort();
    out
}

fn multisets(
    shapes: &[Partition],
    compat: &[Vec<bool>],
    below: usize,
    left: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if left == 0 {
        out.push(cur.clone());
        return;
    }
    for i in (0..below).rev() {
        if shapes[i].weight() > left || !cur.iter().all(|&j| compat[i][j]) {
            continue;
        }
        cur.push(i);
        multisets(shapes, compat, i + 1, left - shapes[i].weight(), cur, out);
        cur.pop();
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Status {
    /// Recorded from the published analysis, not recomputed here.
    AtLeastAlternatingPerPaper,
    ImprimitiveS4OnPairs,
    ImprimitiveD4FamilyA,
    ImprimitiveD4FamilyB,
    UnresolvedByThisTool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemStatus {
    pub problem: SchubertProblem,
    #[serde(with = "crate::bigdec")]
    pub r: BigUint,
    pub status: Status,
}

impl fmt::Display for ProblemStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}  r={}  {:?}", self.problem, self.r, self.status)
    }
}

/// Conditions of the fourteen imprimitive problems, as part lists.
const S4_PAIRS: &[&[&[usize]]] = &[&[&[2, 2], &[2, 2], &[2, 2], &[2, 2]]];

const D4_A: &[&[&[usize]]] = &[
    &[&[2, 2], &[2, 2], &[2, 1, 1], &[3, 1]],
    &[&[2, 2], &[2, 2], &[2, 1, 1], &[3], &[1]],
    &[&[2, 2], &[2, 2], &[1, 1, 1], &[3, 1], &[1]],
    &[&[2, 2], &[2, 2], &[1, 1, 1], &[3], &[1], &[1]],
];

const D4_B: &[&[&[usize]]] = &[
    &[&[2, 1, 1], &[2, 1, 1], &[3, 1], &[3, 1]],
    &[&[2, 1, 1], &[2, 1, 1], &[3, 1], &[3], &[1]],
    &[&[2, 1, 1], &[1, 1, 1], &[3, 1], &[3, 1], &[1]],
    &[&[2, 1, 1], &[2, 1, 1], &[3], &[3], &[1], &[1]],
    &[&[2, 1, 1], &[1, 1, 1], &[3, 1], &[3], &[1], &[1]],
    &[&[1, 1, 1], &[1, 1, 1], &[3, 1], &[3, 1], &[1], &[1]],
    &[&[2, 1, 1], &[1, 1, 1], &[3], &[3], &[1], &[1], &[1]],
    &[&[1, 1, 1], &[1, 1, 1], &[3, 1], &[3], &[1], &[1], &[1]],
    &[&[1, 1, 1], &[1, 1, 1], &[3], &[3], &[1], &[1], &[1], &[1]],
];

fn build(lists: &[&[&[usize]]]) -> Vec<SchubertProblem> {
    let ctx = GrassContext::new(4, 8).unwrap();
    lists
        .iter()
        .map(|conds| {
            let conds = conds.iter().map(|c| Partition::new(c.to_vec()).unwrap()).collect();
            SchubertProblem::new(ctx, conds).unwrap().canonical()
        })
        .collect()
}

/// The fourteen imprimitive problems with their statuses, canonical order.
pub fn imprimitive_catalog() -> Vec<(SchubertProblem, Status)> {
    let mut out = Vec::new();
    for (lists, status) in [
        (S4_PAIRS, Status::ImprimitiveS4OnPairs),
        (D4_A, Status::ImprimitiveD4FamilyA),
        (D4_B, Status::ImprimitiveD4FamilyB),
    ] {
        out.extend(build(lists).into_iter().map(|sp| (sp, status)));
    }
    out
}

/// Status of a reduced problem on `Gr(4, 8)` with at least two solutions.
pub fn classify(sp: &SchubertProblem) -> Result<ProblemStatus, Gr48Error> {
    let ctx = sp.context();
    if (ctx.k(), ctx.n()) != (4, 8) {
        return Err(Gr48Error::WrongContext(sp.to_string()));
    }
    if !sp.is_reduced().is_reduced() {
        return Err(Gr48Error::NotReduced(sp.to_string()));
    }
    let r = count_solutions(sp);
    let canon = sp.canonical();
    let dual = sp.dualize().canonical();
    let status = imprimitive_catalog()
        .into_iter()
        .find(|(c, _)| *c == canon || *c == dual)
        .map_or(Status::AtLeastAlternatingPerPaper, |(_, s)| s);
    Ok(ProblemStatus {
        problem: canon,
        r,
        status,
    })
}
