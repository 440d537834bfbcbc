//! Littlewood–Richardson products of Schubert classes inside a fixed box.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::Zero;

use crate::partitions::{GrassContext, Partition};

/// LR coefficients `c^ν_{λμ}` for every `ν` inside the `rows x cols` box,
/// by enumerating LR fillings of `ν/λ` with content `μ`.
///
/// Labels `1, 2, ...` are added as horizontal strips in turn; the lattice
/// condition between consecutive labels is checked as soon as the later label
/// has been placed.
pub fn lr_expand(lambda: &Partition, mu: &Partition, rows: usize, cols: usize) -> BTreeMap<Partition, u64> {
    let mut out = BTreeMap::new();
    if lambda.len() > rows || lambda.part(1) > cols || mu.len() > rows || mu.part(1) > cols {
        return out;
    }
    let mut shape: Vec<usize> = (1..=rows).map(|i| lambda.part(i)).collect();
    // counts[label][row] = number of boxes with that label in that row
    let mut counts = vec![vec![0usize; rows]; mu.len()];
    place_label(0, mu.parts(), cols, &mut shape, &mut counts, &mut out);
    out
}

fn place_label(
    label: usize,
    content: &[usize],
    cols: usize,
    shape: &mut Vec<usize>,
    counts: &mut Vec<Vec<usize>>,
    out: &mut BTreeMap<Partition, u64>,
) {
    if label == content.len() {
        let nu = Partition::new(shape.clone()).expect("shape stays a partition");
        *out.entry(nu).or_insert(0) += 1;
        return;
    }
    let old = shape.clone();
    strip_rows(0, content[label], label, content, cols, &old, shape, counts, out);
}

#[allow(clippy::too_many_arguments)]
fn strip_rows(
    row: usize,
    remaining: usize,
    label: usize,
    content: &[usize],
    cols: usize,
    old: &[usize],
    shape: &mut Vec<usize>,
    counts: &mut Vec<Vec<usize>>,
    out: &mut BTreeMap<Partition, u64>,
) {
    let rows = old.len();
    if row == rows {
        if remaining == 0 && lattice_ok(label, counts) {
            place_label(label + 1, content, cols, shape, counts, out);
        }
        return;
    }
    let cap = if row == 0 { cols } else { old[row - 1] };
    let room = cap.saturating_sub(old[row]);
    // capacity left in the rows below bounds how few we may place here
    let below: usize = (row + 1..rows).map(|r| old[r - 1].saturating_sub(old[r])).sum();
    let lo = remaining.saturating_sub(below);
    let hi = room.min(remaining);
    if lo > hi {
        return;
    }
    for add in lo..=hi {
        shape[row] = old[row] + add;
        counts[label][row] = add;
        strip_rows(row + 1, remaining - add, label, content, cols, old, shape, counts, out);
    }
    shape[row] = old[row];
    counts[label][row] = 0;
}

/// Reverse reading word restricted to labels `t-1, t`: reading row by row,
/// right to left, the `t`s of a row come before its `t-1`s.
fn lattice_ok(label: usize, counts: &[Vec<usize>]) -> bool {
    if label == 0 {
        return true;
    }
    let (prev, cur) = (&counts[label - 1], &counts[label]);
    let mut seen_prev = 0;
    let mut seen_cur = 0;
    for r in 0..cur.len() {
        seen_cur += cur[r];
        if seen_cur > seen_prev {
            return false;
        }
        seen_prev += prev[r];
    }
    true
}

/// Memoized products `σ_λ · σ_μ` for every pair of box partitions of a context.
pub struct LrTable {
    ctx: GrassContext,
    shapes: Vec<Partition>,
    index: HashMap<Partition, usize>,
    products: Vec<OnceLock<Vec<(usize, u64)>>>,
}

impl LrTable {
    fn new(ctx: GrassContext) -> Self {
        let shapes = ctx.partitions();
        let index = shapes.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
        let products = (0..shapes.len() * shapes.len()).map(|_| OnceLock::new()).collect();
        LrTable {
            ctx,
            shapes,
            index,
            products,
        }
    }

    /// Shared table for `ctx`; built once per process and safe to use from
    /// several threads.
    pub fn for_context(ctx: GrassContext) -> Arc<LrTable> {
        static TABLES: OnceLock<Mutex<HashMap<GrassContext, Arc<LrTable>>>> = OnceLock::new();
        let tables = TABLES.get_or_init(|| Mutex::new(HashMap::new()));
        let mut guard = tables.lock().expect("lr table cache poisoned");
        guard.entry(ctx).or_insert_with(|| Arc::new(LrTable::new(ctx))).clone()
    }

    pub fn context(&self) -> GrassContext {
        self.ctx
    }

    pub fn shapes(&self) -> &[Partition] {
        &self.shapes
    }

    pub fn index_of(&self, p: &Partition) -> Option<usize> {
        self.index.get(p).copied()
    }

    pub fn full_box_index(&self) -> usize {
        self.shapes.len() - 1
    }

    /// Nonzero terms of `σ_{shapes[i]} · σ_{shapes[j]}` as `(index, coefficient)`.
    pub fn product(&self, i: usize, j: usize) -> &[(usize, u64)] {
        let n = self.shapes.len();
        let (a, b) = if self.shapes[i].weight() >= self.shapes[j].weight() {
            (i, j)
        } else {
            (j, i)
        };
        self.products[a * n + b].get_or_init(|| {
            lr_expand(&self.shapes[a], &self.shapes[b], self.ctx.k(), self.ctx.cols())
                .into_iter()
                .map(|(nu, c)| (self.index[&nu], c))
                .collect()
        })
    }

    /// Dense vector `v · σ_{shapes[j]}`.
    pub fn multiply_dense(&self, v: &[BigUint], j: usize) -> Vec<BigUint> {
        let mut out = vec![BigUint::zero(); self.shapes.len()];
        for (i, c) in v.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for &(t, coef) in self.product(i, j) {
                out[t] += c * coef;
            }
        }
        out
    }

    pub fn unit(&self) -> Vec<BigUint> {
        let mut v = vec![BigUint::zero(); self.shapes.len()];
        v[0] = 1u32.into();
        v
    }
}
