//! Solution counts `r(𝛌)` of Schubert problems.

mod kostka;
mod lr;

use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::partitions::{GrassContext, Partition, PartitionError, SchubertProblem};

pub use kostka::{
    injection_inequality_check, kostka, kostka_closed_form, kostka_two_row, InjectionCheck, KostkaError, KostkaQuery,
    MultPartsCase,
};
pub use lr::{lr_expand, LrTable};

/// A cohomology class `Σ c_ν σ_ν` in a fixed Grassmannian; zero coefficients
/// are never stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassExpansion {
    ctx: GrassContext,
    terms: BTreeMap<Partition, BigUint>,
}

impl ClassExpansion {
    /// The unit class `σ_∅`.
    pub fn one(ctx: GrassContext) -> Self {
        let mut terms = BTreeMap::new();
        terms.insert(Partition::empty(), BigUint::from(1u32));
        ClassExpansion { ctx, terms }
    }

    pub fn schubert(ctx: GrassContext, lambda: &Partition) -> Result<Self, PartitionError> {
        lambda.check_fits(ctx)?;
        let mut terms = BTreeMap::new();
        terms.insert(lambda.clone(), BigUint::from(1u32));
        Ok(ClassExpansion { ctx, terms })
    }

    pub fn context(&self) -> GrassContext {
        self.ctx
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigUint> {
        &self.terms
    }

    pub fn coefficient(&self, nu: &Partition) -> BigUint {
        self.terms.get(nu).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Product with `σ_λ`, truncated to the box.
    pub fn mul_schubert(&self, lambda: &Partition) -> Result<Self, PartitionError> {
        lambda.check_fits(self.ctx)?;
        let mut out: BTreeMap<Partition, BigUint> = BTreeMap::new();
        for (mu, c) in &self.terms {
            for (nu, lr) in lr_expand(mu, lambda, self.ctx.k(), self.ctx.cols()) {
                *out.entry(nu).or_default() += c * lr;
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(ClassExpansion {
            ctx: self.ctx,
            terms: out,
        })
    }

    pub fn mul(&self, other: &ClassExpansion) -> Result<Self, PartitionError> {
        let mut acc = ClassExpansion {
            ctx: self.ctx,
            terms: BTreeMap::new(),
        };
        for (lambda, c) in &other.terms {
            for (nu, v) in self.mul_schubert(lambda)?.terms {
                *acc.terms.entry(nu).or_default() += v * c;
            }
        }
        Ok(acc)
    }
}

/// `r(𝛌)`: the coefficient of the point class in `Π σ_{λ^i}`.
pub fn count_solutions(sp: &SchubertProblem) -> BigUint {
    let table = LrTable::for_context(sp.context());
    let mut v = table.unit();
    for c in sp.conditions() {
        let j = table.index_of(c).expect("validated problem fits its box");
        v = table.multiply_dense(&v, j);
    }
    v.swap_remove(table.full_box_index())
}

/// Like [`count_solutions`] for an unvalidated condition list.
pub fn count_conditions(ctx: GrassContext, conditions: &[Partition]) -> Result<BigUint, PartitionError> {
    let sp = SchubertProblem::new(ctx, conditions.to_vec())?;
    Ok(count_solutions(&sp))
}

/// The two terms of Schubert's recursion on `Gr(2, n)`, with the last two
/// parts as pivot: `(…, a_{s-1}+a_s)` and `(…, a_{s-1}-1, a_s-1)`. The second
/// is `None` when a part would go negative.
pub fn schubert_recursion_contents(parts: &[usize]) -> Option<(Vec<usize>, Option<Vec<usize>>)> {
    let s = parts.len();
    if s < 2 {
        return None;
    }
    let (x, y) = (parts[s - 2], parts[s - 1]);
    let mut merged = parts[..s - 2].to_vec();
    merged.push(x + y);
    let decremented = (x > 0 && y > 0).then(|| {
        let mut d = parts[..s - 2].to_vec();
        d.push(x - 1);
        d.push(y - 1);
        d
    });
    Some((merged, decremented))
}
