//! Reduction of a Schubert problem to an equivalent reduced one.
//!
//! Each move replaces `(k, n, 𝛌)` by a problem on a smaller Grassmannian
//! with the same solution count. Empty partitions impose no condition and
//! are dropped after every move. The Galois group is also preserved by each
//! move; that is recorded as a claim on the trace, not computed.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::counting::count_solutions;
use crate::partitions::{reduced_violations, Clause, GrassContext, Partition, SchubertProblem, Violation};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Rule {
    /// `μ_1 = n-k`: quotient by `E_1`.
    ARow,
    /// `μ_k > 0`: restrict to `E_{n-μ_k}`.
    BColumn,
    /// `μ_i + ν_{k+1-i} = n-k`: quotient by the common line.
    CSharedLine,
    /// `μ_i + ν_{k-i} > n-k`: restrict to the span of the two flag pieces.
    DSpanRestrict,
    /// Empty intersection; the problem has no solutions.
    Trivial,
}

/// One step of a reduction.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub rule: Rule,
    /// Position of `μ` in the condition list before the move.
    pub mu: Option<usize>,
    /// Position of `ν` for the pair rules.
    pub nu: Option<usize>,
    /// Row index `i` (1-based) for the pair rules.
    pub row: Option<usize>,
    /// Amount removed: `μ_k` for (b), `δ` for (d).
    pub delta: Option<usize>,
    pub before: (usize, usize),
    pub after: (usize, usize),
    /// Conditions after the move, empty partitions dropped.
    pub conditions: Vec<Partition>,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReductionTrace {
    pub moves: Vec<Move>,
}

impl ReductionTrace {
    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    /// Re-applies each recorded move to `input` from its recorded witnesses
    /// and returns the final state, or `None` if a move does not apply.
    pub fn replay(&self, input: &SchubertProblem) -> Option<ReductionOutcome> {
        let mut st = State::from(input);
        for m in &self.moves {
            if m.rule == Rule::Trivial {
                return Some(ReductionOutcome::Trivial);
            }
            if (st.k, st.n) != m.before {
                return None;
            }
            let v = Violation {
                clause: match m.rule {
                    Rule::ARow => Clause::A,
                    Rule::BColumn => Clause::B,
                    Rule::CSharedLine => Clause::C,
                    Rule::DSpanRestrict => Clause::D,
                    Rule::Trivial => unreachable!(),
                },
                mu: m.mu?,
                nu: m.nu,
                row: m.row,
                strict: false,
            };
            match st.apply(&v) {
                Ok(next) => st = next,
                Err(_) => return None,
            }
            if st.conds != m.conditions || (st.k, st.n) != m.after {
                return None;
            }
        }
        Some(st.outcome())
    }
}

impl fmt::Display for ReductionTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (step, m) in self.moves.iter().enumerate() {
            write!(f, "{:>3}. {:?}", step + 1, m.rule)?;
            if let Some(mu) = m.mu {
                write!(f, " mu=#{mu}")?;
            }
            if let Some(nu) = m.nu {
                write!(f, " nu=#{nu}")?;
            }
            if let Some(i) = m.row {
                write!(f, " i={i}")?;
            }
            if let Some(d) = m.delta {
                write!(f, " delta={d}")?;
            }
            write!(
                f,
                "  Gr({},{}) -> Gr({},{})",
                m.before.0, m.before.1, m.after.0, m.after.1
            )?;
            if let Some(r) = &m.reason {
                write!(f, "  [{r}]")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// Result of reducing a problem.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum ReductionOutcome {
    /// An equivalent reduced problem.
    Reduced(SchubertProblem),
    /// The Grassmannian collapsed to a point (`k = 0` or `k = n`): one solution.
    Point,
    /// No solutions.
    Trivial,
}

impl ReductionOutcome {
    pub fn problem(&self) -> Option<&SchubertProblem> {
        match self {
            ReductionOutcome::Reduced(sp) => Some(sp),
            _ => None,
        }
    }

    pub fn is_trivial(&self) -> bool {
        matches!(self, ReductionOutcome::Trivial)
    }
}

#[derive(Debug, Clone)]
struct State {
    k: usize,
    n: usize,
    conds: Vec<Partition>,
}

impl From<&SchubertProblem> for State {
    fn from(sp: &SchubertProblem) -> Self {
        State {
            k: sp.context().k(),
            n: sp.context().n(),
            conds: sp.conditions().iter().filter(|c| !c.is_empty()).cloned().collect(),
        }
    }
}

impl State {
    fn collapsed(&self) -> bool {
        self.k == 0 || self.k == self.n
    }

    fn outcome(&self) -> ReductionOutcome {
        if self.collapsed() {
            return ReductionOutcome::Point;
        }
        let ctx = GrassContext::new(self.k, self.n).expect("0 < k < n");
        ReductionOutcome::Reduced(SchubertProblem::new(ctx, self.conds.clone()).expect("moves keep codimension"))
    }

    /// Applies the move for a non-strict violation. `Err` carries the reason
    /// the result is empty.
    fn apply(&self, v: &Violation) -> Result<State, String> {
        let (k, n) = (self.k, self.n);
        let cols = n - k;
        let mut conds = self.conds.clone();
        let (nk, nn) = match v.clause {
            Clause::A => {
                conds[v.mu] = Partition::new(conds[v.mu].parts()[1..].to_vec()).expect("suffix");
                (k - 1, n - 1)
            }
            Clause::B => {
                let m = conds[v.mu].part(k);
                conds[v.mu] = shift(&conds[v.mu], k, m);
                (k, n - m)
            }
            Clause::C => {
                let (i, j) = (v.row.expect("row"), v.nu.expect("nu"));
                conds[v.mu] = delete_part(&self.conds[v.mu], k, i);
                conds[j] = delete_part(&self.conds[j], k, k + 1 - i);
                (k - 1, n - 1)
            }
            Clause::D => {
                let (i, j) = (v.row.expect("row"), v.nu.expect("nu"));
                let delta = self.conds[v.mu].part(i) + self.conds[j].part(k - i) - cols;
                conds[v.mu] = shift(&self.conds[v.mu], i, delta);
                conds[j] = shift(&self.conds[j], k - i, delta);
                (k, n - delta)
            }
        };
        conds.retain(|c| !c.is_empty());
        for c in &conds {
            if c.len() > nk || c.part(1) > nn - nk {
                return Err(format!("{c} does not fit the {}x{} box", nk, nn - nk));
            }
        }
        Ok(State { k: nk, n: nn, conds })
    }
}

/// Subtracts `by` from each of the first `rows` parts.
fn shift(p: &Partition, rows: usize, by: usize) -> Partition {
    let mut parts: Vec<usize> = (1..=p.len().max(rows)).map(|r| p.part(r)).collect();
    for x in parts.iter_mut().take(rows) {
        *x -= by;
    }
    Partition::new(parts).expect("shifting a leading block keeps the order")
}

/// Removes part `i` (1-based) of a partition viewed with `k` rows.
fn delete_part(p: &Partition, k: usize, i: usize) -> Partition {
    let mut parts: Vec<usize> = (1..=k).map(|r| p.part(r)).collect();
    parts.remove(i - 1);
    Partition::new(parts).expect("deleting a part keeps the order")
}

/// The move to apply next: a strict clause (c) first, then clauses in
/// order (a), (b), (c), (d).
fn next_violation(st: &State) -> Option<Violation> {
    let vs = reduced_violations(st.k, st.n, &st.conds);
    if let Some(v) = vs.iter().find(|v| v.clause == Clause::C && v.strict) {
        return Some(v.clone());
    }
    vs.into_iter().next()
}

/// Reduces `sp` to an equivalent reduced problem, recording every move.
pub fn reduce(sp: &SchubertProblem) -> (ReductionOutcome, ReductionTrace) {
    let mut st = State::from(sp);
    let mut trace = ReductionTrace::default();
    let budget = st.n + sp.context().dim() + 1;
    while !st.collapsed() {
        assert!(trace.moves.len() <= budget, "reduction failed to terminate");
        let Some(v) = next_violation(&st) else { break };
        let before = (st.k, st.n);
        let rule = match v.clause {
            Clause::A => Rule::ARow,
            Clause::B => Rule::BColumn,
            Clause::C => Rule::CSharedLine,
            Clause::D => Rule::DSpanRestrict,
        };
        let trivial = |reason: String| Move {
            rule: Rule::Trivial,
            mu: Some(v.mu),
            nu: v.nu,
            row: v.row,
            delta: None,
            before,
            after: before,
            conditions: Vec::new(),
            reason: Some(reason),
        };
        if v.clause == Clause::C && v.strict {
            trace.moves.push(trivial("mu_i + nu_(k+1-i) > n-k".into()));
            return (ReductionOutcome::Trivial, trace);
        }
        let delta = match v.clause {
            Clause::B => Some(st.conds[v.mu].part(st.k)),
            Clause::D => {
                let (i, j) = (v.row.unwrap(), v.nu.unwrap());
                Some(st.conds[v.mu].part(i) + st.conds[j].part(st.k - i) - (st.n - st.k))
            }
            _ => None,
        };
        match st.apply(&v) {
            Ok(next) => {
                trace.moves.push(Move {
                    rule,
                    mu: Some(v.mu),
                    nu: v.nu,
                    row: v.row,
                    delta,
                    before,
                    after: (next.k, next.n),
                    conditions: next.conds.clone(),
                    reason: None,
                });
                st = next;
            }
            Err(reason) => {
                trace.moves.push(trivial(reason));
                return (ReductionOutcome::Trivial, trace);
            }
        }
    }
    (st.outcome(), trace)
}

/// Whether `sp` has no solutions. A strict clause (c) decides it at once.
pub fn is_trivial(sp: &SchubertProblem) -> bool {
    let strict = sp
        .is_reduced()
        .violations
        .iter()
        .any(|v| v.clause == Clause::C && v.strict);
    strict || num_traits::Zero::is_zero(&count_solutions(sp))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::partitions::parse_problem;

    #[test]
    fn worked_example_first_move() {
        let sp = parse_problem("3,11: (5,4)*(6,1)*(1)^8").unwrap();
        let (out, trace) = reduce(&sp);
        let first = &trace.moves[0];
        assert_eq!(first.rule, Rule::DSpanRestrict);
        assert_eq!((first.row, first.delta, first.after), (Some(2), Some(2), (3, 9)));
        assert_eq!(first.conditions[0].parts(), &[3, 2]);
        assert_eq!(first.conditions[1].parts(), &[4, 1]);
        assert_eq!(trace.len(), 1);
        assert_eq!(out.problem().unwrap().to_string(), "3,9: (3,2)*(4,1)*(1)^8");
    }

    #[test]
    fn reduced_input_is_fixed() {
        let sp = parse_problem("4,8: (2,2)^4").unwrap();
        let (out, trace) = reduce(&sp);
        assert!(trace.is_empty());
        assert_eq!(out, ReductionOutcome::Reduced(sp));
    }

    #[test]
    fn collapses_to_point() {
        let sp = parse_problem("2,4: (2,1)*(1)").unwrap();
        let (out, trace) = reduce(&sp);
        assert_eq!(out, ReductionOutcome::Point);
        assert_eq!(trace.replay(&sp), Some(ReductionOutcome::Point));
    }

    #[test]
    fn strict_c_is_trivial() {
        let sp = parse_problem("2,4: (2)*(1,1)").unwrap();
        assert!(is_trivial(&sp));
        assert_eq!(reduce(&sp).0, ReductionOutcome::Trivial);
        assert!(!is_trivial(&parse_problem("4,8: (2,2)^4").unwrap()));
    }
}
