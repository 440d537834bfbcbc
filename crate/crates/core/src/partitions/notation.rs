//! Text and JSON forms of a Schubert problem.
//!
//! Text grammar: `k,n: factor (* factor)*` where a factor is
//! `(p1,p2,...)` optionally followed by `^e`. Whitespace is ignored.
//! JSON: `{"k":4,"n":8,"conditions":[[2,2],[2,2],[2,2],[2,2]]}`.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use super::{GrassContext, Partition, PartitionError, SchubertProblem};

#[derive(Debug, Error)]
pub enum NotationError {
    #[error("malformed problem notation `{text}`: {reason}")]
    Syntax { text: String, reason: String },
    #[error(transparent)]
    Invalid(#[from] PartitionError),
    #[error("malformed problem JSON: {0}")]
    Json(#[from] serde_json::Error),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProblemJson {
    pub k: usize,
    pub n: usize,
    pub conditions: Vec<Vec<usize>>,
}

impl From<&SchubertProblem> for ProblemJson {
    fn from(sp: &SchubertProblem) -> Self {
        ProblemJson {
            k: sp.context().k(),
            n: sp.context().n(),
            conditions: sp.conditions().iter().map(|c| c.parts().to_vec()).collect(),
        }
    }
}

impl From<SchubertProblem> for ProblemJson {
    fn from(sp: SchubertProblem) -> Self {
        ProblemJson::from(&sp)
    }
}

impl TryFrom<ProblemJson> for SchubertProblem {
    type Error = PartitionError;

    fn try_from(j: ProblemJson) -> Result<Self, Self::Error> {
        let ctx = GrassContext::new(j.k, j.n)?;
        let conds = j
            .conditions
            .into_iter()
            .map(Partition::new)
            .collect::<Result<Vec<_>, _>>()?;
        SchubertProblem::new(ctx, conds)
    }
}

impl SchubertProblem {
    pub fn to_json(&self) -> ProblemJson {
        ProblemJson::from(self)
    }

    pub fn from_json_str(s: &str) -> Result<Self, NotationError> {
        let j: ProblemJson = serde_json::from_str(s)?;
        Ok(SchubertProblem::try_from(j)?)
    }
}

impl std::str::FromStr for SchubertProblem {
    type Err = NotationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        parse_problem(s)
    }
}

/// Parses either the text notation or the JSON form (detected by a leading `{`).
pub fn parse_problem(text: &str) -> Result<SchubertProblem, NotationError> {
    let trimmed = text.trim();
    if trimmed.starts_with('{') {
        return SchubertProblem::from_json_str(trimmed);
    }
    let syntax = |reason: &str| NotationError::Syntax {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let compact: String = trimmed.chars().filter(|c| !c.is_whitespace()).collect();
    let (head, body) = compact.split_once(':').ok_or_else(|| syntax("missing `k,n:` prefix"))?;
    let (k, n) = head.split_once(',').ok_or_else(|| syntax("context must be `k,n`"))?;
    let k: usize = k.parse().map_err(|_| syntax("k is not an integer"))?;
    let n: usize = n.parse().map_err(|_| syntax("n is not an integer"))?;
    let ctx = GrassContext::new(k, n)?;

    let mut conditions = Vec::new();
    if !body.is_empty() {
        for factor in body.split('*') {
            let (part_text, exp) = match factor.rsplit_once('^') {
                Some((p, e)) => {
                    let e: usize = e.parse().map_err(|_| syntax("bad exponent"))?;
                    (p, e)
                }
                None => (factor, 1),
            };
            let inner = part_text
                .strip_prefix('(')
                .and_then(|s| s.strip_suffix(')'))
                .ok_or_else(|| syntax("factor must be a parenthesized partition"))?;
            let parts = if inner.is_empty() {
                Vec::new()
            } else {
                inner
                    .split(',')
                    .map(|x| x.parse::<usize>())
                    .collect::<Result<Vec<_>, _>>()
                    .map_err(|_| syntax("partition parts must be integers"))?
            };
            let lam = Partition::new(parts)?;
            conditions.extend(std::iter::repeat_n(lam, exp));
        }
    }
    Ok(SchubertProblem::new(ctx, conditions)?)
}
