//! Frobenius sampling: reduce a random instance modulo `p`, build its
//! solutions exactly, and read the cycle type of Frobenius acting on them.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::solvers::{
    solve_d4_family_a, solve_d4_family_b, solve_derksen, D4Solution, DerksenSolution, FamilyAData, FamilyBData,
};
use super::Gr48Error;
use crate::fieldlinalg::{random_subspace, Fq, Subspace};

/// Cycle lengths of a permutation, largest first.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CycleType(pub Vec<usize>);

impl CycleType {
    pub fn new(mut parts: Vec<usize>) -> Self {
        parts.sort_unstable_by(|a, b| b.cmp(a));
        CycleType(parts)
    }

    pub fn degree(&self) -> usize {
        self.0.iter().sum()
    }
}

impl fmt::Display for CycleType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

pub fn cycle_type_of(perm: &[usize]) -> CycleType {
    let mut seen = vec![false; perm.len()];
    let mut parts = Vec::new();
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut i = start;
        while !seen[i] {
            seen[i] = true;
            i = perm[i];
            len += 1;
        }
        parts.push(len);
    }
    CycleType::new(parts)
}

/// 2-subsets of `{0,1,2,3}` in lexicographic order.
const PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

fn pair_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    PAIRS.iter().position(|&p| p == (a, b)).unwrap()
}

/// The permutation of the six 2-subsets induced by one of four points.
pub fn induced_pair_permutation(perm: &[usize]) -> Vec<usize> {
    PAIRS.iter().map(|&(a, b)| pair_index(perm[a], perm[b])).collect()
}

/// Cycle type on the six 2-subsets of a permutation of 4 points with type `t`.
pub fn induced_pair_cycle_type(t: &CycleType) -> Result<CycleType, Gr48Error> {
    if t.degree() != 4 || t.0.contains(&0) {
        return Err(Gr48Error::BadCycleType(t.0.clone()));
    }
    let mut perm = vec![0; 4];
    let mut start = 0;
    for &len in &t.0 {
        for i in 0..len {
            perm[start + i] = start + (i + 1) % len;
        }
        start += len;
    }
    Ok(cycle_type_of(&induced_pair_permutation(&perm)))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    /// `σ_{2,2}^4 = 6`
    Derksen,
    /// `σ_{2,2}^2 σ_{1,1,1} σ_3 σ_1^2 = 4`
    D4a,
    /// `σ_{1,1,1}^2 σ_3^2 σ_1^4 = 4`
    D4b,
}

impl Family {
    pub fn degree(&self) -> usize {
        match self {
            Family::Derksen => 6,
            Family::D4a | Family::D4b => 4,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::Derksen => "derksen",
            Family::D4a => "d4a",
            Family::D4b => "d4b",
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "derksen" => Ok(Family::Derksen),
            "d4a" => Ok(Family::D4a),
            "d4b" => Ok(Family::D4b),
            other => Err(format!("unknown family `{other}` (expected derksen, d4a or d4b)")),
        }
    }
}

/// One unflagged observation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ObservedSample {
    pub cycle_type: CycleType,
    /// `perm[i]` is the index of the image of solution `i` under Frobenius.
    pub permutation: Vec<usize>,
    pub blocks_preserved: bool,
    /// Factor degrees of the eliminant that predicts the cycle type, when
    /// there is one (the Derksen family).
    pub factor_degrees: Option<Vec<usize>>,
}

fn frobenius_permutation(f: &Fq, items: &[Subspace]) -> Result<Vec<usize>, Gr48Error> {
    items
        .iter()
        .map(|s| {
            let image = s.frobenius_map(f);
            items
                .iter()
                .position(|t| *t == image)
                .ok_or_else(|| Gr48Error::Verification("Frobenius image is not a solution".into()))
        })
        .collect()
}

fn preserves_blocks(perm: &[usize], blocks: &[[usize; 2]]) -> bool {
    blocks.iter().all(|b| {
        let image = [perm[b[0]], perm[b[1]]];
        blocks
            .iter()
            .any(|c| (c[0] == image[0] && c[1] == image[1]) || (c[0] == image[1] && c[1] == image[0]))
    })
}

/// Samples Frobenius on the six solutions of a random instance of
/// `σ_{2,2}^4` over `F_p`, and checks the observed type against the one
/// predicted from the factor degrees of the eliminant.
pub fn frobenius_sample_derksen(p: u64, seed: u64) -> Result<ObservedSample, Gr48Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = Fq::prime(p)?;
    let ks: [Subspace; 4] = std::array::from_fn(|_| random_subspace(&base, 4, 8, &mut rng));
    let sol = solve_derksen(&base, &ks, &mut rng)?;
    let line_perm = frobenius_permutation(&sol.field, &sol.lines)?;
    let perm = frobenius_permutation(&sol.field, &sol.solutions)?;
    if perm != induced_pair_permutation(&line_perm) {
        return Err(Gr48Error::Verification(
            "Frobenius on H_ab is not induced from the h_a".into(),
        ));
    }
    let cycle_type = cycle_type_of(&perm);
    let predicted = induced_pair_cycle_type(&CycleType::new(sol.degrees.degrees.clone()))?;
    if predicted != cycle_type {
        return Err(Gr48Error::Verification(format!(
            "observed {cycle_type} but factor degrees {:?} predict {predicted}",
            sol.degrees.degrees
        )));
    }
    Ok(ObservedSample {
        cycle_type,
        blocks_preserved: preserves_blocks(&perm, &DerksenSolution::BLOCKS),
        permutation: perm,
        factor_degrees: Some(sol.degrees.degrees),
    })
}

/// Samples Frobenius on the four solutions of a random instance of one of
/// the `D_4` families, constructed over `F_{p^4}`.
pub fn frobenius_sample_d4(family: Family, p: u64, seed: u64) -> Result<ObservedSample, Gr48Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let base = Fq::prime(p)?;
    let big = Fq::extension(p, 4, &mut rng)?;
    let sol: D4Solution = match family {
        Family::D4a => solve_d4_family_a(&big, &FamilyAData::random(&base, &mut rng).lift_prime(&big))?,
        Family::D4b => solve_d4_family_b(&big, &FamilyBData::random(&base, &mut rng).lift_prime(&big))?,
        Family::Derksen => return frobenius_sample_derksen(p, seed),
    };
    let perm = frobenius_permutation(&big, &sol.solutions)?;
    Ok(ObservedSample {
        cycle_type: cycle_type_of(&perm),
        blocks_preserved: preserves_blocks(&perm, &D4Solution::BLOCKS),
        permutation: perm,
        factor_degrees: None,
    })
}

/// A permutation group with its cycle-type set, for matching observations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CatalogGroup {
    pub name: &'static str,
    pub degree: usize,
    pub order: usize,
    pub types: &'static [&'static [usize]],
}

pub const CATALOG: &[CatalogGroup] = &[
    CatalogGroup {
        name: "A4 on pairs",
        degree: 6,
        order: 12,
        types: &[&[1, 1, 1, 1, 1, 1], &[2, 2, 1, 1], &[3, 3]],
    },
    CatalogGroup {
        name: "S4 on pairs",
        degree: 6,
        order: 24,
        types: &[&[1, 1, 1, 1, 1, 1], &[2, 2, 1, 1], &[3, 3], &[4, 2]],
    },
    CatalogGroup {
        name: "V4",
        degree: 4,
        order: 4,
        types: &[&[1, 1, 1, 1], &[2, 2]],
    },
    CatalogGroup {
        name: "C4",
        degree: 4,
        order: 4,
        types: &[&[1, 1, 1, 1], &[2, 2], &[4]],
    },
    CatalogGroup {
        name: "D4",
        degree: 4,
        order: 8,
        types: &[&[1, 1, 1, 1], &[2, 1, 1], &[2, 2], &[4]],
    },
];

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupVerdict {
    pub degree: usize,
    pub samples: usize,
    #[serde(with = "as_pairs")]
    pub observed: BTreeMap<CycleType, usize>,
    /// Catalog groups whose type sets contain every observation.
    pub consistent_with: Vec<String>,
    /// The smallest of those.
    pub group: Option<String>,
    /// Every type of `group` was observed.
    pub coverage_complete: bool,
    /// Observed types outside every catalog group of this degree.
    pub inconsistent: Vec<CycleType>,
    pub blocks_preserved: bool,
}

impl GroupVerdict {
    pub fn is_consistent(&self) -> bool {
        self.inconsistent.is_empty() && self.blocks_preserved
    }

    pub fn summary(&self) -> String {
        if !self.inconsistent.is_empty() {
            let t: Vec<String> = self.inconsistent.iter().map(ToString::to_string).collect();
            return format!("INCONSISTENT: types {} fit no catalog group", t.join(", "));
        }
        let all = CATALOG.iter().filter(|g| g.degree == self.degree).count();
        let mut s = match &self.group {
            Some(_) if self.consistent_with.len() == all && !self.coverage_complete => {
                "consistent with all catalog groups".to_string()
            }
            Some(g) => g.clone(),
            None => "no catalog group".to_string(),
        };
        s.push_str(if self.coverage_complete {
            " (all cycle types observed)"
        } else {
            " (coverage incomplete)"
        });
        if !self.blocks_preserved {
            s.push_str("; BLOCKS NOT PRESERVED");
        }
        s
    }
}

/// JSON maps need string keys, so the counts travel as a list of pairs.
mod as_pairs {
    use super::CycleType;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};
    use std::collections::BTreeMap;

    pub fn serialize<S: Serializer>(m: &BTreeMap<CycleType, usize>, s: S) -> Result<S::Ok, S::Error> {
        m.iter().collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BTreeMap<CycleType, usize>, D::Error> {
        Ok(Vec::<(CycleType, usize)>::deserialize(d)?.into_iter().collect())
    }
}

/// Matches observed cycle types against [`CATALOG`].
pub fn identify_group(samples: &[ObservedSample], degree: usize) -> Result<GroupVerdict, Gr48Error> {
    if samples.is_empty() {
        return Err(Gr48Error::NoSamples);
    }
    let mut observed: BTreeMap<CycleType, usize> = BTreeMap::new();
    for s in samples {
        *observed.entry(s.cycle_type.clone()).or_default() += 1;
    }
    let groups: Vec<&CatalogGroup> = CATALOG.iter().filter(|g| g.degree == degree).collect();
    let type_set =
        |g: &CatalogGroup| -> BTreeSet<CycleType> { g.types.iter().map(|t| CycleType::new(t.to_vec())).collect() };
    let inconsistent: Vec<CycleType> = observed
        .keys()
        .filter(|t| t.degree() != degree || !groups.iter().any(|g| type_set(g).contains(t)))
        .cloned()
        .collect();
    let mut consistent: Vec<&CatalogGroup> = groups
        .iter()
        .copied()
        .filter(|g| observed.keys().all(|t| type_set(g).contains(t)))
        .collect();
    consistent.sort_by_key(|g| (g.order, g.name));
    let group = consistent.first().copied();
    let coverage_complete = group.is_some_and(|g| type_set(g).iter().all(|t| observed.contains_key(t)));
    Ok(GroupVerdict {
        degree,
        samples: samples.len(),
        observed,
        consistent_with: consistent.iter().map(|g| g.name.to_string()).collect(),
        group: group.map(|g| g.name.to_string()),
        coverage_complete,
        inconsistent,
        blocks_preserved: samples.iter().all(|s| s.blocks_preserved),
    })
}

/// The seed of one attempt; a fixed mixing of its coordinates so records
/// can be regenerated individually.
pub fn instance_seed(seed: u64, prime: u64, trial: usize, attempt: usize) -> u64 {
    let mut x = seed;
    for v in [prime, trial as u64, attempt as u64] {
        x = splitmix(x ^ splitmix(v));
    }
    x
}

fn splitmix(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SamplingConfig {
    pub family: Family,
    pub primes: Vec<u64>,
    pub trials: usize,
    pub seed: u64,
    /// Redraws allowed per (prime, trial) after degenerate instances.
    pub max_attempts: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SampleRecord {
    pub family: Family,
    pub prime: u64,
    pub trial: usize,
    pub attempt: usize,
    pub seed: u64,
    pub squarefree: bool,
    pub general_position: bool,
    /// Any other failure; these are inconsistencies, never resampled.
    pub error: Option<String>,
    pub sample: Option<ObservedSample>,
}

impl SampleRecord {
    pub fn is_flagged(&self) -> bool {
        self.sample.is_none()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub config: SamplingConfig,
    /// Sorted by `(prime, trial, attempt)`.
    pub records: Vec<SampleRecord>,
    pub unflagged: usize,
    pub flagged: usize,
    pub errors: usize,
    /// Relative frequency of each cycle type among unflagged samples.
    pub frequencies: BTreeMap<String, f64>,
    pub verdict: Option<GroupVerdict>,
}

impl SampleReport {
    /// No verification errors, and the verdict is consistent.
    pub fn is_consistent(&self) -> bool {
        self.errors == 0 && self.verdict.as_ref().is_some_and(GroupVerdict::is_consistent)
    }
}

fn sample_one(family: Family, prime: u64, seed: u64) -> Result<ObservedSample, Gr48Error> {
    match family {
        Family::Derksen => frobenius_sample_derksen(prime, seed),
        _ => frobenius_sample_d4(family, prime, seed),
    }
}

/// Runs every `(prime, trial)` pair on the current rayon pool. Records are
/// merged by `(prime, trial, attempt)`, so the report does not depend on
/// the schedule or the number of threads.
pub fn run_sampling(config: &SamplingConfig) -> SampleReport {
    let jobs: Vec<(u64, usize)> = config
        .primes
        .iter()
        .flat_map(|&p| (0..config.trials).map(move |t| (p, t)))
        .collect();
    let mut records: Vec<SampleRecord> = jobs
        .par_iter()
        .flat_map_iter(|&(prime, trial)| {
            let mut out = Vec::new();
            for attempt in 0..config.max_attempts.max(1) {
                let seed = instance_seed(config.seed, prime, trial, attempt);
                let mut rec = SampleRecord {
                    family: config.family,
                    prime,
                    trial,
                    attempt,
                    seed,
                    squarefree: true,
                    general_position: true,
                    error: None,
                    sample: None,
                };
                match sample_one(config.family, prime, seed) {
                    Ok(s) => {
                        rec.sample = Some(s);
                        out.push(rec);
                        break;
                    }
                    Err(Gr48Error::NotSquarefree) => rec.squarefree = false,
                    Err(Gr48Error::GeneralPosition(_)) => rec.general_position = false,
                    Err(e) => {
                        rec.error = Some(e.to_string());
                        out.push(rec);
                        break;
                    }
                }
                out.push(rec);
            }
            out
        })
        .collect();
    records.sort_by_key(|r| (r.prime, r.trial, r.attempt));
    let samples: Vec<ObservedSample> = records.iter().filter_map(|r| r.sample.clone()).collect();
    let errors = records.iter().filter(|r| r.error.is_some()).count();
    let mut counts: BTreeMap<String, usize> = BTreeMap::new();
    for s in &samples {
        *counts.entry(s.cycle_type.to_string()).or_default() += 1;
    }
    let total = samples.len().max(1) as f64;
    SampleReport {
        config: config.clone(),
        unflagged: samples.len(),
        flagged: records.len() - samples.len() - errors,
        errors,
        frequencies: counts.into_iter().map(|(k, v)| (k, v as f64 / total)).collect(),
        verdict: identify_group(&samples, config.family.degree()).ok(),
        records,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ct(v: &[usize]) -> CycleType {
        CycleType::new(v.to_vec())
    }

    #[test]
    fn pair_action_types() {
        assert_eq!(induced_pair_cycle_type(&ct(&[1, 1, 1, 1])).unwrap(), ct(&[1; 6]));
        assert_eq!(induced_pair_cycle_type(&ct(&[4])).unwrap(), ct(&[4, 2]));
        assert_eq!(induced_pair_cycle_type(&ct(&[2, 1, 1])).unwrap(), ct(&[2, 2, 1, 1]));
        assert_eq!(induced_pair_cycle_type(&ct(&[3, 1])).unwrap(), ct(&[3, 3]));
        assert_eq!(induced_pair_cycle_type(&ct(&[2, 2])).unwrap(), ct(&[2, 2, 1, 1]));
        assert!(induced_pair_cycle_type(&ct(&[3, 3])).is_err());
    }

    #[test]
    fn identity_alone_fits_everything() {
        let s = ObservedSample {
            cycle_type: ct(&[1, 1, 1, 1]),
            permutation: vec![0, 1, 2, 3],
            blocks_preserved: true,
            factor_degrees: None,
        };
        let v = identify_group(&[s], 4).unwrap();
        assert_eq!(v.consistent_with.len(), 3);
        assert!(!v.coverage_complete);
        assert!(v.summary().starts_with("consistent with all catalog groups"));
        assert!(identify_group(&[], 4).is_err());
    }

    #[test]
    fn three_cycle_is_inconsistent_for_degree_four() {
        let s = ObservedSample {
            cycle_type: ct(&[3, 1]),
            permutation: vec![1, 2, 0, 3],
            blocks_preserved: false,
            factor_degrees: None,
        };
        let v = identify_group(&[s], 4).unwrap();
        assert_eq!(v.inconsistent, vec![ct(&[3, 1])]);
        assert!(!v.is_consistent());
    }

    #[test]
    fn seeds_are_stable() {
        assert_eq!(instance_seed(1, 101, 0, 0), instance_seed(1, 101, 0, 0));
        assert_ne!(instance_seed(1, 101, 0, 0), instance_seed(1, 101, 0, 1));
        assert_ne!(instance_seed(1, 101, 0, 0), instance_seed(1, 103, 0, 0));
    }
}
