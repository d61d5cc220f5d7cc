//! Boundary-pair scheduling for two adjacent numerology blocks.
//!
//! All three schedulers only decide which UE of each block sits next to the
//! block boundary. The remaining UEs keep their input order and fill the
//! positions from the boundary outward.
//!
//! Pair indices `s` and `t` are zero-based positions in the input lists of
//! numerology 1 and numerology 2.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerology::{db_to_linear, linear_to_db, UeProfile};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Algorithm {
    Random,
    /// Minimum power offset across the boundary.
    Algo1,
    /// Lowest average power among near-minimum power offsets.
    Algo2,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Random, Algorithm::Algo1, Algorithm::Algo2];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Random => "random",
            Algorithm::Algo1 => "algo1",
            Algorithm::Algo2 => "algo2",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "random" => Ok(Algorithm::Random),
            "algo1" | "edge-fairness" => Ok(Algorithm::Algo1),
            "algo2" | "overall-fairness" => Ok(Algorithm::Algo2),
            other => Err(Error::argument(format!(
                "unknown algorithm `{other}` (expected random, algo1 or algo2)"
            ))),
        }
    }
}

/// How two dB power levels are averaged when ranking candidate pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PlAveraging {
    /// `(p1 + p2) / 2` on the dB values.
    #[default]
    Db,
    /// Mean of the linear powers, converted back to dB.
    Linear,
}

impl PlAveraging {
    pub fn average(self, p1_db: f64, p2_db: f64) -> f64 {
        match self {
            PlAveraging::Db => (p1_db + p2_db) / 2.0,
            PlAveraging::Linear => linear_to_db((db_to_linear(p1_db) + db_to_linear(p2_db)) / 2.0),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PairSelection {
    pub s: usize,
    pub t: usize,
    pub po_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CandidateSet {
    pub r: f64,
    pub th_p: f64,
    pub pairs: Vec<PairSelection>,
    /// Averaged power level of each entry of `pairs`, in dB.
    pub pl: Vec<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ScheduleDecision {
    pub edge_pair: PairSelection,
    /// Numerology-1 UEs in increasing frequency; the last one is at the boundary.
    pub order1: Vec<UeProfile>,
    /// Numerology-2 UEs in increasing frequency; the first one is at the boundary.
    pub order2: Vec<UeProfile>,
    pub algorithm: Algorithm,
}

pub fn power_offset(p1_db: f64, p2_db: f64) -> f64 {
    (p1_db - p2_db).abs()
}

fn check_non_empty(ues1: &[UeProfile], ues2: &[UeProfile]) -> Result<()> {
    if ues1.is_empty() || ues2.is_empty() {
        return Err(Error::argument("both numerologies need at least one UE to schedule"));
    }
    Ok(())
}

fn all_pairs<'a>(ues1: &'a [UeProfile], ues2: &'a [UeProfile]) -> impl Iterator<Item = PairSelection> + 'a {
    ues1.iter().enumerate().flat_map(move |(s, a)| {
        ues2.iter().enumerate().map(move |(t, b)| PairSelection {
            s,
            t,
            po_db: power_offset(a.power_db(), b.power_db()),
        })
    })
}

fn min_offset_pair(ues1: &[UeProfile], ues2: &[UeProfile]) -> PairSelection {
    // strict comparison keeps the lexicographically first (s, t) on ties
    all_pairs(ues1, ues2)
        .reduce(|best, p| if p.po_db < best.po_db { p } else { best })
        .expect("non-empty inputs")
}

/// Places `edge` at the boundary and the other UEs, in input order, outward.
fn arrange(ues1: &[UeProfile], ues2: &[UeProfile], pair: PairSelection) -> (Vec<UeProfile>, Vec<UeProfile>) {
    let mut order1: Vec<UeProfile> = ues1
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pair.s)
        .map(|(_, u)| u.clone())
        .rev()
        .collect();
    order1.push(ues1[pair.s].clone());

    let mut order2 = Vec::with_capacity(ues2.len());
    order2.push(ues2[pair.t].clone());
    order2.extend(
        ues2.iter()
            .enumerate()
            .filter(|(i, _)| *i != pair.t)
            .map(|(_, u)| u.clone()),
    );
    (order1, order2)
}

/// Edge-fairness scheduling: the pair with the smallest power offset goes to
/// the boundary. Ties go to the smallest `s`, then the smallest `t`.
pub fn schedule_algo1(ues1: &[UeProfile], ues2: &[UeProfile]) -> Result<ScheduleDecision> {
    check_non_empty(ues1, ues2)?;
    let edge_pair = min_offset_pair(ues1, ues2);
    let (order1, order2) = arrange(ues1, ues2, edge_pair);
    Ok(ScheduleDecision {
        edge_pair,
        order1,
        order2,
        algorithm: Algorithm::Algo1,
    })
}

pub fn build_candidates(ues1: &[UeProfile], ues2: &[UeProfile], r: f64) -> Result<CandidateSet> {
    build_candidates_with(ues1, ues2, r, PlAveraging::Db)
}

/// All pairs whose power offset is within `r` times the minimum offset.
pub fn build_candidates_with(
    ues1: &[UeProfile],
    ues2: &[UeProfile],
    r: f64,
    averaging: PlAveraging,
) -> Result<CandidateSet> {
    if !(r >= 1.0 && r.is_finite()) {
        return Err(Error::argument(format!("r must be >= 1, got {r}")));
    }
    check_non_empty(ues1, ues2)?;
    let th_p = r * min_offset_pair(ues1, ues2).po_db;
    let pairs: Vec<PairSelection> = all_pairs(ues1, ues2).filter(|p| p.po_db <= th_p).collect();
    let pl = pairs
        .iter()
        .map(|p| averaging.average(ues1[p.s].power_db(), ues2[p.t].power_db()))
        .collect();
    Ok(CandidateSet { r, th_p, pairs, pl })
}

pub fn schedule_algo2(ues1: &[UeProfile], ues2: &[UeProfile], r: f64) -> Result<ScheduleDecision> {
    schedule_algo2_with(ues1, ues2, r, PlAveraging::Db)
}

/// Overall-fairness scheduling: among the candidate pairs, the one with the
/// lowest averaged power goes to the boundary. Ties are broken by smaller
/// power offset, then `s`, then `t`.
pub fn schedule_algo2_with(
    ues1: &[UeProfile],
    ues2: &[UeProfile],
    r: f64,
    averaging: PlAveraging,
) -> Result<ScheduleDecision> {
    let cands = build_candidates_with(ues1, ues2, r, averaging)?;
    let key = |i: usize| (cands.pl[i], cands.pairs[i].po_db, cands.pairs[i].s, cands.pairs[i].t);
    let best = (0..cands.pairs.len())
        .min_by(|&a, &b| {
            let (ka, kb) = (key(a), key(b));
            ka.0.total_cmp(&kb.0)
                .then(ka.1.total_cmp(&kb.1))
                .then(ka.2.cmp(&kb.2))
                .then(ka.3.cmp(&kb.3))
        })
        .expect("candidate set always holds the minimum-offset pair");
    let edge_pair = cands.pairs[best];
    let (order1, order2) = arrange(ues1, ues2, edge_pair);
    Ok(ScheduleDecision {
        edge_pair,
        order1,
        order2,
        algorithm: Algorithm::Algo2,
    })
}

/// Baseline: independent uniform permutations of both lists.
pub fn schedule_random(ues1: &[UeProfile], ues2: &[UeProfile], seed: u64) -> Result<ScheduleDecision> {
    check_non_empty(ues1, ues2)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut idx1: Vec<usize> = (0..ues1.len()).collect();
    let mut idx2: Vec<usize> = (0..ues2.len()).collect();
    idx1.shuffle(&mut rng);
    idx2.shuffle(&mut rng);
    let s = *idx1.last().expect("non-empty");
    let t = idx2[0];
    Ok(ScheduleDecision {
        edge_pair: PairSelection {
            s,
            t,
            po_db: power_offset(ues1[s].power_db(), ues2[t].power_db()),
        },
        order1: idx1.iter().map(|&i| ues1[i].clone()).collect(),
        order2: idx2.iter().map(|&i| ues2[i].clone()).collect(),
        algorithm: Algorithm::Random,
    })
}

/// Scheduler choice plus its parameters.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SchedulerParams {
    pub r: f64,
    pub averaging: PlAveraging,
}

impl Default for SchedulerParams {
    fn default() -> Self {
        SchedulerParams {
            r: 2.0,
            averaging: PlAveraging::Db,
        }
    }
}

pub fn schedule(
    algorithm: Algorithm,
    ues1: &[UeProfile],
    ues2: &[UeProfile],
    params: &SchedulerParams,
    seed: u64,
) -> Result<ScheduleDecision> {
    match algorithm {
        Algorithm::Random => schedule_random(ues1, ues2, seed),
        Algorithm::Algo1 => schedule_algo1(ues1, ues2),
        Algorithm::Algo2 => schedule_algo2_with(ues1, ues2, params.r, params.averaging),
    }
}
