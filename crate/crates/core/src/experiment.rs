//! Fixed-power case studies and randomized scheduling CDF studies.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::cdf::{empirical_cdf, CdfCurve};
use crate::config::{ExperimentConfig, PowerMode};
use crate::error::{Error, Result};
use crate::numerology::{build_allocation, NumerologyIndex, SpectrumAllocation, UeProfile};
use crate::ofdm::OfdmModem;
use crate::scheduler::{schedule, Algorithm};
use crate::sir::{estimate_sir, estimate_sir_with, SirReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CaseId {
    /// All UEs at 0 dB.
    EqualPower = 1,
    /// Numerology-2 edge UE boosted.
    BoostedEdge = 2,
    /// Numerology-2 inner UE next to the edge UE boosted.
    BoostedInner = 3,
    /// Both edge UEs boosted by the same amount.
    BoostedEdges = 4,
}

impl CaseId {
    pub const ALL: [CaseId; 4] = [
        CaseId::EqualPower,
        CaseId::BoostedEdge,
        CaseId::BoostedInner,
        CaseId::BoostedEdges,
    ];

    pub fn from_number(id: u8) -> Result<Self> {
        match id {
            1 => Ok(CaseId::EqualPower),
            2 => Ok(CaseId::BoostedEdge),
            3 => Ok(CaseId::BoostedInner),
            4 => Ok(CaseId::BoostedEdges),
            other => Err(Error::argument(format!("case id must be 1, 2, 3 or 4 (got {other})"))),
        }
    }

    pub fn number(self) -> u8 {
        self as u8
    }

    pub fn description(self) -> &'static str {
        match self {
            CaseId::EqualPower => "all users at equal power",
            CaseId::BoostedEdge => "numerology-2 edge user boosted",
            CaseId::BoostedInner => "numerology-2 inner user boosted",
            CaseId::BoostedEdges => "both edge users boosted equally",
        }
    }
}

/// Power vectors (frequency order) for a case.
pub fn case_powers(config: &ExperimentConfig, case: CaseId) -> Result<(Vec<f64>, Vec<f64>)> {
    let d = config.users.d;
    let e = config.users.e;
    let mut p1 = vec![0.0; d];
    let mut p2 = vec![0.0; e];
    let boost = config.cases.boost_db;
    match case {
        CaseId::EqualPower => {}
        CaseId::BoostedEdge => p2[0] += config.case2_boost_db(),
        CaseId::BoostedInner => {
            if e < 2 {
                return Err(Error::argument("case 3 needs at least two numerology-2 UEs"));
            }
            p2[1] += boost;
        }
        CaseId::BoostedEdges => {
            p1[d - 1] += boost;
            p2[0] += boost;
        }
    }
    Ok((p1, p2))
}

/// Output of a single SIR run with its provenance.
#[derive(Debug, Clone)]
pub struct SirRun {
    pub label: String,
    pub allocation: SpectrumAllocation,
    pub report: SirReport,
}

impl SirRun {
    pub fn metadata(&self) -> Vec<String> {
        vec![
            format!("experiment: {}", self.label),
            format!("trials: {}", self.report.trials),
            format!("seed: {}", self.report.seed),
        ]
    }
}

pub fn run_case(config: &ExperimentConfig, case: CaseId) -> Result<SirRun> {
    if config.power.mode != PowerMode::Fixed {
        return Err(Error::argument("case runs need power.mode = \"fixed\""));
    }
    let (p1, p2) = case_powers(config, case)?;
    let (ues1, ues2) = config.ue_lists(&p1, &p2)?;
    let (n1, n2) = config.numerologies()?;
    let allocation = build_allocation(n1, n2, ues1, ues2, config.numerology.guard_bins)?;
    let report = estimate_sir(&allocation, config.trials, config.seed)?;
    Ok(SirRun {
        label: format!("case-{} ({})", case.number(), case.description()),
        allocation,
        report,
    })
}

/// SIR for the configured fixed powers, optionally rearranged by the
/// configured scheduler first.
pub fn run_sir(config: &ExperimentConfig) -> Result<SirRun> {
    if config.power.mode != PowerMode::Fixed {
        return Err(Error::argument("sir runs need power.mode = \"fixed\""));
    }
    let (p1, p2) = config.fixed_powers();
    let (ues1, ues2) = config.ue_lists(&p1, &p2)?;
    let (ues1, ues2, tag) = match config.scheduler.algorithm {
        None => (ues1, ues2, "configured order".to_string()),
        Some(alg) => {
            let d = schedule(alg, &ues1, &ues2, &config.scheduler_params(), config.seed)?;
            let (o1, o2) = rebind_subcarriers(config, &d.order1, &d.order2)?;
            (o1, o2, format!("scheduled by {alg}"))
        }
    };
    let (n1, n2) = config.numerologies()?;
    let allocation = build_allocation(n1, n2, ues1, ues2, config.numerology.guard_bins)?;
    let report = estimate_sir(&allocation, config.trials, config.seed)?;
    Ok(SirRun {
        label: format!("{} ({tag})", config.name),
        allocation,
        report,
    })
}

/// Gives each position its configured subcarrier count after reordering.
fn rebind_subcarriers(
    config: &ExperimentConfig,
    order1: &[UeProfile],
    order2: &[UeProfile],
) -> Result<(Vec<UeProfile>, Vec<UeProfile>)> {
    let sc1 = config.subcarriers1();
    let sc2 = config.subcarriers2();
    let o1 = order1
        .iter()
        .zip(sc1)
        .map(|(u, n)| u.with_subcarriers(n))
        .collect::<Result<_>>()?;
    let o2 = order2
        .iter()
        .zip(sc2)
        .map(|(u, n)| u.with_subcarriers(n))
        .collect::<Result<_>>()?;
    Ok((o1, o2))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum UeClass {
    Edge,
    Inner,
}

impl UeClass {
    pub fn name(self) -> &'static str {
        match self {
            UeClass::Edge => "edge",
            UeClass::Inner => "inner",
        }
    }
}

impl fmt::Display for UeClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for UeClass {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "edge" => Ok(UeClass::Edge),
            "inner" => Ok(UeClass::Inner),
            other => Err(Error::argument(format!("unknown UE class `{other}`"))),
        }
    }
}

/// One CDF of per-UE SIR for an (algorithm, class, numerology) group.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledCurve {
    pub algorithm: Algorithm,
    pub class: UeClass,
    pub numerology: NumerologyIndex,
    pub curve: CdfCurve,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CdfStudy {
    pub label: String,
    pub instances: usize,
    pub inner_trials: usize,
    pub seed: u64,
    pub curves: Vec<LabeledCurve>,
}

impl CdfStudy {
    pub fn curve(&self, algorithm: Algorithm, class: UeClass, numerology: NumerologyIndex) -> Option<&CdfCurve> {
        self.curves
            .iter()
            .find(|c| c.algorithm == algorithm && c.class == class && c.numerology == numerology)
            .map(|c| &c.curve)
    }

    /// Both numerologies of a class merged into one curve.
    pub fn pooled(&self, algorithm: Algorithm, class: UeClass) -> Option<CdfCurve> {
        let samples: Vec<f64> = self
            .curves
            .iter()
            .filter(|c| c.algorithm == algorithm && c.class == class)
            .flat_map(|c| c.curve.values.iter().copied())
            .collect();
        empirical_cdf(&samples).ok()
    }

    pub fn metadata(&self) -> Vec<String> {
        vec![
            format!("experiment: {}", self.label),
            format!("instances: {}", self.instances),
            format!("inner_trials: {}", self.inner_trials),
            format!("seed: {}", self.seed),
        ]
    }
}

struct Sample {
    algorithm: Algorithm,
    class: UeClass,
    numerology: NumerologyIndex,
    sir_db: f64,
}

fn run_instance(config: &ExperimentConfig, modem: &OfdmModem, instance: u64) -> Result<Vec<Sample>> {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(instance);
    let (lo, hi) = (config.power.min_db, config.power.max_db);
    let draw = |n: usize, rng: &mut ChaCha8Rng| -> Vec<f64> {
        (0..n)
            .map(|_| if hi > lo { rng.random_range(lo..hi) } else { lo })
            .collect()
    };
    let p1 = draw(config.users.d, &mut rng);
    let p2 = draw(config.users.e, &mut rng);
    let shuffle_seed = rng.next_u64();
    // shared across algorithms so they see the same data draws
    let data_seed = rng.next_u64();

    let (ues1, ues2) = config.ue_lists(&p1, &p2)?;
    let (n1, n2) = config.numerologies()?;
    let params = config.scheduler_params();
    let mut out = Vec::new();
    for &algorithm in &config.cdf.algorithms {
        let decision = schedule(algorithm, &ues1, &ues2, &params, shuffle_seed)?;
        let (o1, o2) = rebind_subcarriers(config, &decision.order1, &decision.order2)?;
        let alloc = build_allocation(n1.clone(), n2.clone(), o1, o2, config.numerology.guard_bins)?;
        let report = estimate_sir_with(modem, &alloc, config.cdf.inner_trials, data_seed)?;
        for ue in &report.per_ue {
            out.push(Sample {
                algorithm,
                class: if ue.is_edge { UeClass::Edge } else { UeClass::Inner },
                numerology: ue.numerology,
                sir_db: ue.sir_db,
            });
        }
    }
    Ok(out)
}

/// Draws `cdf.instances` random power sets, schedules each with every
/// configured algorithm, and builds per-UE SIR CDFs.
///
/// Instance `i` draws from stream `i` of a generator seeded with the config
/// seed; results are gathered in instance order before the CDFs are built.
pub fn run_cdf_experiment(config: &ExperimentConfig) -> Result<CdfStudy> {
    if config.power.mode != PowerMode::Uniform {
        return Err(Error::argument("CDF runs need power.mode = \"uniform\""));
    }
    if config.cdf.algorithms.is_empty() {
        return Err(Error::argument("CDF runs need at least one algorithm"));
    }
    let (p1, p2) = config.fixed_powers();
    let (ues1, ues2) = config.ue_lists(&p1, &p2)?;
    let (n1, n2) = config.numerologies()?;
    let template = build_allocation(n1, n2, ues1, ues2, config.numerology.guard_bins)?;
    let modem = OfdmModem::new(&template);

    let per_instance: Vec<Vec<Sample>> = (0..config.cdf.instances as u64)
        .into_par_iter()
        .map(|i| run_instance(config, &modem, i))
        .collect::<Result<_>>()?;

    let mut curves = Vec::new();
    for &algorithm in &config.cdf.algorithms {
        for class in [UeClass::Edge, UeClass::Inner] {
            for numerology in [NumerologyIndex::One, NumerologyIndex::Two] {
                let samples: Vec<f64> = per_instance
                    .iter()
                    .flatten()
                    .filter(|s| s.algorithm == algorithm && s.class == class && s.numerology == numerology)
                    .map(|s| s.sir_db)
                    .collect();
                if samples.is_empty() {
                    continue;
                }
                curves.push(LabeledCurve {
                    algorithm,
                    class,
                    numerology,
                    curve: empirical_cdf(&samples)?,
                });
            }
        }
    }
    Ok(CdfStudy {
        label: config.name.clone(),
        instances: config.cdf.instances,
        inner_trials: config.cdf.inner_trials,
        seed: config.seed,
        curves,
    })
}
