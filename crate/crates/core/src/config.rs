//! Experiment configuration.
//!
//! Configs are TOML documents. Every field is optional; omitted fields take
//! the reference simulation values (two numerologies at 15 and 30 kHz on a
//! 4096-point grid, CP ratio 1/16, three UEs per numerology, r = 2).
//!
//! Per-position lists (`users.subcarriers1`, `power.p1`, ...) are written in
//! increasing frequency, the same way allocations are: the last entry of a
//! numerology-1 list and the first entry of a numerology-2 list face the
//! block boundary.

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerology::{make_numerology, Numerology, NumerologyIndex, UeId, UeProfile};
use crate::scheduler::{Algorithm, PlAveraging, SchedulerParams};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExperimentConfig {
    /// Label written into every output's metadata header.
    pub name: String,
    pub seed: u64,
    /// Monte-Carlo trials per SIR estimate (case and sir runs).
    pub trials: usize,
    pub numerology: NumerologyConfig,
    pub users: UsersConfig,
    pub power: PowerConfig,
    pub scheduler: SchedulerConfig,
    pub cases: CaseConfig,
    pub cdf: CdfConfig,
    pub output: OutputConfig,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct NumerologyConfig {
    pub delta_f_ref_khz: f64,
    /// Scaling exponent of numerology 2; numerology 1 is the reference.
    pub k: u32,
    pub n_ref: usize,
    pub cp_ratio: f64,
    pub guard_bins: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct UsersConfig {
    pub d: usize,
    pub e: usize,
    /// Used for every position not covered by an explicit list.
    pub default_subcarriers: usize,
    pub subcarriers1: Option<Vec<usize>>,
    pub subcarriers2: Option<Vec<usize>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PowerMode {
    #[default]
    Fixed,
    Uniform,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PowerConfig {
    pub mode: PowerMode,
    /// Fixed per-UE levels in dB; all zero when omitted.
    pub p1: Option<Vec<f64>>,
    pub p2: Option<Vec<f64>>,
    /// Range for uniform draws, in dB.
    pub min_db: f64,
    pub max_db: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SchedulerConfig {
    /// Scheduler applied by `sir` runs; `None` keeps the configured order.
    pub algorithm: Option<Algorithm>,
    pub r: f64,
    pub averaging: PlAveraging,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CaseConfig {
    pub boost_db: f64,
    /// Boost of the numerology-2 edge UE in case 2; defaults to `boost_db`.
    pub case2_boost_db: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CdfConfig {
    pub instances: usize,
    pub inner_trials: usize,
    pub algorithms: Vec<Algorithm>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct OutputConfig {
    pub dir: PathBuf,
}

impl Default for ExperimentConfig {
    fn default() -> Self {
        ExperimentConfig {
            name: "custom".into(),
            seed: 1,
            trials: 1000,
            numerology: NumerologyConfig::default(),
            users: UsersConfig::default(),
            power: PowerConfig::default(),
            scheduler: SchedulerConfig::default(),
            cases: CaseConfig::default(),
            cdf: CdfConfig::default(),
            output: OutputConfig::default(),
        }
    }
}

impl Default for NumerologyConfig {
    fn default() -> Self {
        NumerologyConfig {
            delta_f_ref_khz: 15.0,
            k: 1,
            n_ref: 4096,
            cp_ratio: 1.0 / 16.0,
            guard_bins: 0,
        }
    }
}

impl Default for UsersConfig {
    fn default() -> Self {
        UsersConfig {
            d: 3,
            e: 3,
            default_subcarriers: 120,
            subcarriers1: None,
            subcarriers2: None,
        }
    }
}

impl Default for PowerConfig {
    fn default() -> Self {
        PowerConfig {
            mode: PowerMode::Fixed,
            p1: None,
            p2: None,
            min_db: 0.0,
            max_db: 10.0,
        }
    }
}

impl Default for SchedulerConfig {
    fn default() -> Self {
        let p = SchedulerParams::default();
        SchedulerConfig {
            algorithm: None,
            r: p.r,
            averaging: p.averaging,
        }
    }
}

impl Default for CaseConfig {
    fn default() -> Self {
        CaseConfig {
            boost_db: 3.0,
            case2_boost_db: None,
        }
    }
}

impl Default for CdfConfig {
    fn default() -> Self {
        CdfConfig {
            instances: 1000,
            inner_trials: 50,
            algorithms: Algorithm::ALL.to_vec(),
        }
    }
}

impl Default for OutputConfig {
    fn default() -> Self {
        OutputConfig { dir: "out".into() }
    }
}

/// Reads and validates a config file.
pub fn load_config(path: impl AsRef<Path>) -> Result<ExperimentConfig> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| Error::ConfigFile {
        path: path.to_path_buf(),
        message: format!("cannot read config: {e}"),
    })?;
    parse_config(&text).map_err(|e| match e {
        Error::Config { field, reason } => Error::ConfigFile {
            path: path.to_path_buf(),
            message: format!("key `{field}`: {reason}"),
        },
        Error::Argument(message) => Error::ConfigFile {
            path: path.to_path_buf(),
            message,
        },
        other => other,
    })
}

/// Parses and validates config text.
pub fn parse_config(text: &str) -> Result<ExperimentConfig> {
    let cfg: ExperimentConfig = toml::from_str(text).map_err(|e| Error::Argument(e.to_string()))?;
    cfg.validate()?;
    Ok(cfg)
}

fn check_list<T>(key: &str, list: &Option<Vec<T>>, expected: usize) -> Result<()> {
    match list {
        Some(v) if v.len() != expected => Err(Error::config(
            key,
            format!("has {} entries but {expected} UEs are configured", v.len()),
        )),
        _ => Ok(()),
    }
}

impl ExperimentConfig {
    pub fn validate(&self) -> Result<()> {
        self.numerologies()?;
        let u = &self.users;
        if u.d == 0 || u.e == 0 {
            return Err(Error::config("users.d", "each numerology needs at least one UE"));
        }
        if u.default_subcarriers == 0 {
            return Err(Error::config("users.default_subcarriers", "must be at least 1"));
        }
        check_list("users.subcarriers1", &u.subcarriers1, u.d)?;
        check_list("users.subcarriers2", &u.subcarriers2, u.e)?;
        for (key, list) in [
            ("users.subcarriers1", &u.subcarriers1),
            ("users.subcarriers2", &u.subcarriers2),
        ] {
            if list.as_ref().is_some_and(|v| v.contains(&0)) {
                return Err(Error::config(key, "every UE needs at least one subcarrier"));
            }
        }
        check_list("power.p1", &self.power.p1, u.d)?;
        check_list("power.p2", &self.power.p2, u.e)?;
        for (key, list) in [("power.p1", &self.power.p1), ("power.p2", &self.power.p2)] {
            if list.as_ref().is_some_and(|v| v.iter().any(|p| !p.is_finite())) {
                return Err(Error::config(key, "power levels must be finite"));
            }
        }
        let p = &self.power;
        if !(p.min_db.is_finite() && p.max_db.is_finite() && p.min_db <= p.max_db) {
            return Err(Error::config(
                "power.min_db",
                format!("range [{}, {}] is not a valid dB interval", p.min_db, p.max_db),
            ));
        }
        if !(self.scheduler.r >= 1.0 && self.scheduler.r.is_finite()) {
            return Err(Error::config(
                "scheduler.r",
                format!("r must be ≥ 1 (got {})", self.scheduler.r),
            ));
        }
        if self.trials == 0 {
            return Err(Error::config("trials", "must be at least 1"));
        }
        if self.cdf.inner_trials == 0 {
            return Err(Error::config("cdf.inner_trials", "must be at least 1"));
        }
        if self.cdf.instances == 0 {
            return Err(Error::config("cdf.instances", "must be at least 1"));
        }
        for (key, v) in [
            ("cases.boost_db", Some(self.cases.boost_db)),
            ("cases.case2_boost_db", self.cases.case2_boost_db),
        ] {
            if v.is_some_and(|b| !b.is_finite()) {
                return Err(Error::config(key, "must be finite"));
            }
        }
        let need = self.subcarriers1().iter().sum::<usize>()
            + self.numerology.guard_bins
            + (self.subcarriers2().iter().sum::<usize>() << self.numerology.k);
        if need > self.numerology.n_ref {
            return Err(Error::config(
                "users",
                format!(
                    "UEs need {need} reference bins but the grid has {}",
                    self.numerology.n_ref
                ),
            ));
        }
        Ok(())
    }

    /// Numerology 1 at the reference spacing and numerology 2 scaled by `2^k`.
    pub fn numerologies(&self) -> Result<(Numerology, Numerology)> {
        let n = &self.numerology;
        let prefix = |e: Error| match e {
            Error::Config { field, reason } => Error::config(format!("numerology.{field}"), reason),
            other => other,
        };
        let n1 = make_numerology(0, n.delta_f_ref_khz, n.n_ref, n.cp_ratio).map_err(prefix)?;
        let n2 = make_numerology(n.k, n.delta_f_ref_khz, n.n_ref, n.cp_ratio).map_err(prefix)?;
        Ok((n1, n2))
    }

    pub fn subcarriers1(&self) -> Vec<usize> {
        self.users
            .subcarriers1
            .clone()
            .unwrap_or_else(|| vec![self.users.default_subcarriers; self.users.d])
    }

    pub fn subcarriers2(&self) -> Vec<usize> {
        self.users
            .subcarriers2
            .clone()
            .unwrap_or_else(|| vec![self.users.default_subcarriers; self.users.e])
    }

    pub fn fixed_powers(&self) -> (Vec<f64>, Vec<f64>) {
        (
            self.power.p1.clone().unwrap_or_else(|| vec![0.0; self.users.d]),
            self.power.p2.clone().unwrap_or_else(|| vec![0.0; self.users.e]),
        )
    }

    pub fn scheduler_params(&self) -> SchedulerParams {
        SchedulerParams {
            r: self.scheduler.r,
            averaging: self.scheduler.averaging,
        }
    }

    pub fn case2_boost_db(&self) -> f64 {
        self.cases.case2_boost_db.unwrap_or(self.cases.boost_db)
    }

    /// UE lists in frequency order. Numerology-1 UEs are numbered `1..=D`,
    /// numerology-2 UEs `D+1..=D+E`; subcarrier counts follow position.
    pub fn ue_lists(&self, p1: &[f64], p2: &[f64]) -> Result<(Vec<UeProfile>, Vec<UeProfile>)> {
        if p1.len() != self.users.d || p2.len() != self.users.e {
            return Err(Error::argument("power vectors do not match the configured UE counts"));
        }
        let d = self.users.d as u32;
        let sc1 = self.subcarriers1();
        let sc2 = self.subcarriers2();
        let ues1 = p1
            .iter()
            .zip(&sc1)
            .enumerate()
            .map(|(i, (&p, &n))| UeProfile::new(UeId(i as u32 + 1), NumerologyIndex::One, p, n))
            .collect::<Result<_>>()?;
        let ues2 = p2
            .iter()
            .zip(&sc2)
            .enumerate()
            .map(|(i, (&p, &n))| UeProfile::new(UeId(d + i as u32 + 1), NumerologyIndex::Two, p, n))
            .collect::<Result<_>>()?;
        Ok((ues1, ues2))
    }
}
