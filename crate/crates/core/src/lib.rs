//! Multi-numerology CP-OFDM interference simulation and edge-fairness
//! scheduling.
//!
//! Two numerology blocks share one band with no guard between them. The
//! [`ofdm`] module synthesizes and demodulates each block on a common
//! sampling grid, [`sir`] measures inter-numerology interference by Monte
//! Carlo, and [`scheduler`] decides which user of each block sits at the
//! boundary. [`experiment`] ties these together into case studies and CDF
//! studies driven by a [`config::ExperimentConfig`].

pub mod cdf;
pub mod config;
pub mod error;
pub mod experiment;
pub mod export;
pub mod numerology;
pub mod ofdm;
pub mod presets;
pub mod scheduler;
pub mod sir;

pub use cdf::{empirical_cdf, CdfCurve};
pub use config::{load_config, parse_config, ExperimentConfig, PowerMode};
pub use error::{Error, Result};
pub use experiment::{run_case, run_cdf_experiment, run_sir, CaseId, CdfStudy, SirRun, UeClass};
pub use numerology::{
    build_allocation, make_numerology, Numerology, NumerologyIndex, SpectrumAllocation, UeId, UeProfile,
};
pub use ofdm::{compose, demodulate, synthesize, BasebandSignal, OfdmModem, SymbolGrid};
pub use scheduler::{
    build_candidates, power_offset, schedule_algo1, schedule_algo2, schedule_random, Algorithm, CandidateSet,
    PairSelection, PlAveraging, ScheduleDecision,
};
pub use sir::{estimate_sir, per_ue_sir, SirReport};
