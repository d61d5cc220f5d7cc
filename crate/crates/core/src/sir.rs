//! Monte-Carlo estimation of inter-numerology interference and SIR.
//!
//! Interference on a victim subcarrier is the power its own receiver sees when
//! only the other numerology transmits. Each trial draws fresh QPSK data for
//! both blocks; interference powers are averaged across trials (and across
//! the OFDM symbols of the window) in the linear domain before any ratio is
//! taken.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::numerology::{linear_to_db, NumerologyIndex, SpectrumAllocation, UeId};
use crate::ofdm::{OfdmModem, SymbolGrid};

/// Reported SIR when the measured interference is zero or negligible.
pub const MAX_SIR_DB: f64 = 300.0;

/// Trials folded sequentially before the ordered cross-chunk sum.
const CHUNK_TRIALS: usize = 8;

/// SIR of a desired/interference power pair, capped at [`MAX_SIR_DB`].
pub fn sir_db(desired: f64, interference: f64) -> f64 {
    if interference <= 0.0 {
        return MAX_SIR_DB;
    }
    linear_to_db(desired / interference).min(MAX_SIR_DB)
}

#[derive(Debug, Clone, PartialEq)]
pub struct BinSir {
    pub numerology: NumerologyIndex,
    /// Subcarrier index within the numerology block.
    pub subcarrier: usize,
    /// Reference-grid bin of the subcarrier.
    pub absolute_bin: usize,
    pub ue: UeId,
    pub desired_power: f64,
    /// Mean interference power over all trials.
    pub interference_power: f64,
    pub sir_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct UeSir {
    pub ue: UeId,
    pub numerology: NumerologyIndex,
    pub is_edge: bool,
    pub sir_db: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SirReport {
    pub per_bin: Vec<BinSir>,
    pub per_ue: Vec<UeSir>,
    pub trials: usize,
    pub seed: u64,
}

impl SirReport {
    pub fn per_bin_sir_db(&self) -> Vec<f64> {
        self.per_bin.iter().map(|b| b.sir_db).collect()
    }

    pub fn ue_sir_db(&self, id: UeId) -> Result<f64> {
        self.per_ue
            .iter()
            .find(|u| u.ue == id)
            .map(|u| u.sir_db)
            .ok_or(Error::UnknownUe(id))
    }

    pub fn bins_of(&self, which: NumerologyIndex) -> impl Iterator<Item = &BinSir> {
        self.per_bin.iter().filter(move |b| b.numerology == which)
    }
}

/// Accumulated interference power per victim subcarrier, one vector per block.
struct Accum {
    ini1: Vec<f64>,
    ini2: Vec<f64>,
}

impl Accum {
    fn new(n1: usize, n2: usize) -> Self {
        Accum {
            ini1: vec![0.0; n1],
            ini2: vec![0.0; n2],
        }
    }

    fn add(&mut self, other: &Accum) {
        for (a, b) in self.ini1.iter_mut().zip(&other.ini1) {
            *a += b;
        }
        for (a, b) in self.ini2.iter_mut().zip(&other.ini2) {
            *a += b;
        }
    }
}

fn run_trial(alloc: &SpectrumAllocation, modem: &OfdmModem, seed: u64, trial: u64, acc: &mut Accum) -> Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(trial));
    let g1 = SymbolGrid::random_qpsk(alloc, NumerologyIndex::One, &mut rng);
    let g2 = SymbolGrid::random_qpsk(alloc, NumerologyIndex::Two, &mut rng);
    for (victim, aggressor, sums) in [
        (NumerologyIndex::One, &g2, &mut acc.ini1),
        (NumerologyIndex::Two, &g1, &mut acc.ini2),
    ] {
        if sums.is_empty() || aggressor.n_subcarriers() == 0 {
            continue;
        }
        let sig = modem.synthesize(aggressor)?;
        let rx = modem.demodulate(&sig, victim)?;
        let per_symbol = 1.0 / rx.len() as f64;
        for row in &rx {
            for (s, v) in sums.iter_mut().zip(row) {
                *s += v.norm_sqr() * per_symbol;
            }
        }
    }
    Ok(())
}

/// Runs `trials` independent data draws and reports per-bin and per-UE SIR.
///
/// Trial `i` seeds its generator with `seed + i`, and partial sums are
/// combined in trial order, so the report is bit-identical for any number of
/// worker threads.
pub fn estimate_sir(alloc: &SpectrumAllocation, trials: usize, seed: u64) -> Result<SirReport> {
    estimate_sir_with(&OfdmModem::new(alloc), alloc, trials, seed)
}

/// [`estimate_sir`] with a prebuilt modem for the allocation's geometry.
pub fn estimate_sir_with(modem: &OfdmModem, alloc: &SpectrumAllocation, trials: usize, seed: u64) -> Result<SirReport> {
    if trials == 0 {
        return Err(Error::argument("trials must be at least 1"));
    }
    let n1 = alloc.block(NumerologyIndex::One).n_subcarriers;
    let n2 = alloc.block(NumerologyIndex::Two).n_subcarriers;
    let chunks = trials.div_ceil(CHUNK_TRIALS);
    let partial: Vec<Accum> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let mut acc = Accum::new(n1, n2);
            let end = ((c + 1) * CHUNK_TRIALS).min(trials);
            for t in c * CHUNK_TRIALS..end {
                run_trial(alloc, modem, seed, t as u64, &mut acc)?;
            }
            Ok(acc)
        })
        .collect::<Result<_>>()?;
    let mut total = Accum::new(n1, n2);
    for p in &partial {
        total.add(p);
    }

    let scale = 1.0 / trials as f64;
    let mut per_bin = Vec::with_capacity(n1 + n2);
    for p in alloc.placements() {
        let sums = match p.numerology {
            NumerologyIndex::One => &total.ini1,
            NumerologyIndex::Two => &total.ini2,
        };
        let ue = alloc.ue(p.ue).expect("placement refers to a listed UE");
        let desired = ue.amplitude().powi(2);
        for (i, sc) in p.subcarrier_range().enumerate() {
            let interference = sums[sc] * scale;
            per_bin.push(BinSir {
                numerology: p.numerology,
                subcarrier: sc,
                absolute_bin: p.first_bin + i * p.bins_per_subcarrier,
                ue: p.ue,
                desired_power: desired,
                interference_power: interference,
                sir_db: sir_db(desired, interference),
            });
        }
    }
    let mut report = SirReport {
        per_bin,
        per_ue: Vec::new(),
        trials,
        seed,
    };
    report.per_ue = per_ue_sir(&report, alloc)?
        .into_iter()
        .map(|(ue, sir)| {
            let p = alloc.placement(ue).expect("listed UE has a placement");
            UeSir {
                ue,
                numerology: p.numerology,
                is_edge: p.is_edge,
                sir_db: sir,
            }
        })
        .collect();
    Ok(report)
}

/// Per-UE SIR: total desired power over total mean interference power across
/// the UE's subcarriers.
pub fn per_ue_sir(report: &SirReport, alloc: &SpectrumAllocation) -> Result<Vec<(UeId, f64)>> {
    alloc
        .ues()
        .map(|ue| {
            let (desired, interference, count) = report
                .per_bin
                .iter()
                .filter(|b| b.ue == ue.id())
                .fold((0.0, 0.0, 0usize), |(d, i, n), b| {
                    (d + b.desired_power, i + b.interference_power, n + 1)
                });
            if count == 0 {
                return Err(Error::UnknownUe(ue.id()));
            }
            Ok((ue.id(), sir_db(desired, interference)))
        })
        .collect()
}
