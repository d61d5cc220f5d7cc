//! Numerology parameter sets, users and the two-block spectrum layout.
//!
//! All frequencies are expressed on a common reference grid of `n_ref` bins
//! spaced `delta_f_ref` apart. A numerology with scaling exponent `k` has a
//! subcarrier spacing of `2^k * delta_f_ref`, so each of its subcarriers spans
//! `2^k` reference bins and its transform size is `n_ref / 2^k`.
//!
//! Numerology 1 occupies the lower part of the band and numerology 2 the
//! upper part. The UE of numerology 1 with the highest frequency and the UE of
//! numerology 2 with the lowest frequency face the block boundary; these are
//! the edge UEs.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};

/// Nominal slot duration of the reference numerology, in milliseconds.
pub const SLOT_DURATION_REF_MS: f64 = 1.0;

/// Which of the two numerology blocks something belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum NumerologyIndex {
    One,
    Two,
}

impl NumerologyIndex {
    pub fn other(self) -> Self {
        match self {
            NumerologyIndex::One => NumerologyIndex::Two,
            NumerologyIndex::Two => NumerologyIndex::One,
        }
    }

    pub fn as_number(self) -> u8 {
        match self {
            NumerologyIndex::One => 1,
            NumerologyIndex::Two => 2,
        }
    }

    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(NumerologyIndex::One),
            2 => Some(NumerologyIndex::Two),
            _ => None,
        }
    }
}

impl fmt::Display for NumerologyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.as_number())
    }
}

/// Timing metadata of a numerology, independent of any sample grid.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NumerologyTiming {
    pub k: u32,
    pub delta_f_khz: f64,
    pub cp_ratio: f64,
    /// CP duration in microseconds.
    pub t_cp_us: f64,
    pub slot_duration_ms: f64,
    pub symbols_per_slot: u32,
}

impl NumerologyTiming {
    pub fn new(k: u32, delta_f_ref_khz: f64, cp_ratio: f64) -> Result<Self> {
        if !(delta_f_ref_khz.is_finite() && delta_f_ref_khz > 0.0) {
            return Err(Error::config(
                "delta_f_ref",
                format!("must be a positive frequency, got {delta_f_ref_khz}"),
            ));
        }
        if k >= 16 {
            return Err(Error::config("k", format!("scaling exponent {k} is too large")));
        }
        if !(cp_ratio > 0.0 && cp_ratio < 1.0) {
            return Err(Error::config(
                "cp_ratio",
                format!("must lie strictly between 0 and 1, got {cp_ratio}"),
            ));
        }
        let scale = f64::from(1u32 << k);
        let delta_f_khz = scale * delta_f_ref_khz;
        Ok(NumerologyTiming {
            k,
            delta_f_khz,
            cp_ratio,
            t_cp_us: cp_ratio * 1e3 / delta_f_khz,
            slot_duration_ms: SLOT_DURATION_REF_MS / scale,
            // 12 symbols per slot only for the extended (1/4) prefix.
            symbols_per_slot: if (cp_ratio - 0.25).abs() < 1e-12 { 12 } else { 14 },
        })
    }

    /// Useful (CP-free) symbol duration in microseconds.
    pub fn useful_symbol_us(&self) -> f64 {
        1e3 / self.delta_f_khz
    }
}

/// A numerology bound to a sampling grid of `n_ref * delta_f_ref` samples/s.
#[derive(Debug, Clone, PartialEq)]
pub struct Numerology {
    timing: NumerologyTiming,
    delta_f_ref_khz: f64,
    n_ref: usize,
    n_fft: usize,
    cp_samples: usize,
}

/// Builds a numerology on the reference grid.
///
/// Fails when `n_ref` is not divisible by `2^k` or when the cyclic prefix
/// would not be a whole number of samples.
pub fn make_numerology(k: u32, delta_f_ref_khz: f64, n_ref: usize, cp_ratio: f64) -> Result<Numerology> {
    let timing = NumerologyTiming::new(k, delta_f_ref_khz, cp_ratio)?;
    let scale = 1usize << k;
    if n_ref == 0 || !n_ref.is_multiple_of(scale) {
        return Err(Error::config(
            "n_fft",
            format!("n_ref = {n_ref} is not divisible by 2^{k} = {scale}"),
        ));
    }
    let n_fft = n_ref / scale;
    let cp_exact = cp_ratio * n_fft as f64;
    let cp_samples = cp_exact.round();
    if (cp_exact - cp_samples).abs() > 1e-9 || cp_samples < 1.0 {
        return Err(Error::config(
            "cp_ratio",
            format!("CP sample count {n_fft} x {cp_ratio} = {cp_exact} is not a whole number of samples"),
        ));
    }
    Ok(Numerology {
        timing,
        delta_f_ref_khz,
        n_ref,
        n_fft,
        cp_samples: cp_samples as usize,
    })
}

impl Numerology {
    pub fn k(&self) -> u32 {
        self.timing.k
    }
    pub fn delta_f_khz(&self) -> f64 {
        self.timing.delta_f_khz
    }
    pub fn delta_f_ref_khz(&self) -> f64 {
        self.delta_f_ref_khz
    }
    pub fn n_ref(&self) -> usize {
        self.n_ref
    }
    pub fn n_fft(&self) -> usize {
        self.n_fft
    }
    pub fn cp_ratio(&self) -> f64 {
        self.timing.cp_ratio
    }
    pub fn cp_samples(&self) -> usize {
        self.cp_samples
    }
    pub fn t_cp_us(&self) -> f64 {
        self.timing.t_cp_us
    }
    pub fn slot_duration_ms(&self) -> f64 {
        self.timing.slot_duration_ms
    }
    pub fn symbols_per_slot(&self) -> u32 {
        self.timing.symbols_per_slot
    }
    pub fn timing(&self) -> &NumerologyTiming {
        &self.timing
    }
    /// Reference bins covered by one subcarrier.
    pub fn bins_per_subcarrier(&self) -> usize {
        1 << self.timing.k
    }
    /// CP plus useful part, in samples at the common rate.
    pub fn symbol_len(&self) -> usize {
        self.n_fft + self.cp_samples
    }
    /// Common sampling rate in kHz.
    pub fn sample_rate_khz(&self) -> f64 {
        self.n_ref as f64 * self.delta_f_ref_khz
    }
}

/// Opaque user identifier.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UeId(pub u32);

impl fmt::Display for UeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct UeProfile {
    id: UeId,
    numerology: NumerologyIndex,
    power_db: f64,
    n_subcarriers: usize,
}

impl UeProfile {
    pub fn new(id: UeId, numerology: NumerologyIndex, power_db: f64, n_subcarriers: usize) -> Result<Self> {
        if !power_db.is_finite() {
            return Err(Error::config(
                "power_db",
                format!("UE {id} has non-finite power {power_db}"),
            ));
        }
        if n_subcarriers == 0 {
            return Err(Error::config(
                "n_subcarriers",
                format!("UE {id} needs at least one subcarrier"),
            ));
        }
        Ok(UeProfile {
            id,
            numerology,
            power_db,
            n_subcarriers,
        })
    }

    pub fn id(&self) -> UeId {
        self.id
    }
    pub fn numerology(&self) -> NumerologyIndex {
        self.numerology
    }
    pub fn power_db(&self) -> f64 {
        self.power_db
    }
    pub fn n_subcarriers(&self) -> usize {
        self.n_subcarriers
    }

    /// Linear per-subcarrier amplitude for this UE's power level.
    pub fn amplitude(&self) -> f64 {
        db_to_linear(self.power_db).sqrt()
    }

    pub fn with_power_db(&self, power_db: f64) -> Result<Self> {
        UeProfile::new(self.id, self.numerology, power_db, self.n_subcarriers)
    }

    pub fn with_subcarriers(&self, n_subcarriers: usize) -> Result<Self> {
        UeProfile::new(self.id, self.numerology, self.power_db, n_subcarriers)
    }
}

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(linear: f64) -> f64 {
    10.0 * linear.log10()
}

/// Where one UE's subcarriers sit.
#[derive(Debug, Clone, PartialEq)]
pub struct UePlacement {
    pub ue: UeId,
    pub numerology: NumerologyIndex,
    /// Index of the UE's first subcarrier within its numerology block.
    pub first_subcarrier: usize,
    pub n_subcarriers: usize,
    /// Reference-grid bin of the UE's first subcarrier.
    pub first_bin: usize,
    pub bins_per_subcarrier: usize,
    pub is_edge: bool,
}

impl UePlacement {
    /// Half-open range of reference bins the UE covers.
    pub fn bin_range(&self) -> std::ops::Range<usize> {
        self.first_bin..self.first_bin + self.n_subcarriers * self.bins_per_subcarrier
    }

    pub fn subcarrier_range(&self) -> std::ops::Range<usize> {
        self.first_subcarrier..self.first_subcarrier + self.n_subcarriers
    }
}

/// Contiguous run of one numerology's subcarriers on the reference grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Block {
    pub numerology: NumerologyIndex,
    pub start_bin: usize,
    pub n_subcarriers: usize,
    pub bins_per_subcarrier: usize,
}

impl Block {
    pub fn width_bins(&self) -> usize {
        self.n_subcarriers * self.bins_per_subcarrier
    }

    /// Reference bin of the block's `i`-th subcarrier.
    pub fn subcarrier_bin(&self, i: usize) -> usize {
        self.start_bin + i * self.bins_per_subcarrier
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpectrumAllocation {
    num1: Numerology,
    num2: Numerology,
    order1: Vec<UeProfile>,
    order2: Vec<UeProfile>,
    guard_bins: usize,
    block1: Block,
    block2: Block,
    placements: Vec<UePlacement>,
}

/// Places the UEs of both numerologies on the reference grid.
///
/// `order1` is listed in increasing frequency, so its last UE faces the
/// boundary; `order2` is also in increasing frequency, so its first UE faces
/// the boundary. The occupied band is centred on the reference grid. One of
/// the two lists may be empty, which yields a single-numerology allocation.
pub fn build_allocation(
    num1: Numerology,
    num2: Numerology,
    order1: Vec<UeProfile>,
    order2: Vec<UeProfile>,
    guard_bins: usize,
) -> Result<SpectrumAllocation> {
    if num1.n_ref() != num2.n_ref() {
        return Err(Error::config(
            "n_ref",
            format!(
                "numerologies use different reference grids ({} vs {})",
                num1.n_ref(),
                num2.n_ref()
            ),
        ));
    }
    if num1.delta_f_ref_khz() != num2.delta_f_ref_khz() {
        return Err(Error::config(
            "delta_f_ref",
            "numerologies use different reference spacings",
        ));
    }
    if num2.k() < num1.k() {
        return Err(Error::config(
            "k",
            format!(
                "numerology 2 (k={}) must not be narrower than numerology 1 (k={})",
                num2.k(),
                num1.k()
            ),
        ));
    }
    let per_window = 1usize << (num2.k() - num1.k());
    if num1.symbol_len() != per_window * num2.symbol_len() {
        return Err(Error::config(
            "cp_ratio",
            format!(
                "one numerology-1 symbol ({} samples) is not {} numerology-2 symbols ({} samples each)",
                num1.symbol_len(),
                per_window,
                num2.symbol_len()
            ),
        ));
    }
    if order1.is_empty() && order2.is_empty() {
        return Err(Error::argument("allocation needs at least one UE"));
    }
    let mut seen = HashSet::new();
    for (which, list) in [(NumerologyIndex::One, &order1), (NumerologyIndex::Two, &order2)] {
        for ue in list {
            if ue.numerology() != which {
                return Err(Error::argument(format!(
                    "UE {} belongs to numerology {} but was listed under numerology {which}",
                    ue.id(),
                    ue.numerology()
                )));
            }
            if !seen.insert(ue.id()) {
                return Err(Error::argument(format!("UE {} listed more than once", ue.id())));
            }
        }
    }

    let n1: usize = order1.iter().map(UeProfile::n_subcarriers).sum();
    let n2: usize = order2.iter().map(UeProfile::n_subcarriers).sum();
    let width1 = n1 * num1.bins_per_subcarrier();
    let width2 = n2 * num2.bins_per_subcarrier();
    let required = width1 + guard_bins + width2;
    let available = num1.n_ref();
    if required > available {
        return Err(Error::Allocation { required, available });
    }

    let start1 = (available - required) / 2;
    let block1 = Block {
        numerology: NumerologyIndex::One,
        start_bin: start1,
        n_subcarriers: n1,
        bins_per_subcarrier: num1.bins_per_subcarrier(),
    };
    let block2 = Block {
        numerology: NumerologyIndex::Two,
        start_bin: start1 + width1 + guard_bins,
        n_subcarriers: n2,
        bins_per_subcarrier: num2.bins_per_subcarrier(),
    };

    let mut placements = Vec::with_capacity(order1.len() + order2.len());
    for (block, list, edge_pos) in [
        (&block1, &order1, order1.len().checked_sub(1)),
        (&block2, &order2, Some(0)),
    ] {
        let mut sc = 0;
        for (pos, ue) in list.iter().enumerate() {
            placements.push(UePlacement {
                ue: ue.id(),
                numerology: block.numerology,
                first_subcarrier: sc,
                n_subcarriers: ue.n_subcarriers(),
                first_bin: block.subcarrier_bin(sc),
                bins_per_subcarrier: block.bins_per_subcarrier,
                is_edge: Some(pos) == edge_pos,
            });
            sc += ue.n_subcarriers();
        }
    }

    Ok(SpectrumAllocation {
        num1,
        num2,
        order1,
        order2,
        guard_bins,
        block1,
        block2,
        placements,
    })
}

impl SpectrumAllocation {
    pub fn numerology(&self, which: NumerologyIndex) -> &Numerology {
        match which {
            NumerologyIndex::One => &self.num1,
            NumerologyIndex::Two => &self.num2,
        }
    }

    /// UEs of a block in increasing frequency.
    pub fn order(&self, which: NumerologyIndex) -> &[UeProfile] {
        match which {
            NumerologyIndex::One => &self.order1,
            NumerologyIndex::Two => &self.order2,
        }
    }

    pub fn block(&self, which: NumerologyIndex) -> &Block {
        match which {
            NumerologyIndex::One => &self.block1,
            NumerologyIndex::Two => &self.block2,
        }
    }

    pub fn guard_bins(&self) -> usize {
        self.guard_bins
    }

    pub fn n_ref(&self) -> usize {
        self.num1.n_ref()
    }

    /// The UE adjacent to the other block, if the block is non-empty.
    pub fn edge_ue(&self, which: NumerologyIndex) -> Option<&UeProfile> {
        match which {
            NumerologyIndex::One => self.order1.last(),
            NumerologyIndex::Two => self.order2.first(),
        }
    }

    pub fn placements(&self) -> &[UePlacement] {
        &self.placements
    }

    pub fn placement(&self, id: UeId) -> Option<&UePlacement> {
        self.placements.iter().find(|p| p.ue == id)
    }

    pub fn ue(&self, id: UeId) -> Option<&UeProfile> {
        self.order1.iter().chain(&self.order2).find(|u| u.id() == id)
    }

    pub fn ues(&self) -> impl Iterator<Item = &UeProfile> {
        self.order1.iter().chain(&self.order2)
    }

    /// Length of the alignment window: one numerology-1 symbol with its CP.
    pub fn window_len(&self) -> usize {
        self.num1.symbol_len()
    }

    pub fn symbols_per_window(&self, which: NumerologyIndex) -> usize {
        self.window_len() / self.numerology(which).symbol_len()
    }

    /// Per-subcarrier linear amplitude across a block.
    pub fn amplitudes(&self, which: NumerologyIndex) -> Vec<f64> {
        self.order(which)
            .iter()
            .flat_map(|ue| std::iter::repeat_n(ue.amplitude(), ue.n_subcarriers()))
            .collect()
    }

    /// Same layout with every UE's power shifted by `offset_db`.
    pub fn with_power_offset(&self, offset_db: f64) -> Result<Self> {
        let shift = |list: &[UeProfile]| -> Result<Vec<UeProfile>> {
            list.iter().map(|u| u.with_power_db(u.power_db() + offset_db)).collect()
        };
        build_allocation(
            self.num1.clone(),
            self.num2.clone(),
            shift(&self.order1)?,
            shift(&self.order2)?,
            self.guard_bins,
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ues(which: NumerologyIndex, first_id: u32, counts: &[usize]) -> Vec<UeProfile> {
        counts
            .iter()
            .enumerate()
            .map(|(i, &n)| UeProfile::new(UeId(first_id + i as u32), which, 0.0, n).unwrap())
            .collect()
    }

    fn table_ii() -> (Numerology, Numerology) {
        (
            make_numerology(0, 15.0, 4096, 1.0 / 16.0).unwrap(),
            make_numerology(1, 15.0, 4096, 1.0 / 16.0).unwrap(),
        )
    }

    #[test]
    fn normal_cp_timing_row() {
        let t = NumerologyTiming::new(0, 15.0, 1.0 / 14.0).unwrap();
        assert_eq!(t.delta_f_khz, 15.0);
        assert!((t.t_cp_us - 4.76).abs() < 0.005);
        assert_eq!(t.slot_duration_ms, 1.0);
        assert_eq!(t.symbols_per_slot, 14);

        let expected = [(30.0, 2.38, 0.5), (60.0, 1.19, 0.25), (120.0, 0.60, 0.125)];
        for (k, (df, tcp, slot)) in (1..).zip(expected) {
            let t = NumerologyTiming::new(k, 15.0, 1.0 / 14.0).unwrap();
            assert_eq!(t.delta_f_khz, df);
            assert!((t.t_cp_us - tcp).abs() < 0.006, "k={k}: {}", t.t_cp_us);
            assert_eq!(t.slot_duration_ms, slot);
        }
        let ext = NumerologyTiming::new(2, 15.0, 0.25).unwrap();
        assert!((ext.t_cp_us - 4.17).abs() < 0.005);
        assert_eq!(ext.symbols_per_slot, 12);
    }

    #[test]
    fn simulation_numerology() {
        let n = make_numerology(1, 15.0, 4096, 1.0 / 16.0).unwrap();
        assert_eq!(n.delta_f_khz(), 30.0);
        assert_eq!(n.n_fft(), 2048);
        assert_eq!(n.cp_samples(), 128);
        assert_eq!(n.slot_duration_ms(), 0.5);
        assert_eq!(n.bins_per_subcarrier(), 2);
    }

    #[test]
    fn fractional_cp_rejected() {
        let err = make_numerology(0, 15.0, 4096, 1.0 / 3.0).unwrap_err();
        assert!(
            matches!(err, Error::Config { ref field, .. } if field == "cp_ratio"),
            "{err}"
        );
    }

    #[test]
    fn indivisible_transform_rejected() {
        let err = make_numerology(3, 15.0, 100, 0.25).unwrap_err();
        assert!(
            matches!(err, Error::Config { ref field, .. } if field == "n_fft"),
            "{err}"
        );
    }

    #[test]
    fn bad_cp_ratio_rejected() {
        assert!(make_numerology(0, 15.0, 4096, 0.0).is_err());
        assert!(make_numerology(0, 15.0, 4096, 1.0).is_err());
    }

    #[test]
    fn ue_profile_validation() {
        assert!(UeProfile::new(UeId(1), NumerologyIndex::One, f64::NAN, 10).is_err());
        assert!(UeProfile::new(UeId(1), NumerologyIndex::One, 0.0, 0).is_err());
        let ue = UeProfile::new(UeId(1), NumerologyIndex::One, 3.0, 10).unwrap();
        assert!((ue.amplitude().powi(2) - db_to_linear(3.0)).abs() < 1e-12);
    }

    #[test]
    fn three_by_120_layout() {
        let (n1, n2) = table_ii();
        let alloc = build_allocation(
            n1,
            n2,
            ues(NumerologyIndex::One, 1, &[120; 3]),
            ues(NumerologyIndex::Two, 4, &[120; 3]),
            0,
        )
        .unwrap();
        assert_eq!(alloc.edge_ue(NumerologyIndex::One).unwrap().id(), UeId(3));
        assert_eq!(alloc.edge_ue(NumerologyIndex::Two).unwrap().id(), UeId(4));
        let edges: Vec<_> = alloc.placements().iter().filter(|p| p.is_edge).map(|p| p.ue).collect();
        assert_eq!(edges, vec![UeId(3), UeId(4)]);
        let b1 = alloc.block(NumerologyIndex::One);
        let b2 = alloc.block(NumerologyIndex::Two);
        assert_eq!(b1.width_bins(), 360);
        assert_eq!(b2.width_bins(), 720);
        assert_eq!(b2.start_bin, b1.start_bin + 360);
        assert_eq!(alloc.window_len(), 4352);
        assert_eq!(alloc.symbols_per_window(NumerologyIndex::Two), 2);
    }

    #[test]
    fn single_ue_per_numerology_is_edge() {
        let (n1, n2) = table_ii();
        let alloc = build_allocation(
            n1,
            n2,
            ues(NumerologyIndex::One, 1, &[12]),
            ues(NumerologyIndex::Two, 2, &[12]),
            0,
        )
        .unwrap();
        assert!(alloc.placements().iter().all(|p| p.is_edge));
    }

    #[test]
    fn grid_overflow() {
        let (n1, n2) = table_ii();
        let err = build_allocation(
            n1,
            n2,
            ues(NumerologyIndex::One, 1, &[256; 10]),
            ues(NumerologyIndex::Two, 11, &[256; 10]),
            0,
        )
        .unwrap_err();
        match err {
            Error::Allocation { required, available } => {
                assert_eq!(required, 2560 + 5120);
                assert_eq!(available, 4096);
            }
            other => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn guard_bins_leave_gap() {
        let (n1, n2) = table_ii();
        let alloc = build_allocation(
            n1,
            n2,
            ues(NumerologyIndex::One, 1, &[10, 20]),
            ues(NumerologyIndex::Two, 3, &[5]),
            4,
        )
        .unwrap();
        let b1 = alloc.block(NumerologyIndex::One);
        let b2 = alloc.block(NumerologyIndex::Two);
        assert_eq!(b2.start_bin - (b1.start_bin + b1.width_bins()), 4);
    }

    #[test]
    fn mismatched_windows_rejected() {
        let n1 = make_numerology(0, 15.0, 4096, 1.0 / 16.0).unwrap();
        let n2 = make_numerology(1, 15.0, 4096, 1.0 / 8.0).unwrap();
        let err = build_allocation(n1, n2, ues(NumerologyIndex::One, 1, &[1]), vec![], 0).unwrap_err();
        assert!(matches!(err, Error::Config { .. }));
    }

    #[test]
    fn misfiled_or_duplicate_ues_rejected() {
        let (n1, n2) = table_ii();
        assert!(build_allocation(n1.clone(), n2.clone(), ues(NumerologyIndex::Two, 1, &[1]), vec![], 0).is_err());
        assert!(build_allocation(
            n1.clone(),
            n2.clone(),
            ues(NumerologyIndex::One, 1, &[1]),
            ues(NumerologyIndex::Two, 1, &[1]),
            0
        )
        .is_err());
        assert!(build_allocation(n1, n2, vec![], vec![], 0).is_err());
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #[test]
            fn spacing_scales_by_power_of_two(k in 0u32..6) {
                let base = make_numerology(0, 15.0, 4096, 1.0 / 16.0).unwrap();
                let n = make_numerology(k, 15.0, 4096, 1.0 / 16.0).unwrap();
                prop_assert_eq!(n.delta_f_khz() / base.delta_f_khz(), f64::from(1u32 << k));
                // kHz x us
                prop_assert!((n.delta_f_khz() * n.timing().useful_symbol_us() - 1e3).abs() < 1e-9);
            }

            #[test]
            fn placements_tile_the_band(
                c1 in prop::collection::vec(1usize..200, 0..5),
                c2 in prop::collection::vec(1usize..200, 0..5),
                guard in 0usize..16,
            ) {
                prop_assume!(!(c1.is_empty() && c2.is_empty()));
                let (n1, n2) = table_ii();
                let res = build_allocation(
                    n1, n2,
                    ues(NumerologyIndex::One, 1, &c1),
                    ues(NumerologyIndex::Two, 100, &c2),
                    guard,
                );
                let need = c1.iter().sum::<usize>() + guard + 2 * c2.iter().sum::<usize>();
                if need > 4096 {
                    prop_assert!(res.is_err());
                    return Ok(());
                }
                let alloc = res.unwrap();
                let mut ranges: Vec<_> = alloc.placements().iter().map(|p| p.bin_range()).collect();
                ranges.sort_by_key(|r| r.start);
                let mut gaps = 0;
                for w in ranges.windows(2) {
                    prop_assert!(w[0].end <= w[1].start);
                    gaps += w[1].start - w[0].end;
                }
                let expect_gap = if c1.is_empty() || c2.is_empty() { 0 } else { guard };
                prop_assert_eq!(gaps, expect_gap);
                prop_assert!(ranges.last().unwrap().end <= 4096);
                let edges = alloc.placements().iter().filter(|p| p.is_edge).count();
                prop_assert_eq!(edges, usize::from(!c1.is_empty()) + usize::from(!c2.is_empty()));
            }
        }
    }
}
