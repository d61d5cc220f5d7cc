#![allow(dead_code)]

use numfair::numerology::{build_allocation, make_numerology, NumerologyIndex, SpectrumAllocation, UeId, UeProfile};

pub const N_REF: usize = 4096;

/// NUM-1 UEs get ids 1.., NUM-2 UEs continue after them. Both lists are in
/// frequency order.
pub fn alloc(p1: &[f64], p2: &[f64], subcarriers: usize) -> SpectrumAllocation {
    let n1 = make_numerology(0, 15.0, N_REF, 1.0 / 16.0).unwrap();
    let n2 = make_numerology(1, 15.0, N_REF, 1.0 / 16.0).unwrap();
    let ues = |which, base: usize, p: &[f64]| -> Vec<UeProfile> {
        p.iter()
            .enumerate()
            .map(|(i, &db)| UeProfile::new(UeId((base + i + 1) as u32), which, db, subcarriers).unwrap())
            .collect()
    };
    build_allocation(
        n1,
        n2,
        ues(NumerologyIndex::One, 0, p1),
        ues(NumerologyIndex::Two, p1.len(), p2),
        0,
    )
    .unwrap()
}

pub fn case1() -> SpectrumAllocation {
    alloc(&[0.0; 3], &[0.0; 3], 120)
}

pub fn po(a: f64, b: f64) -> f64 {
    (a - b).abs()
}

/// Exhaustive minimum power offset over all cross-numerology pairs.
pub fn min_po(p1: &[f64], p2: &[f64]) -> f64 {
    p1.iter()
        .flat_map(|a| p2.iter().map(move |b| po(*a, *b)))
        .fold(f64::INFINITY, f64::min)
}

/// Smallest dB-average power among pairs within r times the minimum offset.
pub fn brute_min_pl(p1: &[f64], p2: &[f64], r: f64) -> f64 {
    let th = r * min_po(p1, p2);
    let mut best = f64::INFINITY;
    for a in p1 {
        for b in p2 {
            if po(*a, *b) <= th {
                best = best.min((a + b) / 2.0);
            }
        }
    }
    best
}
