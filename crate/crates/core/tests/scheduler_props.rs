mod common;

use common::{brute_min_pl, min_po, po};
use numfair::numerology::{NumerologyIndex, UeId, UeProfile};
use numfair::scheduler::{
    build_candidates, schedule_algo1, schedule_algo2, schedule_algo2_with, schedule_random, PlAveraging,
    ScheduleDecision,
};
use proptest::prelude::*;

fn ues(which: NumerologyIndex, base: u32, powers: &[f64]) -> Vec<UeProfile> {
    powers
        .iter()
        .enumerate()
        .map(|(i, &p)| UeProfile::new(UeId(base + i as u32), which, p, 12).unwrap())
        .collect()
}

fn lists(p1: &[f64], p2: &[f64]) -> (Vec<UeProfile>, Vec<UeProfile>) {
    (
        ues(NumerologyIndex::One, 1, p1),
        ues(NumerologyIndex::Two, 1 + p1.len() as u32, p2),
    )
}

fn ids(v: &[UeProfile]) -> Vec<u32> {
    let mut out: Vec<u32> = v.iter().map(|u| u.id().0).collect();
    out.sort_unstable();
    out
}

fn check_permutation(d: &ScheduleDecision, ues1: &[UeProfile], ues2: &[UeProfile]) {
    assert_eq!(ids(&d.order1), ids(ues1));
    assert_eq!(ids(&d.order2), ids(ues2));
    assert_eq!(d.order1.last().unwrap().id(), ues1[d.edge_pair.s].id());
    assert_eq!(d.order2[0].id(), ues2[d.edge_pair.t].id());
}

fn powers(max_len: usize) -> impl Strategy<Value = Vec<f64>> {
    prop::collection::vec(0.0f64..10.0, 1..=max_len)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn algo1_reaches_the_exhaustive_minimum(p1 in powers(6), p2 in powers(6)) {
        let (u1, u2) = lists(&p1, &p2);
        let d = schedule_algo1(&u1, &u2).unwrap();
        prop_assert_eq!(d.edge_pair.po_db, min_po(&p1, &p2));
        check_permutation(&d, &u1, &u2);
    }

    #[test]
    fn algo2_picks_the_lowest_power_candidate(p1 in powers(6), p2 in powers(6), r in 1.0f64..4.0) {
        let (u1, u2) = lists(&p1, &p2);
        let d = schedule_algo2(&u1, &u2, r).unwrap();
        let (a, b) = (p1[d.edge_pair.s], p2[d.edge_pair.t]);
        prop_assert!(po(a, b) <= r * min_po(&p1, &p2));
        prop_assert_eq!((a + b) / 2.0, brute_min_pl(&p1, &p2, r));
        check_permutation(&d, &u1, &u2);
    }

    #[test]
    fn larger_r_never_raises_the_chosen_power(p1 in powers(5), p2 in powers(5), r in 1.0f64..3.0, dr in 0.0f64..3.0) {
        let (u1, u2) = lists(&p1, &p2);
        let pl = |r: f64| {
            let d = schedule_algo2(&u1, &u2, r).unwrap();
            (p1[d.edge_pair.s] + p2[d.edge_pair.t]) / 2.0
        };
        prop_assert!(pl(r + dr) <= pl(r));
        let small = build_candidates(&u1, &u2, r).unwrap();
        let big = build_candidates(&u1, &u2, r + dr).unwrap();
        for p in &small.pairs {
            prop_assert!(big.pairs.iter().any(|q| q.s == p.s && q.t == p.t));
        }
    }

    #[test]
    fn common_shift_keeps_the_chosen_pair(
        p1 in prop::collection::vec(0u8..=20, 1..5),
        p2 in prop::collection::vec(0u8..=20, 1..5),
        shift in -8i8..8,
    ) {
        // half-dB steps so that shifted offsets and averages stay exact
        let f = |v: &[u8], c: f64| -> Vec<f64> { v.iter().map(|&x| x as f64 * 0.5 + c).collect() };
        let c = shift as f64 * 0.5;
        let (a1, a2) = lists(&f(&p1, 0.0), &f(&p2, 0.0));
        let (b1, b2) = lists(&f(&p1, c), &f(&p2, c));
        let x = schedule_algo1(&a1, &a2).unwrap();
        let y = schedule_algo1(&b1, &b2).unwrap();
        prop_assert_eq!((x.edge_pair.s, x.edge_pair.t), (y.edge_pair.s, y.edge_pair.t));
        let x = schedule_algo2(&a1, &a2, 2.0).unwrap();
        let y = schedule_algo2(&b1, &b2, 2.0).unwrap();
        prop_assert_eq!((x.edge_pair.s, x.edge_pair.t), (y.edge_pair.s, y.edge_pair.t));
    }

    #[test]
    fn random_orders_are_permutations(p1 in powers(6), p2 in powers(6), seed in any::<u64>()) {
        let (u1, u2) = lists(&p1, &p2);
        let d = schedule_random(&u1, &u2, seed).unwrap();
        check_permutation(&d, &u1, &u2);
        let again = schedule_random(&u1, &u2, seed).unwrap();
        prop_assert_eq!(ids(&again.order1), ids(&d.order1));
        prop_assert_eq!((again.edge_pair.s, again.edge_pair.t), (d.edge_pair.s, d.edge_pair.t));
    }

    #[test]
    fn linear_averaging_still_respects_the_threshold(p1 in powers(4), p2 in powers(4)) {
        let (u1, u2) = lists(&p1, &p2);
        let d = schedule_algo2_with(&u1, &u2, 2.0, PlAveraging::Linear).unwrap();
        prop_assert!(d.edge_pair.po_db <= 2.0 * min_po(&p1, &p2));
    }
}

#[test]
fn random_edge_choice_is_uniform() {
    let (u1, u2) = lists(&[1.0, 2.0, 3.0], &[4.0, 5.0, 6.0]);
    let n = 10_000;
    let mut edge1 = [0usize; 3];
    let mut edge2 = [0usize; 3];
    for seed in 0..n {
        let d = schedule_random(&u1, &u2, seed).unwrap();
        edge1[d.edge_pair.s] += 1;
        edge2[d.edge_pair.t] += 1;
    }
    for c in edge1.iter().chain(&edge2) {
        let f = *c as f64 / n as f64;
        assert!((f - 1.0 / 3.0).abs() <= 0.02, "{edge1:?} {edge2:?}");
    }
}

#[test]
fn singletons_have_one_decision() {
    let (u1, u2) = lists(&[7.0], &[2.0]);
    for d in [
        schedule_algo1(&u1, &u2).unwrap(),
        schedule_algo2(&u1, &u2, 2.0).unwrap(),
        schedule_random(&u1, &u2, 5).unwrap(),
    ] {
        assert_eq!((d.edge_pair.s, d.edge_pair.t), (0, 0));
        assert_eq!(d.edge_pair.po_db, 5.0);
    }
}
