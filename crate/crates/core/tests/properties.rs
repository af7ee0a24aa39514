//! Randomised invariants over rules, states and update orders.

use aca_core::perm::Permutation;
use aca_core::rule::OMEGA_INDEPENDENT;
use aca_core::sds::{SdsMap, UpdateOrder};
use aca_core::{Dynamics, PermGroup, Rule, State};
use proptest::prelude::*;

fn fair_order(n: u32) -> impl Strategy<Value = UpdateOrder> {
    (Just((0..n).collect::<Vec<u32>>()).prop_shuffle(), proptest::collection::vec(0..n, 0..8)).prop_map(
        move |(mut seq, extra)| {
            seq.extend(extra);
            UpdateOrder::new(n, seq).unwrap()
        },
    )
}

fn independent_rule() -> impl Strategy<Value = Rule> {
    proptest::sample::select(OMEGA_INDEPENDENT.to_vec()).prop_map(Rule)
}

/// Listed rules whose periodic set still moves under repeated-vertex orders.
const FAIR_ORDER_SENSITIVE: [u8; 18] =
    [28, 29, 32, 40, 70, 71, 96, 152, 157, 184, 188, 194, 199, 226, 230, 235, 249, 251];

fn fair_order_stable_rule() -> impl Strategy<Value = Rule> {
    let rules: Vec<u8> = OMEGA_INDEPENDENT.iter().copied().filter(|r| !FAIR_ORDER_SENSITIVE.contains(r)).collect();
    proptest::sample::select(rules).prop_map(Rule)
}

fn simple_order(n: u32) -> impl Strategy<Value = UpdateOrder> {
    Just((0..n).collect::<Vec<u32>>()).prop_shuffle().prop_map(move |seq| UpdateOrder::new(n, seq).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn periodic_set_is_simple_order_independent(rule in independent_rule(), order in (4u32..=7).prop_flat_map(simple_order)) {
        let n = order.n();
        let reference = SdsMap::new(rule, n, &UpdateOrder::identity(n)).unwrap().periodic_states();
        let other = SdsMap::new(rule, n, &order).unwrap().periodic_states();
        prop_assert_eq!(reference, other);
    }

    #[test]
    fn periodic_set_is_fair_order_independent(rule in fair_order_stable_rule(), order in (4u32..=7).prop_flat_map(fair_order)) {
        let n = order.n();
        let reference = SdsMap::new(rule, n, &UpdateOrder::identity(n)).unwrap().periodic_states();
        let other = SdsMap::new(rule, n, &order).unwrap().periodic_states();
        prop_assert_eq!(reference, other);
    }

    #[test]
    fn sds_map_permutes_its_periodic_states(rule in independent_rule(), order in (4u32..=6).prop_flat_map(fair_order)) {
        let n = order.n();
        let map = SdsMap::new(rule, n, &order).unwrap();
        let per = map.periodic_states();
        let images: std::collections::BTreeSet<u64> = per.iter_bits().map(|s| map.apply(s)).collect();
        prop_assert_eq!(images, per.iter_bits().collect());
    }

    #[test]
    fn rotation_conjugates_local_maps(rule in 0u8..=255, bits in any::<u64>(), n in 4u32..=12, i in 0u32..12, r in 0i64..12) {
        let i = i % n;
        let y = State::new(bits & ((1u64 << n) - 1), n).unwrap();
        let lhs = y.apply_local(Rule(rule), i).unwrap().rotate(r);
        let j = ((i as i64 + r).rem_euclid(n as i64)) as u32;
        let rhs = y.rotate(r).apply_local(Rule(rule), j).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn group_contains_products_of_generators(rule in independent_rule(), n in 4u32..=5, word in proptest::collection::vec(0usize..5, 1..12)) {
        let d = Dynamics::new(rule, n).unwrap();
        let g = d.group();
        let mut p = Permutation::identity(d.degree());
        for k in word {
            p = p.then(&d.generators()[k % n as usize]);
        }
        prop_assert!(g.contains(&p));
        prop_assert!(g.verify());
    }

    #[test]
    fn order_is_invariant_under_generator_conjugation(rule in independent_rule(), n in 4u32..=5, shift in 0usize..64) {
        let d = Dynamics::new(rule, n).unwrap();
        let deg = d.degree();
        let images: Vec<u32> = (0..deg as u32).map(|x| ((x as usize + shift) % deg) as u32).collect();
        let c = Permutation::from_images(images).unwrap();
        let conj: Vec<Permutation> = d.generators().iter().map(|g| c.inverse().then(g).then(&c)).collect();
        prop_assert_eq!(PermGroup::new(deg, &conj).unwrap().order(), d.group().order());
    }
}
