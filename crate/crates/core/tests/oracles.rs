//! Library results against small independent reimplementations.

use std::collections::{BTreeSet, HashMap};

use aca_core::classify::identify;
use aca_core::dynamics::{lucas_group, Dynamics};
use aca_core::enumeration::{fibonacci, orbit_count_formula};
use aca_core::perm::naive_closure_order;
use aca_core::rule::{omega_independent_rules, representatives, REPRESENTATIVES};
use aca_core::sds::{fix_set, SdsMap, UpdateOrder};
use aca_core::{GroupKind, Rule};
use num_bigint::BigUint;

/// One local update on a state held as a vector of cells.
fn step(rule: u8, cells: &mut [u8], i: usize) {
    let n = cells.len();
    let (l, c, r) = (cells[(i + n - 1) % n], cells[i], cells[(i + 1) % n]);
    cells[i] = (rule >> (4 * l + 2 * c + r)) & 1;
}

fn to_cells(bits: u64, n: usize) -> Vec<u8> {
    (0..n).map(|p| ((bits >> p) & 1) as u8).collect()
}

fn from_cells(cells: &[u8]) -> u64 {
    cells.iter().enumerate().map(|(p, &c)| (c as u64) << p).sum()
}

fn naive_sds(rule: u8, order: &[u32], bits: u64, n: usize) -> u64 {
    let mut cells = to_cells(bits, n);
    for &i in order {
        step(rule, &mut cells, i as usize);
    }
    from_cells(&cells)
}

/// A state is periodic iff iterating returns to it within `2^n` steps.
fn naive_periodic(rule: u8, order: &[u32], n: usize) -> BTreeSet<u64> {
    (0..1u64 << n)
        .filter(|&s| {
            let mut t = naive_sds(rule, order, s, n);
            for _ in 0..(1u64 << n) {
                if t == s {
                    return true;
                }
                t = naive_sds(rule, order, t, n);
            }
            false
        })
        .collect()
}

/// Connected components of the graph on `states` with an edge `y -- F_i(y)`.
fn naive_orbit_count(rule: u8, states: &BTreeSet<u64>, n: usize) -> usize {
    let mut label: HashMap<u64, usize> = HashMap::new();
    let mut count = 0;
    for &s in states {
        if label.contains_key(&s) {
            continue;
        }
        count += 1;
        let mut stack = vec![s];
        label.insert(s, count);
        while let Some(y) = stack.pop() {
            for i in 0..n {
                let mut cells = to_cells(y, n);
                step(rule, &mut cells, i);
                let z = from_cells(&cells);
                if let std::collections::hash_map::Entry::Vacant(e) = label.entry(z) {
                    e.insert(count);
                    stack.push(z);
                }
            }
        }
    }
    count
}

fn sample_rules() -> Vec<u8> {
    let mut rules: Vec<u8> = REPRESENTATIVES.to_vec();
    rules.extend([30, 45, 90, 110, 184, 18, 22, 106, 146, 62]);
    rules
}

#[test]
fn periodic_sets_agree_with_naive_iteration() {
    let orders: [&[u32]; 3] = [&[0, 1, 2, 3, 4], &[3, 1, 4, 0, 2], &[0, 2, 4, 1, 3, 0, 2]];
    for rule in sample_rules() {
        for order in orders {
            let o = UpdateOrder::new(5, order.to_vec()).unwrap();
            let map = SdsMap::new(Rule(rule), 5, &o).unwrap();
            let expected = naive_periodic(rule, order, 5);
            let got: BTreeSet<u64> = map.periodic_states().iter_bits().collect();
            assert_eq!(got, expected, "rule {rule} order {o}");
            assert_eq!(map.periodic_states(), map.periodic_states_by_image());
        }
    }
}

#[test]
fn orbit_partition_agrees_with_naive_components() {
    for rule in representatives() {
        for n in 4..=6u32 {
            let d = Dynamics::new(rule, n).unwrap();
            let states: BTreeSet<u64> = d.periodic_states().iter_bits().collect();
            assert_eq!(d.orbits().len(), naive_orbit_count(rule.0, &states, n as usize), "rule {rule} n {n}");
        }
    }
}

#[test]
fn trivial_group_iff_fixed_equals_periodic() {
    for rule in omega_independent_rules() {
        for n in 4..=7u32 {
            let d = Dynamics::new(rule, n).unwrap();
            let trivial = d.group().order() == BigUint::from(1u32);
            let fixed = fix_set(rule, n).unwrap();
            assert_eq!(trivial, fixed == *d.periodic_states(), "rule {rule} n {n}");
        }
    }
}

#[test]
fn restricted_generators_are_involutions_or_identity() {
    for rule in omega_independent_rules() {
        for n in 4..=6u32 {
            let d = Dynamics::new(rule, n).unwrap();
            for (i, g) in d.generators().iter().enumerate() {
                assert!(g.is_identity() || g.is_involution(), "rule {rule} n {n} F_{i}");
            }
        }
    }
}

#[test]
fn chain_order_agrees_with_naive_closure() {
    let mut compared = 0;
    for rule in omega_independent_rules() {
        for n in 4..=5u32 {
            let d = Dynamics::new(rule, n).unwrap();
            if let Some(size) = naive_closure_order(d.degree(), d.generators(), 100_000) {
                assert_eq!(d.group().order(), BigUint::from(size), "rule {rule} n {n}");
                compared += 1;
            }
        }
    }
    assert!(compared > 150, "only {compared} groups were small enough");
}

#[test]
fn orbit_formula_agrees_except_known_cases() {
    let mut mismatches = Vec::new();
    for rule in representatives() {
        for n in 4..=7u32 {
            let formula = orbit_count_formula(rule, n).unwrap();
            let computed = Dynamics::new(rule, n).unwrap().orbits().len() as u128;
            if formula != computed {
                mismatches.push((rule.0, n, formula, computed));
            }
        }
    }
    // the stated closed forms for rules 150 and 105 miss orbits at even n
    assert_eq!(mismatches, [(105, 4, 4, 5), (105, 6, 6, 3), (150, 4, 4, 5), (150, 6, 5, 6)]);
}

#[test]
fn equivalent_rules_share_orders_and_orbit_counts() {
    for rep in representatives() {
        for member in rep.equivalence_class().members {
            for n in 4..=5u32 {
                let a = Dynamics::new(rep, n).unwrap();
                let b = Dynamics::new(member, n).unwrap();
                assert_eq!(a.group().order(), b.group().order(), "{rep} vs {member} at n {n}");
                assert_eq!(a.orbits().len(), b.orbits().len(), "{rep} vs {member} at n {n}");
            }
        }
    }
}

#[test]
fn coxeter_labels_match_classification() {
    let expected = [
        (51, 2),
        (60, 4),
        (150, 3),
        (105, 3),
        (156, 6),
        (201, 6),
        (57, 12),
        (54, 12),
        (28, 2),
        (29, 2),
        (1, 6),
        (9, 6),
        (129, 6),
        (137, 6),
        (73, 6),
    ];
    for (rule, label) in expected {
        for n in 5..=7u32 {
            let c = Dynamics::new(Rule(rule), n).unwrap().coxeter_data().unwrap();
            assert_eq!(c.label, label, "rule {rule} n {n}");
            assert!(c.divides_twelve());
            assert!(c.distant_pairs_commute());
        }
    }
}

#[test]
fn restricted_group_lies_in_dynamics_group() {
    for rule in [51u8, 60, 150, 156, 201, 28, 1, 73] {
        for n in 4..=5u32 {
            let d = Dynamics::new(Rule(rule), n).unwrap();
            let dg = d.group();
            let rdg = d.restricted_group().unwrap();
            for g in rdg.generators() {
                assert!(dg.contains(g), "rule {rule} n {n}");
            }
            assert!(dg.order() >= rdg.order());
        }
    }
    // every simple order flips each cell once, so each [F, π] is the complement
    let d = Dynamics::new(Rule(51), 4).unwrap();
    let rdg = d.restricted_group().unwrap();
    assert_eq!(rdg.order(), BigUint::from(2u32));
    assert_eq!(d.group().order(), BigUint::from(16u32));
    assert!(Dynamics::new(Rule(204), 5).unwrap().restricted_group().unwrap().is_trivial());
}

#[test]
fn generator_transposition_counts() {
    for n in 4..=8u32 {
        let lg = lucas_group(n).unwrap();
        let fib = fibonacci(n - 1).unwrap() as usize;
        for g in lg.generators() {
            assert_eq!(g.transposition_count(), fib, "n {n}");
            assert_eq!(g.is_even(), fib.is_multiple_of(2));
        }
        let d = Dynamics::new(Rule(57), n).unwrap();
        for i in 0..n {
            let p = d.generator_parity(i).unwrap();
            assert_eq!(p.transpositions, 3 << (n - 3));
            assert!(p.even);
        }
        let p = Dynamics::new(Rule(204), n).unwrap().generator_parity(0).unwrap();
        assert_eq!(p.transpositions, 0);
    }
}

#[test]
fn identification_never_unidentified() {
    for rule in representatives() {
        for n in 4..=6u32 {
            let id = identify(rule, n).unwrap();
            assert_ne!(id.kind, GroupKind::Unidentified, "rule {rule} n {n}: {}", id.certificate);
        }
    }
}

#[test]
fn some_listed_rules_depend_on_fair_orders() {
    // (rule, order at n = 4) fixing 1000, which the identity order discards
    let witnesses: [(u8, &[u32]); 2] = [(28, &[3, 0, 1, 1, 2, 3, 3]), (184, &[3, 2, 1, 0, 1])];
    for (rule, order) in witnesses {
        assert!(Rule(rule).is_omega_independent());
        let fair = naive_periodic(rule, order, 4);
        let simple = naive_periodic(rule, &[0, 1, 2, 3], 4);
        assert!(fair.contains(&1) && !simple.contains(&1), "rule {rule}");
        let o = UpdateOrder::new(4, order.to_vec()).unwrap();
        let got: BTreeSet<u64> = SdsMap::new(Rule(rule), 4, &o).unwrap().periodic_states().iter_bits().collect();
        assert_eq!(got, fair);
    }
}
