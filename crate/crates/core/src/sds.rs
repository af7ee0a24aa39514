//! Sequential dynamical system maps `[F, ω] = F_{ω_m} ∘ … ∘ F_{ω_1}` over
//! `Circ_n`, their periodic states, and update-order independence checks.

use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::perm::Permutation;
use crate::rule::Rule;
use crate::state::{apply_local_bits, check_enumerable, fixed_states, StateSet};
use crate::Error;

/// Largest `n` for which every simple order is enumerated (`n!` orders).
pub const EXHAUSTIVE_MAX_N: u32 = 8;

/// A finite sequence of 0-based vertices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct UpdateOrder {
    n: u32,
    seq: Vec<u32>,
}

impl UpdateOrder {
    pub fn new(n: u32, seq: Vec<u32>) -> Result<Self, Error> {
        if let Some(&v) = seq.iter().find(|&&v| v >= n) {
            return Err(Error::VertexOutOfRange { vertex: v, n });
        }
        Ok(UpdateOrder { n, seq })
    }

    /// `0, 1, …, n-1`.
    pub fn identity(n: u32) -> Self {
        UpdateOrder { n, seq: (0..n).collect() }
    }

    /// Parses a comma-separated vertex list such as `"0,2,1,3"`.
    pub fn parse(n: u32, s: &str) -> Result<Self, Error> {
        let seq = s
            .split(',')
            .filter(|t| !t.trim().is_empty())
            .map(|t| u32::from_str(t.trim()).map_err(|_| Error::InvalidOrder))
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(n, seq)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn seq(&self) -> &[u32] {
        &self.seq
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    fn counts(&self) -> Vec<u32> {
        let mut c = alloc::vec![0u32; self.n as usize];
        for &v in &self.seq {
            c[v as usize] += 1;
        }
        c
    }

    /// Every vertex occurs at least once.
    pub fn is_fair(&self) -> bool {
        self.counts().iter().all(|&c| c >= 1)
    }

    /// Every vertex occurs exactly once.
    pub fn is_simple(&self) -> bool {
        self.counts().iter().all(|&c| c == 1)
    }
}

impl fmt::Display for UpdateOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, v) in self.seq.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Applies the update order to one packed state.
#[inline]
pub fn apply_order_bits(rule: Rule, n: u32, order: &[u32], mut bits: u64) -> u64 {
    for &i in order {
        bits = apply_local_bits(rule, bits, n, i);
    }
    bits
}

/// The full successor table of an SDS map.
#[derive(Clone, Debug)]
pub struct SdsMap {
    pub rule: Rule,
    pub n: u32,
    pub order: UpdateOrder,
    image: Vec<u32>,
}

impl SdsMap {
    pub fn new(rule: Rule, n: u32, order: &UpdateOrder) -> Result<Self, Error> {
        check_enumerable(n)?;
        if order.n() != n {
            return Err(Error::InvalidOrder);
        }
        if !order.is_fair() {
            return Err(Error::UnfairOrder);
        }
        let image = (0..1u64 << n)
            .map(|s| apply_order_bits(rule, n, order.seq(), s) as u32)
            .collect();
        Ok(SdsMap { rule, n, order: order.clone(), image })
    }

    pub fn image(&self) -> &[u32] {
        &self.image
    }

    #[inline]
    pub fn apply(&self, bits: u64) -> u64 {
        self.image[bits as usize] as u64
    }

    /// States on cycles of the functional graph.
    pub fn periodic_states(&self) -> StateSet {
        recurrent_set(self.n, &self.image)
    }

    /// `⋂_k [F,ω]^k(F^n)`, iterating the image until it stops shrinking.
    pub fn periodic_states_by_image(&self) -> StateSet {
        let size = self.image.len();
        let mut current = alloc::vec![true; size];
        let mut count = size;
        loop {
            let mut next = alloc::vec![false; size];
            for (s, &alive) in current.iter().enumerate() {
                if alive {
                    next[self.image[s] as usize] = true;
                }
            }
            let c = next.iter().filter(|&&b| b).count();
            current = next;
            if c == count {
                break;
            }
            count = c;
        }
        let mut out = StateSet::empty(self.n).expect("n already checked");
        for (s, &alive) in current.iter().enumerate() {
            if alive {
                out.insert_bits(s as u64);
            }
        }
        out
    }
}

/// Recurrent points of the map `s -> image[s]` on `0..2^n`.
fn recurrent_set(n: u32, image: &[u32]) -> StateSet {
    const UNSEEN: u32 = u32::MAX;
    let size = image.len();
    // visit[s] = id of the walk that first reached s
    let mut visit = alloc::vec![UNSEEN; size];
    let mut out = StateSet::empty(n).expect("n already checked");
    let mut path = Vec::new();
    for start in 0..size {
        if visit[start] != UNSEEN {
            continue;
        }
        let walk = start as u32;
        path.clear();
        let mut s = start;
        while visit[s] == UNSEEN {
            visit[s] = walk;
            path.push(s);
            s = image[s] as usize;
        }
        if visit[s] == walk {
            // closed a new cycle through s
            let mut t = s;
            loop {
                out.insert_bits(t as u64);
                t = image[t] as usize;
                if t == s {
                    break;
                }
            }
        }
    }
    out
}

pub fn sds_map(rule: Rule, n: u32, order: &UpdateOrder) -> Result<SdsMap, Error> {
    SdsMap::new(rule, n, order)
}

pub fn periodic_states(rule: Rule, n: u32, order: &UpdateOrder) -> Result<StateSet, Error> {
    Ok(SdsMap::new(rule, n, order)?.periodic_states())
}

/// States fixed by every local function; for an ω-independent rule these
/// are exactly the periodic states fixed by some simple order.
pub fn fix_set(rule: Rule, n: u32) -> Result<StateSet, Error> {
    fixed_states(rule, n)
}

/// Outcome of comparing periodic sets across update orders.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IndependenceCheck {
    Independent { orders_checked: usize },
    Witness { first: UpdateOrder, second: UpdateOrder },
}

impl IndependenceCheck {
    pub fn is_independent(&self) -> bool {
        matches!(self, IndependenceCheck::Independent { .. })
    }
}

/// Lexicographic successor; false when `v` is the last permutation.
pub fn next_permutation(v: &mut [u32]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every simple update order of `Circ_n` in lexicographic order.
pub fn simple_orders(n: u32) -> impl Iterator<Item = UpdateOrder> {
    let mut current: Option<Vec<u32>> = Some((0..n).collect());
    core::iter::from_fn(move || {
        let out = current.take()?;
        let mut next = out.clone();
        if next_permutation(&mut next) {
            current = Some(next);
        }
        Some(UpdateOrder { n, seq: out })
    })
}

fn compare_orders(
    rule: Rule,
    n: u32,
    orders: impl Iterator<Item = UpdateOrder>,
) -> Result<IndependenceCheck, Error> {
    let mut reference: Option<(UpdateOrder, StateSet)> = None;
    let mut checked = 0;
    for order in orders {
        let per = periodic_states(rule, n, &order)?;
        checked += 1;
        match &reference {
            None => reference = Some((order, per)),
            Some((first, p0)) => {
                if *p0 != per {
                    return Ok(IndependenceCheck::Witness { first: first.clone(), second: order });
                }
            }
        }
    }
    Ok(IndependenceCheck::Independent { orders_checked: checked })
}

/// Compares periodic sets over all simple orders for `n <= 8`; above that
/// over `samples` random permutations drawn from `seed`.
pub fn check_pi_independence(
    rule: Rule,
    n: u32,
    samples: usize,
    seed: u64,
) -> Result<IndependenceCheck, Error> {
    check_enumerable(n)?;
    if n <= EXHAUSTIVE_MAX_N {
        compare_orders(rule, n, simple_orders(n))
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let orders = (0..samples.max(2)).map(|_| random_simple_order(n, &mut rng));
        compare_orders(rule, n, core::iter::once(UpdateOrder::identity(n)).chain(orders))
    }
}

pub fn random_simple_order(n: u32, rng: &mut impl Rng) -> UpdateOrder {
    let mut seq: Vec<u32> = (0..n).collect();
    seq.shuffle(rng);
    UpdateOrder { n, seq }
}

/// A fair order of length uniform in `[n, max_len]`: filled uniformly, then
/// repeated entries overwritten until every vertex occurs.
pub fn random_fair_order(n: u32, max_len: usize, rng: &mut impl Rng) -> UpdateOrder {
    let len = rng.gen_range(n as usize..=max_len.max(n as usize));
    let mut seq: Vec<u32> = (0..len).map(|_| rng.gen_range(0..n)).collect();
    let mut counts = alloc::vec![0u32; n as usize];
    for &v in &seq {
        counts[v as usize] += 1;
    }
    for v in 0..n {
        if counts[v as usize] > 0 {
            continue;
        }
        let spare: Vec<usize> = (0..len).filter(|&j| counts[seq[j] as usize] > 1).collect();
        let j = spare[rng.gen_range(0..spare.len())];
        counts[seq[j] as usize] -= 1;
        seq[j] = v;
        counts[v as usize] = 1;
    }
    UpdateOrder { n, seq }
}

/// Compares periodic sets across `samples` random fair orders of length at
/// most `max_len`, plus every simple order when `n <= 8`.
pub fn check_omega_independence_sampled(
    rule: Rule,
    n: u32,
    samples: usize,
    max_len: usize,
    seed: u64,
) -> Result<IndependenceCheck, Error> {
    check_enumerable(n)?;
    if max_len < n as usize {
        return Err(Error::InvalidOrder);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let fair: Vec<UpdateOrder> = (0..samples).map(|_| random_fair_order(n, max_len, &mut rng)).collect();
    if n <= EXHAUSTIVE_MAX_N {
        compare_orders(rule, n, simple_orders(n).chain(fair))
    } else {
        compare_orders(rule, n, core::iter::once(UpdateOrder::identity(n)).chain(fair))
    }
}

/// Result of searching for a pair of orders with different periodic sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DependenceSearch {
    Witness { n: u32, first: UpdateOrder, second: UpdateOrder },
    /// No witness inside the searched bounds.
    Unresolved,
}

/// Looks for update-order dependence at each `n` in `n_min..=n_max`, first
/// over simple orders, then over sampled fair orders of length up to `2n`.
pub fn find_dependence_witness(
    rule: Rule,
    n_min: u32,
    n_max: u32,
    samples: usize,
    seed: u64,
) -> Result<DependenceSearch, Error> {
    for n in n_min..=n_max {
        let checks = [
            check_pi_independence(rule, n, samples, seed)?,
            check_omega_independence_sampled(rule, n, samples, 2 * n as usize, seed)?,
        ];
        for c in checks {
            if let IndependenceCheck::Witness { first, second } = c {
                return Ok(DependenceSearch::Witness { n, first, second });
            }
        }
    }
    Ok(DependenceSearch::Unresolved)
}

/// A state set with a dense `0..len` indexing, in increasing packed order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IndexedStates {
    n: u32,
    states: Vec<u64>,
}

impl IndexedStates {
    pub fn new(set: &StateSet) -> Self {
        IndexedStates { n: set.n(), states: set.to_sorted_vec() }
    }

    pub fn from_sorted(n: u32, states: Vec<u64>) -> Self {
        debug_assert!(states.windows(2).all(|w| w[0] < w[1]));
        IndexedStates { n, states }
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn states(&self) -> &[u64] {
        &self.states
    }

    pub fn state(&self, idx: usize) -> u64 {
        self.states[idx]
    }

    pub fn index_of(&self, bits: u64) -> Option<usize> {
        self.states.binary_search(&bits).ok()
    }
}

/// `F_i` restricted to `domain`, which must be mapped into itself.
pub fn restricted_local(rule: Rule, i: u32, domain: &IndexedStates) -> Result<Permutation, Error> {
    let n = domain.n();
    if i >= n {
        return Err(Error::VertexOutOfRange { vertex: i, n });
    }
    let images = domain
        .states()
        .iter()
        .map(|&s| {
            let t = apply_local_bits(rule, s, n, i);
            domain
                .index_of(t)
                .map(|k| k as u32)
                .ok_or(Error::NotInvariant { vertex: i })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Permutation::from_images(images).map_err(|_| Error::NotInvariant { vertex: i })
}

pub fn restricted_permutation(
    rule: Rule,
    n: u32,
    i: u32,
    periodic: &StateSet,
) -> Result<Permutation, Error> {
    if periodic.n() != n {
        return Err(Error::InvalidState);
    }
    restricted_local(rule, i, &IndexedStates::new(periodic))
}

/// `[F, ω]` restricted to `domain`.
pub fn restricted_order(
    rule: Rule,
    order: &UpdateOrder,
    domain: &IndexedStates,
) -> Result<Permutation, Error> {
    let n = domain.n();
    let images = domain
        .states()
        .iter()
        .map(|&s| {
            let t = apply_order_bits(rule, n, order.seq(), s);
            domain.index_of(t).map(|k| k as u32).ok_or(Error::NotInvariant { vertex: u32::MAX })
        })
        .collect::<Result<Vec<_>, _>>()?;
    Permutation::from_images(images).map_err(|_| Error::NotInvariant { vertex: u32::MAX })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::state::{avoid_set, AvoidSpec, State};
    use alloc::string::ToString;

    #[test]
    fn order_predicates() {
        let o = UpdateOrder::parse(4, "0,1,2,3").unwrap();
        assert!(o.is_fair() && o.is_simple());
        let o = UpdateOrder::parse(4, "0,1,2,3,0").unwrap();
        assert!(o.is_fair() && !o.is_simple());
        let o = UpdateOrder::parse(4, "0,1,2").unwrap();
        assert!(!o.is_fair());
        assert!(UpdateOrder::parse(4, "0,4").is_err());
        assert!(matches!(sds_map(Rule(150), 4, &o), Err(Error::UnfairOrder)));
    }

    #[test]
    fn simple_maps() {
        let n = 5;
        let order = UpdateOrder::parse(n, "3,1,4,0,2").unwrap();
        let m = sds_map(Rule(204), n, &order).unwrap();
        assert!(m.image().iter().enumerate().all(|(s, &t)| s as u32 == t));
        let m = sds_map(Rule(51), n, &order).unwrap();
        assert!(m.image().iter().enumerate().all(|(s, &t)| (s as u32) ^ 31 == t));
    }

    /// Hand composition of four parity updates, written out vertex by vertex.
    fn parity_by_hand(y: [u8; 4]) -> [u8; 4] {
        let mut y = y;
        y[0] = (y[3] + y[0] + y[1]) % 2;
        y[1] = (y[0] + y[1] + y[2]) % 2;
        y[2] = (y[1] + y[2] + y[3]) % 2;
        y[3] = (y[2] + y[3] + y[0]) % 2;
        y
    }

    #[test]
    fn parity_rule_composition() {
        assert_eq!(parity_by_hand([1, 0, 0, 0]), [1, 1, 1, 0]);
        let m = sds_map(Rule(150), 4, &UpdateOrder::identity(4)).unwrap();
        let y: State = "1000".parse().unwrap();
        let out = State::new(m.apply(y.bits()), 4).unwrap();
        assert_eq!(out.to_string(), "1110");
        for bits in 0..16u64 {
            let y = [0, 1, 2, 3].map(|p| ((bits >> p) & 1) as u8);
            let h = parity_by_hand(y);
            let expect: u64 = (0..4).map(|p| (h[p] as u64) << p).sum();
            assert_eq!(m.apply(bits), expect);
        }
    }

    #[test]
    fn periodic_examples() {
        let n = 5;
        let order = UpdateOrder::parse(n, "0,2,4,1,3,0").unwrap();
        let p = periodic_states(Rule(1), n, &order).unwrap();
        assert_eq!(p, avoid_set(n, &AvoidSpec::parse("A").unwrap()).unwrap());
        assert_eq!(p.len(), 11);
        assert_eq!(periodic_states(Rule(204), n, &order).unwrap().len(), 32);
        let p = periodic_states(Rule(232), 4, &UpdateOrder::identity(4)).unwrap();
        assert_eq!(p, avoid_set(4, &AvoidSpec::parse("DE").unwrap()).unwrap());
    }

    #[test]
    fn cycle_detection_matches_image_stabilization() {
        for k in [0u8, 1, 30, 57, 73, 110, 122, 156, 201, 232] {
            for n in 4..=7 {
                let mut rng = ChaCha8Rng::seed_from_u64(k as u64 * 31 + n as u64);
                let order = random_fair_order(n, 2 * n as usize, &mut rng);
                let m = sds_map(Rule(k), n, &order).unwrap();
                assert_eq!(m.periodic_states(), m.periodic_states_by_image(), "rule {k} n {n}");
            }
        }
    }

    #[test]
    fn independence_checks() {
        assert!(check_pi_independence(Rule(150), 5, 0, 0).unwrap().is_independent());
        assert!(check_pi_independence(Rule(51), 4, 0, 0).unwrap().is_independent());
        assert!(check_omega_independence_sampled(Rule(156), 5, 200, 10, 7).unwrap().is_independent());
        assert!(check_omega_independence_sampled(Rule(204), 6, 20, 12, 1).unwrap().is_independent());
        assert_eq!(
            simple_orders(4).count(),
            24,
        );
    }

    #[test]
    fn dependent_rule_has_witness() {
        // rule 30 is outside the list
        match find_dependence_witness(Rule(30), 4, 6, 50, 3).unwrap() {
            DependenceSearch::Witness { n, first, second } => {
                let a = periodic_states(Rule(30), n, &first).unwrap();
                let b = periodic_states(Rule(30), n, &second).unwrap();
                assert_ne!(a, b);
            }
            DependenceSearch::Unresolved => panic!("expected a witness for rule 30"),
        }
    }

    #[test]
    fn fair_order_sampler() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..500 {
            let o = random_fair_order(6, 12, &mut rng);
            assert!(o.is_fair());
            assert!((6..=12).contains(&o.len()));
        }
    }

    #[test]
    fn restricted_permutations() {
        let n = 5;
        let all = StateSet::full(n).unwrap();
        for i in 0..n {
            assert!(restricted_permutation(Rule(204), n, i, &all).unwrap().is_identity());
        }
        let na = avoid_set(n, &AvoidSpec::parse("A").unwrap()).unwrap();
        let p = restricted_permutation(Rule(201), n, 0, &na).unwrap();
        assert!(p.is_involution());
        assert_eq!(p.transposition_count(), 3);
        // N_A is not closed under the parity rule
        assert!(matches!(
            restricted_permutation(Rule(150), n, 0, &na),
            Err(Error::NotInvariant { vertex: 0 })
        ));
    }

    #[test]
    fn exchange_rule_transposition_count() {
        // flips in three of the four neighbour contexts: 3·2^{n-3} two-cycles
        for n in 4..=7u32 {
            let all = StateSet::full(n).unwrap();
            let moved = (0..1u64 << n)
                .filter(|&s| apply_local_bits(Rule(57), s, n, 0) != s)
                .count();
            let p = restricted_permutation(Rule(57), n, 0, &all).unwrap();
            assert_eq!(p.transposition_count(), moved / 2);
            assert_eq!(p.transposition_count(), 3 << (n - 3));
        }
    }
}
