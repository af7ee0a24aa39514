//! Dynamics groups: the local maps of an ω-independent rule restricted to
//! its periodic states, and the data derived from them.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigUint;

use crate::chain::PermGroup;
use crate::perm::{orbit_partition, OrbitPartition, Permutation};
use crate::rule::Rule;
use crate::sds::{restricted_local, restricted_order, simple_orders, IndexedStates, SdsMap, UpdateOrder};
use crate::state::{State, StateSet};
use crate::Error;

/// Largest `n` for which the restricted dynamics group is generated from
/// every simple order.
pub const RDG_MAX_N: u32 = 7;

/// Periodic states of an ω-independent rule together with the restricted
/// local maps `F_0*, …, F_{n-1}*`.
#[derive(Clone, Debug)]
pub struct Dynamics {
    rule: Rule,
    n: u32,
    periodic: StateSet,
    domain: IndexedStates,
    generators: Vec<Permutation>,
}

impl Dynamics {
    pub fn new(rule: Rule, n: u32) -> Result<Self, Error> {
        if !rule.is_omega_independent() {
            return Err(Error::NotOmegaIndependent(rule.0));
        }
        let periodic = SdsMap::new(rule, n, &UpdateOrder::identity(n))?.periodic_states();
        let domain = IndexedStates::new(&periodic);
        let generators = (0..n)
            .map(|i| restricted_local(rule, i, &domain))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Dynamics { rule, n, periodic, domain, generators })
    }

    pub fn rule(&self) -> Rule {
        self.rule
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn periodic_states(&self) -> &StateSet {
        &self.periodic
    }

    pub fn domain(&self) -> &IndexedStates {
        &self.domain
    }

    pub fn degree(&self) -> usize {
        self.domain.len()
    }

    /// `F_i*` as a permutation of the indexed periodic states.
    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn index_of(&self, y: State) -> Option<u32> {
        if y.n() != self.n {
            return None;
        }
        self.domain.index_of(y.bits()).map(|k| k as u32)
    }

    pub fn group(&self) -> PermGroup {
        PermGroup::new(self.degree(), &self.generators).expect("generators share the domain")
    }

    pub fn orbits(&self) -> OrbitPartition {
        orbit_partition(self.degree(), &self.generators)
    }

    /// Orbit containing `y` as sorted domain indices.
    pub fn orbit_of(&self, y: State) -> Option<Vec<u32>> {
        let k = self.index_of(y)?;
        let part = self.orbits();
        Some(part.orbits[part.orbit_of[k as usize] as usize].clone())
    }

    /// The generators restricted to one orbit, identities dropped.
    pub fn orbit_generators(&self, orbit: &[u32]) -> Result<Vec<Permutation>, Error> {
        let mut out = Vec::new();
        for g in &self.generators {
            let r = g.restrict(orbit)?;
            if !r.is_identity() {
                out.push(r);
            }
        }
        Ok(out)
    }

    pub fn orbit_group(&self, orbit: &[u32]) -> Result<PermGroup, Error> {
        let gens = self.orbit_generators(orbit)?;
        PermGroup::new(orbit.len(), &gens)
    }

    /// Generated by `[F, π]*` over every simple order `π`.
    pub fn restricted_group(&self) -> Result<PermGroup, Error> {
        if self.n > RDG_MAX_N {
            return Err(Error::OutOfRange { name: "n", value: self.n as u64 });
        }
        let mut gens: BTreeSet<Permutation> = BTreeSet::new();
        for pi in simple_orders(self.n) {
            gens.insert(restricted_order(self.rule, &pi, &self.domain)?);
        }
        let gens: Vec<_> = gens.into_iter().collect();
        PermGroup::new(self.degree(), &gens)
    }

    pub fn generator_parity(&self, i: u32) -> Result<Parity, Error> {
        let g = self
            .generators
            .get(i as usize)
            .ok_or(Error::VertexOutOfRange { vertex: i, n: self.n })?;
        Ok(Parity { transpositions: g.transposition_count(), even: g.is_even() })
    }

    pub fn coxeter_data(&self) -> Result<CoxeterData, Error> {
        if self.generators.iter().all(|g| g.is_identity()) {
            return Err(Error::TrivialGroup(self.rule.0));
        }
        let n = self.n as usize;
        let gens = &self.generators;
        let matrix: Vec<Vec<u64>> = (0..n)
            .map(|i| (0..n).map(|j| if i == j { 1 } else { gens[i].then(&gens[j]).order_u64() }).collect())
            .collect();
        let label = matrix[0][1];
        if (0..n).any(|i| matrix[i][(i + 1) % n] != label) {
            return Err(Error::NonConstantCoxeterLabel(self.rule.0));
        }
        Ok(CoxeterData { label, matrix })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Parity {
    pub transpositions: usize,
    pub even: bool,
}

/// Orders `m_ij` of `F_i* ∘ F_j*`, with the constant adjacent order as label.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterData {
    pub label: u64,
    pub matrix: Vec<Vec<u64>>,
}

impl CoxeterData {
    pub fn divides_twelve(&self) -> bool {
        self.matrix.iter().flatten().all(|&m| 12 % m == 0)
    }

    /// For vertices at circular distance at least two, `m_ij ∈ {1, 2}`.
    pub fn distant_pairs_commute(&self) -> bool {
        let n = self.matrix.len();
        (0..n).all(|i| {
            (0..n).all(|j| {
                let d = (i + n - j) % n;
                d.min(n - d) < 2 || self.matrix[i][j] <= 2
            })
        })
    }
}

pub fn dynamics_group(rule: Rule, n: u32) -> Result<PermGroup, Error> {
    Ok(Dynamics::new(rule, n)?.group())
}

pub fn restricted_dynamics_group(rule: Rule, n: u32) -> Result<PermGroup, Error> {
    Dynamics::new(rule, n)?.restricted_group()
}

pub fn orbit_count(rule: Rule, n: u32) -> Result<usize, Error> {
    Ok(Dynamics::new(rule, n)?.orbits().len())
}

pub fn coxeter_data(rule: Rule, n: u32) -> Result<CoxeterData, Error> {
    Dynamics::new(rule, n)?.coxeter_data()
}

pub fn generator_parity(rule: Rule, n: u32, i: u32) -> Result<Parity, Error> {
    Dynamics::new(rule, n)?.generator_parity(i)
}

/// Rule 201 restricted to the orbit of the all-zeros state.
pub fn lucas_group(n: u32) -> Result<PermGroup, Error> {
    let dynamics = Dynamics::new(Rule(201), n)?;
    let orbit = dynamics.orbit_of(State::zeros(n)).expect("all-zeros state is periodic");
    dynamics.orbit_group(&orbit)
}

pub fn lucas_group_order(n: u32) -> Result<BigUint, Error> {
    Ok(lucas_group(n)?.order())
}

/// All ones except a single block of `m` zeros starting at vertex `start`.
pub fn zero_block_state(n: u32, m: u32, start: u32) -> Result<State, Error> {
    if m == 0 || m >= n {
        return Err(Error::OutOfRange { name: "m", value: m as u64 });
    }
    if start >= n {
        return Err(Error::VertexOutOfRange { vertex: start, n });
    }
    let mut bits = State::ones(n).bits();
    for k in 0..m {
        bits &= !(1u64 << ((start + k) % n));
    }
    State::new(bits, n)
}

/// Rule 201 restricted to the orbit of [`zero_block_state`]`(n, m, start)`;
/// requires `3 <= m <= n - 2`.
pub fn fibonacci_group(m: u32, start: u32, n: u32) -> Result<PermGroup, Error> {
    if m < 3 || m + 2 > n {
        return Err(Error::OutOfRange { name: "m", value: m as u64 });
    }
    let y = zero_block_state(n, m, start)?;
    let dynamics = Dynamics::new(Rule(201), n)?;
    let orbit = dynamics.orbit_of(y).expect("a single zero block of length at least 3 is periodic");
    dynamics.orbit_group(&orbit)
}

pub fn fibonacci_group_order(m: u32, start: u32, n: u32) -> Result<BigUint, Error> {
    Ok(fibonacci_group(m, start, n)?.order())
}
