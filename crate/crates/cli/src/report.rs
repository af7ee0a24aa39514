//! Per-(rule, n) analysis records.

use std::time::Instant;

use aca_core::classify::identify;
use aca_core::enumeration::describe_periodic;
use aca_core::order::format_order;
use aca_core::sds::{SdsMap, UpdateOrder};
use aca_core::{Dynamics, Error, Rule};
use num_bigint::BigUint;
use serde::Serialize;

/// A group order as an exact decimal string and in factored form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OrderValue {
    pub decimal: String,
    pub factored: String,
}

impl OrderValue {
    /// `candidates` are the factorial degrees tried when factoring, usually
    /// the orbit sizes.
    pub fn new(order: &BigUint, candidates: &[u64]) -> Self {
        OrderValue { decimal: order.to_string(), factored: format_order(order, candidates) }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Equivalence {
    pub inv: u8,
    pub refl: u8,
    pub ir: u8,
}

impl Equivalence {
    pub fn of(rule: Rule) -> Self {
        Equivalence { inv: rule.invert().0, refl: rule.reflect().0, ir: rule.invert_reflect().0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RuleInfo {
    pub rule: u8,
    pub tag: String,
    pub equivalence: Equivalence,
    pub omega_independent: bool,
    pub representative: Option<u8>,
    pub invertible: bool,
    pub invertibilized: u8,
}

impl RuleInfo {
    pub fn of(rule: Rule) -> Self {
        RuleInfo {
            rule: rule.0,
            tag: rule.tag().to_string(),
            equivalence: Equivalence::of(rule),
            omega_independent: rule.is_omega_independent(),
            representative: rule.representative().map(|r| r.0),
            invertible: rule.is_invertible(),
            invertibilized: rule.invertibilize().0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Identification {
    pub kind: String,
    pub slug: String,
    pub expected_order: Option<String>,
    pub certificate: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Timings {
    pub periodic_ms: u64,
    pub group_ms: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnalysisReport {
    pub rule: u8,
    pub n: u32,
    pub tag: String,
    pub equivalence: Equivalence,
    pub periodic_count: usize,
    pub periodic_description: Option<String>,
    pub orbit_count: usize,
    pub orbit_sizes: Vec<usize>,
    pub coxeter_label: Option<u64>,
    pub group_order: OrderValue,
    pub identification: Identification,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timings: Option<Timings>,
}

/// Coxeter label, with 1 for a trivial group and `None` when the edge
/// orders differ.
pub fn coxeter_label(d: &Dynamics) -> Option<u64> {
    match d.coxeter_data() {
        Ok(c) => Some(c.label),
        Err(Error::TrivialGroup(_)) => Some(1),
        Err(_) => None,
    }
}

pub fn analyse(rule: Rule, n: u32, with_timings: bool) -> Result<AnalysisReport, Error> {
    let start = Instant::now();
    let dynamics = Dynamics::new(rule, n)?;
    let orbits = dynamics.orbits();
    let periodic_ms = start.elapsed().as_millis() as u64;
    let start = Instant::now();
    let id = identify(rule, n)?;
    let group_ms = start.elapsed().as_millis() as u64;
    let mut sizes = orbits.sizes();
    sizes.sort_unstable_by(|a, b| b.cmp(a));
    let candidates: Vec<u64> = sizes.iter().map(|&s| s as u64).collect();
    Ok(AnalysisReport {
        rule: rule.0,
        n,
        tag: rule.tag().to_string(),
        equivalence: Equivalence::of(rule),
        periodic_count: dynamics.periodic_states().len(),
        periodic_description: describe_periodic(rule, dynamics.periodic_states()).map(|p| p.to_string()),
        orbit_count: orbits.len(),
        orbit_sizes: sizes,
        coxeter_label: coxeter_label(&dynamics),
        group_order: OrderValue::new(&id.order, &candidates),
        identification: Identification {
            kind: id.kind.to_string(),
            slug: id.kind.slug().to_string(),
            expected_order: id.expected_order.map(|e| e.to_string()),
            certificate: id.certificate,
        },
        timings: with_timings.then_some(Timings { periodic_ms, group_ms }),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PeriodicReport {
    pub rule: u8,
    pub n: u32,
    pub order: Vec<u32>,
    pub periodic_count: usize,
    pub periodic_description: Option<String>,
    pub states: Vec<String>,
}

/// Periodic states of one SDS map, for any rule.
pub fn periodic(rule: Rule, n: u32, order: &UpdateOrder) -> Result<PeriodicReport, Error> {
    let set = SdsMap::new(rule, n, order)?.periodic_states();
    Ok(PeriodicReport {
        rule: rule.0,
        n,
        order: order.seq().to_vec(),
        periodic_count: set.len(),
        periodic_description: describe_periodic(rule, &set).map(|p| p.to_string()),
        states: set.iter().map(|y| y.to_string()).collect(),
    })
}
