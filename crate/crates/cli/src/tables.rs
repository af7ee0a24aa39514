//! Builders for the rule tables, count tables and independence reports.

use aca_core::enumeration::{count_by_enumeration, count_by_recurrence, NSet};
use aca_core::rule::{EXCEPTIONAL_REPRESENTATIVES, INVERTIBLE_REPRESENTATIVES, TRIVIAL_REPRESENTATIVES};
use aca_core::sds::{check_omega_independence_sampled, check_pi_independence, IndependenceCheck};
use aca_core::{Dynamics, Error, Rule};

use crate::jobs::{max_n, par_map};
use crate::report::{analyse, AnalysisReport, OrderValue, RuleInfo};
use crate::table::{Cell, Table};

pub fn rules_table(rules: &[Rule]) -> Table {
    let mut t = Table::new(
        "rules",
        Vec::new(),
        &["rule", "tag", "inv", "refl", "i.r.", "ω-independent", "representative", "invertible", "invertibilized"],
    );
    for &rule in rules {
        let info = RuleInfo::of(rule);
        t.push(vec![
            info.rule.to_string().into(),
            info.tag.into(),
            info.equivalence.inv.to_string().into(),
            info.equivalence.refl.to_string().into(),
            info.equivalence.ir.to_string().into(),
            yes_no(info.omega_independent).into(),
            info.representative.map_or("-".to_string(), |r| r.to_string()).into(),
            yes_no(info.invertible).into(),
            info.invertibilized.to_string().into(),
        ]);
    }
    t
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

const RULE_COLUMNS: [&str; 10] = ["rule", "tag", "inv", "refl", "i.r.", "o_k", "P_k", "c_k", "G_k", "identification"];

fn rule_row(r: &AnalysisReport) -> Vec<Cell> {
    vec![
        r.rule.to_string().into(),
        r.tag.clone().into(),
        r.equivalence.inv.to_string().into(),
        r.equivalence.refl.to_string().into(),
        r.equivalence.ir.to_string().into(),
        r.orbit_count.to_string().into(),
        r.periodic_description.clone().unwrap_or_else(|| format!("{} states", r.periodic_count)).into(),
        r.coxeter_label.map_or("-".to_string(), |c| c.to_string()).into(),
        r.group_order.clone().into(),
        r.identification.kind.clone().into(),
    ]
}

fn rule_table(name: &str, rules: &[u8], n: u32) -> Result<Table, Error> {
    let reports = par_map(rules.to_vec(), |k| analyse(Rule(k), n, false));
    let mut t = Table::new(name, vec![n], &RULE_COLUMNS);
    for r in reports {
        t.push(rule_row(&r?));
    }
    Ok(t)
}

pub fn trivial_table(n: u32) -> Result<Table, Error> {
    rule_table("trivial", &TRIVIAL_REPRESENTATIVES, n)
}

pub fn invertible_table(n: u32) -> Result<Table, Error> {
    rule_table("invertible", &INVERTIBLE_REPRESENTATIVES, n)
}

pub fn exceptional_table(n: u32) -> Result<Table, Error> {
    rule_table("exceptional", &EXCEPTIONAL_REPRESENTATIVES, n)
}

fn enumerated(set: NSet, n: u32) -> Result<String, Error> {
    Ok(if n <= max_n() { count_by_enumeration(set, n)?.to_string() } else { "-".to_string() })
}

pub fn recurrence_table(n: u32) -> Result<Table, Error> {
    let mut t = Table::new(
        "recurrence",
        vec![n],
        &["name", "words to avoid", "recurrence relation", "OEIS", "a_n", "enumerated"],
    );
    for set in NSet::ALL {
        let words: Vec<String> = set.words().iter().map(|w| format!("'{w}'")).collect();
        t.push(vec![
            set.name().into(),
            words.join(", ").into(),
            set.recurrence().to_string().into(),
            set.oeis().into(),
            count_by_recurrence(set, n)?.to_string().into(),
            enumerated(set, n)?.into(),
        ]);
    }
    Ok(t)
}

pub const ORDER_RULES: [u8; 3] = [156, 201, 73];

/// Group orders of rules 156, 201 and 73, one row per ring size.
pub fn orders_table(ns: &[u32]) -> Result<Table, Error> {
    let jobs: Vec<(u32, u8)> = ns.iter().flat_map(|&n| ORDER_RULES.map(|k| (n, k))).collect();
    let orders = par_map(jobs, |(n, k)| dynamics_order(Rule(k), n));
    let mut t = Table::new("orders", ns.to_vec(), &["n", "|G_156|", "|G_201|", "|G_73|"]);
    for (row, &n) in orders.chunks(ORDER_RULES.len()).zip(ns) {
        let mut cells = vec![Cell::from(n.to_string())];
        for o in row {
            cells.push(o.clone()?.into());
        }
        t.push(cells);
    }
    Ok(t)
}

/// Order of the dynamics group, factored against the orbit sizes.
pub fn dynamics_order(rule: Rule, n: u32) -> Result<OrderValue, Error> {
    let d = Dynamics::new(rule, n)?;
    let candidates: Vec<u64> = d.orbits().sizes().into_iter().map(|s| s as u64).collect();
    Ok(OrderValue::new(&d.group().order(), &candidates))
}

pub fn count_table(sets: &[NSet], ns: &[u32]) -> Result<Table, Error> {
    let mut t = Table::new("count", ns.to_vec(), &["set", "n", "recurrence", "enumerated", "agree"]);
    for &set in sets {
        for &n in ns {
            let rec = count_by_recurrence(set, n)?.to_string();
            let en = enumerated(set, n)?;
            let agree = if en == "-" { "-" } else { yes_no(en == rec) };
            t.push(vec![set.name().into(), n.to_string().into(), rec.into(), en.into(), agree.into()]);
        }
    }
    Ok(t)
}

fn check_cells(check: &IndependenceCheck) -> (Cell, Cell, Cell) {
    match check {
        IndependenceCheck::Independent { orders_checked } => {
            ("independent".into(), orders_checked.to_string().into(), "-".into())
        }
        IndependenceCheck::Witness { first, second } => {
            ("dependent".into(), "-".into(), format!("({first}) vs ({second})").into())
        }
    }
}

pub struct IndependenceOptions {
    pub samples: usize,
    pub seed: u64,
}

/// Simple-order and sampled fair-order comparisons of periodic sets; fair
/// orders have length at most `2n`.
pub fn independence_table(rules: &[Rule], ns: &[u32], opts: &IndependenceOptions) -> Result<Table, Error> {
    let jobs: Vec<(Rule, u32)> = rules.iter().flat_map(|&r| ns.iter().map(move |&n| (r, n))).collect();
    let results = par_map(jobs.clone(), |(rule, n)| -> Result<_, Error> {
        let simple = check_pi_independence(rule, n, opts.samples, opts.seed)?;
        let fair = check_omega_independence_sampled(rule, n, opts.samples, 2 * n as usize, opts.seed)?;
        Ok((simple, fair))
    });
    let mut t = Table::new(
        "independence",
        ns.to_vec(),
        &["rule", "n", "simple orders", "simple checked", "simple witness", "fair orders", "fair checked", "fair witness"],
    );
    for ((rule, n), res) in jobs.into_iter().zip(results) {
        let (simple, fair) = res?;
        let (a, b, c) = check_cells(&simple);
        let (d, e, f) = check_cells(&fair);
        t.push(vec![rule.to_string().into(), n.to_string().into(), a, b, c, d, e, f]);
    }
    Ok(t)
}
