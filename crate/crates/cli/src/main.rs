use std::fmt;
use std::process::ExitCode;

use aca::jobs::max_n;
use aca::report::{analyse, periodic, AnalysisReport, PeriodicReport, RuleInfo};
use aca::table::{record_table, Cell, Format, Table};
use aca::tables::{self, IndependenceOptions};
use aca::verify::{run_suite, Suite, SuiteReport, Tier, Which, DEFAULT_SAMPLES, DEFAULT_SEED, MAX_VERIFY_N};
use aca_core::enumeration::{NSet, MAX_RECURRENCE_N};
use aca_core::rule::{omega_independent_rules, OMEGA_INDEPENDENT};
use aca_core::sds::UpdateOrder;
use aca_core::state::MIN_N;
use aca_core::Rule;
use anyhow::Result;
use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "aca", version, about = "Periodic states and dynamics groups of asynchronous elementary cellular automata")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "md")]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Rule metadata: tags, symmetries, invertibilization.
    Rules {
        #[command(subcommand)]
        action: RulesAction,
    },
    /// Periodic states of one SDS map.
    Periodic {
        #[arg(long)]
        rule: u8,
        #[arg(long)]
        n: u32,
        /// Comma-separated vertex sequence; defaults to 0,1,…,n-1.
        #[arg(long)]
        order: Option<String>,
    },
    /// Dynamics group report for one rule and ring size.
    Group {
        #[arg(long)]
        rule: u8,
        #[arg(long)]
        n: u32,
        /// Include wall-clock timings (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Compare periodic sets across simple and sampled fair orders.
    Independence {
        /// A single rule; defaults to every update-order independent rule.
        #[arg(long)]
        rule: Option<u8>,
        #[command(flatten)]
        range: Range,
        #[command(flatten)]
        sampling: Sampling,
    },
    /// Recompute one of the classification tables.
    Table {
        #[arg(value_enum)]
        which: TableKind,
        #[command(flatten)]
        range: Range,
    },
    /// Run a verification suite; exit code 1 on any mismatch.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
        #[arg(long)]
        nmax: Option<u32>,
        #[command(flatten)]
        sampling: Sampling,
        /// Include the slow ring sizes.
        #[arg(long)]
        slow: bool,
        /// Conjecture to check.
        #[arg(long, value_enum, default_value = "all")]
        which: Which,
    },
    /// Sizes of the avoided-word sets by recurrence and by enumeration.
    Count {
        /// Set name such as AB or N_AB; defaults to all nine.
        #[arg(long)]
        set: Option<NSet>,
        #[command(flatten)]
        range: Range,
    },
}

#[derive(Subcommand)]
enum RulesAction {
    /// The update-order independent rules, or all 256 with --all.
    List {
        #[arg(long)]
        all: bool,
    },
    /// One rule.
    Info { code: u8 },
}

#[derive(Clone, Copy, ValueEnum)]
enum TableKind {
    Trivial,
    Recurrence,
    Invertible,
    Exceptional,
    Orders,
}

#[derive(Args)]
struct Range {
    /// Ring size, or the start of the range when --nmax is given.
    #[arg(long)]
    n: Option<u32>,
    /// Last ring size; the range starts at --n or 4.
    #[arg(long)]
    nmax: Option<u32>,
}

#[derive(Args)]
struct Sampling {
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Number of sampled update orders.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: usize,
}

#[derive(Debug)]
struct Usage(String);

impl fmt::Display for Usage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

impl Range {
    fn resolve(&self, default: (u32, u32), limit: u32) -> Result<Vec<u32>> {
        let (lo, hi) = match (self.n, self.nmax) {
            (Some(n), Some(m)) => (n, m),
            (Some(n), None) => (n, n),
            (None, Some(m)) => (MIN_N, m),
            (None, None) => default,
        };
        if lo < MIN_N || hi > limit || lo > hi {
            return Err(usage(format!("ring sizes must satisfy {MIN_N} <= n <= nmax <= {limit}, got {lo}..={hi}")));
        }
        Ok((lo..=hi).collect())
    }

    fn single(&self, default: u32, limit: u32) -> Result<u32> {
        if self.nmax.is_some() {
            return Err(usage("this table takes a single --n"));
        }
        Ok(self.resolve((default, default), limit)?[0])
    }
}

fn check_n(n: u32, limit: u32) -> Result<()> {
    if !(MIN_N..=limit).contains(&n) {
        return Err(usage(format!("--n must lie in {MIN_N}..={limit}, got {n}")));
    }
    Ok(())
}

fn report_table(r: &AnalysisReport) -> Table {
    let mut fields: Vec<(&str, Cell)> = vec![
        ("rule", r.rule.to_string().into()),
        ("n", r.n.to_string().into()),
        ("tag", r.tag.clone().into()),
        ("inv", r.equivalence.inv.to_string().into()),
        ("refl", r.equivalence.refl.to_string().into()),
        ("i.r.", r.equivalence.ir.to_string().into()),
        ("periodic states", r.periodic_count.to_string().into()),
        ("P_k", r.periodic_description.clone().unwrap_or_else(|| "-".into()).into()),
        ("orbits", r.orbit_count.to_string().into()),
        ("c_k", r.coxeter_label.map_or("-".into(), |c| c.to_string()).into()),
        ("|G_k|", r.group_order.clone().into()),
        ("identification", r.identification.kind.clone().into()),
        ("certificate", r.identification.certificate.clone().into()),
    ];
    if let Some(t) = &r.timings {
        fields.push(("periodic ms", t.periodic_ms.to_string().into()));
        fields.push(("group ms", t.group_ms.to_string().into()));
    }
    record_table("group", &fields)
}

fn periodic_table(p: &PeriodicReport) -> Table {
    let order: Vec<String> = p.order.iter().map(|v| v.to_string()).collect();
    record_table(
        "periodic",
        &[
            ("rule", p.rule.to_string().into()),
            ("n", p.n.to_string().into()),
            ("order", order.join(",").into()),
            ("periodic states", p.periodic_count.to_string().into()),
            ("P", p.periodic_description.clone().unwrap_or_else(|| "-".into()).into()),
            ("states", p.states.join(" ").into()),
        ],
    )
}

fn emit_record<T: serde::Serialize>(record: &T, kind: &str, table: Table, format: Format) -> Result<String> {
    Ok(match format {
        Format::Json => {
            let mut v = serde_json::to_value(record)?;
            v.as_object_mut().expect("record").insert("kind".into(), kind.into());
            format!("{}\n", serde_json::to_string_pretty(&v)?)
        }
        _ => table.render(format)?,
    })
}

fn render_verify(r: &SuiteReport, format: Format) -> Result<String> {
    match format {
        Format::Json => Ok(format!("{}\n", serde_json::to_string_pretty(r)?)),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(["criterion", "check", "rule", "n", "expected", "actual", "passed"])?;
            for c in &r.checks {
                let opt = |v: Option<String>| v.unwrap_or_default();
                w.write_record([
                    opt(c.criterion.map(|k| k.to_string())),
                    c.name.clone(),
                    opt(c.rule.map(|k| k.to_string())),
                    opt(c.n.map(|k| k.to_string())),
                    c.expected.clone(),
                    c.actual.clone(),
                    c.passed.to_string(),
                ])?;
            }
            Ok(String::from_utf8(w.into_inner()?)?)
        }
        Format::Md => {
            let mut t = Table::new("verify", Vec::new(), &["criterion", "check", "rule", "n", "expected", "actual"]);
            for c in r.checks.iter().filter(|c| !c.passed) {
                t.push(vec![
                    c.criterion.map_or("-".into(), |k| k.to_string()).into(),
                    c.name.clone().into(),
                    c.rule.map_or("-".into(), |k| k.to_string()).into(),
                    c.n.map_or("-".into(), |k| k.to_string()).into(),
                    c.expected.clone().into(),
                    c.actual.clone().into(),
                ]);
            }
            let status = if r.passed { "PASS" } else { "FAIL" };
            let mut out = format!("verify {}: {status} ({}/{} checks passed)\n", r.suite, r.total - r.failed, r.total);
            if !r.passed {
                out.push('\n');
                out.push_str(&t.to_markdown());
            }
            Ok(out)
        }
    }
}

fn run(cli: Cli) -> Result<(String, ExitCode)> {
    let format = cli.format;
    let ok = ExitCode::SUCCESS;
    let out = match cli.command {
        Command::Rules { action: RulesAction::List { all } } => {
            let rules: Vec<Rule> = if all { Rule::all().collect() } else { omega_independent_rules().collect() };
            tables::rules_table(&rules).render(format)?
        }
        Command::Rules { action: RulesAction::Info { code } } => {
            let info = RuleInfo::of(Rule(code));
            emit_record(&info, "rule", tables::rules_table(&[Rule(code)]), format)?
        }
        Command::Periodic { rule, n, order } => {
            check_n(n, max_n())?;
            let order = match order {
                Some(s) => UpdateOrder::parse(n, &s).map_err(|e| usage(e.to_string()))?,
                None => UpdateOrder::identity(n),
            };
            let p = periodic(Rule(rule), n, &order)?;
            emit_record(&p, "periodic", periodic_table(&p), format)?
        }
        Command::Group { rule, n, timings } => {
            check_n(n, max_n())?;
            if !Rule(rule).is_omega_independent() {
                return Err(usage(format!("rule {rule} is not in the update-order independent list")));
            }
            let r = analyse(Rule(rule), n, timings)?;
            emit_record(&r, "report", report_table(&r), format)?
        }
        Command::Independence { rule, range, sampling } => {
            let ns = range.resolve((MIN_N, 6), max_n())?;
            let rules: Vec<Rule> = match rule {
                Some(k) => vec![Rule(k)],
                None => OMEGA_INDEPENDENT.iter().map(|&k| Rule(k)).collect(),
            };
            let opts = IndependenceOptions { samples: sampling.samples, seed: sampling.seed };
            tables::independence_table(&rules, &ns, &opts)?.render(format)?
        }
        Command::Table { which, range } => {
            let table = match which {
                TableKind::Trivial => tables::trivial_table(range.single(5, max_n())?)?,
                TableKind::Invertible => tables::invertible_table(range.single(5, MAX_VERIFY_N.min(max_n()))?)?,
                TableKind::Exceptional => tables::exceptional_table(range.single(5, MAX_VERIFY_N.min(max_n()))?)?,
                TableKind::Recurrence => tables::recurrence_table(range.single(10, MAX_RECURRENCE_N)?)?,
                TableKind::Orders => tables::orders_table(&range.resolve((MIN_N, 7), 7.min(max_n()))?)?,
            };
            table.render(format)?
        }
        Command::Verify { suite, nmax, sampling, slow, which } => {
            if let Some(m) = nmax {
                if !(MIN_N..=MAX_VERIFY_N).contains(&m) {
                    return Err(usage(format!("--nmax must lie in {MIN_N}..={MAX_VERIFY_N}")));
                }
                if m > suite.fast_limit() && !slow {
                    return Err(usage(format!("--nmax {m} for {} needs --slow", suite.name())));
                }
            }
            let tier = Tier { slow, n_max: nmax, seed: sampling.seed, samples: sampling.samples };
            let report = run_suite(suite, &tier, which)?;
            let code = if report.passed { ok } else { ExitCode::from(1) };
            return Ok((render_verify(&report, format)?, code));
        }
        Command::Count { set, range } => {
            let ns = range.resolve((MIN_N, 16), MAX_RECURRENCE_N)?;
            let sets: Vec<NSet> = set.map_or(NSet::ALL.to_vec(), |s| vec![s]);
            tables::count_table(&sets, &ns)?.render(format)?
        }
    };
    Ok((out, ok))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((out, code)) => {
            print!("{out}");
            code
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
