//! The `binagg` command line.
//!
//! Exit codes: 0 success, 1 usage or parse error, 2 invalid agenda or
//! profile, 3 enumeration limit exceeded, 4 lemma counterexample found.

pub mod io;
mod render;

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use binagg_core::aggregators::{
    check_axioms, check_fact1, check_fact1pp, check_fact2, extract_g, sweep_rules, AggregatorSpec, AxiomSet, RuleKind,
    SearchOptions, Verdict,
};
use binagg_core::beliefs::{completeness_gap, deductive_closure_violation, is_consistent_belief, Rational};
use binagg_core::classifier::{classify, ResultRow};
use binagg_core::entailment::EntailmentGraph;
use binagg_core::mis::minimally_inconsistent_subsets;
use binagg_core::oracle::{verify_lemmas, Scope};
use binagg_core::properties::analyze;
use binagg_core::{Agenda, Error, IssueId, IssueSet, Limits};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use render::*;

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_INVALID: i32 = 2;
pub const EXIT_LIMIT: i32 = 3;
pub const EXIT_COUNTEREXAMPLE: i32 = 4;

/// A message for the diagnostic stream and the exit code to go with it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl Failure {
    pub fn new(code: i32, message: impl Into<String>) -> Self {
        Failure { code, message: message.into() }
    }

    pub fn invalid(message: impl Into<String>) -> Self {
        Failure::new(EXIT_INVALID, message)
    }

    /// Limit errors map to their own code; everything else to `fallback`.
    pub fn core(e: Error, fallback: i32) -> Self {
        let code = match e {
            Error::LimitExceeded { .. } | Error::TooManyAtoms { .. } | Error::UniverseSize { .. } => EXIT_LIMIT,
            _ => fallback,
        };
        Failure::new(code, e.to_string())
    }
}

#[derive(Parser)]
#[command(name = "binagg", version, about = "Agenda conditions and axiom checks for binarizing belief aggregation")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct AgendaArgs {
    /// Agenda file (issues form or formulas form).
    agenda: PathBuf,
    /// Emit JSON instead of a table.
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Agenda conditions with witnesses.
    Analyze(AgendaArgs),
    /// Minimally inconsistent subsets.
    Mis {
        #[command(flatten)]
        args: AgendaArgs,
        /// Only sets with at most this many issues.
        #[arg(long)]
        max_size: Option<usize>,
    },
    /// Shortest conditional-entailment path between two issues.
    Path {
        #[command(flatten)]
        args: AgendaArgs,
        /// Issue name or 0-based index.
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
    },
    /// Median points, or a blocking cycle when there are none.
    Median(AgendaArgs),
    /// Which impossibility results apply to the agenda.
    Classify(AgendaArgs),
    /// Check a rule against axioms on the grid, or evaluate it on one profile.
    CheckRule(CheckRuleArgs),
    /// Look for a non-oligarchic independent rule satisfying the axioms.
    Search(SearchArgs),
    /// Exhaustive lemma checks over small agendas and algebras.
    VerifyLemmas(VerifyArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleName {
    Oligarchy,
    Trivial,
    Dictator,
    Threshold,
    UnanimityDefault,
}

#[derive(Args)]
struct CheckRuleArgs {
    #[command(flatten)]
    args: AgendaArgs,
    #[arg(long, value_enum)]
    rule: RuleName,
    /// Members for oligarchy or dictator, 1-based.
    #[arg(long, value_delimiter = ',')]
    members: Vec<usize>,
    /// Number of individuals (defaults to 3, or the profile's size).
    #[arg(long)]
    n: Option<usize>,
    /// Grid resolution d: masses are multiples of 1/d.
    #[arg(long, default_value_t = 2)]
    grid: u32,
    /// Comma-separated axioms: cp, zp, an, ind, sys, mon, cdc, ccs, ccp.
    #[arg(long, default_value = "cp,zp,an,ind,sys,mon,cdc,ccs,ccp")]
    axioms: String,
    /// Threshold as a fraction, e.g. 1/2.
    #[arg(long, default_value = "1/2")]
    threshold: String,
    /// Require the mean to exceed the threshold.
    #[arg(long)]
    strict: bool,
    /// Default-accepted issues for unanimity-default (names or indices).
    #[arg(long = "default", value_delimiter = ',')]
    default_issues: Vec<String>,
    /// Evaluate on this profile instead of sweeping the grid.
    #[arg(long)]
    profile: Option<PathBuf>,
    /// Also extract the decision table and check the closure facts.
    #[arg(long)]
    facts: bool,
}

#[derive(Args)]
struct SearchArgs {
    #[command(flatten)]
    args: AgendaArgs,
    #[arg(long, default_value_t = 3)]
    n: usize,
    #[arg(long, default_value_t = 1)]
    grid: u32,
    #[arg(long, default_value = "cp,zp,ind,cdc")]
    axioms: String,
    /// One table shared by all issues.
    #[arg(long)]
    systematic: bool,
    /// Admit non-monotone tables.
    #[arg(long)]
    non_monotone: bool,
}

#[derive(Args)]
struct VerifyArgs {
    /// Universe sizes, 2 to 4 (comma-separated).
    #[arg(long, value_delimiter = ',', default_value = "3")]
    worlds: Vec<usize>,
    #[arg(long, default_value_t = 3)]
    max_pairs: usize,
    /// Skip the algebra checks.
    #[arg(long)]
    no_algebras: bool,
    #[arg(long)]
    json: bool,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn json(&mut self, value: &Value) -> Result<(), Failure> {
        let text = serde_json::to_string_pretty(value).expect("JSON values serialize");
        self.text(&format!("{text}\n"))
    }

    fn text(&mut self, s: &str) -> Result<(), Failure> {
        self.out.write_all(s.as_bytes()).map_err(|e| Failure::new(EXIT_USAGE, format!("cannot write output: {e}")))
    }

    fn warn(&mut self, s: &str) {
        let _ = writeln!(self.err, "warning: {s}");
    }
}

/// Parse `args` (including the program name) and run the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let rendered = e.render().to_string();
            let _ =
                if code == EXIT_OK { out.write_all(rendered.as_bytes()) } else { err.write_all(rendered.as_bytes()) };
            return code;
        }
    };
    let mut io = Io { out, err };
    match dispatch(cli.command, &mut io) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(io.err, "error: {}", f.message);
            f.code
        }
    }
}

fn dispatch(command: Command, io: &mut Io<'_>) -> Result<i32, Failure> {
    let limits = Limits::default();
    match command {
        Command::Analyze(a) => cmd_analyze(&a, io, &limits),
        Command::Mis { args, max_size } => cmd_mis(&args, max_size, io, &limits),
        Command::Path { args, from, to } => cmd_path(&args, &from, &to, io, &limits),
        Command::Median(a) => cmd_median(&a, io, &limits),
        Command::Classify(a) => cmd_classify(&a, io, &limits),
        Command::CheckRule(a) => cmd_check_rule(&a, io, &limits),
        Command::Search(a) => cmd_search(&a, io, &limits),
        Command::VerifyLemmas(a) => return cmd_verify(&a, io, &limits),
    }
    .map(|()| EXIT_OK)
}

fn run_core<T>(r: binagg_core::Result<T>) -> Result<T, Failure> {
    r.map_err(|e| Failure::core(e, EXIT_INVALID))
}

/// Resolve an issue by name, then by 0-based index; warn when both readings
/// exist and disagree.
fn resolve(agenda: &Agenda, reference: &str, io: &mut Io<'_>) -> Result<IssueId, Failure> {
    let id = agenda
        .resolve(reference)
        .map_err(|_| Failure::new(EXIT_USAGE, format!("no issue named or numbered {reference:?}")))?;
    if let Ok(index) = reference.parse::<usize>() {
        if index < agenda.len() && index != id.0 {
            io.warn(&format!(
                "{reference:?} is an issue name; index {index} ({}) ignored",
                agenda.name(IssueId(index))
            ));
        }
    }
    Ok(id)
}

fn parse_axioms(list: &str) -> Result<AxiomSet, Failure> {
    AxiomSet::parse(list).ok_or_else(|| Failure::new(EXIT_USAGE, format!("unknown axiom in {list:?}")))
}

fn cmd_analyze(a: &AgendaArgs, io: &mut Io<'_>, limits: &Limits) -> Result<(), Failure> {
    let agenda = io::load_agenda(&a.agenda)?;
    let an = run_core(analyze(&agenda, limits))?;
    if a.json {
        io.json(&json!({"issues": agenda.names(), "flags": flags_json(&agenda, &an.flags)}))
    } else {
        io.text(&format!("{agenda}\n\n{}", flags_text(&agenda, &an.flags)))
    }
}

fn cmd_mis(a: &AgendaArgs, max_size: Option<usize>, io: &mut Io<'_>, limits: &Limits) -> Result<(), Failure> {
    let agenda = io::load_agenda(&a.agenda)?;
    let mis = run_core(minimally_inconsistent_subsets(&agenda, max_size, limits))?;
    if a.json {
        let sets: Vec<Value> = mis.iter().map(|y| names(&agenda, y)).collect();
        return io.json(&json!({"count": mis.len(), "mis": sets}));
    }
    let mut s = format!("{} minimally inconsistent sets\n", mis.len());
    for y in mis.iter() {
        s.push_str(&format!("{}  {}\n", y.len(), agenda.format_set(y)));
    }
    io.text(&s)
}

fn cmd_path(a: &AgendaArgs, from: &str, to: &str, io: &mut Io<'_>, limits: &Limits) -> Result<(), Failure> {
    let agenda = io::load_agenda(&a.agenda)?;
    let (x, y) = (resolve(&agenda, from, io)?, resolve(&agenda, to, io)?);
    let mis = run_core(minimally_inconsistent_subsets(&agenda, None, limits))?;
    let graph = EntailmentGraph::build(&agenda, &mis);
    let hops = graph.path_witness(x, y);
    if a.json {
        return io.json(&json!({
            "from": agenda.name(x),
            "to": agenda.name(y),
            "path": hops.as_ref().map(|h| hops_json(&agenda, h)),
        }));
    }
    let s = match hops {
        None => format!("no path from {} to {}\n", agenda.name(x), agenda.name(y)),
        Some(h) if h.is_empty() => format!("{} reaches itself trivially\n", agenda.name(x)),
        Some(h) => {
            let mut s = format!("{} hops\n", h.len());
            for hop in &h {
                s.push_str(&hop_text(&agenda, hop));
                s.push('\n');
            }
            s
        }
    };
    io.text(&s)
}

fn cmd_median(a: &AgendaArgs, io: &mut Io<'_>, limits: &Limits) -> Result<(), Failure> {
    let agenda = io::load_agenda(&a.agenda)?;
    let report = run_core(classify(&agenda, limits))?;
    let f = &report.flags;
    if a.json {
        return io.json(&json!({
            "median_points": worlds(&agenda, f.median_points),
            "blocked": f.blocked,
            "h0": names(&agenda, f.h0),
            "blocking_cycle": report.blocking.as_ref().map(|c| json!({
                "issue": agenda.name(c.issue),
                "forward": hops_json(&agenda, &c.forward),
                "back": hops_json(&agenda, &c.back),
            })),
        }));
    }
    let mut s = format!("median points: {}\n", agenda.universe().format_worlds(f.median_points));
    if let Some(c) = &report.blocking {
        s.push_str(&format!("blocked: {} and its complement reach each other\n", agenda.name(c.issue)));
        for hop in c.forward.iter().chain(&c.back) {
            s.push_str(&format!("  {}\n", hop_text(&agenda, hop)));
        }
    }
    io.text(&s)
}

fn cmd_classify(a: &AgendaArgs, io: &mut Io<'_>, limits: &Limits) -> Result<(), Failure> {
    let agenda = io::load_agenda(&a.agenda)?;
    let report = run_core(classify(&agenda, limits))?;
    let f = &report.flags;
    if a.json {
        let rows: Vec<Value> = ResultRow::ALL
            .iter()
            .map(|&r| {
                json!({
                    "row": r.number(),
                    "result": r.title(),
                    "applies": report.applies(r),
                    "condition": r.condition(),
                    "axioms": r.axioms(),
                })
            })
            .collect();
        return io.json(&json!({
            "issues": agenda.names(),
            "flags": flags_json(&agenda, f),
            "results": rows,
            "blocking_cycle": report.blocking.as_ref().map(|c| json!({
                "issue": agenda.name(c.issue),
                "forward": hops_json(&agenda, &c.forward),
                "back": hops_json(&agenda, &c.back),
            })),
        }));
    }
    let mut s = format!("{agenda}\n\n{}\n", flags_text(&agenda, f));
    for r in ResultRow::ALL {
        s.push_str(&format!(
            "({}) {:<22}{:<5}when {}; no rule with {}\n",
            r.number(),
            r.title(),
            yes_no(report.applies(r)),
            r.condition(),
            r.axioms()
        ));
    }
    if !f.median_points.is_empty() {
        s.push_str(&format!("\nnot blocked: median points {}\n", agenda.universe().format_worlds(f.median_points)));
    }
    if let Some(c) = &report.blocking {
        s.push_str(&format!("\nblocked via {}:\n", agenda.name(c.issue)));
        for hop in c.forward.iter().chain(&c.back) {
            s.push_str(&format!("  {}\n", hop_text(&agenda, hop)));
        }
    }
    io.text(&s)
}

fn build_rule(a: &CheckRuleArgs, agenda: &Agenda, n: usize, io: &mut Io<'_>) -> Result<AggregatorSpec, Failure> {
    let zero_based = |m: &[usize]| -> Result<Vec<usize>, Failure> {
        m.iter()
            .map(|&i| i.checked_sub(1).ok_or_else(|| Failure::new(EXIT_USAGE, "members are numbered from 1")))
            .collect()
    };
    let kind = match a.rule {
        RuleName::Oligarchy => {
            if a.members.is_empty() {
                return Err(Failure::new(EXIT_USAGE, "oligarchy needs --members"));
            }
            RuleKind::Oligarchy(zero_based(&a.members)?)
        }
        RuleName::Trivial => RuleKind::Trivial,
        RuleName::Dictator => match zero_based(&a.members)?.as_slice() {
            [i] => RuleKind::Dictatorship(*i),
            _ => return Err(Failure::new(EXIT_USAGE, "dictator needs exactly one --members entry")),
        },
        RuleName::Threshold => {
            let t: Rational = a
                .threshold
                .trim()
                .parse()
                .map_err(|_| Failure::new(EXIT_USAGE, format!("bad threshold {:?}", a.threshold)))?;
            RuleKind::Threshold { t, strict: a.strict }
        }
        RuleName::UnanimityDefault => {
            let mut set = IssueSet::EMPTY;
            for r in &a.default_issues {
                set = set.with(resolve(agenda, r, io)?);
            }
            RuleKind::UnanimityDefault(set)
        }
    };
    AggregatorSpec::new(n, kind).map_err(|e| Failure::new(EXIT_USAGE, e.to_string()))
}

fn rule_json(spec: &AggregatorSpec, agenda: &Agenda) -> Value {
    match spec.kind() {
        RuleKind::Oligarchy(m) => json!({"rule": "oligarchy", "members": m.iter().map(|i| i + 1).collect::<Vec<_>>()}),
        RuleKind::Trivial => json!({"rule": "trivial"}),
        RuleKind::Dictatorship(i) => json!({"rule": "dictator", "members": [i + 1]}),
        RuleKind::Threshold { t, strict } => json!({"rule": "threshold", "threshold": t.to_string(), "strict": strict}),
        RuleKind::UnanimityDefault(d) => json!({"rule": "unanimity-default", "default": names(agenda, *d)}),
        RuleKind::Tables(t) => json!({"rule": "tables", "tables": t.iter().map(table_text).collect::<Vec<_>>()}),
    }
}

fn cmd_check_rule(a: &CheckRuleArgs, io: &mut Io<'_>, limits: &Limits) -> Result<(), Failure> {
    let agenda = io::load_agenda(&a.args.agenda)?;
    let axioms = parse_axioms(&a.axioms)?;
    if let Some(path) = &a.profile {
        let profile = io::load_profile(path)?;
        if profile.universe_size() != agenda.universe().size() {
            return Err(Failure::invalid(format!(
                "profile has {} worlds, agenda has {}",
                profile.universe_size(),
                agenda.universe().size()
            )));
        }
        let n = a.n.unwrap_or(profile.n());
        if n != profile.n() {
            return Err(Failure::invalid(format!("profile has {} individuals, --n is {n}", profile.n())));
        }
        let spec = build_rule(a, &agenda, n, io)?;
        let accepted = run_core(spec.evaluate(&profile, &agenda))?;
        let consistent = is_consistent_belief(&agenda, accepted);
        let closure = deductive_closure_violation(&agenda, accepted);
        let gap = completeness_gap(&agenda, accepted);
        if a.args.json {
            return io.json(&json!({
                "rule": rule_json(&spec, &agenda),
                "accepted": names(&agenda, accepted),
                "consistent": consistent,
                "deductively_closed": closure.is_none(),
                "closure_witness": closure.map(|i| agenda.name(i)),
                "complete": gap.is_none(),
                "completeness_gap": gap.map(|i| agenda.name(i)),
            }));
        }
        let mut s = format!("accepted: {}\n", agenda.format_set(accepted));
        s.push_str(&format!("consistent: {}\n", yes_no(consistent)));
        s.push_str(&format!(
            "deductively closed: {}{}\n",
            yes_no(closure.is_none()),
            closure.map(|i| format!(" (entails {} but leaves it out)", agenda.name(i))).unwrap_or_default()
        ));
        s.push_str(&format!(
            "complete: {}{}\n",
            yes_no(gap.is_none()),
            gap.map(|i| format!(" (decides neither {} nor its complement)", agenda.name(i))).unwrap_or_default()
        ));
        return io.text(&s);
    }

    let n = a.n.unwrap_or(3);
    let spec = build_rule(a, &agenda, n, io)?;
    let report = run_core(check_axioms(&spec, &agenda, a.grid, axioms, limits))?;
    let facts = if a.facts {
        let g = extract_g(&spec, &agenda, a.grid, limits).map_err(|e| Failure::core(e, EXIT_USAGE))?;
        Some((table_text(&g), check_fact1(&g), check_fact2(&g), check_fact1pp(&g)))
    } else {
        None
    };
    if a.args.json {
        let verdicts: Vec<Value> = report
            .verdicts
            .iter()
            .filter(|(_, v)| !matches!(v, Verdict::NotChecked))
            .map(|(ax, v)| match v {
                Verdict::Fail(w) => json!({"axiom": ax.name(), "verdict": "fail", "witness": witness_json(&agenda, w)}),
                _ => json!({"axiom": ax.name(), "verdict": "pass"}),
            })
            .collect();
        let mut value = json!({
            "rule": rule_json(&spec, &agenda),
            "n": report.n,
            "grid": report.grid,
            "profiles": report.profiles,
            "evidence_only": true,
            "verdicts": verdicts,
        });
        if let Some((table, f1, f2, f1pp)) = &facts {
            value["facts"] =
                json!({"table": table, "fact1": fact_json(f1), "fact2": fact_json(f2), "fact1pp": fact_json(f1pp)});
        }
        return io.json(&value);
    }
    let mut s = format!("{} profiles on the 1/{} grid, n = {}\n", report.profiles, report.grid, report.n);
    if report.n < 3 {
        s.push_str("note: n < 3 is outside the range of the oligarchy result\n");
    }
    for (ax, v) in &report.verdicts {
        match v {
            Verdict::NotChecked => {}
            Verdict::Pass => s.push_str(&format!("{:<5}pass\n", ax.name())),
            Verdict::Fail(w) => s.push_str(&format!("{:<5}FAIL  {}\n", ax.name(), witness_text(&agenda, w))),
        }
    }
    if let Some((table, f1, f2, f1pp)) = &facts {
        s.push_str(&format!("table G: {table}\n"));
        for (name, v) in [("fact1", f1), ("fact2", f2), ("fact1pp", f1pp)] {
            s.push_str(&format!("{name:<9}{}\n", if v.is_ok() { "pass".to_string() } else { format!("FAIL {v:?}") }));
        }
    }
    s.push_str("passes are grid evidence only: the axioms quantify over all profiles\n");
    io.text(&s)
}

fn cmd_search(a: &SearchArgs, io: &mut Io<'_>, limits: &Limits) -> Result<(), Failure> {
    let agenda = io::load_agenda(&a.args.agenda)?;
    let mut opts = SearchOptions::new(a.n, a.grid, parse_axioms(&a.axioms)?);
    opts.systematic_only = a.systematic;
    opts.monotone_only = !a.non_monotone;
    let sweep = sweep_rules(&agenda, &opts, limits).map_err(|e| Failure::core(e, EXIT_USAGE))?;
    let non_oligarchic: Vec<_> = sweep.passing.iter().filter(|r| !r.is_oligarchic()).collect();
    let tables_json = |r: &binagg_core::aggregators::IndependentRule| -> Value {
        json!(agenda
            .ids()
            .map(|i| json!({"issue": agenda.name(i), "table": table_text(&r.tables()[i.0])}))
            .collect::<Vec<_>>())
    };
    if a.args.json {
        return io.json(&json!({
            "n": a.n,
            "grid": a.grid,
            "systematic": a.systematic,
            "candidate_tables": sweep.candidate_tables,
            "passing": sweep.passing.len(),
            "non_oligarchic": non_oligarchic.len(),
            "example": non_oligarchic.first().map(|r| tables_json(r)),
            "evidence_only": true,
        }));
    }
    let mut s = format!(
        "{} candidate tables per issue, {} passing rules, {} non-oligarchic\n",
        sweep.candidate_tables,
        sweep.passing.len(),
        non_oligarchic.len()
    );
    if a.n < 3 {
        s.push_str("note: n < 3 is outside the range of the oligarchy result\n");
    }
    if let Some(r) = non_oligarchic.first() {
        s.push_str("first non-oligarchic rule (table values in grid order):\n");
        for i in agenda.ids() {
            s.push_str(&format!("  {:<12}{}\n", agenda.name(i), table_text(&r.tables()[i.0])));
        }
    }
    s.push_str("results cover the grid only\n");
    io.text(&s)
}

fn cmd_verify(a: &VerifyArgs, io: &mut Io<'_>, limits: &Limits) -> Result<i32, Failure> {
    let mut scope = Scope::new(&a.worlds, a.max_pairs);
    scope.algebras = !a.no_algebras;
    let start = Instant::now();
    let mut run = verify_lemmas(&scope, limits).map_err(|e| Failure::core(e, EXIT_USAGE))?;
    run.elapsed = Some(start.elapsed());
    if a.json {
        let checks: Vec<Value> = run
            .checks
            .iter()
            .map(|c| json!({"check": c.check.name(), "instances": c.instances, "failures": c.failures}))
            .collect();
        let findings: Vec<Value> = run
            .findings
            .iter()
            .map(|f| json!({"check": f.check.name(), "detail": f.detail, "agenda": io::agenda_json(&f.agenda)}))
            .collect();
        io.json(&json!({
            "worlds": a.worlds,
            "max_pairs": a.max_pairs,
            "agendas": run.agendas,
            "algebras": run.algebras,
            "checks": checks,
            "findings": findings,
        }))?;
    } else {
        let mut s =
            format!("{} agendas, {} algebras in {:.2?}\n", run.agendas, run.algebras, run.elapsed.expect("timed"));
        for c in &run.checks {
            s.push_str(&format!("{:<24}{:>6} checked  {} failed\n", c.check.name(), c.instances, c.failures));
        }
        for f in &run.findings {
            s.push_str(&format!(
                "\ncounterexample to {}: {}\n{}\n",
                f.check,
                f.detail,
                serde_json::to_string(&io::agenda_json(&f.agenda)).expect("JSON values serialize")
            ));
        }
        io.text(&s)?;
    }
    Ok(if run.passed() { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}
