//! Exhaustive small-instance verification.
//!
//! Agendas are enumerated by complement pairs over universes of two to four
//! worlds, and every structural lemma about the agenda conditions is checked
//! on each one against brute-force recomputation. A clean run is evidence,
//! not proof, beyond the enumerated range.

use alloc::collections::VecDeque;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::time::Duration;

use crate::combinatorics::{Combinations, SetPartitions};
use crate::entailment::{conditionally_entails, conditionally_entails_direct, is_entailment_witness, EntailmentGraph};
use crate::error::{Error, Result};
use crate::mis::{is_minimally_inconsistent, minimally_inconsistent_subsets, negate_subset, MisFamily};
use crate::model::{Agenda, IssueId, IssueSet, IssueSpec, Universe};
use crate::properties::{find_m_set, MSetOutcome, PropertyFlags};
use crate::worlds::WorldSet;
use crate::Limits;

/// Largest universe the enumerations accept.
pub const MAX_ENUM_WORLDS: usize = 4;

/// Complement pairs of contingent subsets of a `size`-world universe, each as
/// its member with the smaller bit pattern, ascending.
pub fn complement_pairs(size: usize) -> Vec<WorldSet> {
    let full = WorldSet::full(size);
    (1..full.bits()).map(WorldSet::from_bits).filter(|s| s.bits() < s.complement(size).bits()).collect()
}

fn check_size(size: usize) -> Result<()> {
    if !(2..=MAX_ENUM_WORLDS).contains(&size) {
        return Err(Error::limit("universe size for enumeration (2 to 4)", size, MAX_ENUM_WORLDS));
    }
    Ok(())
}

/// Agendas formed from `k` complement pairs, `k = 1..=max_pairs`, in order of
/// pair count and then lexicographically by pair index. Issues are listed
/// pair by pair, representative first, and named by their world sets.
pub struct Agendas {
    size: usize,
    pairs: Vec<WorldSet>,
    max_pairs: usize,
    k: usize,
    combos: Combinations,
}

impl Iterator for Agendas {
    type Item = Agenda;

    fn next(&mut self) -> Option<Agenda> {
        loop {
            if let Some(combo) = self.combos.next() {
                let universe = Universe::new(self.size).expect("size checked");
                let specs = combo
                    .iter()
                    .flat_map(|&i| {
                        let s = self.pairs[i];
                        [s, s.complement(self.size)]
                    })
                    .map(|s| IssueSpec::named(universe.format_worlds(s), s))
                    .collect();
                return Some(Agenda::new(universe, specs, false).expect("pairs are contingent and closed"));
            }
            if self.k >= self.max_pairs {
                return None;
            }
            self.k += 1;
            self.combos = Combinations::new(self.pairs.len(), self.k);
        }
    }
}

pub fn enumerate_agendas(universe_size: usize, max_pairs: usize) -> Result<Agendas> {
    check_size(universe_size)?;
    let pairs = complement_pairs(universe_size);
    if max_pairs > pairs.len() {
        return Err(Error::limit("complement pairs for this universe", max_pairs, pairs.len()));
    }
    Ok(Agendas {
        size: universe_size,
        max_pairs,
        k: 1,
        // k > n yields nothing, which covers max_pairs == 0
        combos: Combinations::new(if max_pairs == 0 { 0 } else { pairs.len() }, 1),
        pairs,
    })
}

/// Every algebra over a `size`-world universe, one per partition of the
/// worlds into atoms. Each algebra is sorted by bit pattern.
pub fn enumerate_algebras(size: usize) -> Result<Vec<Vec<WorldSet>>> {
    check_size(size)?;
    Ok(SetPartitions::new(size)
        .map(|rgs| {
            let blocks = rgs.iter().max().map_or(0, |m| m + 1);
            let mut atoms = alloc::vec![WorldSet::EMPTY; blocks];
            for (w, &b) in rgs.iter().enumerate() {
                atoms[b] = atoms[b].with(w);
            }
            let mut sets: Vec<WorldSet> = (0u32..1 << blocks)
                .map(|mask| {
                    (0..blocks).filter(|i| mask >> i & 1 == 1).fold(WorldSet::EMPTY, |acc, i| acc.union(atoms[i]))
                })
                .collect();
            sets.sort();
            sets
        })
        .collect())
}

/// The agenda of contingent members of `sets`, or `None` if there are none.
pub fn contingent_part(sets: &[WorldSet], size: usize) -> Option<Agenda> {
    let universe = Universe::new(size).ok()?;
    let specs: Vec<IssueSpec> = sets
        .iter()
        .filter(|s| s.is_contingent(size))
        .map(|&s| IssueSpec::named(universe.format_worlds(s), s))
        .collect();
    if specs.is_empty() {
        return None;
    }
    Agenda::new(universe, specs, true).ok()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Check {
    /// The contingent part of every algebra with at least three contingent
    /// members is path-connected and even-negatable.
    AlgebraPcEn,
    /// Even-negatable iff pair-negatable.
    EvenIffPair,
    /// Path-connected implies non-simple.
    PcImpliesNs,
    /// Without even-negatability every even negation of every MIS is again
    /// minimally inconsistent.
    EvenNegationsMinimal,
    /// Without negation-connectedness an M-set exists and meets its clauses.
    MSet,
    /// Blocked iff no median point.
    BlockedIffNoMedian,
    /// PC implies NC implies blocked, blocked iff H0 nonempty, NC iff H0 is
    /// the whole agenda.
    FlagChain,
    /// MIS-route entailment agrees with the definition on every ordered pair,
    /// and the path flags agree with reachability under the definition.
    EntailmentOracle,
    /// The MIS enumeration equals the brute-force family.
    MisBruteForce,
}

impl Check {
    pub const ALL: [Check; 9] = [
        Check::AlgebraPcEn,
        Check::EvenIffPair,
        Check::PcImpliesNs,
        Check::EvenNegationsMinimal,
        Check::MSet,
        Check::BlockedIffNoMedian,
        Check::FlagChain,
        Check::EntailmentOracle,
        Check::MisBruteForce,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::AlgebraPcEn => "algebra-pc-en",
            Check::EvenIffPair => "even-iff-pair",
            Check::PcImpliesNs => "pc-implies-ns",
            Check::EvenNegationsMinimal => "even-negations-minimal",
            Check::MSet => "m-set",
            Check::BlockedIffNoMedian => "blocked-iff-no-median",
            Check::FlagChain => "flag-chain",
            Check::EntailmentOracle => "entailment-oracle",
            Check::MisBruteForce => "mis-brute-force",
        }
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// A failed check with the agenda it failed on.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Finding {
    pub check: Check,
    pub agenda: Agenda,
    pub detail: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CheckCount {
    pub check: Check,
    /// Instances where the check's premise held and it was evaluated.
    pub instances: usize,
    pub failures: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scope {
    pub universe_sizes: Vec<usize>,
    pub max_pairs: usize,
    pub algebras: bool,
}

impl Scope {
    pub fn new(universe_sizes: &[usize], max_pairs: usize) -> Self {
        Scope { universe_sizes: universe_sizes.to_vec(), max_pairs, algebras: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationRun {
    pub scope: Scope,
    pub agendas: usize,
    pub algebras: usize,
    pub checks: Vec<CheckCount>,
    pub findings: Vec<Finding>,
    /// Wall time, filled in by callers that have a clock.
    pub elapsed: Option<Duration>,
}

impl VerificationRun {
    pub fn passed(&self) -> bool {
        self.findings.is_empty()
    }

    pub fn count(&self, check: Check) -> CheckCount {
        self.checks.iter().copied().find(|c| c.check == check).unwrap_or(CheckCount {
            check,
            instances: 0,
            failures: 0,
        })
    }
}

struct Recorder {
    counts: Vec<CheckCount>,
    findings: Vec<Finding>,
}

impl Recorder {
    fn record(&mut self, check: Check, agenda: &Agenda, failure: Option<String>) {
        let c = self.counts.iter_mut().find(|c| c.check == check).expect("every check has a counter");
        c.instances += 1;
        if let Some(detail) = failure {
            c.failures += 1;
            self.findings.push(Finding { check, agenda: agenda.clone(), detail });
        }
    }
}

fn fail_unless(ok: bool, detail: impl FnOnce() -> String) -> Option<String> {
    if ok {
        None
    } else {
        Some(detail())
    }
}

fn brute_force_mis(agenda: &Agenda) -> Vec<IssueSet> {
    let mut out: Vec<IssueSet> = (0u64..1 << agenda.len())
        .map(|bits| IssueSet::from_ids((0..agenda.len()).filter(|i| bits >> i & 1 == 1).map(IssueId)))
        .filter(|&s| is_minimally_inconsistent(agenda, s))
        .collect();
    out.sort_by(IssueSet::canonical_cmp);
    out
}

fn bfs_reachable(rows: &[IssueSet], from: IssueId) -> IssueSet {
    let mut seen = IssueSet::EMPTY;
    let mut queue = VecDeque::from([from]);
    while let Some(a) = queue.pop_front() {
        for b in rows[a.0].iter() {
            if !seen.contains(b) {
                seen = seen.with(b);
                queue.push_back(b);
            }
        }
    }
    seen
}

fn check_entailment(
    agenda: &Agenda,
    mis: &MisFamily,
    flags: &PropertyFlags,
    limits: &Limits,
) -> Result<Option<String>> {
    let mut rows = alloc::vec![IssueSet::EMPTY; agenda.len()];
    for a in agenda.ids() {
        for b in agenda.ids() {
            let fast = conditionally_entails(agenda, mis, a, b)?;
            let slow = conditionally_entails_direct(agenda, a, b, limits)?;
            if fast.is_some() != slow.is_some() {
                return Ok(Some(format!(
                    "{} => {}: MIS route says {}, definition says {}",
                    agenda.name(a),
                    agenda.name(b),
                    fast.is_some(),
                    slow.is_some()
                )));
            }
            if let Some(y) = fast {
                if !is_entailment_witness(agenda, a, b, y) {
                    return Ok(Some(format!(
                        "{} => {}: witness {} fails the definition",
                        agenda.name(a),
                        agenda.name(b),
                        agenda.format_set(y)
                    )));
                }
                rows[a.0] = rows[a.0].with(b);
            }
        }
    }
    let reach: Vec<IssueSet> = agenda.ids().map(|a| bfs_reachable(&rows, a)).collect();
    let pc = reach.iter().all(|&r| r == agenda.all());
    let h0 = IssueSet::from_ids(agenda.ids().filter(|&a| {
        let c = agenda.complement(a);
        reach[a.0].contains(c) && reach[c.0].contains(a)
    }));
    let nc = agenda.ids().all(|a| reach[a.0].contains(agenda.complement(a)));
    Ok(fail_unless(pc == flags.path_connected && nc == flags.negation_connected && h0 == flags.h0, || {
        format!("reachability flags differ: pc {pc}, nc {nc}, h0 {}", agenda.format_set(h0))
    }))
}

fn check_m_set_clauses(agenda: &Agenda, mis: &MisFamily, h0: IssueSet, m: IssueSet) -> Option<String> {
    for a in agenda.ids().filter(|a| !h0.contains(*a)) {
        if m.contains(a) == m.contains(agenda.complement(a)) {
            return Some(format!("M = {} selects {} and its complement alike", agenda.format_set(m), agenda.name(a)));
        }
    }
    for y in mis.iter() {
        let hits = y.intersection(m).len();
        let limit = if y.intersection(h0).is_empty() { 1 } else { 0 };
        if hits > limit {
            return Some(format!(
                "M = {} meets {} in {hits} issues (H0 = {})",
                agenda.format_set(m),
                agenda.format_set(y),
                agenda.format_set(h0)
            ));
        }
    }
    None
}

fn verify_agenda(agenda: &Agenda, rec: &mut Recorder, limits: &Limits) -> Result<()> {
    let mis = minimally_inconsistent_subsets(agenda, None, limits)?;
    let brute = brute_force_mis(agenda);
    rec.record(
        Check::MisBruteForce,
        agenda,
        fail_unless(mis.sets() == brute.as_slice(), || {
            format!("enumerated {} sets, brute force {}", mis.len(), brute.len())
        }),
    );

    let graph = EntailmentGraph::build(agenda, &mis);
    let flags = PropertyFlags::compute(agenda, &mis, &graph);
    rec.record(Check::EntailmentOracle, agenda, check_entailment(agenda, &mis, &flags, limits)?);

    let en = flags.is_even_negatable();
    rec.record(
        Check::EvenIffPair,
        agenda,
        fail_unless(en == flags.is_pair_negatable(), || {
            format!("even-negatable {en}, pair-negatable {}", flags.is_pair_negatable())
        }),
    );

    if flags.path_connected {
        rec.record(
            Check::PcImpliesNs,
            agenda,
            fail_unless(flags.is_non_simple(), || "path-connected but simple".into()),
        );
    }

    if !en {
        let mut failure = None;
        'outer: for y in mis.iter() {
            let members: Vec<IssueId> = y.iter().collect();
            for k in (2..=members.len()).step_by(2) {
                for combo in Combinations::new(members.len(), k) {
                    let z = IssueSet::from_ids(combo.into_iter().map(|i| members[i]));
                    let negated = negate_subset(agenda, y, z)?;
                    if !is_minimally_inconsistent(agenda, negated) {
                        failure = Some(format!(
                            "negating {} in {} gives {}, not minimally inconsistent",
                            agenda.format_set(z),
                            agenda.format_set(y),
                            agenda.format_set(negated)
                        ));
                        break 'outer;
                    }
                }
            }
        }
        rec.record(Check::EvenNegationsMinimal, agenda, failure);
    }

    if !flags.negation_connected {
        let failure = match find_m_set(agenda, &graph, &mis, limits)? {
            MSetOutcome::Found(m) => check_m_set_clauses(agenda, &mis, flags.h0, m),
            other => Some(format!("no M-set: {other:?}")),
        };
        rec.record(Check::MSet, agenda, failure);
    }

    rec.record(
        Check::BlockedIffNoMedian,
        agenda,
        fail_unless(flags.blocked == flags.median_points.is_empty(), || {
            format!("blocked {}, median points {}", flags.blocked, agenda.universe().format_worlds(flags.median_points))
        }),
    );

    let chain = (!flags.path_connected || flags.negation_connected)
        && (!flags.negation_connected || flags.blocked)
        && flags.blocked == !flags.h0.is_empty()
        && flags.negation_connected == (flags.h0 == agenda.all());
    rec.record(
        Check::FlagChain,
        agenda,
        fail_unless(chain, || {
            format!(
                "pc {}, nc {}, blocked {}, h0 {}",
                flags.path_connected,
                flags.negation_connected,
                flags.blocked,
                agenda.format_set(flags.h0)
            )
        }),
    );
    Ok(())
}

fn verify_algebra(agenda: &Agenda, rec: &mut Recorder, limits: &Limits) -> Result<()> {
    let mis = minimally_inconsistent_subsets(agenda, None, limits)?;
    let graph = EntailmentGraph::build(agenda, &mis);
    let flags = PropertyFlags::compute(agenda, &mis, &graph);
    rec.record(
        Check::AlgebraPcEn,
        agenda,
        fail_unless(flags.path_connected && flags.is_even_negatable(), || {
            format!("pc {}, en {}", flags.path_connected, flags.is_even_negatable())
        }),
    );
    Ok(())
}

/// Run every check over all agendas of the scope and, if requested, the
/// contingent parts of all algebras over the same universe sizes.
/// Counterexamples are reported as findings, not errors.
pub fn verify_lemmas(scope: &Scope, limits: &Limits) -> Result<VerificationRun> {
    let mut rec = Recorder {
        counts: Check::ALL.iter().map(|&check| CheckCount { check, instances: 0, failures: 0 }).collect(),
        findings: Vec::new(),
    };
    let (mut agendas, mut algebras) = (0, 0);
    for &size in &scope.universe_sizes {
        let max_pairs = scope.max_pairs.min(complement_pairs(size.clamp(2, MAX_ENUM_WORLDS)).len());
        for agenda in enumerate_agendas(size, max_pairs)? {
            verify_agenda(&agenda, &mut rec, limits)?;
            agendas += 1;
        }
        if scope.algebras {
            for sets in enumerate_algebras(size)? {
                if sets.iter().filter(|s| s.is_contingent(size)).count() < 3 {
                    continue;
                }
                let agenda = contingent_part(&sets, size).expect("contingent sets exist");
                verify_algebra(&agenda, &mut rec, limits)?;
                algebras += 1;
            }
        }
    }
    Ok(VerificationRun {
        scope: scope.clone(),
        agendas,
        algebras,
        checks: rec.counts,
        findings: rec.findings,
        elapsed: None,
    })
}
