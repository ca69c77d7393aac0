//! Agenda conditions and their witnesses.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::combinatorics::{Combinations, SetPartitions};
use crate::entailment::EntailmentGraph;
use crate::error::{Error, Result};
use crate::mis::{minimally_inconsistent_subsets, negate_subset, MisFamily};
use crate::model::{Agenda, IssueId, IssueSet};
use crate::worlds::WorldSet;
use crate::Limits;

/// A minimally inconsistent `y` that becomes consistent once the members of
/// `z` are replaced by their complements.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NegationWitness {
    pub y: IssueSet,
    pub z: IssueSet,
    pub negated: IssueSet,
    /// Worlds satisfying `negated`.
    pub worlds: WorldSet,
}

/// First ordered pair `(a, b)` with no entailment path from `a` to `b`.
pub fn path_gap(graph: &EntailmentGraph) -> Option<(IssueId, IssueId)> {
    let n = graph.len();
    (0..n).flat_map(|a| (0..n).map(move |b| (IssueId(a), IssueId(b)))).find(|&(a, b)| !graph.reaches(a, b))
}

pub fn is_path_connected(graph: &EntailmentGraph) -> bool {
    path_gap(graph).is_none()
}

fn negation_search(agenda: &Agenda, mis: &MisFamily, pairs_only: bool) -> Option<NegationWitness> {
    for y in mis.iter() {
        let members: Vec<IssueId> = y.iter().collect();
        let sizes = if pairs_only { 2..=2.min(members.len()) } else { 2..=members.len() };
        for k in sizes.step_by(2) {
            for combo in Combinations::new(members.len(), k) {
                let z = IssueSet::from_ids(combo.into_iter().map(|i| members[i]));
                let negated = negate_subset(agenda, y, z).expect("z drawn from y");
                let worlds = agenda.intersection(negated);
                if !worlds.is_empty() {
                    return Some(NegationWitness { y, z, negated, worlds });
                }
            }
        }
    }
    None
}

/// Some MIS made consistent by negating an even number (at least two) of its
/// members. Pairs are tried first.
pub fn is_even_negatable(agenda: &Agenda, mis: &MisFamily) -> Option<NegationWitness> {
    negation_search(agenda, mis, false)
}

pub fn is_pair_negatable(agenda: &Agenda, mis: &MisFamily) -> Option<NegationWitness> {
    negation_search(agenda, mis, true)
}

/// A minimally inconsistent set with at least three members.
pub fn is_non_simple(mis: &MisFamily) -> Option<IssueSet> {
    mis.iter().find(|y| y.len() >= 3)
}

/// First issue with no entailment path to its complement.
pub fn negation_gap(agenda: &Agenda, graph: &EntailmentGraph) -> Option<IssueId> {
    agenda.ids().find(|&a| !graph.reaches(a, agenda.complement(a)))
}

pub fn is_negation_connected(agenda: &Agenda, graph: &EntailmentGraph) -> bool {
    negation_gap(agenda, graph).is_none()
}

/// Issues that reach their complement and are reached back from it.
pub fn h0_set(agenda: &Agenda, graph: &EntailmentGraph) -> IssueSet {
    IssueSet::from_ids(agenda.ids().filter(|&a| {
        let c = agenda.complement(a);
        graph.reaches(a, c) && graph.reaches(c, a)
    }))
}

pub fn is_blocked(agenda: &Agenda, graph: &EntailmentGraph) -> bool {
    !h0_set(agenda, graph).is_empty()
}

/// Worlds that lie in at most one member of every minimally inconsistent set.
pub fn median_points(agenda: &Agenda, mis: &MisFamily) -> WorldSet {
    WorldSet::from_worlds(
        (0..agenda.universe().size())
            .filter(|&m| mis.iter().all(|y| y.iter().filter(|&a| agenda.worlds(a).contains(m)).count() <= 1)),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MSetViolation {
    /// The MIS meets the candidate in more than one issue.
    Overlap(IssueSet),
    /// The MIS meets H0 and the candidate.
    TouchesH0(IssueSet),
    /// Neither or both members of the pair are selected, or a member of H0 is.
    Selection(IssueId),
}

/// Check the three defining clauses of an M-set for candidate `m`.
pub fn check_m_set(
    agenda: &Agenda,
    mis: &MisFamily,
    h0: IssueSet,
    m: IssueSet,
) -> core::result::Result<(), MSetViolation> {
    if m.is_empty() {
        return Err(MSetViolation::Selection(IssueId(0)));
    }
    for a in agenda.ids() {
        let inside = m.contains(a);
        if h0.contains(a) {
            if inside {
                return Err(MSetViolation::Selection(a));
            }
        } else if inside == m.contains(agenda.complement(a)) {
            return Err(MSetViolation::Selection(a));
        }
    }
    for y in mis.iter() {
        let hits = y.intersection(m).len();
        if hits > 1 {
            return Err(MSetViolation::Overlap(y));
        }
        if hits > 0 && !y.intersection(h0).is_empty() {
            return Err(MSetViolation::TouchesH0(y));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MSetOutcome {
    Found(IssueSet),
    /// Precondition failed: every issue reaches its complement.
    NegationConnected,
    /// No selection satisfies the clauses. For a complete MIS family this
    /// contradicts the existence lemma and indicates a bug.
    NotFound,
}

/// Search for a set `M` picking exactly one issue of every complement pair
/// outside H0 such that every MIS meets `M` at most once, and not at all when
/// it meets H0.
pub fn find_m_set(agenda: &Agenda, graph: &EntailmentGraph, mis: &MisFamily, limits: &Limits) -> Result<MSetOutcome> {
    if is_negation_connected(agenda, graph) {
        return Ok(MSetOutcome::NegationConnected);
    }
    let h0 = h0_set(agenda, graph);
    let pairs: Vec<(IssueId, IssueId)> = agenda.pairs().into_iter().filter(|(a, _)| !h0.contains(*a)).collect();
    if pairs.len() > limits.m_set_pairs {
        return Err(Error::limit("complement pairs for M-set search", pairs.len(), limits.m_set_pairs));
    }
    for mask in 0u64..(1 << pairs.len()) {
        let m = IssueSet::from_ids(pairs.iter().enumerate().map(|(i, &(a, b))| if mask >> i & 1 == 0 { a } else { b }));
        if check_m_set(agenda, mis, h0, m).is_ok() {
            return Ok(MSetOutcome::Found(m));
        }
    }
    Ok(MSetOutcome::NotFound)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartitionOutcome {
    /// Blocks of a partition into complement-closed, path-connected parts.
    Found(Vec<IssueSet>),
    NotNegationConnected,
    NotFound,
}

/// Search partitions of the complement pairs for one whose blocks are each
/// path-connected as agendas in their own right. Coarsest partitions come
/// first, so a path-connected agenda yields the single block.
pub fn partition_into_pc_subagendas(
    agenda: &Agenda,
    graph: &EntailmentGraph,
    limits: &Limits,
) -> Result<PartitionOutcome> {
    if !is_negation_connected(agenda, graph) {
        return Ok(PartitionOutcome::NotNegationConnected);
    }
    let pairs = agenda.pairs();
    if pairs.len() > limits.partition_pairs {
        return Err(Error::limit("complement pairs for partition search", pairs.len(), limits.partition_pairs));
    }
    let mut cache: BTreeMap<u64, bool> = BTreeMap::new();
    for rgs in SetPartitions::new(pairs.len()) {
        let blocks = rgs.iter().copied().max().map_or(0, |m| m + 1);
        let mut parts = alloc::vec![IssueSet::EMPTY; blocks];
        for (i, &b) in rgs.iter().enumerate() {
            parts[b] = parts[b].with(pairs[i].0).with(pairs[i].1);
        }
        let mut ok = true;
        for part in &parts {
            let pc = match cache.get(&part.bits()) {
                Some(&v) => v,
                None => {
                    let sub = agenda.sub_agenda(*part)?;
                    let mis = minimally_inconsistent_subsets(&sub, None, limits)?;
                    let v = is_path_connected(&EntailmentGraph::build(&sub, &mis));
                    cache.insert(part.bits(), v);
                    v
                }
            };
            if !pc {
                ok = false;
                break;
            }
        }
        if ok {
            return Ok(PartitionOutcome::Found(parts));
        }
    }
    Ok(PartitionOutcome::NotFound)
}

/// Every agenda condition with its witnesses.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyFlags {
    pub path_connected: bool,
    /// When not path-connected: the first pair without a path.
    pub path_gap: Option<(IssueId, IssueId)>,
    pub even_negatable: Option<NegationWitness>,
    pub pair_negatable: Option<NegationWitness>,
    pub non_simple: Option<IssueSet>,
    pub negation_connected: bool,
    /// When not negation-connected: the first issue without a path to its
    /// complement.
    pub negation_gap: Option<IssueId>,
    pub blocked: bool,
    pub h0: IssueSet,
    pub median_points: WorldSet,
}

impl PropertyFlags {
    pub fn compute(agenda: &Agenda, mis: &MisFamily, graph: &EntailmentGraph) -> Self {
        let h0 = h0_set(agenda, graph);
        let path_gap = path_gap(graph);
        let negation_gap = negation_gap(agenda, graph);
        PropertyFlags {
            path_connected: path_gap.is_none(),
            path_gap,
            even_negatable: is_even_negatable(agenda, mis),
            pair_negatable: is_pair_negatable(agenda, mis),
            non_simple: is_non_simple(mis),
            negation_connected: negation_gap.is_none(),
            negation_gap,
            blocked: !h0.is_empty(),
            h0,
            median_points: median_points(agenda, mis),
        }
    }

    pub fn is_even_negatable(&self) -> bool {
        self.even_negatable.is_some()
    }

    pub fn is_pair_negatable(&self) -> bool {
        self.pair_negatable.is_some()
    }

    pub fn is_non_simple(&self) -> bool {
        self.non_simple.is_some()
    }
}

/// The MIS family, entailment graph and flags of one agenda.
#[derive(Debug, Clone)]
pub struct Analysis {
    pub mis: MisFamily,
    pub graph: EntailmentGraph,
    pub flags: PropertyFlags,
}

pub fn analyze(agenda: &Agenda, limits: &Limits) -> Result<Analysis> {
    let mis = minimally_inconsistent_subsets(agenda, None, limits)?;
    let graph = EntailmentGraph::build(agenda, &mis);
    let flags = PropertyFlags::compute(agenda, &mis, &graph);
    Ok(Analysis { mis, graph, flags })
}
