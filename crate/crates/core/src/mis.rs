//! Minimally inconsistent subsets and subset negation.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::model::{Agenda, IssueSet};
use crate::worlds::WorldSet;
use crate::Limits;

/// All minimally inconsistent subsets of an agenda (up to an optional size
/// bound), sorted by size then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MisFamily {
    sets: Vec<IssueSet>,
}

impl MisFamily {
    pub fn sets(&self) -> &[IssueSet] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = IssueSet> + '_ {
        self.sets.iter().copied()
    }

    pub fn contains(&self, set: IssueSet) -> bool {
        self.sets.contains(&set)
    }
}

pub fn is_minimally_inconsistent(agenda: &Agenda, set: IssueSet) -> bool {
    !agenda.is_consistent(set) && set.iter().all(|a| agenda.is_consistent(set.without(a)))
}

/// Enumerate every minimally inconsistent subset with at most `max_size`
/// members.
pub fn minimally_inconsistent_subsets(agenda: &Agenda, max_size: Option<usize>, limits: &Limits) -> Result<MisFamily> {
    if agenda.len() > limits.mis_issues {
        return Err(Error::limit("issues for MIS enumeration", agenda.len(), limits.mis_issues));
    }
    let max = max_size.unwrap_or(agenda.len());
    let mut sets = Vec::new();
    extend(agenda, 0, IssueSet::EMPTY, agenda.universe().full(), max, &mut sets);
    sets.sort_by(IssueSet::canonical_cmp);
    Ok(MisFamily { sets })
}

// Extends consistent prefixes only: any set with an inconsistent proper
// subset cannot be minimal.
fn extend(agenda: &Agenda, next: usize, chosen: IssueSet, meet: WorldSet, max: usize, out: &mut Vec<IssueSet>) {
    if chosen.len() == max {
        return;
    }
    for i in next..agenda.len() {
        let id = crate::IssueId(i);
        let set = chosen.with(id);
        let m = meet.intersection(agenda.worlds(id));
        if m.is_empty() {
            if is_minimally_inconsistent(agenda, set) {
                out.push(set);
            }
        } else {
            extend(agenda, i + 1, set, m, max, out);
        }
    }
}

/// `(y \ z) ∪ {complement of a : a ∈ z}`.
pub fn negate_subset(agenda: &Agenda, y: IssueSet, z: IssueSet) -> Result<IssueSet> {
    if !z.is_subset(y) {
        return Err(Error::NotASubset);
    }
    Ok(y.difference(z).union(agenda.complement_set(z)))
}
