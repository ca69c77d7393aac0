//! Worlds, issues and agendas.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::worlds::{WorldSet, MAX_WORLDS};

/// Hard cap on agenda size; an [`IssueSet`] is one `u64`.
pub const MAX_ISSUES: usize = 64;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Universe {
    size: usize,
    labels: Option<Vec<String>>,
}

impl Universe {
    pub fn new(size: usize) -> Result<Self> {
        if size == 0 || size > MAX_WORLDS {
            return Err(Error::UniverseSize { got: size, max: MAX_WORLDS });
        }
        Ok(Universe { size, labels: None })
    }

    pub fn with_labels(labels: Vec<String>) -> Result<Self> {
        let mut u = Universe::new(labels.len())?;
        let distinct: BTreeSet<&str> = labels.iter().map(String::as_str).collect();
        if distinct.len() != labels.len() {
            return Err(Error::InvalidLabels("world labels must be unique".into()));
        }
        u.labels = Some(labels);
        Ok(u)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    pub fn full(&self) -> WorldSet {
        WorldSet::full(self.size)
    }

    pub fn label(&self, world: usize) -> String {
        match &self.labels {
            Some(l) => l[world].clone(),
            None => world.to_string(),
        }
    }

    /// Look a world up by label, or by index when the universe is unlabelled
    /// (or the label is not found).
    pub fn world(&self, name: &str) -> Option<usize> {
        if let Some(l) = &self.labels {
            if let Some(i) = l.iter().position(|x| x == name) {
                return Some(i);
            }
        }
        name.parse().ok().filter(|&w| w < self.size)
    }

    pub fn format_worlds(&self, set: WorldSet) -> String {
        let inner: Vec<String> = set.iter().map(|w| self.label(w)).collect();
        format!("{{{}}}", inner.join(","))
    }
}

/// Index of an issue within its agenda.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IssueId(pub usize);

/// A selection of issues of one agenda, as a bitmask over issue indices.
#[derive(Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct IssueSet(u64);

impl IssueSet {
    pub const EMPTY: IssueSet = IssueSet(0);

    pub const fn from_bits(bits: u64) -> Self {
        IssueSet(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The first `n` issues.
    pub const fn prefix(n: usize) -> Self {
        if n >= 64 {
            IssueSet(u64::MAX)
        } else {
            IssueSet((1u64 << n) - 1)
        }
    }

    pub fn from_ids<I: IntoIterator<Item = IssueId>>(ids: I) -> Self {
        ids.into_iter().fold(IssueSet::EMPTY, |s, id| s.with(id))
    }

    pub const fn with(self, id: IssueId) -> Self {
        IssueSet(self.0 | (1 << id.0))
    }

    pub const fn without(self, id: IssueId) -> Self {
        IssueSet(self.0 & !(1 << id.0))
    }

    pub const fn contains(self, id: IssueId) -> bool {
        id.0 < 64 && self.0 & (1 << id.0) != 0
    }

    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub const fn union(self, other: IssueSet) -> Self {
        IssueSet(self.0 | other.0)
    }

    pub const fn intersection(self, other: IssueSet) -> Self {
        IssueSet(self.0 & other.0)
    }

    pub const fn difference(self, other: IssueSet) -> Self {
        IssueSet(self.0 & !other.0)
    }

    pub const fn is_subset(self, other: IssueSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = IssueId> {
        let mut bits = self.0;
        core::iter::from_fn(move || {
            if bits == 0 {
                None
            } else {
                let i = bits.trailing_zeros() as usize;
                bits &= bits - 1;
                Some(IssueId(i))
            }
        })
    }

    /// Size first, then lexicographic on the ascending index lists.
    pub fn canonical_cmp(&self, other: &IssueSet) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.iter().cmp(other.iter()))
    }
}

impl fmt::Debug for IssueSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter().map(|i| i.0)).finish()
    }
}

/// Input form of an issue: its worlds plus an optional display name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IssueSpec {
    pub name: Option<String>,
    pub worlds: WorldSet,
}

impl IssueSpec {
    pub fn new(worlds: WorldSet) -> Self {
        IssueSpec { name: None, worlds }
    }

    pub fn named(name: impl Into<String>, worlds: WorldSet) -> Self {
        IssueSpec { name: Some(name.into()), worlds }
    }
}

/// A complement-closed, duplicate-free, nonempty family of contingent issues.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Agenda {
    universe: Universe,
    issues: Vec<WorldSet>,
    names: Vec<String>,
    complement: Vec<usize>,
}

/// Name for the auto-added complement of an issue called `name`.
pub fn negated_name(name: &str) -> String {
    let simple = name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_' || c == '~');
    if simple {
        format!("~{name}")
    } else {
        format!("~({name})")
    }
}

impl Agenda {
    /// Validate and build an agenda.
    ///
    /// Duplicates are dropped (first occurrence wins). With `auto_close`, a
    /// complement missing from the input is inserted right after its issue.
    pub fn new(universe: Universe, specs: Vec<IssueSpec>, auto_close: bool) -> Result<Self> {
        let size = universe.size();
        let full = universe.full();
        let mut deduped: Vec<IssueSpec> = Vec::with_capacity(specs.len());
        for spec in specs {
            if !spec.worlds.is_subset(full) {
                let world = spec.worlds.difference(full).first().unwrap_or(0);
                return Err(Error::WorldOutOfRange { world, size });
            }
            if !spec.worlds.is_contingent(size) {
                let shown = spec.name.clone().unwrap_or_else(|| universe.format_worlds(spec.worlds));
                return Err(Error::NonContingentIssue(shown));
            }
            if !deduped.iter().any(|d| d.worlds == spec.worlds) {
                deduped.push(spec);
            }
        }
        if deduped.is_empty() {
            return Err(Error::EmptyAgenda);
        }

        let mut issues = Vec::new();
        let mut names: Vec<String> = Vec::new();
        for spec in &deduped {
            if issues.contains(&spec.worlds) {
                continue;
            }
            let name = spec.name.clone().unwrap_or_else(|| format!("i{}", issues.len()));
            let comp = spec.worlds.complement(size);
            issues.push(spec.worlds);
            names.push(name);
            if !deduped.iter().any(|d| d.worlds == comp) {
                if !auto_close {
                    return Err(Error::NotComplementClosed(names.last().unwrap().clone()));
                }
                let comp_name = negated_name(names.last().unwrap());
                issues.push(comp);
                names.push(comp_name);
            }
        }
        if issues.len() > MAX_ISSUES {
            return Err(Error::limit("agenda issues", issues.len(), MAX_ISSUES));
        }
        let mut seen = BTreeSet::new();
        for n in &names {
            if !seen.insert(n.as_str()) {
                return Err(Error::DuplicateName(n.clone()));
            }
        }
        let complement = issues
            .iter()
            .map(|s| {
                let c = s.complement(size);
                issues.iter().position(|t| *t == c).expect("complement closed")
            })
            .collect();
        Ok(Agenda { universe, issues, names, complement })
    }

    /// Unnamed construction from bare world sets.
    pub fn from_sets(universe: Universe, sets: &[WorldSet], auto_close: bool) -> Result<Self> {
        Agenda::new(universe, sets.iter().map(|&s| IssueSpec::new(s)).collect(), auto_close)
    }

    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub fn len(&self) -> usize {
        self.issues.len()
    }

    pub fn is_empty(&self) -> bool {
        self.issues.is_empty()
    }

    pub fn ids(&self) -> impl Iterator<Item = IssueId> {
        (0..self.issues.len()).map(IssueId)
    }

    pub fn all(&self) -> IssueSet {
        IssueSet::prefix(self.issues.len())
    }

    pub fn worlds(&self, id: IssueId) -> WorldSet {
        self.issues[id.0]
    }

    pub fn issues(&self) -> &[WorldSet] {
        &self.issues
    }

    pub fn name(&self, id: IssueId) -> &str {
        &self.names[id.0]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn complement(&self, id: IssueId) -> IssueId {
        IssueId(self.complement[id.0])
    }

    pub fn complement_set(&self, set: IssueSet) -> IssueSet {
        IssueSet::from_ids(set.iter().map(|i| self.complement(i)))
    }

    /// Close a selection under complement.
    pub fn close_pairs(&self, set: IssueSet) -> IssueSet {
        set.union(self.complement_set(set))
    }

    pub fn by_name(&self, name: &str) -> Option<IssueId> {
        self.names.iter().position(|n| n == name).map(IssueId)
    }

    pub fn by_worlds(&self, worlds: WorldSet) -> Option<IssueId> {
        self.issues.iter().position(|&w| w == worlds).map(IssueId)
    }

    /// Resolve an issue reference: a name first, then a 0-based index.
    pub fn resolve(&self, reference: &str) -> Result<IssueId> {
        if let Some(id) = self.by_name(reference) {
            return Ok(id);
        }
        reference
            .parse::<usize>()
            .ok()
            .filter(|&i| i < self.len())
            .map(IssueId)
            .ok_or_else(|| Error::IssueNotInAgenda(reference.into()))
    }

    /// Complement pairs as (first listed, other), ordered by the first.
    pub fn pairs(&self) -> Vec<(IssueId, IssueId)> {
        self.ids().filter(|&i| i.0 < self.complement[i.0]).map(|i| (i, self.complement(i))).collect()
    }

    /// Intersection of the selected issues; the empty selection gives the
    /// whole universe.
    pub fn intersection(&self, set: IssueSet) -> WorldSet {
        set.iter().fold(self.universe.full(), |acc, i| acc.intersection(self.issues[i.0]))
    }

    pub fn is_consistent(&self, set: IssueSet) -> bool {
        !self.intersection(set).is_empty()
    }

    pub fn entails(&self, set: IssueSet, issue: IssueId) -> bool {
        self.intersection(set).is_subset(self.issues[issue.0])
    }

    /// The agenda restricted to a complement-closed selection, keeping names
    /// and relative order.
    pub fn sub_agenda(&self, set: IssueSet) -> Result<Agenda> {
        if set.is_empty() {
            return Err(Error::EmptyAgenda);
        }
        if self.complement_set(set) != set {
            return Err(Error::NotASubAgenda);
        }
        let specs = set.iter().map(|i| IssueSpec::named(self.names[i.0].clone(), self.issues[i.0])).collect();
        Agenda::new(self.universe.clone(), specs, false)
    }

    pub fn format_set(&self, set: IssueSet) -> String {
        let inner: Vec<&str> = set.iter().map(|i| self.name(i)).collect();
        format!("{{{}}}", inner.join(", "))
    }
}

impl fmt::Display for Agenda {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "agenda over {} worlds: ", self.universe.size())?;
        for (i, (n, w)) in self.names.iter().zip(&self.issues).enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{n}={}", self.universe.format_worlds(*w))?;
        }
        Ok(())
    }
}

/// Atoms of the algebra generated by `sets`: the nonempty classes of worlds
/// that agree on membership in every set, ordered by lowest world.
pub fn atoms(sets: &[WorldSet], size: usize) -> Vec<WorldSet> {
    let mut out: Vec<WorldSet> = Vec::new();
    let mut rest = WorldSet::full(size);
    while let Some(w) = rest.first() {
        let atom =
            sets.iter().fold(
                WorldSet::full(size),
                |acc, &s| {
                    if s.contains(w) {
                        acc.intersection(s)
                    } else {
                        acc.difference(s)
                    }
                },
            );
        out.push(atom);
        rest = rest.difference(atom);
    }
    out
}

/// Most atoms `algebra_closure` will expand (2^20 sets).
pub const MAX_CLOSURE_ATOMS: usize = 20;

/// The smallest family containing `sets`, the empty set and the universe that
/// is closed under complement and intersection, sorted by bit pattern.
pub fn algebra_closure(sets: &[WorldSet], size: usize) -> Result<Vec<WorldSet>> {
    let atoms = atoms(sets, size);
    if atoms.len() > MAX_CLOSURE_ATOMS {
        return Err(Error::limit("algebra atoms", atoms.len(), MAX_CLOSURE_ATOMS));
    }
    let mut out: Vec<WorldSet> = (0u32..(1 << atoms.len()))
        .map(|mask| {
            atoms
                .iter()
                .enumerate()
                .filter(|(i, _)| mask & (1 << i) != 0)
                .fold(WorldSet::EMPTY, |acc, (_, &a)| acc.union(a))
        })
        .collect();
    out.sort();
    Ok(out)
}

/// True iff the family contains the empty set and the universe, is closed
/// under complement and pairwise intersection, and has at least three
/// contingent members.
pub fn is_nontrivial_algebra(sets: &[WorldSet], size: usize) -> bool {
    let family: BTreeSet<WorldSet> = sets.iter().copied().collect();
    let full = WorldSet::full(size);
    if !family.contains(&WorldSet::EMPTY) || !family.contains(&full) {
        return false;
    }
    if family.iter().any(|s| !s.is_subset(full)) {
        return false;
    }
    let closed = family
        .iter()
        .all(|s| family.contains(&s.complement(size)) && family.iter().all(|t| family.contains(&s.intersection(*t))));
    closed && family.len() >= 5
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use alloc::vec;

    fn ws(w: &[usize]) -> WorldSet {
        WorldSet::from_worlds(w.iter().copied())
    }

    #[test]
    fn pair_is_closed_automatically() {
        let a = Agenda::from_sets(Universe::new(2).unwrap(), &[ws(&[0])], true).unwrap();
        assert_eq!(a.issues(), [ws(&[0]), ws(&[1])]);
        assert_eq!(a.complement(IssueId(0)), IssueId(1));
        assert_eq!(a.names(), ["i0", "~i0"]);
    }

    #[test]
    fn conj_closure_adds_three_complements() {
        let a = fixtures::conj();
        assert_eq!(a.len(), 6);
        assert_eq!(a.names(), ["p", "~p", "q", "~q", "c", "~c"]);
        for id in a.ids() {
            assert_eq!(a.worlds(a.complement(id)), a.worlds(id).complement(4));
        }
    }

    #[test]
    fn rejects_empty_and_full_issues() {
        let u = Universe::new(3).unwrap();
        assert!(matches!(Agenda::from_sets(u.clone(), &[WorldSet::EMPTY], true), Err(Error::NonContingentIssue(_))));
        assert!(matches!(Agenda::from_sets(u, &[WorldSet::full(3)], true), Err(Error::NonContingentIssue(_))));
    }

    #[test]
    fn rejects_open_agenda_without_auto_close() {
        let u = Universe::new(3).unwrap();
        assert!(matches!(Agenda::from_sets(u.clone(), &[ws(&[0])], false), Err(Error::NotComplementClosed(_))));
        assert!(Agenda::from_sets(u, &[ws(&[0]), ws(&[1, 2])], false).is_ok());
    }

    #[test]
    fn empty_input_and_out_of_range_worlds() {
        let u = Universe::new(3).unwrap();
        assert_eq!(Agenda::from_sets(u.clone(), &[], true), Err(Error::EmptyAgenda));
        assert!(matches!(Agenda::from_sets(u, &[ws(&[3])], true), Err(Error::WorldOutOfRange { world: 3, size: 3 })));
    }

    #[test]
    fn duplicates_keep_first_occurrence() {
        let u = Universe::new(3).unwrap();
        let specs = vec![
            IssueSpec::named("a", ws(&[0])),
            IssueSpec::named("b", ws(&[1, 2])),
            IssueSpec::named("again", ws(&[0])),
        ];
        let a = Agenda::new(u, specs, false).unwrap();
        assert_eq!(a.names(), ["a", "b"]);
    }

    #[test]
    fn later_complement_keeps_its_name() {
        let u = Universe::new(3).unwrap();
        let specs = vec![
            IssueSpec::named("a", ws(&[0])),
            IssueSpec::named("b", ws(&[1])),
            IssueSpec::named("not_a", ws(&[1, 2])),
        ];
        let a = Agenda::new(u, specs, true).unwrap();
        assert_eq!(a.names(), ["a", "b", "~b", "not_a"]);
    }

    #[test]
    fn intersection_and_entailment() {
        let conj = fixtures::conj();
        let id = |n: &str| conj.by_name(n).unwrap();
        let set = |ns: &[&str]| IssueSet::from_ids(ns.iter().map(|n| id(n)));
        let pair = fixtures::pair();
        assert!(pair.intersection(pair.all()).is_empty());
        assert_eq!(conj.intersection(set(&["p", "q"])), ws(&[3]));
        assert_eq!(conj.intersection(IssueSet::EMPTY), WorldSet::full(4));
        assert!(!conj.is_consistent(set(&["p", "q", "~c"])));
        assert_eq!(conj.intersection(set(&["~p", "~q", "~c"])), ws(&[0]));
        assert!(pair.is_consistent(IssueSet::EMPTY.with(IssueId(0))));
        assert!(conj.entails(set(&["p", "q"]), id("c")));
        assert!(!conj.entails(set(&["p"]), id("c")));
        for i in conj.ids() {
            assert!(conj.entails(IssueSet::EMPTY.with(i), i));
        }
    }

    #[test]
    fn resolve_prefers_names() {
        let u = Universe::new(3).unwrap();
        let specs = vec![IssueSpec::named("1", ws(&[0])), IssueSpec::named("x", ws(&[1]))];
        let a = Agenda::new(u, specs, true).unwrap();
        assert_eq!(a.resolve("1").unwrap(), IssueId(0));
        assert_eq!(a.resolve("x").unwrap(), IssueId(2));
        assert_eq!(a.resolve("3").unwrap(), IssueId(3));
        assert!(a.resolve("9").is_err());
    }

    #[test]
    fn canonical_order_is_size_then_lex() {
        let s = |v: &[usize]| IssueSet::from_ids(v.iter().map(|&i| IssueId(i)));
        let mut v = vec![s(&[1, 2]), s(&[0, 3, 4]), s(&[0, 3]), s(&[5])];
        v.sort_by(IssueSet::canonical_cmp);
        assert_eq!(v, [s(&[5]), s(&[0, 3]), s(&[1, 2]), s(&[0, 3, 4])]);
    }

    #[test]
    fn power_set_of_three_is_a_nontrivial_algebra() {
        let all: Vec<_> = (0..8).map(WorldSet::from_bits).collect();
        assert!(is_nontrivial_algebra(&all, 3));
    }

    #[test]
    fn four_element_algebra_is_trivial() {
        let fam = [WorldSet::EMPTY, ws(&[0]), ws(&[1]), WorldSet::full(2)];
        assert!(!is_nontrivial_algebra(&fam, 2));
    }

    #[test]
    fn conj_with_bounds_is_not_an_algebra() {
        let conj = fixtures::conj();
        let mut fam = conj.issues().to_vec();
        fam.push(WorldSet::EMPTY);
        fam.push(WorldSet::full(4));
        // ~p ∩ ~q = {w00} is missing
        assert!(!is_nontrivial_algebra(&fam, 4));
    }

    #[test]
    fn closure_examples() {
        assert_eq!(algebra_closure(&[ws(&[0])], 2).unwrap(), [WorldSet::EMPTY, ws(&[0]), ws(&[1]), WorldSet::full(2)]);
        let conj = fixtures::conj();
        let c = algebra_closure(conj.issues(), 4).unwrap();
        assert_eq!(c.len(), 16);
        assert!(is_nontrivial_algebra(&c, 4));
        assert_eq!(algebra_closure(&[], 3).unwrap(), [WorldSet::EMPTY, WorldSet::full(3)]);
    }
}
