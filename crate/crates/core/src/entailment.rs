//! Conditional entailment, its transitive closure and path witnesses.
//!
//! `A ⊨* B` holds when some `Y ⊆ agenda` is consistent with `A` and with the
//! complement of `B` while `{A} ∪ Y` entails `B`. Equivalently (for `B` other
//! than the complement of `A`) some minimally inconsistent set contains both
//! `A` and the complement of `B`; that set minus those two is a witness.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use crate::combinatorics::Combinations;
use crate::error::{Error, Result};
use crate::mis::MisFamily;
use crate::model::{Agenda, IssueId, IssueSet};
use crate::Limits;

fn check_id(agenda: &Agenda, id: IssueId) -> Result<()> {
    if id.0 < agenda.len() {
        Ok(())
    } else {
        Err(Error::IssueNotInAgenda(alloc::format!("#{}", id.0)))
    }
}

/// MIS-based decision of `a ⊨* b`, returning a witness `Y`.
pub fn conditionally_entails(agenda: &Agenda, mis: &MisFamily, a: IssueId, b: IssueId) -> Result<Option<IssueSet>> {
    check_id(agenda, a)?;
    check_id(agenda, b)?;
    Ok(mis_witness(agenda, mis, a, b))
}

fn mis_witness(agenda: &Agenda, mis: &MisFamily, a: IssueId, b: IssueId) -> Option<IssueSet> {
    let not_b = agenda.complement(b);
    if not_b == a && a != b {
        // b is the complement of a: {a} ∪ Y ⊨ ~a forces {a} ∪ Y inconsistent
        return None;
    }
    let pair = IssueSet::EMPTY.with(a).with(not_b);
    mis.iter().find(|y| pair.is_subset(*y)).map(|y| y.difference(pair))
}

/// True when `y` satisfies the three clauses of `a ⊨*_y b` literally.
pub fn is_entailment_witness(agenda: &Agenda, a: IssueId, b: IssueId, y: IssueSet) -> bool {
    agenda.is_consistent(y.with(a))
        && agenda.is_consistent(y.with(agenda.complement(b)))
        && agenda.entails(y.with(a), b)
}

/// Decide `a ⊨* b` straight from the definition by trying every `Y`
/// (smallest first, then lexicographic).
pub fn conditionally_entails_direct(
    agenda: &Agenda,
    a: IssueId,
    b: IssueId,
    limits: &Limits,
) -> Result<Option<IssueSet>> {
    check_id(agenda, a)?;
    check_id(agenda, b)?;
    if agenda.len() > limits.oracle_issues {
        return Err(Error::limit("issues for direct entailment search", agenda.len(), limits.oracle_issues));
    }
    for k in 0..=agenda.len() {
        for combo in Combinations::new(agenda.len(), k) {
            let y = IssueSet::from_ids(combo.into_iter().map(IssueId));
            if is_entailment_witness(agenda, a, b, y) {
                return Ok(Some(y));
            }
        }
    }
    Ok(None)
}

/// One step `from ⊨*_witness to` of a path.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Hop {
    pub from: IssueId,
    pub to: IssueId,
    pub witness: IssueSet,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EntailmentGraph {
    size: usize,
    direct: Vec<u64>,
    closure: Vec<u64>,
    witnesses: Vec<Option<IssueSet>>,
}

impl EntailmentGraph {
    pub fn build(agenda: &Agenda, mis: &MisFamily) -> Self {
        let n = agenda.len();
        let mut direct = vec![0u64; n];
        let mut witnesses = vec![None; n * n];
        for a in agenda.ids() {
            for b in agenda.ids() {
                if let Some(y) = mis_witness(agenda, mis, a, b) {
                    direct[a.0] |= 1 << b.0;
                    witnesses[a.0 * n + b.0] = Some(y);
                }
            }
        }
        let closure = transitive_closure(&direct);
        EntailmentGraph { size: n, direct, closure, witnesses }
    }

    pub fn len(&self) -> usize {
        self.size
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    /// `a ⊨* b`
    pub fn direct(&self, a: IssueId, b: IssueId) -> bool {
        self.direct[a.0] >> b.0 & 1 == 1
    }

    /// `a ⊨** b`
    pub fn reaches(&self, a: IssueId, b: IssueId) -> bool {
        self.closure[a.0] >> b.0 & 1 == 1
    }

    pub fn witness(&self, a: IssueId, b: IssueId) -> Option<IssueSet> {
        self.witnesses[a.0 * self.size + b.0]
    }

    pub fn successors(&self, a: IssueId) -> IssueSet {
        IssueSet::from_bits(self.direct[a.0])
    }

    pub fn reachable(&self, a: IssueId) -> IssueSet {
        IssueSet::from_bits(self.closure[a.0])
    }

    pub fn direct_rows(&self) -> &[u64] {
        &self.direct
    }

    pub fn closure_rows(&self) -> &[u64] {
        &self.closure
    }

    /// A shortest chain of direct edges from `a` to `b`, breaking ties by
    /// lowest issue index. `a == b` gives the empty chain.
    pub fn path_witness(&self, a: IssueId, b: IssueId) -> Option<Vec<Hop>> {
        if !self.reaches(a, b) {
            return None;
        }
        let mut parent: Vec<Option<usize>> = vec![None; self.size];
        let mut seen = 1u64 << a.0;
        let mut queue = VecDeque::from([a.0]);
        while let Some(x) = queue.pop_front() {
            if x == b.0 {
                break;
            }
            for y in IssueSet::from_bits(self.direct[x]).iter() {
                if seen >> y.0 & 1 == 0 {
                    seen |= 1 << y.0;
                    parent[y.0] = Some(x);
                    queue.push_back(y.0);
                }
            }
        }
        let mut hops = Vec::new();
        let mut cur = b.0;
        while cur != a.0 {
            let prev = parent[cur]?;
            hops.push(Hop {
                from: IssueId(prev),
                to: IssueId(cur),
                witness: self.witnesses[prev * self.size + cur].expect("edge has witness"),
            });
            cur = prev;
        }
        hops.reverse();
        Some(hops)
    }
}

/// Warshall propagation over bit rows.
pub fn transitive_closure(rows: &[u64]) -> Vec<u64> {
    let mut c = rows.to_vec();
    for k in 0..c.len() {
        let row_k = c[k];
        for row in c.iter_mut() {
            if *row >> k & 1 == 1 {
                *row |= row_k;
            }
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::mis::minimally_inconsistent_subsets;

    fn setup(agenda: &Agenda) -> (MisFamily, EntailmentGraph) {
        let mis = minimally_inconsistent_subsets(agenda, None, &Limits::default()).unwrap();
        let g = EntailmentGraph::build(agenda, &mis);
        (mis, g)
    }

    fn id(a: &Agenda, n: &str) -> IssueId {
        a.by_name(n).unwrap()
    }

    fn set(a: &Agenda, names: &[&str]) -> IssueSet {
        IssueSet::from_ids(names.iter().map(|n| id(a, n)))
    }

    #[test]
    fn mis_route_examples() {
        let a = fixtures::conj();
        let (mis, _) = setup(&a);
        let e = |x, y| conditionally_entails(&a, &mis, id(&a, x), id(&a, y)).unwrap();
        assert_eq!(e("p", "c"), Some(set(&a, &["q"])));
        assert_eq!(e("~p", "p"), None);
        for i in a.ids() {
            assert_eq!(conditionally_entails(&a, &mis, i, i).unwrap(), Some(IssueSet::EMPTY));
        }
        assert!(conditionally_entails(&a, &mis, IssueId(6), IssueId(0)).is_err());
    }

    #[test]
    fn direct_route_examples() {
        let lim = Limits::default();
        let pair = fixtures::pair();
        assert_eq!(conditionally_entails_direct(&pair, IssueId(0), IssueId(1), &lim).unwrap(), None);
        let a = fixtures::conj();
        let d = |x, y| conditionally_entails_direct(&a, id(&a, x), id(&a, y), &lim).unwrap();
        assert_eq!(d("~q", "~c"), Some(IssueSet::EMPTY));
        assert_eq!(d("p", "~q"), Some(set(&a, &["~c"])));
        let small = Limits { oracle_issues: 4, ..lim };
        assert!(conditionally_entails_direct(&a, IssueId(0), IssueId(1), &small).is_err());
    }

    #[test]
    fn pair_graph_has_only_self_loops() {
        let a = fixtures::pair();
        let (_, g) = setup(&a);
        assert_eq!(g.direct_rows(), [0b01, 0b10]);
        assert_eq!(g.closure_rows(), [0b01, 0b10]);
        assert_eq!(g.path_witness(IssueId(0), IssueId(1)), None);
    }

    #[test]
    fn bicond_closure_is_total() {
        let a = fixtures::bicond();
        let (_, g) = setup(&a);
        for x in a.ids() {
            assert_eq!(g.reachable(x), a.all());
        }
        let path = g.path_witness(id(&a, "p"), id(&a, "~p")).unwrap();
        assert_eq!(path.len(), 2);
        assert_eq!(path[0].to, id(&a, "q"));
        // q ⊨* ~p comes from the MIS {p, q, ~e}
        assert_eq!(path[1].witness, set(&a, &["~e"]));
        for hop in &path {
            assert!(is_entailment_witness(&a, hop.from, hop.to, hop.witness));
        }
    }

    #[test]
    fn conj_closure_and_shortest_path() {
        let a = fixtures::conj();
        let (_, g) = setup(&a);
        let positives = set(&a, &["p", "q", "c"]);
        let negatives = set(&a, &["~p", "~q", "~c"]);
        for x in positives.iter() {
            assert_eq!(g.reachable(x), a.all());
        }
        for x in negatives.iter() {
            assert_eq!(g.reachable(x), negatives);
        }
        let path = g.path_witness(id(&a, "p"), id(&a, "~p")).unwrap();
        let stops: Vec<&str> = path.iter().map(|h| a.name(h.to)).collect();
        assert_eq!(stops, ["~q", "~c", "~p"]);
        assert_eq!(path[0].witness, set(&a, &["~c"]));
        assert_eq!(g.path_witness(id(&a, "p"), id(&a, "p")), Some(Vec::new()));
    }

    #[test]
    fn closure_is_idempotent() {
        for a in [fixtures::conj(), fixtures::bicond(), fixtures::alg3()] {
            let (_, g) = setup(&a);
            assert_eq!(transitive_closure(g.closure_rows()), g.closure_rows());
        }
    }
}
