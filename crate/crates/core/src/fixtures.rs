//! Named example agendas used throughout the tests and documentation.
//!
//! Worlds over atoms are indexed by binary counting with the first atom as the
//! least significant bit and labelled `w` followed by the atom values in atom
//! order, so over atoms `p, q` world 1 is `w10` (p true, q false).

use alloc::string::String;
use alloc::vec::Vec;
use alloc::{format, vec};

use crate::model::{Agenda, IssueSpec, Universe};
use crate::worlds::WorldSet;

/// Universe of all valuations of `atoms` atoms.
pub fn valuation_universe(atoms: usize) -> Universe {
    let labels: Vec<String> = (0..1usize << atoms)
        .map(|i| {
            let bits: String = (0..atoms).map(|a| if i >> a & 1 == 1 { '1' } else { '0' }).collect();
            format!("w{bits}")
        })
        .collect();
    Universe::with_labels(labels).expect("valid labels")
}

/// Worlds where atom number `atom` is true.
pub fn atom_worlds(atoms: usize, atom: usize) -> WorldSet {
    WorldSet::from_worlds((0..1usize << atoms).filter(|i| i >> atom & 1 == 1))
}

fn closed(universe: Universe, issues: Vec<(&str, WorldSet)>) -> Agenda {
    let specs = issues.into_iter().map(|(n, w)| IssueSpec::named(n, w)).collect();
    Agenda::new(universe, specs, true).expect("fixture is valid")
}

/// `{A, ~A}` over two worlds.
pub fn pair() -> Agenda {
    closed(Universe::new(2).unwrap(), vec![("A", WorldSet::singleton(0))])
}

/// `{p, ~p, q, ~q}` over two independent atoms.
pub fn simple4() -> Agenda {
    closed(valuation_universe(2), vec![("p", atom_worlds(2, 0)), ("q", atom_worlds(2, 1))])
}

/// `{p, ~p, q, ~q, c, ~c}` with `c = p & q`.
pub fn conj() -> Agenda {
    let (p, q) = (atom_worlds(2, 0), atom_worlds(2, 1));
    closed(valuation_universe(2), vec![("p", p), ("q", q), ("c", p.intersection(q))])
}

/// `{p, ~p, q, ~q, e, ~e}` with `e = p <-> q`.
pub fn bicond() -> Agenda {
    let (p, q) = (atom_worlds(2, 0), atom_worlds(2, 1));
    let e = p.intersection(q).union(p.union(q).complement(4));
    closed(valuation_universe(2), vec![("p", p), ("q", q), ("e", e)])
}

/// All six contingent subsets of a three-world universe with worlds labelled
/// `1, 2, 3`.
pub fn alg3() -> Agenda {
    let u = Universe::with_labels(vec!["1".into(), "2".into(), "3".into()]).unwrap();
    let w = |v: &[usize]| WorldSet::from_worlds(v.iter().copied());
    closed(
        u,
        vec![
            ("{1}", w(&[0])),
            ("{2,3}", w(&[1, 2])),
            ("{2}", w(&[1])),
            ("{1,3}", w(&[0, 2])),
            ("{3}", w(&[2])),
            ("{1,2}", w(&[0, 1])),
        ],
    )
}

/// CONJ together with an unrelated atom `r`, over eight worlds.
pub fn conj_and_r() -> Agenda {
    let (p, q, r) = (atom_worlds(3, 0), atom_worlds(3, 1), atom_worlds(3, 2));
    closed(valuation_universe(3), vec![("p", p), ("q", q), ("c", p.intersection(q)), ("r", r)])
}
