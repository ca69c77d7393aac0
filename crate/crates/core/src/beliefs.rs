//! Probabilistic profiles over worlds, binary beliefs and the rationality
//! predicates on belief sets.

use alloc::format;
use alloc::vec::Vec;

use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::model::{Agenda, IssueId, IssueSet};
use crate::worlds::{WorldSet, MAX_WORLDS};
use crate::Limits;

pub type Rational = num_rational::Ratio<i128>;

/// Bound on the least common denominator of a profile. Keeping it this small
/// leaves room in `i128` for every sum and comparison the aggregators make.
pub const MAX_COMMON_DENOMINATOR: i128 = 1 << 60;

fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Rational>) -> Option<i128> {
    values.into_iter().try_fold(1i128, |acc, v| {
        let d = *v.denom();
        (acc / acc.gcd(&d)).checked_mul(d).filter(|&l| l <= MAX_COMMON_DENOMINATOR)
    })
}

/// A probability mass function on the worlds of a universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MassFunction {
    masses: Vec<Rational>,
}

impl MassFunction {
    pub fn new(masses: Vec<Rational>) -> Result<Self> {
        if masses.is_empty() || masses.len() > MAX_WORLDS {
            return Err(Error::UniverseSize { got: masses.len(), max: MAX_WORLDS });
        }
        if let Some(w) = masses.iter().position(|m| *m < Rational::zero()) {
            return Err(Error::InvalidMass(format!("negative mass at world {w}")));
        }
        if common_denominator(&masses).is_none() {
            return Err(Error::InvalidMass("denominators too large".into()));
        }
        let total: Rational = masses.iter().sum();
        if !total.is_one() {
            return Err(Error::InvalidMass(format!("masses sum to {total}, not 1")));
        }
        Ok(MassFunction { masses })
    }

    /// All mass on one world.
    pub fn point(size: usize, world: usize) -> Self {
        let mut masses = alloc::vec![Rational::zero(); size];
        masses[world] = Rational::one();
        MassFunction { masses }
    }

    pub fn uniform(size: usize) -> Self {
        MassFunction { masses: alloc::vec![Rational::new(1, size as i128); size] }
    }

    pub fn size(&self) -> usize {
        self.masses.len()
    }

    pub fn masses(&self) -> &[Rational] {
        &self.masses
    }

    pub fn prob(&self, worlds: WorldSet) -> Rational {
        worlds.iter().map(|w| self.masses[w]).sum()
    }

    pub fn support(&self) -> WorldSet {
        WorldSet::from_worlds((0..self.size()).filter(|&w| !self.masses[w].is_zero()))
    }
}

pub fn prob(p: &MassFunction, issue: WorldSet) -> Rational {
    p.prob(issue)
}

/// One mass function per individual, all over the same universe.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Profile {
    members: Vec<MassFunction>,
}

impl Profile {
    pub fn new(members: Vec<MassFunction>) -> Result<Self> {
        let Some(first) = members.first() else {
            return Err(Error::InvalidProfile("a profile needs at least one individual".into()));
        };
        if members.iter().any(|m| m.size() != first.size()) {
            return Err(Error::InvalidProfile("individuals disagree on the universe size".into()));
        }
        if common_denominator(members.iter().flat_map(|m| &m.masses)).is_none() {
            return Err(Error::InvalidProfile("common denominator too large".into()));
        }
        Ok(Profile { members })
    }

    /// Point masses at the given worlds, one per individual.
    pub fn points(size: usize, worlds: &[usize]) -> Self {
        Profile { members: worlds.iter().map(|&w| MassFunction::point(size, w)).collect() }
    }

    pub fn n(&self) -> usize {
        self.members.len()
    }

    pub fn universe_size(&self) -> usize {
        self.members[0].size()
    }

    pub fn members(&self) -> &[MassFunction] {
        &self.members
    }

    /// `(P_{π(0)}, …, P_{π(n-1)})`
    pub fn permuted(&self, perm: &[usize]) -> Profile {
        Profile { members: perm.iter().map(|&i| self.members[i].clone()).collect() }
    }

    /// `(P_1(A), …, P_n(A))`
    pub fn vector(&self, issue: WorldSet) -> Vec<Rational> {
        self.members.iter().map(|m| m.prob(issue)).collect()
    }
}

pub fn profile_vector(profile: &Profile, issue: WorldSet) -> Vec<Rational> {
    profile.vector(issue)
}

/// First issue entailed by the accepted set but not accepted.
pub fn deductive_closure_violation(agenda: &Agenda, accepted: IssueSet) -> Option<IssueId> {
    let meet = agenda.intersection(accepted);
    agenda.ids().find(|&a| !accepted.contains(a) && meet.is_subset(agenda.worlds(a)))
}

pub fn is_deductively_closed(agenda: &Agenda, accepted: IssueSet) -> bool {
    deductive_closure_violation(agenda, accepted).is_none()
}

pub fn is_consistent_belief(agenda: &Agenda, accepted: IssueSet) -> bool {
    agenda.is_consistent(accepted)
}

/// First issue such that neither it nor its complement is accepted.
pub fn completeness_gap(agenda: &Agenda, accepted: IssueSet) -> Option<IssueId> {
    agenda.ids().find(|&a| !accepted.contains(a) && !accepted.contains(agenda.complement(a)))
}

pub fn is_complete_belief(agenda: &Agenda, accepted: IssueSet) -> bool {
    completeness_gap(agenda, accepted).is_none()
}

/// Ways to split `d` units of mass over `size` worlds, starting with all mass
/// on world 0.
pub fn grid_masses(size: usize, d: u32) -> Vec<Vec<u32>> {
    fn go(rest: u32, slots: usize, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if slots == 1 {
            cur.push(rest);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for k in (0..=rest).rev() {
            cur.push(k);
            go(rest - k, slots - 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    go(d, size, &mut Vec::with_capacity(size), &mut out);
    out
}

fn binomial(n: u128, k: u128) -> Option<u128> {
    let k = k.min(n - k);
    (0..k).try_fold(1u128, |acc, i| acc.checked_mul(n - i).map(|v| v / (i + 1)))
}

/// Number of profiles of `n` individuals whose masses are multiples of `1/d`.
pub fn grid_profile_count(size: usize, n: usize, d: u32) -> Option<u128> {
    let per = binomial(d as u128 + size as u128 - 1, size as u128 - 1)?;
    per.checked_pow(n as u32)
}

/// Every profile of `n` individuals over `size` worlds whose masses are
/// multiples of `1/d`, in odometer order (last individual varies fastest).
#[derive(Debug, Clone)]
pub struct GridProfiles {
    functions: Vec<MassFunction>,
    counters: Vec<usize>,
    done: bool,
}

impl GridProfiles {
    pub fn mass_functions(&self) -> &[MassFunction] {
        &self.functions
    }
}

impl Iterator for GridProfiles {
    type Item = Profile;

    fn next(&mut self) -> Option<Profile> {
        if self.done {
            return None;
        }
        let out = Profile { members: self.counters.iter().map(|&c| self.functions[c].clone()).collect() };
        let mut i = self.counters.len();
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            self.counters[i] += 1;
            if self.counters[i] < self.functions.len() {
                break;
            }
            self.counters[i] = 0;
        }
        Some(out)
    }
}

pub fn enumerate_grid_profiles(size: usize, n: usize, d: u32, limits: &Limits) -> Result<GridProfiles> {
    if size == 0 || size > MAX_WORLDS {
        return Err(Error::UniverseSize { got: size, max: MAX_WORLDS });
    }
    if n == 0 || d == 0 {
        return Err(Error::InvalidProfile("grid needs n >= 1 and d >= 1".into()));
    }
    let count = grid_profile_count(size, n, d).unwrap_or(u128::MAX);
    if count > limits.profiles as u128 {
        let got = usize::try_from(count).unwrap_or(usize::MAX);
        return Err(Error::limit("grid profiles", got, limits.profiles));
    }
    let functions = grid_masses(size, d)
        .into_iter()
        .map(|ks| MassFunction { masses: ks.into_iter().map(|k| Rational::new(k as i128, d as i128)).collect() })
        .collect();
    Ok(GridProfiles { functions, counters: alloc::vec![0; n], done: false })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn r(a: i128, b: i128) -> Rational {
        Rational::new(a, b)
    }

    fn set(a: &Agenda, names: &[&str]) -> IssueSet {
        IssueSet::from_ids(names.iter().map(|n| a.by_name(n).unwrap()))
    }

    #[test]
    fn probabilities() {
        let conj = fixtures::conj();
        let w = |n| conj.worlds(conj.by_name(n).unwrap());
        assert_eq!(MassFunction::point(4, 3).prob(w("c")), r(1, 1));
        assert_eq!(MassFunction::uniform(4).prob(w("p")), r(1, 2));
        let half = MassFunction::new(alloc::vec![r(1, 2), r(0, 1), r(0, 1), r(1, 2)]).unwrap();
        assert_eq!(half.prob(w("p")), r(1, 2));
    }

    #[test]
    fn rejects_bad_masses() {
        assert!(MassFunction::new(alloc::vec![r(1, 2), r(1, 3)]).is_err());
        assert!(MassFunction::new(alloc::vec![r(3, 2), r(-1, 2)]).is_err());
        assert!(MassFunction::new(alloc::vec![]).is_err());
        let huge = (1i128 << 61) + 1;
        assert!(MassFunction::new(alloc::vec![r(1, huge), r(huge - 1, huge)]).is_err());
        assert!(Profile::new(alloc::vec![]).is_err());
        assert!(Profile::new(alloc::vec![MassFunction::uniform(2), MassFunction::uniform(3)]).is_err());
    }

    #[test]
    fn discursive_profile_vectors() {
        let conj = fixtures::conj();
        let w = |n| conj.worlds(conj.by_name(n).unwrap());
        // w11, w10, w01
        let p = Profile::points(4, &[3, 1, 2]);
        assert_eq!(p.vector(w("p")), [r(1, 1), r(1, 1), r(0, 1)]);
        assert_eq!(p.vector(w("c")), [r(1, 1), r(0, 1), r(0, 1)]);
    }

    #[test]
    fn rationality_predicates() {
        let conj = fixtures::conj();
        assert!(is_deductively_closed(&conj, set(&conj, &["p", "q", "c"])));
        assert_eq!(deductive_closure_violation(&conj, set(&conj, &["p", "q"])), conj.by_name("c"));
        for a in [fixtures::pair(), fixtures::conj(), fixtures::alg3()] {
            assert!(is_deductively_closed(&a, IssueSet::EMPTY));
            assert!(is_consistent_belief(&a, IssueSet::EMPTY));
        }
        assert!(!is_consistent_belief(&conj, set(&conj, &["p", "q", "~c"])));
        assert!(is_consistent_belief(&conj, set(&conj, &["p"])));
        assert!(is_complete_belief(&conj, set(&conj, &["p", "~q", "~c"])));
        assert_eq!(completeness_gap(&conj, set(&conj, &["p", "q"])), conj.by_name("c"));
        let pair = fixtures::pair();
        assert!(is_complete_belief(&pair, pair.all()));
    }

    #[test]
    fn grid_counts() {
        let lim = Limits::default();
        assert_eq!(enumerate_grid_profiles(2, 2, 2, &lim).unwrap().count(), 9);
        assert_eq!(enumerate_grid_profiles(4, 3, 1, &lim).unwrap().count(), 64);
        assert_eq!(enumerate_grid_profiles(4, 3, 2, &lim).unwrap().count(), 1000);
        assert_eq!(grid_profile_count(4, 3, 2), Some(1000));
        let tight = Limits { profiles: 999, ..lim };
        assert!(matches!(enumerate_grid_profiles(4, 3, 2, &tight), Err(Error::LimitExceeded { .. })));
    }

    #[test]
    fn grid_profiles_are_valid_and_distinct() {
        let all: Vec<Profile> = enumerate_grid_profiles(3, 2, 2, &Limits::default()).unwrap().collect();
        assert_eq!(all[0], Profile::points(3, &[0, 0]));
        let mut sorted = all.clone();
        sorted.sort();
        sorted.dedup();
        assert_eq!(sorted.len(), all.len());
        for p in &all {
            for m in p.members() {
                assert_eq!(MassFunction::new(m.masses().to_vec()).as_ref(), Ok(m));
            }
        }
    }
}
