//! Binarizing aggregators: built-in rules, the grid axiom harness, table
//! extraction and the rule search.

mod axioms;
mod gtable;
mod search;

pub use axioms::{check_axioms, replay, Axiom, AxiomReport, AxiomSet, Verdict, Witness};
pub use gtable::{check_fact1, check_fact1pp, check_fact2, extract_g, FactFailure, FactVerdict, GTable};
pub use search::{search_counterexample, sweep_rules, IndependentRule, SearchOptions, Sweep};

use alloc::vec::Vec;
use num_traits::{One, Zero};

use crate::beliefs::{Profile, Rational};
use crate::error::{Error, Result};
use crate::model::{Agenda, IssueId, IssueSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum RuleKind {
    /// Accept an issue iff every member (0-based) is certain of it.
    Oligarchy(Vec<usize>),
    /// The oligarchy of everyone.
    Trivial,
    /// The oligarchy of one individual (0-based).
    Dictatorship(usize),
    /// Accept iff the mean probability is at least `t` (above `t` when strict).
    Threshold { t: Rational, strict: bool },
    /// Issues in the default set are accepted unless everyone gives them
    /// probability 0; the others are rejected unless everyone is certain.
    UnanimityDefault(IssueSet),
    /// One decision table per agenda issue, on a fixed grid.
    Tables(Vec<GTable>),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AggregatorSpec {
    n: usize,
    kind: RuleKind,
}

impl AggregatorSpec {
    pub fn new(n: usize, kind: RuleKind) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidRule("need at least one individual".into()));
        }
        let kind = match kind {
            RuleKind::Oligarchy(mut m) => {
                m.sort_unstable();
                m.dedup();
                if m.is_empty() {
                    return Err(Error::InvalidRule("oligarchy needs a nonempty member set".into()));
                }
                if let Some(&i) = m.iter().find(|&&i| i >= n) {
                    return Err(Error::InvalidRule(alloc::format!("member {} outside 1..={n}", i + 1)));
                }
                RuleKind::Oligarchy(m)
            }
            RuleKind::Dictatorship(i) if i >= n => {
                return Err(Error::InvalidRule(alloc::format!("dictator {} outside 1..={n}", i + 1)));
            }
            RuleKind::Threshold { t, .. } if t <= Rational::zero() || t > Rational::one() => {
                return Err(Error::InvalidRule("threshold must lie in (0, 1]".into()));
            }
            RuleKind::Tables(ref tables) if tables.iter().any(|t| t.n() != n) => {
                return Err(Error::InvalidRule("table arity differs from n".into()));
            }
            k => k,
        };
        Ok(AggregatorSpec { n, kind })
    }

    pub fn oligarchy(n: usize, members: &[usize]) -> Result<Self> {
        AggregatorSpec::new(n, RuleKind::Oligarchy(members.to_vec()))
    }

    pub fn trivial(n: usize) -> Result<Self> {
        AggregatorSpec::new(n, RuleKind::Trivial)
    }

    pub fn dictatorship(n: usize, i: usize) -> Result<Self> {
        AggregatorSpec::new(n, RuleKind::Dictatorship(i))
    }

    pub fn threshold(n: usize, t: Rational, strict: bool) -> Result<Self> {
        AggregatorSpec::new(n, RuleKind::Threshold { t, strict })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kind(&self) -> &RuleKind {
        &self.kind
    }

    /// Decide one issue from its probability vector. Every built-in rule is
    /// independent, so this is all `evaluate` needs.
    pub fn decide(&self, issue: IssueId, vector: &[Rational]) -> Result<bool> {
        if vector.len() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, got: vector.len() });
        }
        let certain = |i: &usize| vector[*i].is_one();
        Ok(match &self.kind {
            RuleKind::Oligarchy(m) => m.iter().all(certain),
            RuleKind::Trivial => vector.iter().all(One::is_one),
            RuleKind::Dictatorship(i) => certain(i),
            RuleKind::Threshold { t, strict } => {
                let total: Rational = vector.iter().sum();
                let bar = t * Rational::from_integer(self.n as i128);
                if *strict {
                    total > bar
                } else {
                    total >= bar
                }
            }
            RuleKind::UnanimityDefault(default) => {
                if default.contains(issue) {
                    !vector.iter().all(Zero::is_zero)
                } else {
                    vector.iter().all(One::is_one)
                }
            }
            RuleKind::Tables(tables) => {
                let table = tables
                    .get(issue.0)
                    .ok_or_else(|| Error::InvalidRule(alloc::format!("no table for issue #{}", issue.0)))?;
                table.lookup(vector)?
            }
        })
    }

    /// The collective belief set.
    pub fn evaluate(&self, profile: &Profile, agenda: &Agenda) -> Result<IssueSet> {
        if profile.n() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, got: profile.n() });
        }
        if profile.universe_size() != agenda.universe().size() {
            return Err(Error::InvalidProfile("profile and agenda universes differ".into()));
        }
        if let RuleKind::Tables(t) = &self.kind {
            if t.len() != agenda.len() {
                return Err(Error::InvalidRule("one table per agenda issue required".into()));
            }
        }
        let mut accepted = IssueSet::EMPTY;
        for id in agenda.ids() {
            if self.decide(id, &profile.vector(agenda.worlds(id)))? {
                accepted = accepted.with(id);
            }
        }
        Ok(accepted)
    }
}

pub fn evaluate(spec: &AggregatorSpec, profile: &Profile, agenda: &Agenda) -> Result<IssueSet> {
    spec.evaluate(profile, agenda)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn set(a: &Agenda, names: &[&str]) -> IssueSet {
        IssueSet::from_ids(names.iter().map(|n| a.by_name(n).unwrap()))
    }

    #[test]
    fn oligarchy_trivial_and_threshold() {
        let conj = fixtures::conj();
        let profile = Profile::points(4, &[3, 3, 0]);
        let olig = AggregatorSpec::oligarchy(3, &[0, 1]).unwrap();
        assert_eq!(olig.evaluate(&profile, &conj).unwrap(), set(&conj, &["p", "q", "c"]));
        let triv = AggregatorSpec::trivial(3).unwrap();
        assert_eq!(triv.evaluate(&profile, &conj).unwrap(), IssueSet::EMPTY);
        let maj = AggregatorSpec::threshold(3, Rational::new(1, 2), true).unwrap();
        let discursive = Profile::points(4, &[3, 1, 2]);
        assert_eq!(maj.evaluate(&discursive, &conj).unwrap(), set(&conj, &["p", "q", "~c"]));
    }

    #[test]
    fn dictatorship_is_a_singleton_oligarchy() {
        let conj = fixtures::conj();
        let d = AggregatorSpec::dictatorship(3, 1).unwrap();
        let o = AggregatorSpec::oligarchy(3, &[1]).unwrap();
        for p in crate::beliefs::enumerate_grid_profiles(4, 3, 1, &crate::Limits::default()).unwrap() {
            assert_eq!(d.evaluate(&p, &conj), o.evaluate(&p, &conj));
        }
    }

    #[test]
    fn unanimity_default_is_complete() {
        let conj = fixtures::conj();
        // issues true at the median point w00
        let default = set(&conj, &["~p", "~q", "~c"]);
        let rule = AggregatorSpec::new(2, RuleKind::UnanimityDefault(default)).unwrap();
        let out = rule.evaluate(&Profile::points(4, &[3, 3]), &conj).unwrap();
        assert_eq!(out, set(&conj, &["p", "q", "c"]));
        let out = rule.evaluate(&Profile::points(4, &[3, 1]), &conj).unwrap();
        assert_eq!(out, set(&conj, &["p", "~q", "~c"]));
    }

    #[test]
    fn validation() {
        assert!(AggregatorSpec::oligarchy(3, &[]).is_err());
        assert!(AggregatorSpec::oligarchy(3, &[3]).is_err());
        assert!(AggregatorSpec::dictatorship(2, 2).is_err());
        assert!(AggregatorSpec::threshold(2, Rational::zero(), false).is_err());
        assert!(AggregatorSpec::threshold(2, Rational::new(3, 2), false).is_err());
        assert!(AggregatorSpec::trivial(0).is_err());
        let conj = fixtures::conj();
        let rule = AggregatorSpec::trivial(2).unwrap();
        assert_eq!(
            rule.evaluate(&Profile::points(4, &[0, 0, 0]), &conj),
            Err(Error::SizeMismatch { expected: 2, got: 3 })
        );
    }
}
