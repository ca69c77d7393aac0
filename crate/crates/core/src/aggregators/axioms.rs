use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use super::AggregatorSpec;
use crate::beliefs::{completeness_gap, deductive_closure_violation, enumerate_grid_profiles, Profile, Rational};
use crate::combinatorics::next_permutation;
use crate::error::{Error, Result};
use crate::model::{Agenda, IssueId, IssueSet};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Axiom {
    /// Certainty preservation.
    Cp,
    /// Zero preservation.
    Zp,
    /// Anonymity.
    An,
    /// Proposition-wise independence.
    Ind,
    /// Systematicity.
    Sys,
    /// Monotonicity.
    Mon,
    /// Collective deductive closure.
    Cdc,
    /// Collective consistency.
    Ccs,
    /// Collective completeness.
    Ccp,
}

impl Axiom {
    pub const ALL: [Axiom; 9] =
        [Axiom::Cp, Axiom::Zp, Axiom::An, Axiom::Ind, Axiom::Sys, Axiom::Mon, Axiom::Cdc, Axiom::Ccs, Axiom::Ccp];

    pub fn name(self) -> &'static str {
        match self {
            Axiom::Cp => "CP",
            Axiom::Zp => "ZP",
            Axiom::An => "AN",
            Axiom::Ind => "IND",
            Axiom::Sys => "SYS",
            Axiom::Mon => "MON",
            Axiom::Cdc => "CDC",
            Axiom::Ccs => "CCS",
            Axiom::Ccp => "CCP",
        }
    }

    pub fn parse(s: &str) -> Option<Axiom> {
        Axiom::ALL.into_iter().find(|a| a.name().eq_ignore_ascii_case(s.trim()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash)]
pub struct AxiomSet(u16);

impl AxiomSet {
    pub const EMPTY: AxiomSet = AxiomSet(0);

    pub fn all() -> Self {
        Axiom::ALL.into_iter().collect()
    }

    pub fn with(self, a: Axiom) -> Self {
        AxiomSet(self.0 | 1 << a as u16)
    }

    pub fn contains(self, a: Axiom) -> bool {
        self.0 >> a as u16 & 1 == 1
    }

    pub fn iter(self) -> impl Iterator<Item = Axiom> {
        Axiom::ALL.into_iter().filter(move |&a| self.contains(a))
    }

    /// Comma-separated, case-insensitive names (`"cp,zp,ind"`).
    pub fn parse(list: &str) -> Option<Self> {
        list.split(',')
            .filter(|s| !s.trim().is_empty())
            .try_fold(AxiomSet::EMPTY, |acc, s| Axiom::parse(s).map(|a| acc.with(a)))
    }
}

impl FromIterator<Axiom> for AxiomSet {
    fn from_iter<I: IntoIterator<Item = Axiom>>(iter: I) -> Self {
        iter.into_iter().fold(AxiomSet::EMPTY, AxiomSet::with)
    }
}

/// A replayable grid counterexample.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// CP/ZP: the issue whose unanimous vector was overridden. CDC: the
    /// entailed issue left out. CCP: an issue decided neither way.
    Issue { profile: Profile, issue: IssueId },
    /// CCS: an inconsistent collective belief set.
    Belief { profile: Profile, accepted: IssueSet },
    /// AN: permuting the individuals changes the decision on `issue`.
    Permutation { profile: Profile, permutation: Vec<usize>, issue: IssueId },
    /// IND/SYS: equal vectors, different decisions. MON: the first vector is
    /// below the second, accepted there but rejected here.
    Pair { first: Profile, first_issue: IssueId, second: Profile, second_issue: IssueId },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// No counterexample on the grid. Evidence only: the axioms quantify over
    /// all profiles.
    Pass,
    Fail(Witness),
    NotChecked,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    pub n: usize,
    pub grid: u32,
    pub profiles: usize,
    pub verdicts: Vec<(Axiom, Verdict)>,
}

impl AxiomReport {
    pub fn verdict(&self, axiom: Axiom) -> &Verdict {
        &self.verdicts.iter().find(|(a, _)| *a == axiom).expect("all axioms listed").1
    }

    pub fn passes(&self, axiom: Axiom) -> bool {
        matches!(self.verdict(axiom), Verdict::Pass)
    }

    pub fn witness(&self, axiom: Axiom) -> Option<&Witness> {
        match self.verdict(axiom) {
            Verdict::Fail(w) => Some(w),
            _ => None,
        }
    }
}

fn all_equal(v: &[Rational], x: Rational) -> bool {
    v.iter().all(|y| *y == x)
}

fn leq(a: &[Rational], b: &[Rational]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

struct Sweep<'a> {
    agenda: &'a Agenda,
    profiles: Vec<Profile>,
    outputs: Vec<IssueSet>,
    // vectors[p][issue]
    vectors: Vec<Vec<Vec<Rational>>>,
}

impl Sweep<'_> {
    fn decided(&self, p: usize, i: IssueId) -> bool {
        self.outputs[p].contains(i)
    }

    fn issue_witness(&self, p: usize, issue: IssueId) -> Witness {
        Witness::Issue { profile: self.profiles[p].clone(), issue }
    }

    fn pair(&self, p: usize, i: IssueId, q: usize, j: IssueId) -> Witness {
        Witness::Pair {
            first: self.profiles[p].clone(),
            first_issue: i,
            second: self.profiles[q].clone(),
            second_issue: j,
        }
    }

    fn cp_zp(&self, value: Rational, want: bool) -> Verdict {
        for p in 0..self.profiles.len() {
            for i in self.agenda.ids() {
                if all_equal(&self.vectors[p][i.0], value) && self.decided(p, i) != want {
                    return Verdict::Fail(self.issue_witness(p, i));
                }
            }
        }
        Verdict::Pass
    }

    fn independence(&self, across_issues: bool) -> Verdict {
        let mut seen: BTreeMap<(usize, &[Rational]), (bool, usize, IssueId)> = BTreeMap::new();
        for p in 0..self.profiles.len() {
            for i in self.agenda.ids() {
                let key = (if across_issues { 0 } else { i.0 }, self.vectors[p][i.0].as_slice());
                let out = self.decided(p, i);
                match seen.get(&key) {
                    Some(&(prev, q, j)) if prev != out => {
                        return Verdict::Fail(self.pair(q, j, p, i));
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(key, (out, p, i));
                    }
                }
            }
        }
        Verdict::Pass
    }

    fn monotonicity(&self) -> Verdict {
        for i in self.agenda.ids() {
            let mut accepted: BTreeMap<&[Rational], usize> = BTreeMap::new();
            let mut rejected: BTreeMap<&[Rational], usize> = BTreeMap::new();
            for p in 0..self.profiles.len() {
                let side = if self.decided(p, i) { &mut accepted } else { &mut rejected };
                side.entry(self.vectors[p][i.0].as_slice()).or_insert(p);
            }
            for (a, &p) in &accepted {
                if let Some((_, &q)) = rejected.iter().find(|(b, _)| leq(a, b)) {
                    return Verdict::Fail(self.pair(p, i, q, i));
                }
            }
        }
        Verdict::Pass
    }

    fn anonymity(&self, spec: &AggregatorSpec) -> Result<Verdict> {
        let n = spec.n();
        for p in 0..self.profiles.len() {
            let mut perm: Vec<usize> = (0..n).collect();
            while next_permutation(&mut perm) {
                let out = spec.evaluate(&self.profiles[p].permuted(&perm), self.agenda)?;
                let diff = IssueSet::from_bits(out.bits() ^ self.outputs[p].bits());
                if let Some(issue) = diff.iter().next() {
                    return Ok(Verdict::Fail(Witness::Permutation {
                        profile: self.profiles[p].clone(),
                        permutation: perm,
                        issue,
                    }));
                }
            }
        }
        Ok(Verdict::Pass)
    }

    fn codomain(&self, axiom: Axiom) -> Verdict {
        for (p, &out) in self.outputs.iter().enumerate() {
            let found = match axiom {
                Axiom::Cdc => deductive_closure_violation(self.agenda, out).map(|i| self.issue_witness(p, i)),
                Axiom::Ccp => completeness_gap(self.agenda, out).map(|i| self.issue_witness(p, i)),
                Axiom::Ccs => (!self.agenda.is_consistent(out))
                    .then(|| Witness::Belief { profile: self.profiles[p].clone(), accepted: out }),
                _ => unreachable!("not a codomain axiom"),
            };
            if let Some(w) = found {
                return Verdict::Fail(w);
            }
        }
        Verdict::Pass
    }
}

/// Check the requested axioms over every profile on the `1/d` grid. The
/// first counterexample in enumeration order is reported for each failure.
pub fn check_axioms(
    spec: &AggregatorSpec,
    agenda: &Agenda,
    d: u32,
    axioms: AxiomSet,
    limits: &Limits,
) -> Result<AxiomReport> {
    let grid = enumerate_grid_profiles(agenda.universe().size(), spec.n(), d, limits)?;
    let profiles: Vec<Profile> = grid.collect();
    let outputs = profiles.iter().map(|p| spec.evaluate(p, agenda)).collect::<Result<Vec<_>>>()?;
    let vectors = profiles.iter().map(|p| agenda.ids().map(|i| p.vector(agenda.worlds(i))).collect()).collect();
    let sweep = Sweep { agenda, profiles, outputs, vectors };

    let mut verdicts = Vec::with_capacity(Axiom::ALL.len());
    for axiom in Axiom::ALL {
        let v = if !axioms.contains(axiom) {
            Verdict::NotChecked
        } else {
            match axiom {
                Axiom::Cp => sweep.cp_zp(Rational::one(), true),
                Axiom::Zp => sweep.cp_zp(Rational::zero(), false),
                Axiom::An => sweep.anonymity(spec)?,
                Axiom::Ind => sweep.independence(false),
                Axiom::Sys => sweep.independence(true),
                Axiom::Mon => sweep.monotonicity(),
                Axiom::Cdc | Axiom::Ccs | Axiom::Ccp => sweep.codomain(axiom),
            }
        };
        verdicts.push((axiom, v));
    }
    Ok(AxiomReport { n: spec.n(), grid: d, profiles: sweep.profiles.len(), verdicts })
}

/// Re-run a witness through `evaluate`; true iff it still shows a violation
/// of `axiom`.
pub fn replay(spec: &AggregatorSpec, agenda: &Agenda, axiom: Axiom, witness: &Witness) -> Result<bool> {
    let vector = |p: &Profile, i: IssueId| p.vector(agenda.worlds(i));
    let check_id = |i: IssueId| {
        if i.0 < agenda.len() {
            Ok(())
        } else {
            Err(Error::IssueNotInAgenda(alloc::format!("#{}", i.0)))
        }
    };
    Ok(match (axiom, witness) {
        (Axiom::Cp | Axiom::Zp | Axiom::Cdc | Axiom::Ccp, Witness::Issue { profile, issue }) => {
            check_id(*issue)?;
            let out = spec.evaluate(profile, agenda)?;
            let v = vector(profile, *issue);
            match axiom {
                Axiom::Cp => all_equal(&v, Rational::one()) && !out.contains(*issue),
                Axiom::Zp => all_equal(&v, Rational::zero()) && out.contains(*issue),
                Axiom::Cdc => !out.contains(*issue) && agenda.entails(out, *issue),
                _ => !out.contains(*issue) && !out.contains(agenda.complement(*issue)),
            }
        }
        (Axiom::Ccs, Witness::Belief { profile, accepted }) => {
            let out = spec.evaluate(profile, agenda)?;
            out == *accepted && !agenda.is_consistent(out)
        }
        (Axiom::An, Witness::Permutation { profile, permutation, issue }) => {
            check_id(*issue)?;
            let mut sorted = permutation.clone();
            sorted.sort_unstable();
            if sorted != (0..profile.n()).collect::<Vec<_>>() {
                return Err(Error::InvalidRule("not a permutation of the individuals".into()));
            }
            let a = spec.evaluate(profile, agenda)?;
            let b = spec.evaluate(&profile.permuted(permutation), agenda)?;
            a.contains(*issue) != b.contains(*issue)
        }
        (Axiom::Ind | Axiom::Sys | Axiom::Mon, Witness::Pair { first, first_issue, second, second_issue }) => {
            check_id(*first_issue)?;
            check_id(*second_issue)?;
            let x = spec.evaluate(first, agenda)?.contains(*first_issue);
            let y = spec.evaluate(second, agenda)?.contains(*second_issue);
            let (u, v) = (vector(first, *first_issue), vector(second, *second_issue));
            match axiom {
                Axiom::Ind => first_issue == second_issue && u == v && x != y,
                Axiom::Sys => u == v && x != y,
                _ => first_issue == second_issue && leq(&u, &v) && x && !y,
            }
        }
        _ => false,
    })
}
