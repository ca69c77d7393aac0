//! Exhaustive search over independent rules given by one grid table per
//! issue. A sweep that passes is grid evidence only.

use alloc::vec::Vec;

use super::{AggregatorSpec, Axiom, AxiomSet, GTable, RuleKind};
use crate::beliefs::enumerate_grid_profiles;
use crate::error::{Error, Result};
use crate::model::{Agenda, IssueId, IssueSet};
use crate::Limits;

/// Largest grid (points per table) whose tables are enumerated outright.
pub const MAX_TABLE_POINTS: usize = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub n: usize,
    pub d: u32,
    /// CP, ZP, AN and MON filter the per-issue tables; SYS forces one table
    /// for all issues; CDC, CCS and CCP are checked on every grid profile.
    /// IND holds by construction.
    pub axioms: AxiomSet,
    pub monotone_only: bool,
    pub systematic_only: bool,
}

impl SearchOptions {
    pub fn new(n: usize, d: u32, axioms: AxiomSet) -> Self {
        SearchOptions { n, d, axioms, monotone_only: true, systematic_only: false }
    }
}

/// An independent rule: issue `i` is decided by `tables[i]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IndependentRule {
    tables: Vec<GTable>,
}

impl IndependentRule {
    pub fn tables(&self) -> &[GTable] {
        &self.tables
    }

    pub fn is_systematic(&self) -> bool {
        self.tables.windows(2).all(|w| w[0] == w[1])
    }

    /// The oligarchy this rule is, if any.
    pub fn oligarchy_members(&self) -> Option<Vec<usize>> {
        if self.is_systematic() {
            self.tables.first()?.oligarchy_members()
        } else {
            None
        }
    }

    pub fn is_oligarchic(&self) -> bool {
        self.oligarchy_members().is_some()
    }

    pub fn to_spec(&self) -> AggregatorSpec {
        let n = self.tables.first().map_or(1, GTable::n);
        AggregatorSpec::new(n, RuleKind::Tables(self.tables.clone())).expect("tables share n")
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sweep {
    /// Tables allowed per issue after the table-level filters.
    pub candidate_tables: usize,
    /// Partial assignments explored.
    pub nodes: usize,
    pub passing: Vec<IndependentRule>,
}

fn candidate_tables(opts: &SearchOptions) -> Result<Vec<GTable>> {
    let points = (opts.d as usize + 1).checked_pow(opts.n as u32).unwrap_or(usize::MAX);
    if points > MAX_TABLE_POINTS {
        return Err(Error::limit("grid points per table", points, MAX_TABLE_POINTS));
    }
    let top = points - 1;
    let monotone = opts.monotone_only || opts.axioms.contains(Axiom::Mon);
    let mut out = Vec::new();
    for mask in 0u32..(1 << points) {
        let bit = |i: usize| mask >> i & 1 == 1;
        if opts.axioms.contains(Axiom::Cp) && !bit(top) {
            continue;
        }
        if opts.axioms.contains(Axiom::Zp) && bit(0) {
            continue;
        }
        let t = GTable::from_values(opts.n, opts.d, (0..points).map(bit).collect())?;
        if monotone && !t.is_monotone() {
            continue;
        }
        if opts.axioms.contains(Axiom::An) && !t.is_symmetric() {
            continue;
        }
        out.push(t);
    }
    Ok(out)
}

struct Search<'a> {
    agenda: &'a Agenda,
    tables: Vec<GTable>,
    // grid index of each issue's vector, per profile
    index: Vec<Vec<usize>>,
    cdc: bool,
    ccs: bool,
    ccp: bool,
    nodes: usize,
    node_cap: usize,
    passing: Vec<IndependentRule>,
    stop_at: Option<fn(&IndependentRule) -> bool>,
}

impl Search<'_> {
    /// Violations among assigned issues persist as more issues are decided:
    /// accepting more only shrinks the intersection.
    fn prefix_ok(&self, assigned: IssueSet, accepted: IssueSet) -> bool {
        let a = self.agenda;
        if self.ccs && !a.is_consistent(accepted) {
            return false;
        }
        if self.cdc {
            let meet = a.intersection(accepted);
            if assigned.difference(accepted).iter().any(|x| meet.is_subset(a.worlds(x))) {
                return false;
            }
        }
        if self.ccp
            && assigned.iter().any(|x| {
                let c = a.complement(x);
                assigned.contains(c) && !accepted.contains(x) && !accepted.contains(c)
            })
        {
            return false;
        }
        true
    }

    fn try_assign(&mut self, depth: usize, table: usize, accepted: &[IssueSet]) -> Result<Option<Vec<IssueSet>>> {
        self.nodes += 1;
        if self.nodes > self.node_cap {
            return Err(Error::limit("rule search nodes", self.nodes, self.node_cap));
        }
        let id = IssueId(depth);
        let assigned = IssueSet::prefix(depth + 1);
        let t = &self.tables[table];
        let mut next = Vec::with_capacity(accepted.len());
        for (p, &acc) in accepted.iter().enumerate() {
            let acc = if t.get_index(self.index[p][depth]) { acc.with(id) } else { acc };
            if !self.prefix_ok(assigned, acc) {
                return Ok(None);
            }
            next.push(acc);
        }
        Ok(Some(next))
    }

    fn finished(&mut self, chosen: &[usize]) -> bool {
        let rule = IndependentRule { tables: chosen.iter().map(|&t| self.tables[t].clone()).collect() };
        let stop = self.stop_at.is_some_and(|f| f(&rule));
        self.passing.push(rule);
        stop
    }

    fn independent(&mut self, chosen: &mut Vec<usize>, accepted: &[IssueSet]) -> Result<bool> {
        let depth = chosen.len();
        if depth == self.agenda.len() {
            return Ok(self.finished(chosen));
        }
        for t in 0..self.tables.len() {
            if let Some(next) = self.try_assign(depth, t, accepted)? {
                chosen.push(t);
                let stop = self.independent(chosen, &next)?;
                chosen.pop();
                if stop {
                    return Ok(true);
                }
            }
        }
        Ok(false)
    }

    fn systematic(&mut self, profiles: usize) -> Result<()> {
        'tables: for t in 0..self.tables.len() {
            let mut accepted = alloc::vec![IssueSet::EMPTY; profiles];
            for depth in 0..self.agenda.len() {
                match self.try_assign(depth, t, &accepted)? {
                    Some(next) => accepted = next,
                    None => continue 'tables,
                }
            }
            if self.finished(&alloc::vec![t; self.agenda.len()]) {
                return Ok(());
            }
        }
        Ok(())
    }
}

fn run(
    agenda: &Agenda,
    opts: &SearchOptions,
    limits: &Limits,
    stop_at: Option<fn(&IndependentRule) -> bool>,
) -> Result<Sweep> {
    if opts.n == 0 || opts.d == 0 {
        return Err(Error::InvalidRule("search needs n >= 1 and d >= 1".into()));
    }
    let tables = candidate_tables(opts)?;
    let probe = GTable::from_fn(opts.n, opts.d, |_| false);
    let mut index = Vec::new();
    for profile in enumerate_grid_profiles(agenda.universe().size(), opts.n, opts.d, limits)? {
        let row = agenda
            .ids()
            .map(|i| Ok(probe.index(&probe.numerators(&profile.vector(agenda.worlds(i)))?)))
            .collect::<Result<Vec<_>>>()?;
        index.push(row);
    }
    let profiles = index.len();
    let mut s = Search {
        agenda,
        tables,
        index,
        cdc: opts.axioms.contains(Axiom::Cdc),
        ccs: opts.axioms.contains(Axiom::Ccs),
        ccp: opts.axioms.contains(Axiom::Ccp),
        nodes: 0,
        node_cap: limits.search_nodes,
        passing: Vec::new(),
        stop_at,
    };
    if opts.systematic_only || opts.axioms.contains(Axiom::Sys) {
        s.systematic(profiles)?;
    } else {
        s.independent(&mut Vec::new(), &alloc::vec![IssueSet::EMPTY; profiles])?;
    }
    Ok(Sweep { candidate_tables: s.tables.len(), nodes: s.nodes, passing: s.passing })
}

/// Every rule in the search family that satisfies the options' axioms on the
/// grid, in enumeration order.
pub fn sweep_rules(agenda: &Agenda, opts: &SearchOptions, limits: &Limits) -> Result<Sweep> {
    run(agenda, opts, limits, None)
}

/// The first non-oligarchic rule satisfying the options' axioms on the grid.
pub fn search_counterexample(
    agenda: &Agenda,
    opts: &SearchOptions,
    limits: &Limits,
) -> Result<Option<IndependentRule>> {
    let sweep = run(agenda, opts, limits, Some(|r: &IndependentRule| !r.is_oligarchic()))?;
    Ok(sweep.passing.into_iter().find(|r| !r.is_oligarchic()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::aggregators::check_axioms;
    use crate::fixtures;

    fn axioms(list: &str) -> AxiomSet {
        AxiomSet::parse(list).unwrap()
    }

    #[test]
    fn monotone_tables_on_the_cube() {
        let opts = SearchOptions::new(3, 1, AxiomSet::EMPTY);
        assert_eq!(candidate_tables(&opts).unwrap().len(), 20);
        let opts = SearchOptions::new(3, 1, axioms("cp,zp"));
        assert_eq!(candidate_tables(&opts).unwrap().len(), 18);
        let opts = SearchOptions::new(3, 1, axioms("cp,zp,an"));
        // unanimity, majority, at-least-one
        assert_eq!(candidate_tables(&opts).unwrap().len(), 3);
    }

    #[test]
    fn conj_admits_a_non_oligarchic_rule() {
        let conj = fixtures::conj();
        let opts = SearchOptions::new(3, 1, axioms("cp,zp,ind,cdc"));
        let rule = search_counterexample(&conj, &opts, &Limits::default()).unwrap().unwrap();
        assert!(!rule.is_oligarchic());
        let report = check_axioms(&rule.to_spec(), &conj, 1, axioms("cp,zp,ind,cdc,mon"), &Limits::default()).unwrap();
        for a in [Axiom::Cp, Axiom::Zp, Axiom::Ind, Axiom::Cdc, Axiom::Mon] {
            assert!(report.passes(a), "{a:?}");
        }
    }

    #[test]
    fn systematic_sweep_on_conj_finds_only_oligarchies() {
        let conj = fixtures::conj();
        let mut opts = SearchOptions::new(3, 1, axioms("cp,zp,ind,cdc"));
        opts.systematic_only = true;
        let sweep = sweep_rules(&conj, &opts, &Limits::default()).unwrap();
        assert_eq!(sweep.passing.len(), 7);
        assert!(sweep.passing.iter().all(IndependentRule::is_oligarchic));
    }

    #[test]
    fn pair_admits_complete_consistent_rules() {
        let pair = fixtures::pair();
        let opts = SearchOptions::new(2, 1, axioms("ccp,ccs,ind"));
        let sweep = sweep_rules(&pair, &opts, &Limits::default()).unwrap();
        assert!(!sweep.passing.is_empty());
        for rule in &sweep.passing {
            let r = check_axioms(&rule.to_spec(), &pair, 1, axioms("ccp,ccs,ind"), &Limits::default()).unwrap();
            assert!(r.passes(Axiom::Ccp) && r.passes(Axiom::Ccs));
        }
    }

    #[test]
    fn oversized_grid_is_refused() {
        let opts = SearchOptions::new(3, 2, AxiomSet::EMPTY);
        assert!(matches!(sweep_rules(&fixtures::pair(), &opts, &Limits::default()), Err(Error::LimitExceeded { .. })));
    }
}
