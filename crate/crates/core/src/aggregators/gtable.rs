use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;

use num_traits::ToPrimitive;

use super::AggregatorSpec;
use crate::beliefs::{enumerate_grid_profiles, Rational};
use crate::error::{Error, Result};
use crate::model::Agenda;
use crate::Limits;

/// A 0/1 decision table on the grid `{0, 1/d, …, 1}^n`.
///
/// Grid vectors are stored as numerators `k_i` (value `k_i / d`); the table
/// index is mixed radix with individual 0 least significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GTable {
    n: usize,
    d: u32,
    values: Vec<bool>,
}

impl GTable {
    pub fn from_fn(n: usize, d: u32, f: impl Fn(&[u32]) -> bool) -> Self {
        let points = (d as usize + 1).pow(n as u32);
        let mut t = GTable { n, d, values: alloc::vec![false; points] };
        for i in 0..points {
            let v = t.vector(i);
            t.values[i] = f(&v);
        }
        t
    }

    pub fn from_values(n: usize, d: u32, values: Vec<bool>) -> Result<Self> {
        if values.len() != (d as usize + 1).pow(n as u32) {
            return Err(Error::InvalidRule("table size does not match the grid".into()));
        }
        Ok(GTable { n, d, values })
    }

    /// `G(a) = 1` iff `a_i = 1` for every member `i`.
    pub fn oligarchy(n: usize, d: u32, members: &[usize]) -> Self {
        GTable::from_fn(n, d, |v| members.iter().all(|&i| v[i] == d))
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> u32 {
        self.d
    }

    pub fn points(&self) -> usize {
        self.values.len()
    }

    pub fn values(&self) -> &[bool] {
        &self.values
    }

    pub fn index(&self, v: &[u32]) -> usize {
        v.iter().rev().fold(0, |acc, &k| acc * (self.d as usize + 1) + k as usize)
    }

    pub fn vector(&self, mut index: usize) -> Vec<u32> {
        let radix = self.d as usize + 1;
        (0..self.n)
            .map(|_| {
                let k = index % radix;
                index /= radix;
                k as u32
            })
            .collect()
    }

    pub fn get(&self, v: &[u32]) -> bool {
        self.values[self.index(v)]
    }

    pub fn get_index(&self, i: usize) -> bool {
        self.values[i]
    }

    /// Grid numerators of a probability vector, if it lies on this grid.
    pub fn numerators(&self, vector: &[Rational]) -> Result<Vec<u32>> {
        vector
            .iter()
            .map(|x| {
                let scaled = x * Rational::from_integer(self.d as i128);
                scaled
                    .is_integer()
                    .then(|| scaled.to_integer().to_u32())
                    .flatten()
                    .filter(|&k| k <= self.d)
                    .ok_or_else(|| Error::OffGrid(format!("{x}"), self.d))
            })
            .collect()
    }

    pub fn lookup(&self, vector: &[Rational]) -> Result<bool> {
        Ok(self.get(&self.numerators(vector)?))
    }

    pub fn is_monotone(&self) -> bool {
        check_fact1(self).is_ok()
    }

    /// Invariant under permutations of individuals.
    pub fn is_symmetric(&self) -> bool {
        (0..self.points()).all(|i| {
            let mut v = self.vector(i);
            v.sort_unstable();
            self.values[i] == self.get(&v)
        })
    }

    /// The members `M` if this is the oligarchy table of a nonempty `M`.
    pub fn oligarchy_members(&self) -> Option<Vec<usize>> {
        (1u64..1 << self.n)
            .map(|mask| (0..self.n).filter(|i| mask >> i & 1 == 1).collect::<Vec<_>>())
            .find(|m| *self == GTable::oligarchy(self.n, self.d, m))
    }

    pub fn is_oligarchic(&self) -> bool {
        self.oligarchy_members().is_some()
    }
}

/// Read off the systematic table of a rule from its outputs on every grid
/// profile. Conflicting outputs for one vector mean the rule is not
/// systematic on this grid.
pub fn extract_g(spec: &AggregatorSpec, agenda: &Agenda, d: u32, limits: &Limits) -> Result<GTable> {
    let n = spec.n();
    let mut table = GTable::from_fn(n, d, |_| false);
    let mut seen: BTreeMap<usize, (bool, usize, crate::IssueId)> = BTreeMap::new();
    let grid = enumerate_grid_profiles(agenda.universe().size(), n, d, limits)?;
    for (pi, profile) in grid.enumerate() {
        let accepted = spec.evaluate(&profile, agenda)?;
        for id in agenda.ids() {
            let idx = table.index(&table.numerators(&profile.vector(agenda.worlds(id)))?);
            let out = accepted.contains(id);
            match seen.get(&idx) {
                Some(&(prev, ppi, pid)) if prev != out => {
                    return Err(Error::NotSystematic(format!(
                        "grid profile #{ppi} gives {prev} on {} but grid profile #{pi} gives {out} on {} for the same vector {:?}",
                        agenda.name(pid),
                        agenda.name(id),
                        table.vector(idx)
                    )));
                }
                Some(_) => {}
                None => {
                    seen.insert(idx, (out, pi, id));
                    table.values[idx] = out;
                }
            }
        }
    }
    if seen.len() != table.points() {
        return Err(Error::NotSystematic("some grid vectors are never realised".into()));
    }
    Ok(table)
}

/// A grid counterexample to one of the closure facts about `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactFailure {
    /// `a ≤ b`, `G(a) = 1`, `G(b) = 0`.
    Monotonicity { a: Vec<u32>, b: Vec<u32> },
    /// `G(a) = G(b) = 1`, `G(a + b - 1) = 0`.
    Conjunction { a: Vec<u32>, b: Vec<u32>, combined: Vec<u32> },
    /// `G(a) = 1`, `c ≥ |2a - 1|`, `G(c) = 0`.
    Reflection { a: Vec<u32>, c: Vec<u32> },
}

pub type FactVerdict = core::result::Result<(), FactFailure>;

fn leq(a: &[u32], b: &[u32]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

/// If `a ≤ b` and `G(a) = 1` then `G(b) = 1`.
pub fn check_fact1(g: &GTable) -> FactVerdict {
    for i in (0..g.points()).filter(|&i| g.values[i]) {
        let a = g.vector(i);
        for j in (0..g.points()).filter(|&j| !g.values[j]) {
            let b = g.vector(j);
            if leq(&a, &b) {
                return Err(FactFailure::Monotonicity { a, b });
            }
        }
    }
    Ok(())
}

/// If `a + b - 1 ≥ 0` and `G(a) = G(b) = 1` then `G(a + b - 1) = 1`.
pub fn check_fact2(g: &GTable) -> FactVerdict {
    let d = g.d;
    let ones: Vec<usize> = (0..g.points()).filter(|&i| g.values[i]).collect();
    for &i in &ones {
        let a = g.vector(i);
        for &j in &ones {
            let b = g.vector(j);
            if a.iter().zip(&b).any(|(x, y)| x + y < d) {
                continue;
            }
            let combined: Vec<u32> = a.iter().zip(&b).map(|(x, y)| x + y - d).collect();
            if !g.get(&combined) {
                return Err(FactFailure::Conjunction { a, b, combined });
            }
        }
    }
    Ok(())
}

/// If `G(a) = 1` then `G(c) = 1` for every `c ≥ |2a - 1|`.
pub fn check_fact1pp(g: &GTable) -> FactVerdict {
    let d = g.d as i64;
    for i in (0..g.points()).filter(|&i| g.values[i]) {
        let a = g.vector(i);
        let floor: Vec<u32> = a.iter().map(|&k| (2 * k as i64 - d).unsigned_abs() as u32).collect();
        for j in (0..g.points()).filter(|&j| !g.values[j]) {
            let c = g.vector(j);
            if leq(&floor, &c) {
                return Err(FactFailure::Reflection { a, c });
            }
        }
    }
    Ok(())
}
