//! Agenda conditions for binarizing belief aggregation.
//!
//! An agenda is a complement-closed family of contingent issues over a finite
//! set of worlds. This crate decides the logical-interconnection conditions
//! that govern aggregation of probabilistic profiles into binary beliefs
//! (path-connectedness, even-negatability, negation-connectedness,
//! blockedness, median points), classifies which impossibility result an
//! agenda falls under, and checks aggregation axioms on exact-rational grid
//! profiles.
//!
//! Everything here is pure computation over bitsets and rationals; the crate
//! is `no_std` and only needs `alloc`. File formats and the command line live
//! in the `binagg` crate.

#![no_std]

extern crate alloc;

pub mod aggregators;
pub mod beliefs;
pub mod classifier;
mod combinatorics;
pub mod entailment;
pub mod error;
pub mod fixtures;
pub mod formula;
pub mod mis;
pub mod model;
pub mod oracle;
pub mod properties;
pub mod worlds;

pub use error::{Error, Result};
pub use model::{Agenda, IssueId, IssueSet, IssueSpec, Universe};
pub use worlds::WorldSet;

/// Enumeration caps shared by the exhaustive procedures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    /// Largest agenda for which minimally inconsistent subsets are enumerated.
    pub mis_issues: usize,
    /// Largest agenda for the direct-definition entailment search.
    pub oracle_issues: usize,
    /// Most complement pairs outside H0 that `find_m_set` will search.
    pub m_set_pairs: usize,
    /// Most complement pairs for the subagenda partition search.
    pub partition_pairs: usize,
    /// Most grid profiles a sweep may enumerate.
    pub profiles: usize,
    /// Most backtracking nodes for the rule search.
    pub search_nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            mis_issues: 20,
            oracle_issues: 14,
            m_set_pairs: 16,
            partition_pairs: 8,
            profiles: 1_000_000,
            search_nodes: 50_000_000,
        }
    }
}
