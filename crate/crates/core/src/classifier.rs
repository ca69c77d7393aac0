//! Which of the three impossibility results an agenda falls under.

use alloc::vec::Vec;

use crate::entailment::Hop;
use crate::error::Result;
use crate::mis::MisFamily;
use crate::model::{Agenda, IssueId};
use crate::properties::{analyze, PropertyFlags};
use crate::Limits;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResultRow {
    /// UD, ZP, CP, IND and CDC force an oligarchy.
    Oligarchy,
    /// Adding AN forces the trivial rule.
    Triviality,
    /// No rule satisfies UD, CP, IND, CCP and CCS.
    Impossibility,
}

impl ResultRow {
    pub const ALL: [ResultRow; 3] = [ResultRow::Oligarchy, ResultRow::Triviality, ResultRow::Impossibility];

    pub fn number(self) -> usize {
        match self {
            ResultRow::Oligarchy => 1,
            ResultRow::Triviality => 2,
            ResultRow::Impossibility => 3,
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            ResultRow::Oligarchy => "oligarchy result",
            ResultRow::Triviality => "triviality result",
            ResultRow::Impossibility => "impossibility result",
        }
    }

    /// The axiom bundle under which no rule exists when the row applies.
    pub fn axioms(self) -> &'static str {
        match self {
            ResultRow::Oligarchy => "UD, ZP, CP and IND + CDC + non-oligarchy",
            ResultRow::Triviality => "UD, ZP, CP and IND + CDC + AN + non-triviality",
            ResultRow::Impossibility => "UD, CP and IND + CCS and CCP",
        }
    }

    pub fn condition(self) -> &'static str {
        match self {
            ResultRow::Oligarchy => "path-connected, even-negatable",
            ResultRow::Triviality => "negation-connected",
            ResultRow::Impossibility => "blocked",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RowVerdict {
    pub row: ResultRow,
    pub applies: bool,
}

/// An issue in H0 with paths to its complement and back.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockingCycle {
    pub issue: IssueId,
    pub forward: Vec<Hop>,
    pub back: Vec<Hop>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassificationReport {
    pub flags: PropertyFlags,
    pub mis: MisFamily,
    pub rows: [RowVerdict; 3],
    pub blocking: Option<BlockingCycle>,
}

impl ClassificationReport {
    pub fn applies(&self, row: ResultRow) -> bool {
        self.rows[row.number() - 1].applies
    }
}

pub fn classify(agenda: &Agenda, limits: &Limits) -> Result<ClassificationReport> {
    let analysis = analyze(agenda, limits)?;
    let f = &analysis.flags;
    let rows = [
        RowVerdict { row: ResultRow::Oligarchy, applies: f.path_connected && f.is_even_negatable() },
        RowVerdict { row: ResultRow::Triviality, applies: f.negation_connected },
        RowVerdict { row: ResultRow::Impossibility, applies: f.blocked },
    ];
    let blocking = f.h0.iter().next().map(|issue| {
        let c = agenda.complement(issue);
        let g = &analysis.graph;
        BlockingCycle {
            issue,
            forward: g.path_witness(issue, c).expect("H0 issue reaches its complement"),
            back: g.path_witness(c, issue).expect("complement reaches back"),
        }
    });
    Ok(ClassificationReport { flags: analysis.flags, mis: analysis.mis, rows, blocking })
}
