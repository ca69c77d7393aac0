//! Propositional formulas compiled to issues over the valuation universe.
//!
//! Precedence, loosest first: `<->` (left-associative), `->`
//! (right-associative), `|`, `&`, `~`. Atoms match `[A-Za-z][A-Za-z0-9_]*`.

use alloc::boxed::Box;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::fixtures::valuation_universe;
use crate::model::{Agenda, IssueSpec};
use crate::worlds::{WorldSet, MAX_WORLDS};

/// At most this many atoms: `2^5 = 32` valuations.
pub const MAX_ATOMS: usize = 5;

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Atom(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Iff(..) => 1,
            Formula::Implies(..) => 2,
            Formula::Or(..) => 3,
            Formula::And(..) => 4,
            Formula::Not(_) => 5,
            Formula::Atom(_) => 6,
        }
    }

    /// Truth value under `valuation`, which reports each atom's value.
    pub fn eval(&self, valuation: &dyn Fn(&str) -> Option<bool>) -> Result<bool> {
        Ok(match self {
            Formula::Atom(a) => valuation(a).ok_or_else(|| Error::UnknownAtom(a.clone()))?,
            Formula::Not(f) => !f.eval(valuation)?,
            Formula::And(a, b) => a.eval(valuation)? & b.eval(valuation)?,
            Formula::Or(a, b) => a.eval(valuation)? | b.eval(valuation)?,
            Formula::Implies(a, b) => !a.eval(valuation)? | b.eval(valuation)?,
            Formula::Iff(a, b) => a.eval(valuation)? == b.eval(valuation)?,
        })
    }

    /// Worlds (valuations indexed with atom 0 as the low bit) where the
    /// formula holds.
    pub fn truth_set(&self, atoms: &[String]) -> Result<WorldSet> {
        if atoms.len() > MAX_ATOMS {
            return Err(Error::TooManyAtoms { got: atoms.len(), max: MAX_ATOMS });
        }
        Ok(match self {
            Formula::Atom(a) => {
                let i = atoms.iter().position(|x| x == a).ok_or_else(|| Error::UnknownAtom(a.clone()))?;
                WorldSet::from_worlds((0..1usize << atoms.len()).filter(|w| w >> i & 1 == 1))
            }
            Formula::Not(f) => f.truth_set(atoms)?.complement(1 << atoms.len()),
            Formula::And(a, b) => a.truth_set(atoms)?.intersection(b.truth_set(atoms)?),
            Formula::Or(a, b) => a.truth_set(atoms)?.union(b.truth_set(atoms)?),
            Formula::Implies(a, b) => a.truth_set(atoms)?.complement(1 << atoms.len()).union(b.truth_set(atoms)?),
            Formula::Iff(a, b) => {
                let (x, y) = (a.truth_set(atoms)?, b.truth_set(atoms)?);
                let size = 1 << atoms.len();
                x.intersection(y).union(x.union(y).complement(size))
            }
        })
    }
}

fn write_child(f: &mut fmt::Formatter<'_>, child: &Formula, min: u8) -> fmt::Result {
    if child.precedence() < min {
        write!(f, "({child})")
    } else {
        write!(f, "{child}")
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (l, r, op, lmin, rmin) = match self {
            Formula::Atom(a) => return f.write_str(a),
            Formula::Not(x) => {
                f.write_str("~")?;
                return write_child(f, x, 5);
            }
            Formula::Iff(l, r) => (l, r, "<->", 1, 2),
            Formula::Implies(l, r) => (l, r, "->", 3, 2),
            Formula::Or(l, r) => (l, r, "|", 3, 4),
            Formula::And(l, r) => (l, r, "&", 4, 5),
        };
        write_child(f, l, lmin)?;
        write!(f, " {op} ")?;
        write_child(f, r, rmin)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Not,
    And,
    Or,
    Implies,
    Iff,
    LParen,
    RParen,
    End,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'~' => Tok::Not,
            b'&' => Tok::And,
            b'|' => Tok::Or,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'-' if bytes.get(i + 1) == Some(&b'>') => {
                i += 1;
                Tok::Implies
            }
            b'<' if bytes.get(i + 1) == Some(&b'-') && bytes.get(i + 2) == Some(&b'>') => {
                i += 2;
                Tok::Iff
            }
            c if c.is_ascii_alphabetic() => {
                while i + 1 < bytes.len() && (bytes[i + 1].is_ascii_alphanumeric() || bytes[i + 1] == b'_') {
                    i += 1;
                }
                Tok::Ident(text[start..=i].to_string())
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(Error::Syntax { offset: start, message: alloc::format!("unexpected character {ch:?}") });
            }
        };
        i += 1;
        out.push((tok, start));
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn offset(&self) -> usize {
        self.toks[self.pos].1
    }

    fn error<T>(&self, message: &str) -> Result<T> {
        let found = match self.peek() {
            Tok::End => "end of input".to_string(),
            t => alloc::format!("{t:?}"),
        };
        Err(Error::Syntax { offset: self.offset(), message: alloc::format!("{message}, found {found}") })
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == t {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn iff(&mut self) -> Result<Formula> {
        let mut left = self.implies()?;
        while self.eat(&Tok::Iff) {
            left = Formula::iff(left, self.implies()?);
        }
        Ok(left)
    }

    fn implies(&mut self) -> Result<Formula> {
        let left = self.or()?;
        if self.eat(&Tok::Implies) {
            Ok(Formula::implies(left, self.implies()?))
        } else {
            Ok(left)
        }
    }

    fn or(&mut self) -> Result<Formula> {
        let mut left = self.and()?;
        while self.eat(&Tok::Or) {
            left = Formula::or(left, self.and()?);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Formula> {
        let mut left = self.unary()?;
        while self.eat(&Tok::And) {
            left = Formula::and(left, self.unary()?);
        }
        Ok(left)
    }

    fn unary(&mut self) -> Result<Formula> {
        match self.peek().clone() {
            Tok::Not => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Tok::Ident(name) => {
                self.pos += 1;
                Ok(Formula::Atom(name))
            }
            Tok::LParen => {
                self.pos += 1;
                let inner = self.iff()?;
                if !self.eat(&Tok::RParen) {
                    return self.error("expected ')'");
                }
                Ok(inner)
            }
            _ => self.error("expected an atom, '~' or '('"),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula> {
    let mut p = Parser { toks: lex(text)?, pos: 0 };
    if p.peek() == &Tok::End {
        return p.error("empty formula");
    }
    let f = p.iff()?;
    if p.peek() != &Tok::End {
        return p.error("expected an operator");
    }
    Ok(f)
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic()) && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

/// Compile formulas over `atoms` into an agenda on the valuation universe,
/// adding complements. Each issue is named by its formula.
pub fn compile_agenda_from_formulas(atoms: &[String], formulas: &[&str]) -> Result<Agenda> {
    if atoms.len() > MAX_ATOMS {
        return Err(Error::TooManyAtoms { got: atoms.len(), max: MAX_ATOMS });
    }
    if atoms.is_empty() {
        return Err(Error::UniverseSize { got: 0, max: MAX_WORLDS });
    }
    for (i, a) in atoms.iter().enumerate() {
        if !is_identifier(a) {
            return Err(Error::InvalidLabels(alloc::format!("atom {a:?} is not an identifier")));
        }
        if atoms[..i].contains(a) {
            return Err(Error::InvalidLabels(alloc::format!("atom {a:?} declared twice")));
        }
    }
    let size = 1usize << atoms.len();
    let mut specs = Vec::with_capacity(formulas.len());
    for text in formulas {
        let f = parse_formula(text)?;
        let worlds = f.truth_set(atoms)?;
        let name = f.to_string();
        if !worlds.is_contingent(size) {
            return Err(Error::NonContingentIssue(name));
        }
        specs.push(IssueSpec::named(name, worlds));
    }
    Agenda::new(valuation_universe(atoms.len()), specs, true)
}
