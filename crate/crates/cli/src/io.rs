//! Agenda and profile files.

use std::fs;
use std::path::Path;

use binagg_core::beliefs::{MassFunction, Profile, Rational};
use binagg_core::formula::compile_agenda_from_formulas;
use binagg_core::{Agenda, IssueSpec, Universe, WorldSet};
use serde::Deserialize;
use serde_json::{json, Value};

use crate::{Failure, EXIT_INVALID, EXIT_USAGE};

#[derive(Deserialize)]
#[serde(untagged)]
enum WorldsField {
    Count(usize),
    Labels(Vec<String>),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum WorldRef {
    Index(usize),
    Label(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IssueEntry {
    name: Option<String>,
    worlds: Vec<WorldRef>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct IssuesForm {
    worlds: WorldsField,
    issues: Vec<IssueEntry>,
    #[serde(default)]
    auto_close: bool,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct FormulasForm {
    atoms: Vec<String>,
    formulas: Vec<String>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProfileFile {
    masses: Vec<Vec<(i128, i128)>>,
}

fn read_json(path: &Path) -> Result<Value, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::new(EXIT_USAGE, format!("{} is not valid JSON: {e}", path.display())))
}

fn invalid(path: &Path, e: impl std::fmt::Display) -> Failure {
    Failure::new(EXIT_INVALID, format!("{}: {e}", path.display()))
}

pub fn parse_agenda(value: Value) -> Result<Agenda, Failure> {
    let is_formulas = value.get("atoms").is_some() || value.get("formulas").is_some();
    if is_formulas {
        let form: FormulasForm = serde_json::from_value(value).map_err(|e| Failure::invalid(e.to_string()))?;
        let formulas: Vec<&str> = form.formulas.iter().map(String::as_str).collect();
        return compile_agenda_from_formulas(&form.atoms, &formulas).map_err(|e| Failure::core(e, EXIT_INVALID));
    }
    let form: IssuesForm = serde_json::from_value(value).map_err(|e| Failure::invalid(e.to_string()))?;
    let universe = match form.worlds {
        WorldsField::Count(n) => Universe::new(n),
        WorldsField::Labels(l) => Universe::with_labels(l),
    }
    .map_err(|e| Failure::core(e, EXIT_INVALID))?;
    let mut specs = Vec::with_capacity(form.issues.len());
    for entry in form.issues {
        let mut worlds = WorldSet::EMPTY;
        for w in entry.worlds {
            let index = match &w {
                WorldRef::Index(i) if *i < universe.size() => Some(*i),
                WorldRef::Index(_) => None,
                WorldRef::Label(l) => universe.labels().and_then(|ls| ls.iter().position(|x| x == l)),
            };
            let Some(index) = index else {
                let shown = match w {
                    WorldRef::Index(i) => i.to_string(),
                    WorldRef::Label(l) => format!("{l:?}"),
                };
                return Err(Failure::invalid(format!("world {shown} is not in the universe")));
            };
            worlds = worlds.with(index);
        }
        specs.push(IssueSpec { name: entry.name, worlds });
    }
    Agenda::new(universe, specs, form.auto_close).map_err(|e| Failure::core(e, EXIT_INVALID))
}

pub fn load_agenda(path: &Path) -> Result<Agenda, Failure> {
    parse_agenda(read_json(path)?).map_err(|f| Failure { message: format!("{}: {}", path.display(), f.message), ..f })
}

pub fn load_profile(path: &Path) -> Result<Profile, Failure> {
    let file: ProfileFile = serde_json::from_value(read_json(path)?).map_err(|e| invalid(path, e))?;
    let mut members = Vec::with_capacity(file.masses.len());
    for row in file.masses {
        let mut masses = Vec::with_capacity(row.len());
        for (num, den) in row {
            if den <= 0 {
                return Err(invalid(path, format!("denominator {den} must be positive")));
            }
            masses.push(Rational::new(num, den));
        }
        members.push(MassFunction::new(masses).map_err(|e| invalid(path, e))?);
    }
    Profile::new(members).map_err(|e| invalid(path, e))
}

/// The issues form of `agenda`, loadable with `load_agenda`.
pub fn agenda_json(agenda: &Agenda) -> Value {
    let u = agenda.universe();
    let worlds = match u.labels() {
        Some(l) => json!(l),
        None => json!(u.size()),
    };
    let issues: Vec<Value> = agenda
        .ids()
        .map(|i| json!({"name": agenda.name(i), "worlds": agenda.worlds(i).iter().collect::<Vec<_>>()}))
        .collect();
    json!({"worlds": worlds, "issues": issues, "auto_close": false})
}

/// The file form of `profile`, loadable with `load_profile`.
pub fn profile_json(profile: &Profile) -> Value {
    let masses: Vec<Vec<[i128; 2]>> =
        profile.members().iter().map(|m| m.masses().iter().map(|r| [*r.numer(), *r.denom()]).collect()).collect();
    json!({ "masses": masses })
}
