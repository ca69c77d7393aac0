//! Text and JSON pieces shared by the commands.

use binagg_core::aggregators::{FactFailure, GTable, Witness};
use binagg_core::beliefs::Profile;
use binagg_core::entailment::Hop;
use binagg_core::properties::{NegationWitness, PropertyFlags};
use binagg_core::{Agenda, IssueId, IssueSet, WorldSet};
use serde_json::{json, Value};

use crate::io::profile_json;

pub fn names(agenda: &Agenda, set: IssueSet) -> Value {
    json!(set.iter().map(|i| agenda.name(i)).collect::<Vec<_>>())
}

pub fn worlds(agenda: &Agenda, set: WorldSet) -> Value {
    json!(set.iter().map(|w| agenda.universe().label(w)).collect::<Vec<_>>())
}

pub fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn hop_text(agenda: &Agenda, hop: &Hop) -> String {
    format!("{} |=* {}  given {}", agenda.name(hop.from), agenda.name(hop.to), agenda.format_set(hop.witness))
}

pub fn hops_json(agenda: &Agenda, hops: &[Hop]) -> Value {
    json!(hops
        .iter()
        .map(|h| json!({"from": agenda.name(h.from), "to": agenda.name(h.to), "given": names(agenda, h.witness)}))
        .collect::<Vec<_>>())
}

fn negation_json(agenda: &Agenda, w: &Option<NegationWitness>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => json!({
            "mis": names(agenda, w.y),
            "negate": names(agenda, w.z),
            "result": names(agenda, w.negated),
            "worlds": worlds(agenda, w.worlds),
        }),
    }
}

fn negation_text(agenda: &Agenda, w: &Option<NegationWitness>) -> String {
    match w {
        None => String::new(),
        Some(w) => format!(
            "negating {} in {} gives {}, true at {}",
            agenda.format_set(w.z),
            agenda.format_set(w.y),
            agenda.format_set(w.negated),
            agenda.universe().format_worlds(w.worlds)
        ),
    }
}

pub fn flags_json(agenda: &Agenda, f: &PropertyFlags) -> Value {
    json!({
        "non_simple": f.non_simple.map(|y| names(agenda, y)),
        "even_negatable": negation_json(agenda, &f.even_negatable),
        "pair_negatable": negation_json(agenda, &f.pair_negatable),
        "path_connected": f.path_connected,
        "path_gap": f.path_gap.map(|(a, b)| json!({"from": agenda.name(a), "to": agenda.name(b)})),
        "negation_connected": f.negation_connected,
        "negation_gap": f.negation_gap.map(|a| agenda.name(a)),
        "blocked": f.blocked,
        "h0": names(agenda, f.h0),
        "median_points": worlds(agenda, f.median_points),
    })
}

pub fn flags_text(agenda: &Agenda, f: &PropertyFlags) -> String {
    let gap = |a: IssueId, b: IssueId| format!("no path {} -> {}", agenda.name(a), agenda.name(b));
    let rows: [(&str, String, String); 8] = [
        (
            "non-simple",
            yes_no(f.is_non_simple()).into(),
            f.non_simple.map(|y| format!("MIS {}", agenda.format_set(y))).unwrap_or_default(),
        ),
        ("even-negatable", yes_no(f.is_even_negatable()).into(), negation_text(agenda, &f.even_negatable)),
        ("pair-negatable", yes_no(f.is_pair_negatable()).into(), negation_text(agenda, &f.pair_negatable)),
        ("path-connected", yes_no(f.path_connected).into(), f.path_gap.map(|(a, b)| gap(a, b)).unwrap_or_default()),
        (
            "negation-connected",
            yes_no(f.negation_connected).into(),
            f.negation_gap.map(|a| gap(a, agenda.complement(a))).unwrap_or_default(),
        ),
        ("blocked", yes_no(f.blocked).into(), String::new()),
        ("H0", agenda.format_set(f.h0), String::new()),
        ("median points", agenda.universe().format_worlds(f.median_points), String::new()),
    ];
    let mut out = String::new();
    for (name, value, witness) in rows {
        let line = format!("{name:<20}{value:<8}{witness}");
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out
}

/// Point masses by world label, anything else as a mass list.
pub fn profile_text(agenda: &Agenda, profile: &Profile) -> String {
    let parts: Vec<String> = profile
        .members()
        .iter()
        .map(|m| {
            let support = m.support();
            if support.len() == 1 {
                agenda.universe().label(support.first().expect("one world"))
            } else {
                let masses: Vec<String> = m.masses().iter().map(|r| r.to_string()).collect();
                format!("[{}]", masses.join(" "))
            }
        })
        .collect();
    format!("({})", parts.join(", "))
}

pub fn witness_json(agenda: &Agenda, w: &Witness) -> Value {
    match w {
        Witness::Issue { profile, issue } => {
            json!({"kind": "issue", "profile": profile_json(profile), "issue": agenda.name(*issue)})
        }
        Witness::Belief { profile, accepted } => {
            json!({"kind": "belief", "profile": profile_json(profile), "accepted": names(agenda, *accepted)})
        }
        Witness::Permutation { profile, permutation, issue } => json!({
            "kind": "permutation",
            "profile": profile_json(profile),
            "permuted_profile": profile_json(&profile.permuted(permutation)),
            "issue": agenda.name(*issue),
        }),
        Witness::Pair { first, first_issue, second, second_issue } => json!({
            "kind": "pair",
            "first": profile_json(first),
            "first_issue": agenda.name(*first_issue),
            "second": profile_json(second),
            "second_issue": agenda.name(*second_issue),
        }),
    }
}

pub fn witness_text(agenda: &Agenda, w: &Witness) -> String {
    let p = |x: &Profile| profile_text(agenda, x);
    match w {
        Witness::Issue { profile, issue } => format!("profile {} on {}", p(profile), agenda.name(*issue)),
        Witness::Belief { profile, accepted } => {
            format!("profile {} accepts {}", p(profile), agenda.format_set(*accepted))
        }
        Witness::Permutation { profile, permutation, issue } => format!(
            "profiles {} and {} differ on {}",
            p(profile),
            p(&profile.permuted(permutation)),
            agenda.name(*issue)
        ),
        Witness::Pair { first, first_issue, second, second_issue } => {
            format!("{} on {} vs {} on {}", p(first), agenda.name(*first_issue), p(second), agenda.name(*second_issue))
        }
    }
}

pub fn table_text(g: &GTable) -> String {
    g.values().iter().map(|&v| if v { '1' } else { '0' }).collect()
}

pub fn fact_json(verdict: &Result<(), FactFailure>) -> Value {
    match verdict {
        Ok(()) => json!({"verdict": "pass"}),
        Err(FactFailure::Monotonicity { a, b }) => json!({"verdict": "fail", "a": a, "b": b}),
        Err(FactFailure::Conjunction { a, b, combined }) => {
            json!({"verdict": "fail", "a": a, "b": b, "combined": combined})
        }
        Err(FactFailure::Reflection { a, c }) => json!({"verdict": "fail", "a": a, "c": c}),
    }
}
