use std::collections::BTreeSet;

use binagg_core::aggregators::{check_axioms, replay, AggregatorSpec, Axiom, AxiomSet, Verdict};
use binagg_core::beliefs::{MassFunction, Profile, Rational};
use binagg_core::entailment::{conditionally_entails, conditionally_entails_direct, EntailmentGraph};
use binagg_core::formula::{parse_formula, Formula};
use binagg_core::mis::{is_minimally_inconsistent, minimally_inconsistent_subsets};
use binagg_core::model::algebra_closure;
use binagg_core::properties::{analyze, check_m_set, find_m_set, h0_set, MSetOutcome};
use binagg_core::{Agenda, IssueId, IssueSet, Limits, Universe, WorldSet};
use proptest::prelude::*;

fn agenda_strategy() -> impl Strategy<Value = Agenda> {
    (2usize..=5).prop_flat_map(|size| {
        let full = (1u32 << size) - 1;
        prop::collection::vec(1..full, 1..=4).prop_map(move |bits| {
            let sets: Vec<WorldSet> = bits.into_iter().map(WorldSet::from_bits).collect();
            Agenda::from_sets(Universe::new(size).unwrap(), &sets, true).unwrap()
        })
    })
}

fn fixed_point_closure(sets: &[WorldSet], size: usize) -> Vec<WorldSet> {
    let full = WorldSet::full(size);
    let mut family: BTreeSet<WorldSet> = sets.iter().copied().chain([WorldSet::EMPTY, full]).collect();
    loop {
        let mut next = family.clone();
        for &a in &family {
            next.insert(a.complement(size));
            for &b in &family {
                next.insert(a.intersection(b));
            }
        }
        if next.len() == family.len() {
            return family.into_iter().collect();
        }
        family = next;
    }
}

fn formula_strategy() -> impl Strategy<Value = Formula> {
    let leaf = prop_oneof![Just("a"), Just("b"), Just("c1"), Just("d_2")].prop_map(Formula::atom);
    leaf.prop_recursive(6, 48, 2, |inner| {
        prop_oneof![
            inner.clone().prop_map(Formula::not),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Formula::iff(a, b)),
        ]
    })
}

fn mass_strategy(size: usize) -> impl Strategy<Value = MassFunction> {
    prop::collection::vec(0i128..5, size).prop_filter("some mass", |w| w.iter().any(|&x| x > 0)).prop_map(|w| {
        let total: i128 = w.iter().sum();
        MassFunction::new(w.into_iter().map(|x| Rational::new(x, total)).collect()).unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 200, failure_persistence: None, ..ProptestConfig::default() })]

    #[test]
    fn agendas_are_complement_closed(agenda in agenda_strategy()) {
        let size = agenda.universe().size();
        for a in agenda.ids() {
            let c = agenda.complement(a);
            prop_assert_eq!(agenda.worlds(c), agenda.worlds(a).complement(size));
            prop_assert_eq!(agenda.complement(c), a);
            prop_assert!(agenda.worlds(a).is_contingent(size));
        }
    }

    #[test]
    fn mis_matches_brute_force(agenda in agenda_strategy()) {
        let mis = minimally_inconsistent_subsets(&agenda, None, &Limits::default()).unwrap();
        let brute: BTreeSet<u64> = (0u64..1 << agenda.len())
            .filter(|&b| {
                let s = IssueSet::from_ids((0..agenda.len()).filter(|i| b >> i & 1 == 1).map(IssueId));
                is_minimally_inconsistent(&agenda, s)
            })
            .collect();
        let got: BTreeSet<u64> = mis.iter().map(|s| s.bits()).collect();
        prop_assert_eq!(got, brute);
        // every complementary pair is itself minimally inconsistent
        for (a, b) in agenda.pairs() {
            prop_assert!(mis.contains(IssueSet::EMPTY.with(a).with(b)));
        }
    }

    #[test]
    fn entailment_routes_agree(agenda in agenda_strategy()) {
        let limits = Limits::default();
        let mis = minimally_inconsistent_subsets(&agenda, None, &limits).unwrap();
        for a in agenda.ids() {
            for b in agenda.ids() {
                let fast = conditionally_entails(&agenda, &mis, a, b).unwrap();
                let slow = conditionally_entails_direct(&agenda, a, b, &limits).unwrap();
                prop_assert_eq!(fast.is_some(), slow.is_some());
            }
        }
    }

    #[test]
    fn path_witnesses_chain(agenda in agenda_strategy()) {
        let mis = minimally_inconsistent_subsets(&agenda, None, &Limits::default()).unwrap();
        let graph = EntailmentGraph::build(&agenda, &mis);
        for a in agenda.ids() {
            for b in agenda.ids() {
                match graph.path_witness(a, b) {
                    Some(hops) if a != b => {
                        prop_assert!(graph.reaches(a, b));
                        prop_assert_eq!(hops.first().unwrap().from, a);
                        prop_assert_eq!(hops.last().unwrap().to, b);
                        for w in hops.windows(2) {
                            prop_assert_eq!(w[0].to, w[1].from);
                        }
                        for h in &hops {
                            prop_assert!(graph.direct(h.from, h.to));
                        }
                    }
                    Some(hops) => prop_assert!(hops.is_empty()),
                    None => prop_assert!(!graph.reaches(a, b)),
                }
            }
        }
    }

    #[test]
    fn flag_implications(agenda in agenda_strategy()) {
        let limits = Limits::default();
        let an = analyze(&agenda, &limits).unwrap();
        let f = &an.flags;
        prop_assert_eq!(f.is_even_negatable(), f.is_pair_negatable());
        prop_assert!(!f.path_connected || f.is_non_simple());
        prop_assert!(!f.path_connected || f.negation_connected);
        prop_assert!(!f.negation_connected || f.blocked);
        prop_assert_eq!(f.blocked, f.median_points.is_empty());
        if let Some(w) = f.even_negatable {
            prop_assert!(an.mis.contains(w.y));
            prop_assert!(w.z.is_subset(w.y) && w.z.len() % 2 == 0);
            prop_assert!(agenda.is_consistent(w.negated));
        }
        match find_m_set(&agenda, &an.graph, &an.mis, &limits).unwrap() {
            MSetOutcome::Found(m) => {
                let h0 = h0_set(&agenda, &an.graph);
                prop_assert!(check_m_set(&agenda, &an.mis, h0, m).is_ok());
            }
            MSetOutcome::NegationConnected => prop_assert!(f.negation_connected),
            MSetOutcome::NotFound => prop_assert!(false, "no M-set for {}", agenda),
        }
    }

    #[test]
    fn closure_matches_fixed_point(size in 1usize..=5, bits in prop::collection::vec(any::<u32>(), 0..4)) {
        let full = WorldSet::full(size).bits();
        let sets: Vec<WorldSet> = bits.into_iter().map(|b| WorldSet::from_bits(b & full)).collect();
        prop_assert_eq!(algebra_closure(&sets, size).unwrap(), fixed_point_closure(&sets, size));
    }

    #[test]
    fn printed_formulas_reparse(f in formula_strategy()) {
        prop_assert_eq!(parse_formula(&f.to_string()).unwrap(), f);
    }

    #[test]
    fn probabilities_are_exact(m in mass_strategy(4), bits in 0u32..16) {
        let s = WorldSet::from_bits(bits);
        prop_assert_eq!(m.prob(s) + m.prob(s.complement(4)), Rational::from_integer(1));
        prop_assert_eq!(m.prob(WorldSet::full(4)), Rational::from_integer(1));
        prop_assert!(m.prob(s) >= Rational::from_integer(0));
    }

    #[test]
    fn permuting_a_profile_permutes_vectors(
        ms in prop::collection::vec(mass_strategy(3), 3),
        bits in 1u32..7,
    ) {
        let p = Profile::new(ms).unwrap();
        let q = p.permuted(&[2, 0, 1]);
        let s = WorldSet::from_bits(bits);
        let (vp, vq) = (p.vector(s), q.vector(s));
        let mut a = vp.clone();
        let mut b = vq.clone();
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn threshold_witnesses_replay() {
    let agenda = binagg_core::fixtures::conj();
    let spec = AggregatorSpec::threshold(3, Rational::new(1, 2), true).unwrap();
    let report = check_axioms(&spec, &agenda, 2, AxiomSet::all(), &Limits::default()).unwrap();
    for (axiom, verdict) in &report.verdicts {
        if let Verdict::Fail(w) = verdict {
            assert!(replay(&spec, &agenda, *axiom, w).unwrap(), "{} witness does not replay", axiom.name());
        }
    }
    assert!(report.passes(Axiom::An));
    assert!(report.passes(Axiom::Sys));
    assert!(!report.passes(Axiom::Ccs));
}
