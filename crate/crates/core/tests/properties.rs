mod common;

use std::collections::BTreeSet;

use common::*;
use msle_core::dataset::load_bundled;
use msle_core::maturity::{constraint_completeness, realworld_completeness, run_cq_suite, RealWorldSpec};
use msle_core::model::{Graph, Iri, Term, Triple};
use msle_core::skos::{find_by_label, MatchMode};
use msle_core::vocab::MSLE_NS;
use msle_core::{isomorphic, parse_turtle, serialize_turtle};
use proptest::prelude::*;
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::SeedableRng;

fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn insert_is_idempotent_and_remove_undoes_it(seed in any::<u64>()) {
        let mut g = random_turtle_graph(&mut rng(seed));
        let before = g.len();
        let triples: Vec<Triple> = g.iter().cloned().collect();
        for t in &triples {
            prop_assert!(!g.insert(t.clone()));
        }
        prop_assert_eq!(g.len(), before);
        if let Some(t) = triples.first() {
            prop_assert!(g.remove(t));
            prop_assert!(!g.contains(t));
            prop_assert_eq!(g.len(), before - 1);
        }
    }

    #[test]
    fn indexed_matching_equals_a_scan(seed in any::<u64>(), mask in 0u8..8) {
        let mut r = rng(seed);
        let g = random_turtle_graph(&mut r);
        let Some(probe) = g.iter().collect::<Vec<_>>().choose(&mut r).map(|t| (*t).clone()) else { return Ok(()) };
        let [s, p, o] = probe.terms();
        let pick = |bit: u8, t: &'_ Term| if mask & bit != 0 { Some(t.clone()) } else { None };
        let (s, p, o) = (pick(1, s), pick(2, p), pick(4, o));
        let got: BTreeSet<String> = g.triples_matching(s.as_ref(), p.as_ref(), o.as_ref()).map(|t| t.to_string()).collect();
        let want: BTreeSet<String> = g
            .iter()
            .filter(|t| s.as_ref().is_none_or(|x| t.subject() == x))
            .filter(|t| p.as_ref().is_none_or(|x| t.predicate() == x))
            .filter(|t| o.as_ref().is_none_or(|x| t.object() == x))
            .map(|t| t.to_string())
            .collect();
        prop_assert_eq!(got, want);
    }

    #[test]
    fn round_trip_is_isomorphic_and_stable(seed in any::<u64>()) {
        let g = random_turtle_graph(&mut rng(seed));
        let text = serialize_turtle(&g);
        let back = parse_turtle(&text).unwrap();
        prop_assert!(isomorphic(&g, &back));
        prop_assert_eq!(serialize_turtle(&back), text);
    }

    #[test]
    fn merging_a_graph_with_itself_duplicates_only_blank_triples(seed in any::<u64>()) {
        let g = random_turtle_graph(&mut rng(seed));
        let mut doubled = g.clone();
        doubled.merge(&g);
        let with_blank = g.iter().filter(|t| t.subject().is_blank() || t.object().is_blank()).count();
        prop_assert_eq!(doubled.len(), g.len() + with_blank);
    }

    #[test]
    fn isomorphism_detects_a_changed_triple(seed in any::<u64>()) {
        let mut r = rng(seed);
        let g = random_turtle_graph(&mut r);
        let mut h = g.clone();
        let extra = Triple::new(iri("http://e/fresh"), iri("http://e/p"), typed("1", msle_core::vocab::xsd::INTEGER)).unwrap();
        h.insert(extra);
        prop_assert!(!isomorphic(&g, &h));
    }

    #[test]
    fn relabelled_blanks_stay_isomorphic(seed in any::<u64>()) {
        let g = random_turtle_graph(&mut rng(seed));
        let mut relabelled = Graph::new();
        relabelled.merge(&g);
        prop_assert!(isomorphic(&g, &relabelled));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn exact_label_matches_are_substring_matches(text in "[a-zA-Z ]{1,6}|SEM|GIS|Microscope|4wbsd") {
        let ds = load_bundled().unwrap();
        let exact: BTreeSet<Iri> = find_by_label(&ds.data, &text, MatchMode::Exact).into_iter().collect();
        let sub: BTreeSet<Iri> = find_by_label(&ds.data, &text, MatchMode::Substring).into_iter().collect();
        prop_assert!(exact.is_subset(&sub));
    }

    #[test]
    fn verdicts_ignore_case_and_row_order(seed in any::<u64>()) {
        let ds = load_bundled().unwrap();
        let baseline = run_cq_suite(&ds.data, &ds.suite);
        let mut r = rng(seed);
        let mut shuffled = ds.suite.clone();
        shuffled.cases.shuffle(&mut r);
        for case in &mut shuffled.cases {
            case.expected.shuffle(&mut r);
        }
        let report = run_cq_suite(&ds.data, &shuffled);
        prop_assert_eq!(report.passed, baseline.passed);
        for verdict in &report.cases {
            let same = baseline.cases.iter().find(|c| c.id == verdict.id).unwrap();
            prop_assert_eq!(verdict.passed, same.passed);
        }
    }

    #[test]
    fn completeness_is_monotone(conforming in 0usize..4, violating in 0usize..4) {
        let ds = load_bundled().unwrap();
        let dual = Iri::new(format!("{MSLE_NS}Dual_Beam")).unwrap();
        let score = |g: &Graph| constraint_completeness(g, &ds.shapes.shapes)[&dual].score.ratio;
        let mut g = ds.data.clone();
        let mut last = score(&g);
        for i in 0..conforming {
            g.merge(&parse_turtle(&format!(
                "@prefix : <{MSLE_NS}> .\n:ok{i} a :Dual_Beam ; :hasHighTension 10 ; :hasDetector :d ; :hasLocation \"x\" ."
            )).unwrap());
            let now = score(&g);
            prop_assert!(now >= last);
            last = now;
        }
        for i in 0..violating {
            g.merge(&parse_turtle(&format!("@prefix : <{MSLE_NS}> .\n:bad{i} a :Dual_Beam ; :hasHighTension 99 .")).unwrap());
            let now = score(&g);
            prop_assert!(now <= last);
            last = now;
        }
    }

    #[test]
    fn realworld_scores_are_capped(actual in 1u64..10) {
        let ds = load_bundled().unwrap();
        let spec = RealWorldSpec { actual, ..ds.realworld[0].clone() };
        let entry = &realworld_completeness(&ds.data, std::slice::from_ref(&spec))[&spec.label];
        let ratio = entry.score.unwrap().ratio;
        prop_assert!(ratio <= num_rational::Ratio::from_integer(1));
        prop_assert_eq!(ratio, num_rational::Ratio::new(4.min(actual), actual));
    }
}
