use std::collections::BTreeSet;

use kg_core::io::parse_turtle;
use kg_core::query::{evaluate, parse_query, query, Assumption, Query, QueryError, Regime};
use kg_core::reason::{saturate, Profile};
use kg_core::{Binding, Graph, PatternTerm, Term, Triple, TriplePattern};
use kg_testkit::fixtures::{self, edu};
use kg_testkit::generate::{random_graph, vocabulary, Flavor};
use proptest::prelude::*;

/// Nested-loop join in declaration order over a full scan of the graph.
fn brute_force(g: &Graph, patterns: &[TriplePattern], seed: Binding) -> Vec<Binding> {
    let triples: Vec<Triple> = g.iter().collect();
    let mut rows = vec![seed];
    for p in patterns {
        rows = rows
            .iter()
            .flat_map(|row| triples.iter().filter_map(|t| p.unify(t, row)).collect::<Vec<_>>())
            .collect();
    }
    rows
}

fn brute_answers(g: &Graph, q: &Query) -> BTreeSet<Vec<Term>> {
    let vars = q.output_variables();
    brute_force(g, &q.patterns, Binding::new())
        .into_iter()
        .filter(|b| q.negations.iter().all(|n| brute_force(g, n, b.clone()).is_empty()))
        .map(|b| vars.iter().map(|v| b.get(v).unwrap().clone()).collect())
        .collect()
}

fn rows(q: &Query, bindings: &[Binding]) -> Vec<Vec<Term>> {
    let vars = q.output_variables();
    bindings
        .iter()
        .map(|b| vars.iter().map(|v| b.get(v).unwrap().clone()).collect())
        .collect()
}

fn pattern_term() -> impl Strategy<Value = PatternTerm> {
    prop_oneof![
        2 => prop::sample::select(vec!["x", "y", "z"]).prop_map(PatternTerm::var),
        1 => prop::sample::select(vocabulary()).prop_map(PatternTerm::Bound),
    ]
}

fn pattern() -> impl Strategy<Value = TriplePattern> {
    let predicate = prop_oneof![
        1 => Just(PatternTerm::var("p")),
        3 => prop::sample::select(vocabulary()[..8].to_vec()).prop_map(PatternTerm::Bound),
    ];
    (pattern_term(), predicate, pattern_term()).prop_map(|(s, p, o)| TriplePattern::new(s, p, o))
}

fn random_query() -> impl Strategy<Value = Query> {
    (
        prop::collection::vec(pattern(), 1..4),
        prop::collection::vec(prop::collection::vec(pattern(), 1..3), 0..2),
    )
        .prop_map(|(patterns, negations)| Query {
            patterns,
            negations,
            assumption: Assumption::Closed,
            ..Query::default()
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn join_agrees_with_brute_force(seed in any::<u64>(), q in random_query()) {
        let g = random_graph(seed, 80, Flavor::Rdfs);
        let got = rows(&q, &evaluate(&g, &q, None));
        let sorted = { let mut s = got.clone(); s.sort(); s.dedup(); s };
        prop_assert_eq!(&got, &sorted, "results sorted and unique");
        let expected: Vec<Vec<Term>> = brute_answers(&g, &q).into_iter().collect();
        prop_assert_eq!(got, expected);
    }

    #[test]
    fn regimes_are_monotone(seed in any::<u64>(), q in random_query()) {
        let q = Query { negations: Vec::new(), assumption: Assumption::Open, ..q };
        let g = random_graph(seed, 60, Flavor::Owl);
        let none: BTreeSet<_> = rows(&q, &query(&g, &q, Regime::None).unwrap()).into_iter().collect();
        let rdfs: BTreeSet<_> = rows(&q, &query(&g, &q, Regime::Rdfs).unwrap()).into_iter().collect();
        let owl: BTreeSet<_> = rows(&q, &query(&g, &q, Regime::Owl).unwrap()).into_iter().collect();
        prop_assert!(none.is_subset(&rdfs));
        let eq = saturate(&g, Profile::Owl).equality();
        let canon: BTreeSet<Vec<Term>> = rdfs
            .iter()
            .map(|r| r.iter().map(|t| eq.representative(t)).collect())
            .collect();
        prop_assert!(canon.is_subset(&owl));
    }

    #[test]
    fn answers_are_deterministic(seed in any::<u64>(), q in random_query()) {
        let g = random_graph(seed, 60, Flavor::Owl);
        let a = query(&g, &q, Regime::Owl).unwrap();
        let b = query(&random_graph(seed, 60, Flavor::Owl), &q, Regime::Owl).unwrap();
        prop_assert_eq!(a, b);
    }
}

#[test]
fn gluten_free_products_under_closed_world() {
    let g = parse_turtle(&fixtures::allergens()).unwrap().graph;
    let q = parse_query(fixtures::GLUTEN_FREE_CLOSED).unwrap();
    let got: BTreeSet<Term> = query(&g, &q, Regime::None)
        .unwrap()
        .iter()
        .map(|b| b.get("p").unwrap().clone())
        .collect();
    assert_eq!(got, BTreeSet::from([edu("DarkSoySauce"), edu("Cream"), edu("Peanuts")]));

    let open = parse_query(fixtures::GLUTEN_FREE_OPEN).unwrap();
    assert_eq!(query(&g, &open, Regime::None), Err(QueryError::NegationUnderOpenWorld));
}

#[test]
fn owl_regime_returns_representatives() {
    let text = format!("{}:Jan :lives_in :Krakow .\n:Marcin :lives_in :Krakow .\n", fixtures::fathers());
    let g = parse_turtle(&text).unwrap().graph;
    let q = parse_query("PREFIX : <http://example.edu#>\nSELECT ?x\n?x :lives_in :Krakow .").unwrap();
    assert_eq!(query(&g, &q, Regime::None).unwrap().len(), 2);
    assert_eq!(query(&g, &q, Regime::Owl).unwrap().len(), 1);
}
