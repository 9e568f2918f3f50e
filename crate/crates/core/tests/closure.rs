use std::collections::BTreeSet;

use kg_core::io::{parse_turtle, serialize_ntriples};
use kg_core::reason::{saturate, Profile};
use kg_core::vocab::{owl, rdf};
use kg_core::{Graph, Term, Triple};
use kg_testkit::fixtures::{self, edu};
use kg_testkit::generate::{random_graph, random_triples, Flavor};
use kg_testkit::oracle::naive_closure;
use proptest::prelude::*;

fn flavor(profile: Profile) -> Flavor {
    match profile {
        Profile::Rdfs => Flavor::Rdfs,
        Profile::Owl => Flavor::Owl,
    }
}

fn closure_set(g: &Graph, profile: Profile) -> BTreeSet<Triple> {
    saturate(g, profile).graph().iter().collect()
}

fn violations(g: &Graph) -> BTreeSet<(String, Vec<Triple>)> {
    saturate(g, Profile::Owl)
        .report()
        .iter()
        .map(|v| (v.rule.to_string(), v.triples.clone()))
        .collect()
}

fn assert_matches_oracle(g: &Graph, profile: Profile, label: &str) {
    let oracle = naive_closure(g, profile == Profile::Owl);
    let got = closure_set(g, profile);
    let missing: Vec<_> = oracle.triples.difference(&got).collect();
    let extra: Vec<_> = got.difference(&oracle.triples).collect();
    assert!(
        missing.is_empty() && extra.is_empty(),
        "{label}: missing {missing:?}, extra {extra:?}"
    );
    if profile == Profile::Owl {
        assert_eq!(violations(g), oracle.violations, "{label}: violations");
    }
}

#[test]
fn rdfs_closure_equals_naive_fixpoint() {
    for seed in 0..20 {
        let g = random_graph(seed, 100, Flavor::Rdfs);
        assert_matches_oracle(&g, Profile::Rdfs, &format!("seed {seed}"));
    }
}

#[test]
fn owl_closure_equals_naive_fixpoint() {
    for seed in 0..20 {
        let g = random_graph(seed, 100, Flavor::Owl);
        assert_matches_oracle(&g, Profile::Owl, &format!("seed {seed}"));
    }
}

#[test]
fn owl_rules_fire_on_generated_graphs() {
    let mut rules = BTreeSet::new();
    let mut flagged = BTreeSet::new();
    for seed in 0..20 {
        let g = random_graph(seed, 100, Flavor::Owl);
        let c = saturate(&g, Profile::Owl);
        rules.extend(c.derived_triples().iter().filter_map(|t| c.provenance(t)).map(|d| d.rule));
        flagged.extend(c.report().iter().map(|v| v.rule));
    }
    for rule in [
        "eq-sym", "eq-trans", "eq-rep-s", "eq-rep-p", "eq-rep-o", "prp-fp", "prp-trp", "prp-inv1",
        "cax-sco", "scm-sco", "prp-spo1", "prp-dom", "prp-rng", "cls-int2", "cls-uni", "cls-svf1",
        "cls-avf", "scm-eqc1",
    ] {
        assert!(rules.contains(rule), "{rule} never fired: {rules:?}");
    }
    assert!(flagged.len() >= 3, "too few violation kinds: {flagged:?}");
}

fn check_algebra(g: &Graph, triples: &[Triple], profile: Profile) {
    let closed = saturate(g, profile);
    let once: BTreeSet<Triple> = closed.graph().iter().collect();

    // Idempotence.
    let twice = closure_set(closed.graph(), profile);
    assert_eq!(twice, once, "idempotence");

    // Extensive.
    assert!(g.iter().all(|t| once.contains(&t)), "closure drops input");

    // Monotonicity: closure of a prefix is contained in the closure.
    let half = Graph::from_triples(triples[..triples.len() / 2].to_vec()).unwrap();
    let sub = closure_set(&half, profile);
    assert!(sub.is_subset(&once), "monotonicity");

    // Permutation invariance, down to the serialized bytes.
    let mut rev = triples.to_vec();
    rev.reverse();
    let rev = saturate(&Graph::from_triples(rev).unwrap(), profile);
    assert_eq!(serialize_ntriples(rev.graph()), serialize_ntriples(closed.graph()), "permutation");
    assert_eq!(rev.report(), closed.report(), "permutation of violations");
}

#[test]
fn closure_algebra_on_generated_graphs() {
    for profile in [Profile::Rdfs, Profile::Owl] {
        for seed in 0..20 {
            let triples = random_triples(seed, 100, flavor(profile));
            let g = Graph::from_triples(triples.clone()).unwrap();
            check_algebra(&g, &triples, profile);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn closure_matches_oracle(seed in any::<u64>(), n in 1..60usize, owl_rules in any::<bool>()) {
        let profile = if owl_rules { Profile::Owl } else { Profile::Rdfs };
        let g = random_graph(seed, n, flavor(profile));
        assert_matches_oracle(&g, profile, &format!("seed {seed}"));
    }

    #[test]
    fn closure_algebra(seed in any::<u64>(), n in 1..60usize, owl_rules in any::<bool>()) {
        let profile = if owl_rules { Profile::Owl } else { Profile::Rdfs };
        let triples = random_triples(seed, n, flavor(profile));
        check_algebra(&Graph::from_triples(triples.clone()).unwrap(), &triples, profile);
    }

    #[test]
    fn incremental_extension_matches_batch(seed in any::<u64>(), n in 2..60usize) {
        let triples = random_triples(seed, n, Flavor::Owl);
        let (head, tail) = triples.split_at(triples.len() / 2);
        let base = saturate(&Graph::from_triples(head.to_vec()).unwrap(), Profile::Owl);
        let extended = base.extend(tail.to_vec()).unwrap();
        let batch = saturate(&Graph::from_triples(triples.clone()).unwrap(), Profile::Owl);
        prop_assert_eq!(serialize_ntriples(extended.graph()), serialize_ntriples(batch.graph()));
        prop_assert_eq!(extended.report(), batch.report());
    }
}

fn kb(text: &str) -> Graph {
    parse_turtle(text).unwrap().graph
}

fn ty(s: &str, c: &str) -> Triple {
    Triple::new(edu(s), Term::iri(rdf::TYPE), edu(c))
}

#[test]
fn subclass_typing() {
    let c = saturate(&kb(&fixtures::city_locality()), Profile::Rdfs);
    assert!(c.is_derived(&ty("Warsaw", "Locality")));
    assert_eq!(c.provenance(&ty("Warsaw", "Locality")).unwrap().rule, "cax-sco");
}

#[test]
fn subproperty_and_range() {
    let part_of = Triple::new(edu("Ursynów"), edu("is_part_of"), edu("Warsaw"));
    let c = saturate(&kb(&fixtures::district_subproperty()), Profile::Rdfs);
    assert!(c.is_derived(&part_of));
    let c = saturate(&kb(&fixtures::district_range()), Profile::Rdfs);
    assert!(c.is_derived(&ty("Warsaw", "City")));

    let c = saturate(&kb(&fixtures::warsaw_kb()), Profile::Rdfs);
    for t in [part_of, ty("Warsaw", "City"), ty("Warsaw", "Locality")] {
        assert!(c.is_derived(&t), "{t}");
    }
}

#[test]
fn functional_property_merges_fathers() {
    let g = kb(&fixtures::fathers());
    let c = saturate(&g, Profile::Owl);
    let same = Term::iri(owl::SAME_AS);
    assert!(c.contains(&Triple::new(edu("Jan"), same.clone(), edu("Marcin"))));
    assert!(c.contains(&Triple::new(edu("Marcin"), same, edu("Jan"))));
    assert!(c.is_consistent());
    assert!(c.equality().same(&edu("Jan"), &edu("Marcin")));
    // Without OWL rules nothing is merged.
    assert_eq!(saturate(&g, Profile::Rdfs).derived_len(), 0);
}

#[test]
fn disjointness_is_reported() {
    let c = saturate(&kb(&fixtures::pumpkin()), Profile::Owl);
    assert!(c.is_consistent());
    let c = saturate(&kb(&fixtures::pumpkin_contradiction()), Profile::Owl);
    assert!(!c.is_consistent());
    assert_eq!(c.report().len(), 1);
    let v = &c.report().violations()[0];
    assert_eq!(v.rule, "cax-dw");
    assert!(v.triples.contains(&ty("Pumpkin", "Herbivore")));
}

#[test]
fn intersection_classifies_both_ways() {
    let c = saturate(&kb(&fixtures::boys()), Profile::Owl);
    assert!(c.contains(&ty("Jas", "Boy")));
    assert!(!c.contains(&ty("Ania", "Boy")));
    assert!(c.contains(&ty("Ala", "Child")));
    assert!(c.contains(&ty("Ala", "Man")));
}
