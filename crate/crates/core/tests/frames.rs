use std::collections::BTreeSet;

use kg_core::frames::{frames_to_graph, parse_frames, FrameError, FrameKind, Strength};
use kg_core::reason::{saturate, Profile};
use kg_core::vocab::rdf;
use kg_core::{Term, Triple};
use kg_testkit::fixtures::{FRAMES, FRAMES_NS};

fn iri(l: &str) -> Term {
    Term::iri(format!("{FRAMES_NS}{l}"))
}

#[test]
fn fixture_has_ten_frames() {
    let s = parse_frames(FRAMES).unwrap();
    assert_eq!(s.len(), 10);
    assert!(s.get("Carrots").is_some());
    assert_eq!(s.get("warsaw").unwrap().kind, FrameKind::Individual);
}

#[test]
fn memberships_are_rederived_after_export() {
    let s = parse_frames(FRAMES).unwrap();
    let closure = saturate(&frames_to_graph(&s, FRAMES_NS).unwrap(), Profile::Rdfs);
    let ty = Term::iri(rdf::TYPE);

    // Every INSTANCE-OF followed by any number of IS-A steps.
    let mut expected = BTreeSet::new();
    for f in s.frames().filter(|f| f.kind == FrameKind::Individual) {
        let mut todo: Vec<String> = f.parents.clone();
        let mut seen = BTreeSet::new();
        while let Some(c) = todo.pop() {
            if seen.insert(c.clone()) {
                if let Some(cf) = s.get(&c) {
                    todo.extend(cf.parents.iter().cloned());
                }
            }
        }
        for c in seen {
            expected.insert(Triple::new(iri(&f.name), ty.clone(), iri(&c)));
        }
    }
    assert!(expected.len() >= 8);
    let got: BTreeSet<Triple> = closure.graph().iter().filter(|t| t.predicate == ty).collect();
    assert_eq!(got, expected);
    assert!(expected.contains(&Triple::new(iri("warsaw"), ty.clone(), iri("Locality"))));
    assert!(expected.contains(&Triple::new(iri("carrot1"), ty, iri("Food"))));
}

#[test]
fn defined_values_override_defaults() {
    let s = parse_frames(FRAMES).unwrap();
    let v = s.get_slot("carrot1", "taste").unwrap();
    assert_eq!((v.value.as_str(), v.strength, v.source.as_str()), ("earthy", Strength::Defined, "carrot1"));
    let v = s.get_slot("carrot2", "taste").unwrap();
    assert_eq!((v.value.as_str(), v.strength, v.source.as_str()), ("sweet", Strength::Default, "Carrots"));
    let v = s.get_slot("carrot2", "edible").unwrap();
    assert_eq!((v.value.as_str(), v.strength), ("yes", Strength::Defined));
    assert_eq!(s.get_slot("warsaw", "kind").unwrap().value, "settlement");
}

#[test]
fn defaults_are_not_exported() {
    let s = parse_frames(FRAMES).unwrap();
    let g = frames_to_graph(&s, FRAMES_NS).unwrap();
    assert!(!g.iter().any(|t| t.predicate == iri("taste") && t.object == Term::literal("sweet")));
    assert!(g.contains(&Triple::new(iri("carrot1"), iri("taste"), Term::literal("earthy"))));
    assert!(g.contains(&Triple::new(iri("warsaw"), iri("country"), iri("poland"))));
}

#[test]
fn constraints_guard_fills() {
    let mut s = parse_frames(FRAMES).unwrap();
    assert!(s.fill_slot("carrot2", "colour", "orange").is_ok());
    assert!(matches!(
        s.fill_slot("carrot2", "colour", "blue"),
        Err(FrameError::ConstraintViolation { .. })
    ));
    assert!(s.fill_slot("warsaw", "country", "poland").is_ok());
    assert!(matches!(
        s.fill_slot("warsaw", "country", "carrot1"),
        Err(FrameError::ConstraintViolation { .. })
    ));
}
