use kg_core::io::{parse_ntriples, parse_turtle, read_csv, reify_table, serialize_ntriples, TableSpec};
use kg_core::Graph;
use kg_testkit::fixtures::{self, purchase_triples, PURCHASES_CSV, PURCHASES_SPEC};
use kg_testkit::generate::random_data_graph;
use proptest::prelude::*;

#[test]
fn ntriples_round_trip_on_fifty_graphs() {
    for seed in 0..50 {
        let g = random_data_graph(seed, 60);
        let text = serialize_ntriples(&g);
        let back = parse_ntriples(&text).unwrap();
        assert_eq!(back, g, "seed {seed}");
        assert_eq!(serialize_ntriples(&back), text, "seed {seed}");
        assert_eq!(serialize_ntriples(&random_data_graph(seed, 60)), text, "seed {seed}");
    }
}

proptest! {
    #[test]
    fn ntriples_round_trip(seed in any::<u64>(), n in 0..80usize) {
        let g = random_data_graph(seed, n);
        prop_assert_eq!(parse_ntriples(&serialize_ntriples(&g)).unwrap(), g);
    }

    #[test]
    fn turtle_reads_canonical_ntriples(seed in any::<u64>()) {
        let g = random_data_graph(seed, 40);
        let report = parse_turtle(&serialize_ntriples(&g)).unwrap();
        prop_assert_eq!(report.graph, g);
    }
}

#[test]
fn turtle_listings_parse_to_expected_triples() {
    for listing in fixtures::listings() {
        let got = parse_turtle(&listing.text).unwrap();
        let expected = parse_ntriples(&listing.expected).unwrap();
        assert_eq!(
            serialize_ntriples(&got.graph),
            serialize_ntriples(&expected),
            "{}",
            listing.name
        );
        assert!(got.warnings.is_empty(), "{}: {:?}", listing.name, got.warnings);
    }
}

#[test]
fn purchase_table_reifies_row_by_row() {
    let spec = TableSpec::parse(PURCHASES_SPEC).unwrap();
    let (_, rows) = read_csv(PURCHASES_CSV).unwrap();
    for (i, row) in rows.iter().enumerate() {
        let g = reify_table(std::slice::from_ref(row), &spec).unwrap();
        // Instance numbering restarts for a single-row table.
        let expected: Vec<_> = purchase_triples(i + 1)
            .into_iter()
            .map(|t| {
                let s = kg_core::Term::iri(spec.instance_iri(1));
                kg_core::Triple::new(s, t.predicate, t.object)
            })
            .collect();
        assert_eq!(g, Graph::from_triples(expected).unwrap());
    }
    let all = reify_table(&rows, &spec).unwrap();
    assert_eq!(all.len(), 10);
    let expected = Graph::from_triples(purchase_triples(1).into_iter().chain(purchase_triples(2))).unwrap();
    assert_eq!(all, expected);
}
