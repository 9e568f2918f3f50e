use kg_core::{Graph, Term, Triple};
use kg_embed::{evaluate, init_rng, predict_links, EmbedError, EmbeddingModel, LinkQuery, Norm};
use proptest::prelude::*;
use rand::Rng;

fn t(l: &str) -> Term {
    Term::iri(format!("http://e/{l}"))
}

fn line_model(n: usize) -> EmbeddingModel {
    EmbeddingModel::from_vectors(
        2,
        Norm::L1,
        (0..n).map(|i| (t(&format!("e{i}")), vec![i as f64, 0.0])).collect(),
        vec![(t("next"), vec![1.0, 0.0])],
    )
    .unwrap()
}

#[test]
fn perfect_model_scores_one() {
    let m = line_model(6);
    let test: Vec<Triple> = (0..5)
        .map(|i| Triple::new(t(&format!("e{i}")), t("next"), t(&format!("e{}", i + 1))))
        .collect();
    let r = evaluate(&m, &Graph::new(), &test).unwrap();
    assert_eq!(r.overall.mrr, 1.0);
    assert_eq!(r.overall.hits_at_1, 1.0);
    assert_eq!(r.overall.mean_rank, 1.0);
    assert_eq!(r.per_relation[&t("next")].count, 10);
}

#[test]
fn head_fourth_tail_first() {
    // One dimension, a + r = 1 and b = 1.4. Tail candidates score
    // -|1 - y|, so b is best; head candidates score -|x - 0.4|, so c, d and
    // e beat a.
    let m = EmbeddingModel::from_vectors(
        1,
        Norm::L1,
        [("a", 0.0), ("b", 1.4), ("c", 0.3), ("d", 0.5), ("e", 0.45)]
            .map(|(n, x)| (t(n), vec![x]))
            .to_vec(),
        vec![(t("r"), vec![1.0])],
    )
    .unwrap();
    let r = evaluate(&m, &Graph::new(), &[Triple::new(t("a"), t("r"), t("b"))]).unwrap();
    assert_eq!((r.ranks[0].head, r.ranks[0].tail), (4.0, 1.0));
    assert_eq!(r.overall.mrr, 0.625);
    assert_eq!(r.overall.mean_rank, 2.5);
    assert_eq!((r.overall.hits_at_1, r.overall.hits_at_3, r.overall.hits_at_10), (0.5, 0.5, 1.0));
}

#[test]
fn known_triples_are_filtered_from_ranking() {
    let m = line_model(4);
    // Tails for e0 score -|1 - x|: e1 beats e2, and e0 ties with it.
    let target = Triple::new(t("e0"), t("next"), t("e2"));
    let r = evaluate(&m, &Graph::new(), std::slice::from_ref(&target)).unwrap();
    assert_eq!(r.ranks[0].tail, 2.5);
    let train = Graph::from_triples([Triple::new(t("e0"), t("next"), t("e1"))]).unwrap();
    let r = evaluate(&m, &train, &[target]).unwrap();
    assert_eq!(r.ranks[0].tail, 1.5);
}

#[test]
fn ties_count_half() {
    let m = EmbeddingModel::from_vectors(
        1,
        Norm::L1,
        [("a", 0.0), ("b", 1.0), ("c", 1.0), ("d", 1.0)].map(|(n, x)| (t(n), vec![x])).to_vec(),
        vec![(t("r"), vec![1.0])],
    )
    .unwrap();
    let r = evaluate(&m, &Graph::new(), &[Triple::new(t("a"), t("r"), t("b"))]).unwrap();
    assert_eq!(r.ranks[0].tail, 2.0);
}

#[test]
fn unknown_test_terms_are_listed() {
    let m = line_model(3);
    let err = evaluate(&m, &Graph::new(), &[Triple::new(t("x"), t("next"), t("y"))]).unwrap_err();
    let EmbedError::UnknownTerms(names) = err else { panic!("{err:?}") };
    assert_eq!(names.len(), 2);
}

/// Random vectors rank the true completion uniformly at random, so the
/// mean of 40 ranks over 100 entities sits near 50.5.
#[test]
fn random_scorer_mean_rank() {
    let n = 100;
    let mut ranks = Vec::new();
    for seed in 0..20 {
        let mut rng = init_rng(seed);
        let entities = (0..n)
            .map(|i| (t(&format!("e{i}")), (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect()))
            .collect();
        let relations = vec![(t("r"), (0..8).map(|_| rng.gen_range(-1.0..1.0)).collect())];
        let m = EmbeddingModel::from_vectors(8, Norm::L2, entities, relations).unwrap();
        let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
        let test = Triple::new(t(&format!("e{a}")), t("r"), t(&format!("e{b}")));
        let r = evaluate(&m, &Graph::new(), &[test]).unwrap();
        ranks.extend([r.ranks[0].head, r.ranks[0].tail]);
    }
    let mean = ranks.iter().sum::<f64>() / ranks.len() as f64;
    let expected = (n as f64 + 1.0) / 2.0;
    let sigma = (((n * n - 1) as f64 / 12.0) / ranks.len() as f64).sqrt();
    assert!((mean - expected).abs() < 3.0 * sigma, "mean rank {mean}, expected {expected} ± {}", 3.0 * sigma);
}

#[test]
fn prediction_contract() {
    let m = line_model(5);
    let train = Graph::from_triples([Triple::new(t("e0"), t("next"), t("e1"))]).unwrap();
    let q = LinkQuery::Tail { subject: t("e0"), relation: t("next") };
    assert_eq!(predict_links(&m, &train, &q, 0, false), Err(EmbedError::InvalidK));
    let all = predict_links(&m, &train, &q, 100, false).unwrap();
    assert_eq!(all.len(), 5);
    assert_eq!(all[0].0, t("e1"));
    assert!(all.windows(2).all(|w| w[0].1 >= w[1].1));
    let filtered = predict_links(&m, &train, &q, 100, true).unwrap();
    assert_eq!(filtered.len(), 4);
    assert!(filtered.iter().all(|(e, _)| !train.contains(&Triple::new(t("e0"), t("next"), e.clone()))));
    let q = LinkQuery::Head { relation: t("next"), object: t("e3") };
    assert_eq!(predict_links(&m, &train, &q, 1, true).unwrap()[0].0, t("e2"));
}

proptest! {
    #[test]
    fn metric_invariants(seed in any::<u64>(), n_test in 1..8usize) {
        let mut rng = init_rng(seed);
        let n = 12;
        let entities = (0..n)
            .map(|i| (t(&format!("e{i}")), (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect()))
            .collect();
        let relations = (0..2)
            .map(|i| (t(&format!("r{i}")), (0..3).map(|_| rng.gen_range(-1.0..1.0)).collect()))
            .collect();
        let m = EmbeddingModel::from_vectors(3, Norm::L1, entities, relations).unwrap();
        let test: Vec<Triple> = (0..n_test)
            .map(|_| Triple::new(
                t(&format!("e{}", rng.gen_range(0..n))),
                t(&format!("r{}", rng.gen_range(0..2))),
                t(&format!("e{}", rng.gen_range(0..n))),
            ))
            .collect();
        let r = evaluate(&m, &Graph::new(), &test).unwrap();
        let o = r.overall;
        prop_assert!(o.mrr > 0.0 && o.mrr <= 1.0);
        prop_assert!(o.mean_rank >= 1.0 && o.mean_rank <= n as f64);
        prop_assert!(o.hits_at_1 <= o.hits_at_3 && o.hits_at_3 <= o.hits_at_10);
        let per: usize = r.per_relation.values().map(|m| m.count).sum();
        prop_assert_eq!(per, o.count);
    }
}
