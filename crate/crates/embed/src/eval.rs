use std::collections::{BTreeMap, BTreeSet, HashSet};

use kg_core::{Graph, Term, Triple};

use crate::model::{EmbeddingModel, Ids};
use crate::EmbedError;

/// A link prediction query with one open end.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LinkQuery {
    /// `(subject, relation, ?)`
    Tail { subject: Term, relation: Term },
    /// `(?, relation, object)`
    Head { relation: Term, object: Term },
}

/// The `k` best completions of `query`, highest score first (ties by term
/// order). With `filtered`, completions already in `graph` are skipped.
pub fn predict_links(
    model: &EmbeddingModel,
    graph: &Graph,
    query: &LinkQuery,
    k: usize,
    filtered: bool,
) -> Result<Vec<(Term, f64)>, EmbedError> {
    if k == 0 {
        return Err(EmbedError::InvalidK);
    }
    let entity = |t: &Term| model.entity_id(t).ok_or_else(|| EmbedError::UnknownEntity(t.to_string()));
    let relation = |t: &Term| model.relation_id(t).ok_or_else(|| EmbedError::UnknownRelation(t.to_string()));
    let (fixed, slot): (Ids, usize) = match query {
        LinkQuery::Tail { subject, relation: r } => ([entity(subject)?, relation(r)?, 0], 2),
        LinkQuery::Head { relation: r, object } => ([0, relation(r)?, entity(object)?], 0),
    };
    let mut out: Vec<(Term, f64)> = (0..model.entities().len())
        .filter_map(|x| {
            let mut ids = fixed;
            ids[slot] = x;
            if filtered && graph.contains(&model.triple(ids)) {
                return None;
            }
            Some((model.entities()[x].clone(), model.score_ids(ids)))
        })
        .collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    out.truncate(k);
    Ok(out)
}

/// Aggregates over a set of ranks.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Metrics {
    pub count: usize,
    pub mean_rank: f64,
    pub mrr: f64,
    pub hits_at_1: f64,
    pub hits_at_3: f64,
    pub hits_at_10: f64,
}

impl Metrics {
    pub fn from_ranks(ranks: &[f64]) -> Self {
        if ranks.is_empty() {
            return Metrics::default();
        }
        let n = ranks.len() as f64;
        let hits = |k: f64| ranks.iter().filter(|&&r| r <= k).count() as f64 / n;
        Metrics {
            count: ranks.len(),
            mean_rank: ranks.iter().sum::<f64>() / n,
            mrr: ranks.iter().map(|r| 1.0 / r).sum::<f64>() / n,
            hits_at_1: hits(1.0),
            hits_at_3: hits(3.0),
            hits_at_10: hits(10.0),
        }
    }
}

/// Ranks of the true head and tail of one test triple.
#[derive(Debug, Clone, PartialEq)]
pub struct TripleRanks {
    pub triple: Triple,
    pub head: f64,
    pub tail: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvalReport {
    pub overall: Metrics,
    pub per_relation: BTreeMap<Term, Metrics>,
    pub ranks: Vec<TripleRanks>,
}

/// Rank of `target` among all candidates for `slot`, ignoring candidates
/// that complete a known triple. Ties count half: `1 + #better + #tied/2`.
fn filtered_rank(model: &EmbeddingModel, known: &HashSet<Ids>, target: Ids, slot: usize) -> f64 {
    let own = model.score_ids(target);
    let (mut better, mut tied) = (0usize, 0usize);
    for x in 0..model.entities().len() {
        if x == target[slot] {
            continue;
        }
        let mut c = target;
        c[slot] = x;
        if known.contains(&c) {
            continue;
        }
        let s = model.score_ids(c);
        if s > own {
            better += 1;
        } else if s == own {
            tied += 1;
        }
    }
    1.0 + better as f64 + tied as f64 / 2.0
}

/// Filtered link prediction metrics: for each test triple both the head
/// and the tail are ranked against every entity, skipping corruptions that
/// are triples of `train` or `test`.
pub fn evaluate(model: &EmbeddingModel, train: &Graph, test: &[Triple]) -> Result<EvalReport, EmbedError> {
    let mut offenders = BTreeSet::new();
    for t in test {
        for e in [&t.subject, &t.object] {
            if model.entity_id(e).is_none() {
                offenders.insert(e.to_string());
            }
        }
        if model.relation_id(&t.predicate).is_none() {
            offenders.insert(t.predicate.to_string());
        }
    }
    if !offenders.is_empty() {
        return Err(EmbedError::UnknownTerms(offenders.into_iter().collect()));
    }
    let mut known: HashSet<Ids> = HashSet::new();
    for t in train.iter() {
        // Training triples outside the model's vocabulary cannot be
        // corruptions of anything it ranks.
        if let Ok(ids) = model.ids(&t) {
            known.insert(ids);
        }
    }
    let test_ids: Vec<Ids> = test.iter().map(|t| model.ids(t)).collect::<Result<_, _>>()?;
    known.extend(test_ids.iter().copied());

    let mut all = Vec::new();
    let mut by_relation: BTreeMap<Term, Vec<f64>> = BTreeMap::new();
    let mut ranks = Vec::new();
    for (t, &ids) in test.iter().zip(&test_ids) {
        let head = filtered_rank(model, &known, ids, 0);
        let tail = filtered_rank(model, &known, ids, 2);
        all.extend([head, tail]);
        by_relation.entry(t.predicate.clone()).or_default().extend([head, tail]);
        ranks.push(TripleRanks {
            triple: t.clone(),
            head,
            tail,
        });
    }
    Ok(EvalReport {
        overall: Metrics::from_ranks(&all),
        per_relation: by_relation.into_iter().map(|(r, v)| (r, Metrics::from_ranks(&v))).collect(),
        ranks,
    })
}
