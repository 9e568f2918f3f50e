//! Conjunctive graph-pattern queries over a raw, RDFS-closed or OWL-closed
//! graph, with negation blocks allowed only under the closed-world
//! assumption.

mod parse;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::graph::Graph;
use crate::pattern::{Binding, PatternTerm, TriplePattern};
use crate::reason::{saturate, EqualityPartition, Profile};
use crate::term::Term;

pub use parse::{parse_competency, parse_query, parse_query_with, CompetencyQuestion};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Regime {
    #[default]
    None,
    Rdfs,
    Owl,
}

impl FromStr for Regime {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(Regime::None),
            "rdfs" => Ok(Regime::Rdfs),
            "owl" => Ok(Regime::Owl),
            _ => Err(format!("unknown regime `{s}` (expected none, rdfs or owl)")),
        }
    }
}

impl fmt::Display for Regime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Regime::None => "none",
            Regime::Rdfs => "rdfs",
            Regime::Owl => "owl",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Assumption {
    #[default]
    Open,
    Closed,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum QueryError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("negation requires the closed-world assumption: under the open world, absence of a fact is not its negation; negatives must be stated explicitly")]
    NegationUnderOpenWorld,
    #[error("projected variable ?{0} does not occur in any positive pattern")]
    UnboundProjection(String),
    #[error("query has no positive patterns")]
    Empty,
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Query {
    pub patterns: Vec<TriplePattern>,
    /// Each block must have no match for an answer to survive.
    pub negations: Vec<Vec<TriplePattern>>,
    /// Empty means every variable of the positive patterns, in order of
    /// first occurrence.
    pub projection: Vec<String>,
    pub assumption: Assumption,
    /// Regime requested by the query text, if any.
    pub regime: Option<Regime>,
}

impl Query {
    pub fn new(patterns: Vec<TriplePattern>) -> Self {
        Query {
            patterns,
            ..Self::default()
        }
    }

    pub fn validate(&self) -> Result<(), QueryError> {
        if self.patterns.is_empty() {
            return Err(QueryError::Empty);
        }
        if !self.negations.is_empty() && self.assumption == Assumption::Open {
            return Err(QueryError::NegationUnderOpenWorld);
        }
        let vars = self.positive_variables();
        if let Some(v) = self.projection.iter().find(|v| !vars.contains(v)) {
            return Err(QueryError::UnboundProjection(v.clone()));
        }
        Ok(())
    }

    fn positive_variables(&self) -> Vec<String> {
        let mut out: Vec<String> = Vec::new();
        for v in self.patterns.iter().flat_map(TriplePattern::variables) {
            if !out.iter().any(|o| o == v) {
                out.push(v.to_string());
            }
        }
        out
    }

    /// Projected variables in output order.
    pub fn output_variables(&self) -> Vec<String> {
        if self.projection.is_empty() {
            self.positive_variables()
        } else {
            self.projection.clone()
        }
    }
}

/// Answers `q` over the closure of `graph` selected by `regime`.
pub fn query(graph: &Graph, q: &Query, regime: Regime) -> Result<Vec<Binding>, QueryError> {
    q.validate()?;
    Ok(match regime {
        Regime::None => evaluate(graph, q, None),
        Regime::Rdfs => evaluate(saturate(graph, Profile::Rdfs).graph(), q, None),
        Regime::Owl => {
            let closure = saturate(graph, Profile::Owl);
            let eq = closure.equality();
            evaluate(closure.graph(), q, Some(&eq))
        }
    })
}

/// Answers an already validated query over `graph` as is. With an equality
/// partition, answers are rewritten to representatives and deduplicated.
/// Results are sorted by the projected terms in projection order.
pub fn evaluate(graph: &Graph, q: &Query, equality: Option<&EqualityPartition>) -> Vec<Binding> {
    let vars = q.output_variables();
    let mut answers: BTreeMap<Vec<Term>, Binding> = BTreeMap::new();
    for b in solve(graph, &q.patterns, Binding::new()) {
        if q.negations.iter().any(|block| !solve(graph, block, b.clone()).is_empty()) {
            continue;
        }
        let mut projected = b.project(&vars);
        if let Some(eq) = equality {
            projected = projected.map_terms(|t| eq.representative(t));
        }
        let key = vars.iter().filter_map(|v| projected.get(v).cloned()).collect();
        answers.entry(key).or_insert(projected);
    }
    answers.into_values().collect()
}

/// Join order: repeatedly take the pattern with the most positions bound
/// (constants or variables bound by earlier patterns), then the fewest
/// graph matches on its constants, then declaration order.
pub fn plan(graph: &Graph, patterns: &[TriplePattern], bound: &BTreeSet<String>) -> Vec<usize> {
    let mut bound = bound.clone();
    let mut remaining: Vec<usize> = (0..patterns.len()).collect();
    let mut order = Vec::with_capacity(patterns.len());
    let cardinality = |p: &TriplePattern| -> usize {
        let id = |pt: &PatternTerm| pt.as_term().map(|t| graph.lookup(t));
        match (id(&p.subject), id(&p.predicate), id(&p.object)) {
            (Some(None), _, _) | (_, Some(None), _) | (_, _, Some(None)) => 0,
            (s, p, o) => graph.count(s.flatten(), p.flatten(), o.flatten()),
        }
    };
    while !remaining.is_empty() {
        let (pick, _) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &i)| {
                let p = &patterns[i];
                let bound_positions = p
                    .positions()
                    .iter()
                    .filter(|pt| match pt {
                        PatternTerm::Bound(_) => true,
                        PatternTerm::Var(v) => bound.contains(v),
                    })
                    .count();
                (std::cmp::Reverse(bound_positions), cardinality(p), i)
            })
            .expect("non-empty");
        let i = remaining.remove(pick);
        bound.extend(patterns[i].variables().map(String::from));
        order.push(i);
    }
    order
}

/// All extensions of `seed` satisfying every pattern.
fn solve(graph: &Graph, patterns: &[TriplePattern], seed: Binding) -> Vec<Binding> {
    let bound: BTreeSet<String> = seed.iter().map(|(k, _)| k.to_string()).collect();
    let mut rows = vec![seed];
    for i in plan(graph, patterns, &bound) {
        let mut next = Vec::new();
        for row in &rows {
            let pattern = patterns[i].substitute(row);
            for (triple, _) in graph.match_pattern(&pattern) {
                if let Some(b) = patterns[i].unify(&triple, row) {
                    next.push(b);
                }
            }
        }
        rows = next;
        if rows.is_empty() {
            break;
        }
    }
    rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::term::Triple;
    use crate::vocab::{rdf, rdfs};

    fn e(l: &str) -> Term {
        Term::iri(format!("http://e/{l}"))
    }

    fn graph() -> Graph {
        let ty = Term::iri(rdf::TYPE);
        Graph::from_triples([
            Triple::new(e("City"), Term::iri(rdfs::SUB_CLASS_OF), e("Locality")),
            Triple::new(e("Warsaw"), ty.clone(), e("City")),
            Triple::new(e("Krakow"), ty.clone(), e("City")),
            Triple::new(e("Warsaw"), e("in"), e("Poland")),
        ])
        .unwrap()
    }

    #[test]
    fn join_and_regimes() {
        let g = graph();
        let q = Query::new(vec![TriplePattern::new(
            PatternTerm::var("x"),
            Term::iri(rdf::TYPE),
            e("Locality"),
        )]);
        assert!(query(&g, &q, Regime::None).unwrap().is_empty());
        assert_eq!(query(&g, &q, Regime::Rdfs).unwrap().len(), 2);

        let q = Query::new(vec![
            TriplePattern::new(PatternTerm::var("x"), e("in"), PatternTerm::var("c")),
            TriplePattern::new(PatternTerm::var("x"), Term::iri(rdf::TYPE), e("City")),
        ]);
        let rows = query(&g, &q, Regime::None).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].get("c"), Some(&e("Poland")));
    }

    #[test]
    fn negation_needs_closed_world() {
        let g = graph();
        let mut q = Query::new(vec![TriplePattern::new(
            PatternTerm::var("x"),
            Term::iri(rdf::TYPE),
            e("City"),
        )]);
        q.negations.push(vec![TriplePattern::new(PatternTerm::var("x"), e("in"), e("Poland"))]);
        assert_eq!(query(&g, &q, Regime::None), Err(QueryError::NegationUnderOpenWorld));
        q.assumption = Assumption::Closed;
        let rows = query(&g, &q, Regime::None).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].get("x"), Some(&e("Krakow")));
    }

    #[test]
    fn projection_must_be_bound() {
        let mut q = Query::new(vec![TriplePattern::new(PatternTerm::var("x"), e("p"), e("o"))]);
        q.projection = vec!["y".into()];
        assert_eq!(q.validate(), Err(QueryError::UnboundProjection("y".into())));
        assert_eq!(Query::default().validate(), Err(QueryError::Empty));
    }

    #[test]
    fn plan_prefers_bound_then_selective() {
        let g = graph();
        let ps = vec![
            TriplePattern::new(PatternTerm::var("x"), PatternTerm::var("p"), PatternTerm::var("o")),
            TriplePattern::new(PatternTerm::var("x"), Term::iri(rdf::TYPE), e("City")),
            TriplePattern::new(PatternTerm::var("x"), e("in"), e("Poland")),
        ];
        assert_eq!(plan(&g, &ps, &BTreeSet::new()), vec![2, 1, 0]);
    }
}
