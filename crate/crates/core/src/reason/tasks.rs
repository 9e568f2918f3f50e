//! Reasoning tasks over the OWL closure: consistency, instance checking,
//! retrieval, realization, subsumption and satisfiability.

use std::collections::BTreeSet;

use thiserror::Error;

use super::{saturate_owl, Closure, EqualityPartition, InconsistencyReport};
use crate::error::ModelError;
use crate::graph::Graph;
use crate::term::{Term, Triple};
use crate::vocab::{owl, rdf, rdfs};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum InstanceCheckResult {
    Entailed,
    NotEntailed,
    /// Not entailed, and asserting it would make the knowledge base
    /// inconsistent.
    InconsistentIfAsserted,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReasonError {
    #[error("knowledge base is inconsistent ({} violation(s))", .0.len())]
    InconsistentKb(InconsistencyReport),
    #[error(transparent)]
    Model(#[from] ModelError),
}

pub fn is_consistent(graph: &Graph) -> (bool, InconsistencyReport) {
    let closure = saturate_owl(graph);
    (closure.is_consistent(), closure.report().clone())
}

pub fn check_instance(graph: &Graph, individual: &Term, class: &Term) -> Result<InstanceCheckResult, ReasonError> {
    saturate_owl(graph).check_instance(individual, class)
}

pub fn retrieve_instances(graph: &Graph, class: &Term) -> Result<BTreeSet<Term>, ReasonError> {
    saturate_owl(graph).retrieve_instances(class)
}

pub fn realize(graph: &Graph, individual: &Term) -> Result<BTreeSet<Term>, ReasonError> {
    saturate_owl(graph).realize(individual)
}

/// Whether `class_c` is a subclass of `class_d`.
pub fn subsumes(graph: &Graph, class_d: &Term, class_c: &Term) -> bool {
    saturate_owl(graph).subsumes(class_d, class_c)
}

pub fn is_satisfiable(graph: &Graph, class: &Term) -> Result<bool, ReasonError> {
    saturate_owl(graph).is_satisfiable(class)
}

fn type_triple(individual: &Term, class: &Term) -> Triple {
    Triple::new(individual.clone(), Term::iri(rdf::TYPE), class.clone())
}

/// The task methods expect a closure saturated under the OWL profile.
impl Closure {
    fn require_consistent(&self) -> Result<(), ReasonError> {
        if self.is_consistent() {
            Ok(())
        } else {
            Err(ReasonError::InconsistentKb(self.report().clone()))
        }
    }

    pub fn equality(&self) -> EqualityPartition {
        EqualityPartition::from_graph(self.graph())
    }

    pub fn check_instance(&self, individual: &Term, class: &Term) -> Result<InstanceCheckResult, ReasonError> {
        self.require_consistent()?;
        let assertion = type_triple(individual, class);
        assertion.check_positions()?;
        if self.contains(&assertion) {
            return Ok(InstanceCheckResult::Entailed);
        }
        let probe = self.extend([assertion])?;
        Ok(if probe.is_consistent() {
            InstanceCheckResult::NotEntailed
        } else {
            InstanceCheckResult::InconsistentIfAsserted
        })
    }

    /// Instances of `class`, each replaced by its `owl:sameAs` representative.
    pub fn retrieve_instances(&self, class: &Term) -> Result<BTreeSet<Term>, ReasonError> {
        self.require_consistent()?;
        let g = self.graph();
        let (Some(ty), Some(c)) = (g.lookup(&Term::iri(rdf::TYPE)), g.lookup(class)) else {
            return Ok(BTreeSet::new());
        };
        let eq = self.equality();
        Ok(g.subjects(ty, c).map(|x| eq.representative(g.term(x))).collect())
    }

    /// Most specific named classes of `individual`. Equivalent classes are
    /// all returned; `owl:Thing` only when nothing else applies.
    pub fn realize(&self, individual: &Term) -> Result<BTreeSet<Term>, ReasonError> {
        self.require_consistent()?;
        let g = self.graph();
        let (Some(ty), Some(x)) = (g.lookup(&Term::iri(rdf::TYPE)), g.lookup(individual)) else {
            return Ok(BTreeSet::new());
        };
        let thing = Term::iri(owl::THING);
        let types: BTreeSet<Term> = g
            .objects(x, ty)
            .map(|c| g.term(c).clone())
            .filter(Term::is_iri)
            .collect();
        let below = |d: &Term, c: &Term| -> bool {
            // d ⊑ c and not c ⊑ d
            let d_sub_c = *c == thing || self.contains(&sco(d, c));
            let c_sub_d = *d == thing || self.contains(&sco(c, d));
            d_sub_c && !c_sub_d
        };
        Ok(types
            .iter()
            .filter(|c| !types.iter().any(|d| d != *c && below(d, c)))
            .cloned()
            .collect())
    }

    /// Whether `class_c` ⊑ `class_d` in the closure; reflexive on classes
    /// mentioned in the graph.
    pub fn subsumes(&self, class_d: &Term, class_c: &Term) -> bool {
        if class_c == class_d {
            let g = self.graph();
            return g.lookup(class_c).is_some_and(|c| {
                g.matching(Some(c), None, None).next().is_some()
                    || g.matching(None, None, Some(c)).next().is_some()
            });
        }
        self.contains(&sco(class_c, class_d))
    }

    /// Whether a fresh individual can be typed by `class` without
    /// contradiction.
    pub fn is_satisfiable(&self, class: &Term) -> Result<bool, ReasonError> {
        self.require_consistent()?;
        let g = self.graph();
        let probe = (0..)
            .map(|i| Term::blank(if i == 0 { "probe".to_string() } else { format!("probe{i}") }))
            .find(|t| g.lookup(t).is_none())
            .expect("unbounded label supply");
        Ok(self.extend([type_triple(&probe, class)])?.is_consistent())
    }
}

fn sco(c: &Term, d: &Term) -> Triple {
    Triple::new(c.clone(), Term::iri(rdfs::SUB_CLASS_OF), d.clone())
}
