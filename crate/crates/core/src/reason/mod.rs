//! Forward-chaining saturation.
//!
//! Rules are evaluated semi-naively with a worklist: every newly inserted
//! triple is joined, in each premise position it can occupy, against the
//! graph as it stands. Conclusions that would break the positional
//! constraints (a literal subject, a non-IRI predicate) are dropped.

mod equality;
mod owl;
mod rdfs;
mod tasks;

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use crate::error::ModelError;
use crate::graph::{Graph, IdTriple, TermId};
use crate::term::{Term, Triple};
use crate::vocab::{owl as o, rdf, rdfs as s};

pub use equality::EqualityPartition;
pub use tasks::{
    check_instance, is_consistent, is_satisfiable, realize, retrieve_instances, subsumes,
    InstanceCheckResult, ReasonError,
};

/// Which rule set a closure was saturated under.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Profile {
    Rdfs,
    Owl,
}

impl Profile {
    pub fn name(self) -> &'static str {
        match self {
            Profile::Rdfs => "rdfs",
            Profile::Owl => "owl",
        }
    }
}

/// How a derived triple was first obtained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation {
    pub rule: &'static str,
    pub premises: Vec<Triple>,
}

/// One detected contradiction: the rule that flagged it and the triples
/// that conflict.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub rule: &'static str,
    pub triples: Vec<Triple>,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.rule)?;
        for t in &self.triples {
            write!(f, " {t}")?;
        }
        Ok(())
    }
}

/// Violations found in a saturated graph, sorted and deduplicated. Empty
/// exactly when the graph is consistent under the implemented rules.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct InconsistencyReport {
    violations: Vec<Violation>,
}

impl InconsistencyReport {
    pub fn new(mut violations: Vec<Violation>) -> Self {
        for v in &mut violations {
            v.triples.sort();
            v.triples.dedup();
        }
        violations.sort();
        violations.dedup();
        Self { violations }
    }

    pub fn is_empty(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn len(&self) -> usize {
        self.violations.len()
    }

    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    pub fn iter(&self) -> impl Iterator<Item = &Violation> {
        self.violations.iter()
    }
}

/// A saturated graph: the input, everything derived from it, how each
/// derived triple was obtained, and any violations.
#[derive(Debug, Clone)]
pub struct Closure {
    profile: Profile,
    base: Graph,
    graph: Graph,
    derived: BTreeSet<IdTriple>,
    provenance: BTreeMap<IdTriple, (&'static str, Vec<IdTriple>)>,
    report: InconsistencyReport,
}

impl Closure {
    fn saturate(graph: &Graph, profile: Profile) -> Self {
        let mut closure = Closure {
            profile,
            base: graph.clone(),
            graph: graph.clone(),
            derived: BTreeSet::new(),
            provenance: BTreeMap::new(),
            report: InconsistencyReport::default(),
        };
        let seeds: Vec<IdTriple> = graph.id_triples().collect();
        closure.run(seeds);
        closure
    }

    fn run(&mut self, seeds: Vec<IdTriple>) {
        let v = Vocab::intern(&mut self.graph);
        let mut queue: VecDeque<IdTriple> = seeds.into();
        let mut out = Vec::new();
        while let Some(t) = queue.pop_front() {
            rdfs::fire(&v, &self.graph, t, &mut out);
            if self.profile == Profile::Owl {
                owl::fire(&v, &self.graph, t, &mut out);
            }
            for (c, rule, premises) in out.drain(..) {
                if self.graph.is_well_positioned(c) && self.graph.insert_ids(c) {
                    self.derived.insert(c);
                    self.provenance.insert(c, (rule, premises));
                    queue.push_back(c);
                }
            }
        }
        self.report = match self.profile {
            Profile::Rdfs => InconsistencyReport::default(),
            Profile::Owl => owl::violations(&v, &self.graph),
        };
    }

    /// A new closure over `base ∪ triples`, saturated incrementally from
    /// this one. `self` is left untouched.
    pub fn extend<I: IntoIterator<Item = Triple>>(&self, triples: I) -> Result<Closure, ModelError> {
        let mut next = self.clone();
        let mut seeds = Vec::new();
        for t in triples {
            next.base.insert(&t)?;
            next.graph.insert(&t)?;
            let id = next.graph.encode(&t).expect("just inserted");
            if next.derived.remove(&id) {
                next.provenance.remove(&id);
            } else {
                seeds.push(id);
            }
        }
        next.run(seeds);
        Ok(next)
    }

    pub fn profile(&self) -> Profile {
        self.profile
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    /// Base plus derived triples.
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn report(&self) -> &InconsistencyReport {
        &self.report
    }

    pub fn is_consistent(&self) -> bool {
        self.report.is_empty()
    }

    pub fn len(&self) -> usize {
        self.graph.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graph.is_empty()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.graph.contains(triple)
    }

    pub fn is_derived(&self, triple: &Triple) -> bool {
        self.graph
            .encode(triple)
            .is_some_and(|t| self.derived.contains(&t))
    }

    pub fn derived_len(&self) -> usize {
        self.derived.len()
    }

    /// Derived triples in canonical order.
    pub fn derived_triples(&self) -> Vec<Triple> {
        let mut v: Vec<Triple> = self.derived.iter().map(|&t| self.graph.decode(t)).collect();
        v.sort();
        v
    }

    pub fn derived_graph(&self) -> Graph {
        let mut g = Graph::new();
        for &t in &self.derived {
            g.insert(&self.graph.decode(t)).expect("closure triples are well formed");
        }
        g
    }

    pub fn provenance(&self, triple: &Triple) -> Option<Derivation> {
        let id = self.graph.encode(triple)?;
        self.provenance.get(&id).map(|(rule, premises)| Derivation {
            rule,
            premises: premises.iter().map(|&p| self.graph.decode(p)).collect(),
        })
    }
}

/// Saturates under the RDFS rules: subclass and subproperty transitivity,
/// type and triple propagation along them, domain and range typing.
pub fn saturate_rdfs(graph: &Graph) -> Closure {
    Closure::saturate(graph, Profile::Rdfs)
}

/// Saturates under the RDFS rules plus equality, property characteristics
/// and class operators, then collects violations.
pub fn saturate_owl(graph: &Graph) -> Closure {
    Closure::saturate(graph, Profile::Owl)
}

pub fn saturate(graph: &Graph, profile: Profile) -> Closure {
    Closure::saturate(graph, profile)
}

/// Whether `triple` is in the RDFS closure of `graph`.
pub fn entails(graph: &Graph, triple: &Triple) -> bool {
    graph.contains(triple) || saturate_rdfs(graph).contains(triple)
}

type Conclusion = (IdTriple, &'static str, Vec<IdTriple>);

/// Ids of the vocabulary the rules match on.
pub(crate) struct Vocab {
    pub type_: TermId,
    pub sub_class_of: TermId,
    pub sub_property_of: TermId,
    pub domain: TermId,
    pub range: TermId,
    pub first: TermId,
    pub rest: TermId,
    pub nil: TermId,
    pub same_as: TermId,
    pub different_from: TermId,
    pub all_different: TermId,
    pub members: TermId,
    pub distinct_members: TermId,
    pub functional: TermId,
    pub transitive: TermId,
    pub inverse_of: TermId,
    pub equivalent_class: TermId,
    pub disjoint_with: TermId,
    pub complement_of: TermId,
    pub intersection_of: TermId,
    pub union_of: TermId,
    pub on_property: TermId,
    pub some_values_from: TermId,
    pub all_values_from: TermId,
    pub nothing: TermId,
}

impl Vocab {
    pub(crate) fn intern(g: &mut Graph) -> Self {
        let mut id = |iri: &str| g.intern(&Term::iri(iri)).expect("vocabulary IRIs are absolute");
        Vocab {
            type_: id(rdf::TYPE),
            sub_class_of: id(s::SUB_CLASS_OF),
            sub_property_of: id(s::SUB_PROPERTY_OF),
            domain: id(s::DOMAIN),
            range: id(s::RANGE),
            first: id(rdf::FIRST),
            rest: id(rdf::REST),
            nil: id(rdf::NIL),
            same_as: id(o::SAME_AS),
            different_from: id(o::DIFFERENT_FROM),
            all_different: id(o::ALL_DIFFERENT),
            members: id(o::MEMBERS),
            distinct_members: id(o::DISTINCT_MEMBERS),
            functional: id(o::FUNCTIONAL_PROPERTY),
            transitive: id(o::TRANSITIVE_PROPERTY),
            inverse_of: id(o::INVERSE_OF),
            equivalent_class: id(o::EQUIVALENT_CLASS),
            disjoint_with: id(o::DISJOINT_WITH),
            complement_of: id(o::COMPLEMENT_OF),
            intersection_of: id(o::INTERSECTION_OF),
            union_of: id(o::UNION_OF),
            on_property: id(o::ON_PROPERTY),
            some_values_from: id(o::SOME_VALUES_FROM),
            all_values_from: id(o::ALL_VALUES_FROM),
            nothing: id(o::NOTHING),
        }
    }
}

fn tr(s: TermId, p: TermId, o: TermId) -> IdTriple {
    IdTriple::new(s, p, o)
}
