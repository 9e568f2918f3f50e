use std::collections::{BTreeMap, BTreeSet};

use crate::graph::Graph;
use crate::term::{Term, Triple};
use crate::vocab::owl;

/// Equivalence classes of terms under `owl:sameAs`, each represented by its
/// canonically smallest member.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct EqualityPartition {
    /// Only terms in non-singleton classes are stored.
    rep: BTreeMap<Term, Term>,
}

impl EqualityPartition {
    /// Partition induced by the `owl:sameAs` triples of `graph`, read as an
    /// undirected relation.
    pub fn from_graph(graph: &Graph) -> Self {
        let Some(same) = graph.lookup(&Term::iri(owl::SAME_AS)) else {
            return Self::default();
        };
        Self::from_pairs(
            graph
                .matching(None, Some(same), None)
                .map(|t| (graph.term(t.s).clone(), graph.term(t.o).clone())),
        )
    }

    pub fn from_pairs<I: IntoIterator<Item = (Term, Term)>>(pairs: I) -> Self {
        let mut index: BTreeMap<Term, usize> = BTreeMap::new();
        let mut parent: Vec<usize> = Vec::new();
        fn find(parent: &mut [usize], mut i: usize) -> usize {
            while parent[i] != i {
                parent[i] = parent[parent[i]];
                i = parent[i];
            }
            i
        }
        let mut slot = |t: Term, parent: &mut Vec<usize>| -> usize {
            *index.entry(t).or_insert_with(|| {
                parent.push(parent.len());
                parent.len() - 1
            })
        };
        let mut edges = Vec::new();
        for (a, b) in pairs {
            let (i, j) = (slot(a, &mut parent), slot(b, &mut parent));
            edges.push((i, j));
        }
        for (i, j) in edges {
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
        let mut groups: BTreeMap<usize, BTreeSet<Term>> = BTreeMap::new();
        for (term, &i) in &index {
            let root = find(&mut parent, i);
            groups.entry(root).or_default().insert(term.clone());
        }
        let mut rep = BTreeMap::new();
        for members in groups.into_values().filter(|m| m.len() > 1) {
            let smallest = members.first().cloned().expect("non-empty class");
            for m in members {
                rep.insert(m, smallest.clone());
            }
        }
        Self { rep }
    }

    pub fn representative(&self, term: &Term) -> Term {
        self.rep.get(term).unwrap_or(term).clone()
    }

    pub fn same(&self, a: &Term, b: &Term) -> bool {
        a == b || self.representative(a) == self.representative(b)
    }

    pub fn canonical_triple(&self, t: &Triple) -> Triple {
        Triple::new(
            self.representative(&t.subject),
            self.representative(&t.predicate),
            self.representative(&t.object),
        )
    }

    /// Non-singleton classes, each sorted, in order of their representatives.
    pub fn classes(&self) -> Vec<Vec<Term>> {
        let mut groups: BTreeMap<&Term, Vec<Term>> = BTreeMap::new();
        for (m, r) in &self.rep {
            groups.entry(r).or_default().push(m.clone());
        }
        groups.into_values().collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Term {
        Term::iri(format!("http://e/{s}"))
    }

    #[test]
    fn transitive_and_smallest_representative() {
        let p = EqualityPartition::from_pairs([(t("c"), t("b")), (t("b"), t("a")), (t("x"), t("y"))]);
        assert_eq!(p.representative(&t("c")), t("a"));
        assert!(p.same(&t("a"), &t("c")));
        assert!(!p.same(&t("a"), &t("x")));
        assert_eq!(p.representative(&t("zzz")), t("zzz"));
        assert_eq!(p.classes().len(), 2);
    }

    #[test]
    fn iris_precede_blanks() {
        let p = EqualityPartition::from_pairs([(Term::blank("a"), t("z"))]);
        assert_eq!(p.representative(&Term::blank("a")), t("z"));
    }
}
