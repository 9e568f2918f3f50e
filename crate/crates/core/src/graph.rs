//! Dictionary-encoded triple store.
//!
//! Every term is interned once into a dense integer id. Triples are kept in
//! three covering indexes (SPO, POS, OSP) so any combination of bound
//! positions is answered by a single range scan over one index.

use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::ops::RangeInclusive;

use crate::error::ModelError;
use crate::pattern::{Binding, PatternTerm, TriplePattern};
use crate::term::{Term, Triple};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TermId(u32);

impl TermId {
    const MIN: TermId = TermId(0);
    const MAX: TermId = TermId(u32::MAX);

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for TermId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// A triple of interned ids, ordered subject-first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IdTriple {
    pub s: TermId,
    pub p: TermId,
    pub o: TermId,
}

impl IdTriple {
    pub fn new(s: TermId, p: TermId, o: TermId) -> Self {
        Self { s, p, o }
    }
}

/// Bijective term ↔ id mapping.
#[derive(Debug, Clone, Default)]
pub struct Dictionary {
    terms: Vec<Term>,
    ids: HashMap<Term, TermId>,
}

impl Dictionary {
    pub fn get(&self, term: &Term) -> Option<TermId> {
        self.ids.get(term).copied()
    }

    pub fn term(&self, id: TermId) -> &Term {
        &self.terms[id.index()]
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    fn get_or_insert(&mut self, term: Term) -> TermId {
        if let Some(&id) = self.ids.get(&term) {
            return id;
        }
        let id = TermId(u32::try_from(self.terms.len()).expect("term dictionary overflow"));
        self.terms.push(term.clone());
        self.ids.insert(term, id);
        id
    }
}

type Key = (TermId, TermId, TermId);

fn range(a: Option<TermId>, b: Option<TermId>) -> RangeInclusive<Key> {
    let lo = (
        a.unwrap_or(TermId::MIN),
        b.unwrap_or(TermId::MIN),
        TermId::MIN,
    );
    let hi = (
        a.unwrap_or(TermId::MAX),
        b.unwrap_or(TermId::MAX),
        TermId::MAX,
    );
    lo..=hi
}

/// A set of RDF triples.
#[derive(Debug, Clone, Default)]
pub struct Graph {
    dict: Dictionary,
    spo: BTreeSet<Key>,
    pos: BTreeSet<Key>,
    osp: BTreeSet<Key>,
    base: Option<String>,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph whose relative IRIs are resolved against `base`.
    pub fn with_base(base: impl Into<String>) -> Self {
        Self {
            base: Some(base.into()),
            ..Self::default()
        }
    }

    pub fn base(&self) -> Option<&str> {
        self.base.as_deref()
    }

    pub fn from_triples<I: IntoIterator<Item = Triple>>(triples: I) -> Result<Self, ModelError> {
        let mut g = Graph::new();
        for t in triples {
            g.insert(&t)?;
        }
        Ok(g)
    }

    pub fn dictionary(&self) -> &Dictionary {
        &self.dict
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    /// Returns the id of `term`, interning it if new.
    pub fn intern(&mut self, term: &Term) -> Result<TermId, ModelError> {
        if let Some(id) = self.dict.get(term) {
            return Ok(id);
        }
        let term = self.resolve(term)?;
        Ok(self.dict.get_or_insert(term))
    }

    fn resolve(&self, term: &Term) -> Result<Term, ModelError> {
        match term.validate() {
            Ok(()) => Ok(term.clone()),
            Err(ModelError::RelativeIri(rel)) => {
                let Some(base) = &self.base else {
                    return Err(ModelError::RelativeIri(rel));
                };
                let resolved = resolve_iri(base, &rel)?;
                let t = Term::iri(resolved);
                t.validate()?;
                Ok(t)
            }
            Err(e) => Err(e),
        }
    }

    pub fn lookup(&self, term: &Term) -> Option<TermId> {
        self.dict.get(term)
    }

    pub fn term(&self, id: TermId) -> &Term {
        self.dict.term(id)
    }

    pub fn decode(&self, t: IdTriple) -> Triple {
        Triple::new(
            self.term(t.s).clone(),
            self.term(t.p).clone(),
            self.term(t.o).clone(),
        )
    }

    /// Encodes `triple` if all its terms are already interned.
    pub fn encode(&self, triple: &Triple) -> Option<IdTriple> {
        Some(IdTriple::new(
            self.lookup(&triple.subject)?,
            self.lookup(&triple.predicate)?,
            self.lookup(&triple.object)?,
        ))
    }

    /// Adds `triple`; returns whether it was new.
    pub fn insert(&mut self, triple: &Triple) -> Result<bool, ModelError> {
        triple.check_positions()?;
        let s = self.intern(&triple.subject)?;
        let p = self.intern(&triple.predicate)?;
        let o = self.intern(&triple.object)?;
        Ok(self.insert_ids(IdTriple::new(s, p, o)))
    }

    /// Adds an already-encoded triple. The caller guarantees the positional
    /// constraints (see [`is_well_positioned`](Self::is_well_positioned)).
    pub fn insert_ids(&mut self, t: IdTriple) -> bool {
        if !self.spo.insert((t.s, t.p, t.o)) {
            return false;
        }
        self.pos.insert((t.p, t.o, t.s));
        self.osp.insert((t.o, t.s, t.p));
        true
    }

    /// Whether an encoded triple satisfies the positional constraints.
    pub fn is_well_positioned(&self, t: IdTriple) -> bool {
        self.term(t.s).is_resource() && self.term(t.p).is_iri()
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.encode(triple).is_some_and(|t| self.contains_ids(t))
    }

    pub fn contains_ids(&self, t: IdTriple) -> bool {
        self.spo.contains(&(t.s, t.p, t.o))
    }

    /// Encoded triples in SPO id order.
    pub fn id_triples(&self) -> impl Iterator<Item = IdTriple> + '_ {
        self.spo.iter().map(|&(s, p, o)| IdTriple::new(s, p, o))
    }

    /// Triples in id (insertion-dependent) order.
    pub fn iter(&self) -> impl Iterator<Item = Triple> + '_ {
        self.id_triples().map(|t| self.decode(t))
    }

    /// Triples in canonical term order.
    pub fn sorted_triples(&self) -> Vec<Triple> {
        let mut v: Vec<Triple> = self.iter().collect();
        v.sort();
        v
    }

    /// All encoded triples matching the bound positions, picking the index
    /// whose key prefix covers them.
    pub fn matching(
        &self,
        s: Option<TermId>,
        p: Option<TermId>,
        o: Option<TermId>,
    ) -> Box<dyn Iterator<Item = IdTriple> + '_> {
        match (s, p, o) {
            (Some(s), Some(p), Some(o)) => {
                let t = IdTriple::new(s, p, o);
                Box::new(self.contains_ids(t).then_some(t).into_iter())
            }
            (Some(_), _, None) | (None, None, None) => Box::new(
                self.spo
                    .range(range(s, p))
                    .map(|&(s, p, o)| IdTriple::new(s, p, o)),
            ),
            (None, Some(_), _) => Box::new(
                self.pos
                    .range(range(p, o))
                    .map(|&(p, o, s)| IdTriple::new(s, p, o)),
            ),
            (_, None, Some(_)) => Box::new(
                self.osp
                    .range(range(o, s))
                    .map(|&(o, s, p)| IdTriple::new(s, p, o)),
            ),
        }
    }

    pub fn count(&self, s: Option<TermId>, p: Option<TermId>, o: Option<TermId>) -> usize {
        self.matching(s, p, o).count()
    }

    /// Objects of `(s, p, ?)`.
    pub fn objects(&self, s: TermId, p: TermId) -> impl Iterator<Item = TermId> + '_ {
        self.matching(Some(s), Some(p), None).map(|t| t.o)
    }

    /// Subjects of `(?, p, o)`.
    pub fn subjects(&self, p: TermId, o: TermId) -> impl Iterator<Item = TermId> + '_ {
        self.matching(None, Some(p), Some(o)).map(|t| t.s)
    }

    /// Triples unifying with `pattern`, with their bindings, in canonical
    /// triple order.
    pub fn match_pattern(&self, pattern: &TriplePattern) -> Vec<(Triple, Binding)> {
        let lookup = |pt: &PatternTerm| -> Result<Option<TermId>, ()> {
            match pt {
                PatternTerm::Var(_) => Ok(None),
                PatternTerm::Bound(t) => self.lookup(t).map(Some).ok_or(()),
            }
        };
        let (Ok(s), Ok(p), Ok(o)) = (
            lookup(&pattern.subject),
            lookup(&pattern.predicate),
            lookup(&pattern.object),
        ) else {
            return Vec::new();
        };
        let empty = Binding::new();
        let mut out: Vec<(Triple, Binding)> = self
            .matching(s, p, o)
            .filter_map(|t| {
                let triple = self.decode(t);
                pattern.unify(&triple, &empty).map(|b| (triple, b))
            })
            .collect();
        out.sort();
        out
    }

    /// Inserts every triple of `other`.
    pub fn extend_from(&mut self, other: &Graph) {
        for t in other.id_triples() {
            let ids = [t.s, t.p, t.o].map(|id| self.dict.get_or_insert(other.term(id).clone()));
            self.insert_ids(IdTriple::new(ids[0], ids[1], ids[2]));
        }
    }

    /// Terms in subject or object position.
    pub fn entities(&self) -> BTreeSet<Term> {
        self.id_triples()
            .flat_map(|t| [t.s, t.o])
            .map(|id| self.term(id).clone())
            .collect()
    }

    /// Terms in predicate position.
    pub fn relations(&self) -> BTreeSet<Term> {
        self.id_triples().map(|t| self.term(t.p).clone()).collect()
    }
}

/// Set equality over decoded triples; dictionaries may differ.
impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.len() == other.len() && self.iter().all(|t| other.contains(&t))
    }
}

impl Eq for Graph {}

fn resolve_iri(base: &str, relative: &str) -> Result<String, ModelError> {
    let err = || ModelError::Unresolvable {
        iri: relative.to_string(),
        base: base.to_string(),
    };
    // `url` normalizes `http://example.edu#` to `http://example.edu/#`, so
    // fragment-only references are appended to the base verbatim.
    if let Some(frag) = relative.strip_prefix('#') {
        let stem = base.split('#').next().unwrap_or(base);
        return Ok(format!("{stem}#{frag}"));
    }
    let base = url::Url::parse(base).map_err(|_| err())?;
    base.join(relative).map(String::from).map_err(|_| err())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(local: &str) -> Term {
        Term::iri(format!("http://example.edu#{local}"))
    }

    fn t(s: &str, p: &str, o: &str) -> Triple {
        Triple::new(iri(s), iri(p), iri(o))
    }

    #[test]
    fn intern_is_idempotent() {
        let mut g = Graph::new();
        let a = g.intern(&iri("Warsaw")).unwrap();
        let b = g.intern(&iri("Warsaw")).unwrap();
        assert_eq!(a, b);
        assert_eq!(g.dictionary().len(), 1);
    }

    #[test]
    fn plain_and_typed_literals_get_distinct_ids() {
        let mut g = Graph::new();
        let plain = g.intern(&Term::literal("5")).unwrap();
        let typed = g
            .intern(&Term::typed("5", crate::vocab::xsd::INTEGER))
            .unwrap();
        assert_ne!(plain, typed);
    }

    #[test]
    fn relative_iri_needs_a_base() {
        let mut g = Graph::new();
        assert_eq!(
            g.intern(&Term::iri("Warsaw")),
            Err(ModelError::RelativeIri("Warsaw".into()))
        );
        let mut g = Graph::with_base("http://example.edu/places/");
        let id = g.intern(&Term::iri("Warsaw")).unwrap();
        assert_eq!(g.term(id), &Term::iri("http://example.edu/places/Warsaw"));
        let mut g = Graph::with_base("http://example.edu#");
        let id = g.intern(&Term::iri("#Warsaw")).unwrap();
        assert_eq!(g.term(id), &iri("Warsaw"));
    }

    #[test]
    fn insert_has_set_semantics() {
        let mut g = Graph::new();
        let triple = t("Warsaw", "is_part_of", "Poland");
        assert!(g.insert(&triple).unwrap());
        assert_eq!(g.len(), 1);
        assert!(!g.insert(&triple).unwrap());
        assert_eq!(g.len(), 1);
        assert!(g.contains(&triple));
    }

    #[test]
    fn literal_subject_rejected() {
        let mut g = Graph::new();
        let bad = Triple::new(Term::literal("5"), iri("p"), iri("o"));
        assert!(matches!(
            g.insert(&bad),
            Err(ModelError::Position { position: "subject", .. })
        ));
        assert!(g.is_empty());
    }

    #[test]
    fn all_index_paths_agree() {
        let mut g = Graph::new();
        for (s, p, o) in [("a", "p", "b"), ("a", "q", "c"), ("b", "p", "c"), ("c", "p", "a")] {
            g.insert(&t(s, p, o)).unwrap();
        }
        let id = |n: &str| g.lookup(&iri(n));
        let (a, p, c) = (id("a"), id("p"), id("c"));
        assert_eq!(g.count(a, None, None), 2);
        assert_eq!(g.count(None, p, None), 3);
        assert_eq!(g.count(None, None, c), 2);
        assert_eq!(g.count(a, p, None), 1);
        assert_eq!(g.count(None, p, c), 1);
        assert_eq!(g.count(a, None, c), 1);
        assert_eq!(g.count(a, p, c), 0);
        assert_eq!(g.count(None, None, None), 4);
    }

    #[test]
    fn pattern_matching_sorted_with_bindings() {
        let mut g = Graph::new();
        g.insert(&t("b", "type", "City")).unwrap();
        g.insert(&t("a", "type", "City")).unwrap();
        g.insert(&t("a", "type", "Town")).unwrap();
        let pat = TriplePattern::new(PatternTerm::var("x"), iri("type"), iri("City"));
        let rows = g.match_pattern(&pat);
        assert_eq!(rows.len(), 2);
        assert_eq!(rows[0].1.get("x"), Some(&iri("a")));
        assert_eq!(rows[1].1.get("x"), Some(&iri("b")));
        let none = TriplePattern::new(PatternTerm::var("x"), iri("type"), iri("Village"));
        assert!(g.match_pattern(&none).is_empty());
    }

    #[test]
    fn graph_equality_ignores_dictionary_layout() {
        let mut a = Graph::new();
        a.insert(&t("x", "p", "y")).unwrap();
        a.insert(&t("y", "p", "z")).unwrap();
        let mut b = Graph::new();
        b.intern(&iri("unused")).unwrap();
        b.insert(&t("y", "p", "z")).unwrap();
        b.insert(&t("x", "p", "y")).unwrap();
        assert_eq!(a, b);
    }
}
