//! Triple patterns and variable bindings.

use std::collections::BTreeMap;
use std::fmt;

use crate::term::{Term, Triple};

/// One position of a [`TriplePattern`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PatternTerm {
    Bound(Term),
    /// Variable name without the leading `?`.
    Var(String),
}

impl PatternTerm {
    pub fn var(name: impl Into<String>) -> Self {
        PatternTerm::Var(name.into())
    }

    pub fn as_var(&self) -> Option<&str> {
        match self {
            PatternTerm::Var(v) => Some(v),
            PatternTerm::Bound(_) => None,
        }
    }

    pub fn as_term(&self) -> Option<&Term> {
        match self {
            PatternTerm::Bound(t) => Some(t),
            PatternTerm::Var(_) => None,
        }
    }
}

impl From<Term> for PatternTerm {
    fn from(t: Term) -> Self {
        PatternTerm::Bound(t)
    }
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Bound(t) => t.fmt(f),
            PatternTerm::Var(v) => write!(f, "?{v}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TriplePattern {
    pub subject: PatternTerm,
    pub predicate: PatternTerm,
    pub object: PatternTerm,
}

impl TriplePattern {
    pub fn new(
        subject: impl Into<PatternTerm>,
        predicate: impl Into<PatternTerm>,
        object: impl Into<PatternTerm>,
    ) -> Self {
        Self {
            subject: subject.into(),
            predicate: predicate.into(),
            object: object.into(),
        }
    }

    pub fn positions(&self) -> [&PatternTerm; 3] {
        [&self.subject, &self.predicate, &self.object]
    }

    /// Variables in subject, predicate, object order, repeats included.
    pub fn variables(&self) -> impl Iterator<Item = &str> {
        self.positions().into_iter().filter_map(PatternTerm::as_var)
    }

    pub fn bound_count(&self) -> usize {
        self.positions().iter().filter(|p| p.as_term().is_some()).count()
    }

    /// Unifies the pattern with `triple`, honouring repeated variables and any
    /// assignments already in `binding`.
    pub fn unify(&self, triple: &Triple, binding: &Binding) -> Option<Binding> {
        let mut out = binding.clone();
        for (pos, term) in self
            .positions()
            .into_iter()
            .zip([&triple.subject, &triple.predicate, &triple.object])
        {
            match pos {
                PatternTerm::Bound(t) => {
                    if t != term {
                        return None;
                    }
                }
                PatternTerm::Var(v) => match out.get(v) {
                    Some(existing) if existing != term => return None,
                    Some(_) => {}
                    None => {
                        out.insert(v.clone(), term.clone());
                    }
                },
            }
        }
        Some(out)
    }

    /// Replaces variables assigned in `binding` by their terms.
    pub fn substitute(&self, binding: &Binding) -> TriplePattern {
        let sub = |p: &PatternTerm| match p {
            PatternTerm::Var(v) => match binding.get(v) {
                Some(t) => PatternTerm::Bound(t.clone()),
                None => p.clone(),
            },
            bound => bound.clone(),
        };
        TriplePattern {
            subject: sub(&self.subject),
            predicate: sub(&self.predicate),
            object: sub(&self.object),
        }
    }
}

impl fmt::Display for TriplePattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.subject, self.predicate, self.object)
    }
}

/// Assignment of variables to terms.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Binding(BTreeMap<String, Term>);

impl Binding {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, var: &str) -> Option<&Term> {
        self.0.get(var)
    }

    pub fn insert(&mut self, var: impl Into<String>, term: Term) -> Option<Term> {
        self.0.insert(var.into(), term)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Term)> {
        self.0.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Restriction to `vars`; variables missing from the binding are skipped.
    pub fn project(&self, vars: &[String]) -> Binding {
        Binding(
            vars.iter()
                .filter_map(|v| self.0.get(v).map(|t| (v.clone(), t.clone())))
                .collect(),
        )
    }

    pub fn map_terms(&self, mut f: impl FnMut(&Term) -> Term) -> Binding {
        Binding(self.0.iter().map(|(k, v)| (k.clone(), f(v))).collect())
    }
}

impl FromIterator<(String, Term)> for Binding {
    fn from_iter<I: IntoIterator<Item = (String, Term)>>(iter: I) -> Self {
        Binding(iter.into_iter().collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn iri(s: &str) -> Term {
        Term::iri(format!("http://e/{s}"))
    }

    #[test]
    fn repeated_variable_must_agree() {
        let pat = TriplePattern::new(PatternTerm::var("x"), iri("p"), PatternTerm::var("x"));
        let loop_ = Triple::new(iri("a"), iri("p"), iri("a"));
        let edge = Triple::new(iri("a"), iri("p"), iri("b"));
        assert!(pat.unify(&loop_, &Binding::new()).is_some());
        assert!(pat.unify(&edge, &Binding::new()).is_none());
    }

    #[test]
    fn substitute_binds_known_vars() {
        let pat = TriplePattern::new(PatternTerm::var("x"), iri("p"), PatternTerm::var("y"));
        let mut b = Binding::new();
        b.insert("x", iri("a"));
        let sub = pat.substitute(&b);
        assert_eq!(sub.subject, PatternTerm::Bound(iri("a")));
        assert_eq!(sub.object, PatternTerm::var("y"));
        assert_eq!(sub.bound_count(), 2);
    }
}
