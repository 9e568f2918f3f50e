//! Namespace prefixes and qname expansion.

use std::collections::BTreeMap;

use crate::error::ModelError;
use crate::vocab;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PrefixMap {
    prefixes: BTreeMap<String, String>,
    base: Option<String>,
}

impl PrefixMap {
    pub fn new() -> Self {
        Self::default()
    }

    /// `rdf`, `rdfs`, `owl` and `xsd` pre-registered.
    pub fn with_standard() -> Self {
        let mut map = Self::new();
        map.insert("rdf", vocab::RDF);
        map.insert("rdfs", vocab::RDFS);
        map.insert("owl", vocab::OWL);
        map.insert("xsd", vocab::XSD);
        map
    }

    /// Registers `prefix`, returning the namespace it previously mapped to.
    pub fn insert(&mut self, prefix: impl Into<String>, namespace: impl Into<String>) -> Option<String> {
        self.prefixes.insert(prefix.into(), namespace.into())
    }

    pub fn get(&self, prefix: &str) -> Option<&str> {
        self.prefixes.get(prefix).map(String::as_str)
    }

    pub fn base(&self) -> Option<&str> {
        self.base.as_deref()
    }

    pub fn set_base(&mut self, base: impl Into<String>) {
        self.base = Some(base.into());
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.prefixes.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn len(&self) -> usize {
        self.prefixes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefixes.is_empty()
    }

    /// `edu:Warsaw` → `http://example.edu#Warsaw`.
    pub fn expand_qname(&self, qname: &str) -> Result<String, ModelError> {
        let mut parts = qname.splitn(3, ':');
        let (Some(prefix), Some(local), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(ModelError::MalformedQname(qname.to_string()));
        };
        let ns = self
            .get(prefix)
            .ok_or_else(|| ModelError::UnknownPrefix(prefix.to_string()))?;
        Ok(format!("{ns}{local}"))
    }

    /// Shortest qname for `iri` under the longest matching namespace. The
    /// local part must not contain `:` so that [`expand_qname`](Self::expand_qname)
    /// inverts it.
    pub fn compress(&self, iri: &str) -> Option<String> {
        self.prefixes
            .iter()
            .filter(|(_, ns)| iri.starts_with(ns.as_str()))
            .filter(|(_, ns)| !iri[ns.len()..].contains(':'))
            .max_by(|(pa, a), (pb, b)| a.len().cmp(&b.len()).then(pb.cmp(pa)))
            .map(|(prefix, ns)| format!("{prefix}:{}", &iri[ns.len()..]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn edu() -> PrefixMap {
        let mut map = PrefixMap::new();
        map.insert("edu", "http://example.edu#");
        map
    }

    #[test]
    fn expands_registered_prefix() {
        assert_eq!(edu().expand_qname("edu:Warsaw").unwrap(), "http://example.edu#Warsaw");
        assert_eq!(edu().expand_qname("edu:").unwrap(), "http://example.edu#");
    }

    #[test]
    fn unknown_prefix_is_an_error() {
        assert_eq!(
            edu().expand_qname("geo:Warsaw"),
            Err(ModelError::UnknownPrefix("geo".into()))
        );
        assert!(matches!(edu().expand_qname("Warsaw"), Err(ModelError::MalformedQname(_))));
        assert!(matches!(edu().expand_qname("a:b:c"), Err(ModelError::MalformedQname(_))));
    }

    #[test]
    fn compress_prefers_longest_namespace() {
        let mut map = edu();
        map.insert("geo", "http://example.edu#geo/");
        assert_eq!(map.compress("http://example.edu#geo/Warsaw").unwrap(), "geo:Warsaw");
        assert_eq!(map.compress("http://example.edu#Warsaw").unwrap(), "edu:Warsaw");
        assert_eq!(map.compress("http://other.org/x"), None);
    }
}
