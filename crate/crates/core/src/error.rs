use thiserror::Error;

/// Violations of the term, triple and namespace well-formedness rules.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("relative IRI `{0}` and no base IRI to resolve it against")]
    RelativeIri(String),
    #[error("cannot resolve `{iri}` against base `{base}`")]
    Unresolvable { iri: String, base: String },
    #[error("malformed IRI `{0}`")]
    InvalidIri(String),
    #[error("malformed blank node label `{0}`")]
    InvalidBlankLabel(String),
    #[error("malformed language tag `{0}`")]
    InvalidLanguageTag(String),
    #[error("literal `{0}` typed rdf:langString without a language tag")]
    LangStringWithoutTag(String),
    #[error("{term} is not allowed in {position} position")]
    Position { position: &'static str, term: String },
    #[error("unknown prefix `{0}`")]
    UnknownPrefix(String),
    #[error("malformed qname `{0}`: expected exactly one `:`")]
    MalformedQname(String),
}
