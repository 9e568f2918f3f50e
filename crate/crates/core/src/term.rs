//! RDF terms and triples.
//!
//! Terms come in three disjoint kinds: IRIs, blank nodes and literals. The
//! derived ordering is the canonical one used for every deterministic output:
//! IRIs sort before blank nodes, which sort before literals, and each kind is
//! ordered lexicographically.

use std::fmt;

use crate::error::ModelError;
use crate::vocab;

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Iri(String),
    Blank(String),
    Literal(Literal),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    lexical: String,
    kind: LiteralKind,
}

/// How a literal is qualified. A language-tagged literal always has the
/// `rdf:langString` datatype, so the two can never be set independently.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LiteralKind {
    Plain,
    Typed(String),
    Lang(String),
}

impl Literal {
    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn kind(&self) -> &LiteralKind {
        &self.kind
    }

    /// Datatype IRI, `None` for plain literals.
    pub fn datatype(&self) -> Option<&str> {
        match &self.kind {
            LiteralKind::Plain => None,
            LiteralKind::Typed(dt) => Some(dt),
            LiteralKind::Lang(_) => Some(vocab::rdf::LANG_STRING),
        }
    }

    pub fn language(&self) -> Option<&str> {
        match &self.kind {
            LiteralKind::Lang(tag) => Some(tag),
            _ => None,
        }
    }
}

impl Term {
    pub fn iri(iri: impl Into<String>) -> Self {
        Term::Iri(iri.into())
    }

    pub fn blank(label: impl Into<String>) -> Self {
        Term::Blank(label.into())
    }

    /// Plain (untyped) literal.
    pub fn literal(lexical: impl Into<String>) -> Self {
        Term::Literal(Literal {
            lexical: lexical.into(),
            kind: LiteralKind::Plain,
        })
    }

    pub fn typed(lexical: impl Into<String>, datatype: impl Into<String>) -> Self {
        Term::Literal(Literal {
            lexical: lexical.into(),
            kind: LiteralKind::Typed(datatype.into()),
        })
    }

    pub fn lang(lexical: impl Into<String>, tag: impl Into<String>) -> Self {
        Term::Literal(Literal {
            lexical: lexical.into(),
            kind: LiteralKind::Lang(tag.into()),
        })
    }

    pub fn is_iri(&self) -> bool {
        matches!(self, Term::Iri(_))
    }

    pub fn is_blank(&self) -> bool {
        matches!(self, Term::Blank(_))
    }

    pub fn is_literal(&self) -> bool {
        matches!(self, Term::Literal(_))
    }

    pub fn as_iri(&self) -> Option<&str> {
        match self {
            Term::Iri(s) => Some(s),
            _ => None,
        }
    }

    /// May appear as a triple subject.
    pub fn is_resource(&self) -> bool {
        !self.is_literal()
    }

    /// Checks the term's own well-formedness. Relative IRIs are reported as
    /// [`ModelError::RelativeIri`] so that callers holding a base can resolve
    /// them instead.
    pub fn validate(&self) -> Result<(), ModelError> {
        match self {
            Term::Iri(iri) => validate_iri(iri),
            Term::Blank(label) => {
                if is_valid_blank_label(label) {
                    Ok(())
                } else {
                    Err(ModelError::InvalidBlankLabel(label.clone()))
                }
            }
            Term::Literal(lit) => match &lit.kind {
                LiteralKind::Plain => Ok(()),
                LiteralKind::Typed(dt) => {
                    if dt == vocab::rdf::LANG_STRING {
                        return Err(ModelError::LangStringWithoutTag(lit.lexical.clone()));
                    }
                    validate_iri(dt)
                }
                LiteralKind::Lang(tag) => {
                    if is_valid_lang_tag(tag) {
                        Ok(())
                    } else {
                        Err(ModelError::InvalidLanguageTag(tag.clone()))
                    }
                }
            },
        }
    }
}

/// Whether `iri` starts with a URI scheme followed by `:`.
pub fn has_scheme(iri: &str) -> bool {
    let Some(colon) = iri.find(':') else {
        return false;
    };
    let scheme = &iri[..colon];
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.'))
}

fn validate_iri(iri: &str) -> Result<(), ModelError> {
    if iri.is_empty()
        || iri
            .chars()
            .any(|c| c.is_whitespace() || c.is_control() || "<>\"{}|^`\\".contains(c))
    {
        return Err(ModelError::InvalidIri(iri.to_string()));
    }
    if !has_scheme(iri) {
        return Err(ModelError::RelativeIri(iri.to_string()));
    }
    Ok(())
}

pub(crate) fn is_blank_label_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.')
}

/// Labels follow the N-Triples grammar so that every stored label survives a
/// serialization round trip: nonempty, no whitespace, no trailing `.`.
pub fn is_valid_blank_label(label: &str) -> bool {
    !label.is_empty()
        && !label.starts_with(['-', '.'])
        && !label.ends_with('.')
        && label.chars().all(is_blank_label_char)
}

pub fn is_valid_lang_tag(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let first = parts.next().unwrap_or("");
    !first.is_empty()
        && first.chars().all(|c| c.is_ascii_alphabetic())
        && parts.all(|p| !p.is_empty() && p.chars().all(|c| c.is_ascii_alphanumeric()))
}

pub(crate) fn escape_literal(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '\\' => out.push_str("\\\\"),
            '"' => out.push_str("\\\""),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\t' => out.push_str("\\t"),
            c if c.is_control() => out.push_str(&format!("\\u{:04X}", c as u32)),
            c => out.push(c),
        }
    }
}

/// N-Triples rendering.
impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Iri(iri) => write!(f, "<{iri}>"),
            Term::Blank(label) => write!(f, "_:{label}"),
            Term::Literal(lit) => {
                let mut s = String::with_capacity(lit.lexical.len() + 2);
                s.push('"');
                escape_literal(&lit.lexical, &mut s);
                s.push('"');
                match &lit.kind {
                    LiteralKind::Plain => {}
                    LiteralKind::Typed(dt) => {
                        s.push_str("^^<");
                        s.push_str(dt);
                        s.push('>');
                    }
                    LiteralKind::Lang(tag) => {
                        s.push('@');
                        s.push_str(tag);
                    }
                }
                f.write_str(&s)
            }
        }
    }
}

/// An RDF statement `(subject, predicate, object)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Term,
    pub predicate: Term,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Term, predicate: Term, object: Term) -> Self {
        Self {
            subject,
            predicate,
            object,
        }
    }

    /// Subject must be an IRI or blank node, predicate an IRI.
    pub fn check_positions(&self) -> Result<(), ModelError> {
        if self.subject.is_literal() {
            return Err(ModelError::Position {
                position: "subject",
                term: self.subject.to_string(),
            });
        }
        if !self.predicate.is_iri() {
            return Err(ModelError::Position {
                position: "predicate",
                term: self.predicate.to_string(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for Triple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} .", self.subject, self.predicate, self.object)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_order_puts_iris_first() {
        let mut terms = vec![
            Term::literal("a"),
            Term::blank("a"),
            Term::iri("http://z"),
            Term::iri("http://a"),
        ];
        terms.sort();
        assert_eq!(
            terms,
            vec![
                Term::iri("http://a"),
                Term::iri("http://z"),
                Term::blank("a"),
                Term::literal("a"),
            ]
        );
    }

    #[test]
    fn lang_literal_datatype_is_fixed() {
        let Term::Literal(lit) = Term::lang("Warszawa", "pl") else {
            unreachable!()
        };
        assert_eq!(lit.datatype(), Some(vocab::rdf::LANG_STRING));
        assert_eq!(lit.language(), Some("pl"));
        let bad = Term::typed("x", vocab::rdf::LANG_STRING);
        assert!(bad.validate().is_err());
    }

    #[test]
    fn iri_validation() {
        assert!(Term::iri("http://example.edu#Warsaw").validate().is_ok());
        assert!(matches!(
            Term::iri("Warsaw").validate(),
            Err(ModelError::RelativeIri(s)) if s == "Warsaw"
        ));
        assert!(Term::iri("http://a b").validate().is_err());
        assert!(Term::iri("").validate().is_err());
    }

    #[test]
    fn blank_labels() {
        assert!(is_valid_blank_label("b0"));
        assert!(is_valid_blank_label("a.b"));
        assert!(!is_valid_blank_label(""));
        assert!(!is_valid_blank_label("a b"));
        assert!(!is_valid_blank_label("ab."));
    }

    #[test]
    fn literal_display_escapes() {
        assert_eq!(Term::literal("a\"b\n").to_string(), r#""a\"b\n""#);
        assert_eq!(
            Term::typed("5", vocab::xsd::INTEGER).to_string(),
            "\"5\"^^<http://www.w3.org/2001/XMLSchema#integer>"
        );
        assert_eq!(Term::lang("kot", "pl").to_string(), "\"kot\"@pl");
    }

    #[test]
    fn positional_constraints() {
        let p = Term::iri("http://example.edu#p");
        let ok = Triple::new(Term::blank("x"), p.clone(), Term::literal("5"));
        assert!(ok.check_positions().is_ok());
        let lit_subject = Triple::new(Term::literal("5"), p.clone(), Term::iri("http://e/o"));
        assert!(lit_subject.check_positions().is_err());
        let blank_pred = Triple::new(Term::iri("http://e/s"), Term::blank("p"), Term::iri("http://e/o"));
        assert!(blank_pred.check_positions().is_err());
    }
}
