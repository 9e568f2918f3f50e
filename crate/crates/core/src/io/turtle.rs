//! Turtle subset.
//!
//! Supported: `@prefix`/`@base` (and their SPARQL-style spellings), qnames,
//! `a`, `;` and `,` lists, `[ ... ]` anonymous blank nodes, `( ... )`
//! collections, plain/typed/language literals, numbers and booleans.
//! The prefixes `rdf`, `rdfs`, `owl` and `xsd` are pre-registered and may be
//! redeclared.

use std::collections::BTreeSet;

use super::lexer::{tokenize, Tok, Token};
use super::ParseError;
use crate::error::ModelError;
use crate::graph::Graph;
use crate::prefix::PrefixMap;
use crate::term::{has_scheme, Term, Triple};
use crate::vocab::{rdf, xsd};

#[derive(Debug, Clone)]
pub struct ParseReport {
    pub graph: Graph,
    pub prefixes: PrefixMap,
    /// Non-fatal findings as `(line, message)`.
    pub warnings: Vec<(usize, String)>,
}

pub fn parse_turtle(text: &str) -> Result<ParseReport, ParseError> {
    let tokens = tokenize(text, 1)?;
    let used_labels = tokens
        .iter()
        .filter_map(|t| match &t.tok {
            Tok::Blank(b) => Some(b.clone()),
            _ => None,
        })
        .collect();
    let end = tokens
        .last()
        .map_or((1, 1), |t| (t.line, t.col + 1));
    let mut parser = Parser {
        tokens,
        pos: 0,
        end,
        prefixes: PrefixMap::with_standard(),
        graph: Graph::new(),
        warnings: Vec::new(),
        used_labels,
        next_blank: 0,
    };
    while !parser.at_end() {
        parser.statement()?;
    }
    Ok(ParseReport {
        graph: parser.graph,
        prefixes: parser.prefixes,
        warnings: parser.warnings,
    })
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    end: (usize, usize),
    prefixes: PrefixMap,
    graph: Graph,
    warnings: Vec<(usize, String)>,
    used_labels: BTreeSet<String>,
    next_blank: usize,
}

impl Parser {
    fn at_end(&self) -> bool {
        self.pos >= self.tokens.len()
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.tokens
            .get(self.pos)
            .map_or(self.end, |t| (t.line, t.col))
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn error(&self, expected: &str) -> ParseError {
        let (line, col) = self.here();
        let found = self
            .peek()
            .map_or_else(|| "end of input".to_string(), Tok::describe);
        ParseError::syntax(line, col, format!("expected {expected}, found {found}"))
    }

    fn model_error(&self, at: (usize, usize), source: ModelError) -> ParseError {
        ParseError::Model {
            line: at.0,
            column: at.1,
            source,
        }
    }

    fn expect_punct(&mut self, c: char) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Punct(c)) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("`{c}`")))
        }
    }

    fn fresh_blank(&mut self) -> Term {
        loop {
            let label = format!("b{}", self.next_blank);
            self.next_blank += 1;
            if !self.used_labels.contains(&label) {
                return Term::blank(label);
            }
        }
    }

    fn emit(&mut self, s: Term, p: Term, o: Term, at: (usize, usize)) -> Result<(), ParseError> {
        let triple = Triple::new(s, p, o);
        let fresh = self
            .graph
            .insert(&triple)
            .map_err(|e| self.model_error(at, e))?;
        if !fresh {
            self.warnings.push((at.0, format!("duplicate triple {triple}")));
        }
        Ok(())
    }

    fn statement(&mut self) -> Result<(), ParseError> {
        match self.peek() {
            Some(Tok::Directive(d)) if d == "prefix" => {
                self.pos += 1;
                self.prefix_decl()?;
                self.expect_punct('.')
            }
            Some(Tok::Directive(d)) if d == "base" => {
                self.pos += 1;
                self.base_decl()?;
                self.expect_punct('.')
            }
            Some(Tok::Directive(d)) => {
                let d = d.clone();
                let (line, col) = self.here();
                Err(ParseError::syntax(line, col, format!("unknown directive @{d}")))
            }
            Some(Tok::Word(w)) if w.eq_ignore_ascii_case("prefix") => {
                self.pos += 1;
                self.prefix_decl()
            }
            Some(Tok::Word(w)) if w.eq_ignore_ascii_case("base") => {
                self.pos += 1;
                self.base_decl()
            }
            _ => {
                self.triples()?;
                self.expect_punct('.')
            }
        }
    }

    fn prefix_decl(&mut self) -> Result<(), ParseError> {
        let at = self.here();
        let prefix = match self.next().map(|t| t.tok) {
            Some(Tok::PName { prefix, local }) if local.is_empty() => prefix,
            _ => {
                self.pos -= 1;
                return Err(self.error("prefix name ending in `:`"));
            }
        };
        let ns_at = self.here();
        let Some(Tok::Iri(ns)) = self.next().map(|t| t.tok) else {
            self.pos -= 1;
            return Err(self.error("namespace IRI"));
        };
        let ns = self.resolve(ns, ns_at)?;
        if let Some(old) = self.prefixes.insert(prefix.clone(), ns.clone()) {
            if old != ns {
                self.warnings
                    .push((at.0, format!("prefix `{prefix}:` redefined from <{old}> to <{ns}>")));
            }
        }
        Ok(())
    }

    fn base_decl(&mut self) -> Result<(), ParseError> {
        let at = self.here();
        let Some(Tok::Iri(base)) = self.next().map(|t| t.tok) else {
            self.pos -= 1;
            return Err(self.error("base IRI"));
        };
        let base = self.resolve(base, at)?;
        self.prefixes.set_base(base);
        Ok(())
    }

    fn resolve(&self, iri: String, at: (usize, usize)) -> Result<String, ParseError> {
        if has_scheme(&iri) {
            return Ok(iri);
        }
        let Some(base) = self.prefixes.base() else {
            return Err(self.model_error(at, ModelError::RelativeIri(iri)));
        };
        let mut scratch = Graph::with_base(base);
        let id = scratch
            .intern(&Term::iri(iri))
            .map_err(|e| self.model_error(at, e))?;
        Ok(scratch.term(id).as_iri().unwrap_or_default().to_string())
    }

    fn iri_of(&self, tok: &Tok, at: (usize, usize)) -> Result<Option<Term>, ParseError> {
        Ok(match tok {
            Tok::Iri(i) => Some(Term::iri(self.resolve(i.clone(), at)?)),
            Tok::PName { prefix, local } => {
                let ns = self
                    .prefixes
                    .get(prefix)
                    .ok_or_else(|| self.model_error(at, ModelError::UnknownPrefix(prefix.clone())))?;
                Some(Term::iri(format!("{ns}{local}")))
            }
            _ => None,
        })
    }

    fn triples(&mut self) -> Result<(), ParseError> {
        if self.peek() == Some(&Tok::Punct('[')) {
            let subject = self.blank_property_list()?;
            if self.peek() != Some(&Tok::Punct('.')) {
                self.predicate_object_list(&subject)?;
            }
            return Ok(());
        }
        let subject = self.subject()?;
        self.predicate_object_list(&subject)
    }

    fn subject(&mut self) -> Result<Term, ParseError> {
        let at = self.here();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Blank(b)) => {
                self.pos += 1;
                Ok(Term::blank(b))
            }
            Some(Tok::Punct('(')) => self.collection(),
            Some(ref t) => match self.iri_of(t, at)? {
                Some(iri) => {
                    self.pos += 1;
                    Ok(iri)
                }
                None => Err(self.error("subject")),
            },
            None => Err(self.error("subject")),
        }
    }

    fn verb(&mut self) -> Result<Term, ParseError> {
        let at = self.here();
        let tok = self.peek().cloned();
        match tok {
            Some(Tok::Word(w)) if w == "a" => {
                self.pos += 1;
                Ok(Term::iri(rdf::TYPE))
            }
            Some(ref t) => match self.iri_of(t, at)? {
                Some(iri) => {
                    self.pos += 1;
                    Ok(iri)
                }
                None => Err(self.error("predicate")),
            },
            None => Err(self.error("predicate")),
        }
    }

    fn predicate_object_list(&mut self, subject: &Term) -> Result<(), ParseError> {
        loop {
            let verb = self.verb()?;
            self.object_list(subject, &verb)?;
            let mut saw_semicolon = false;
            while self.peek() == Some(&Tok::Punct(';')) {
                self.pos += 1;
                saw_semicolon = true;
            }
            if !saw_semicolon || matches!(self.peek(), Some(Tok::Punct('.' | ']')) | None) {
                return Ok(());
            }
        }
    }

    fn object_list(&mut self, subject: &Term, verb: &Term) -> Result<(), ParseError> {
        loop {
            let at = self.here();
            let object = self.object()?;
            self.emit(subject.clone(), verb.clone(), object, at)?;
            if self.peek() == Some(&Tok::Punct(',')) {
                self.pos += 1;
            } else {
                return Ok(());
            }
        }
    }

    fn object(&mut self) -> Result<Term, ParseError> {
        let at = self.here();
        let Some(tok) = self.peek().cloned() else {
            return Err(self.error("object"));
        };
        match tok {
            Tok::Blank(b) => {
                self.pos += 1;
                Ok(Term::blank(b))
            }
            Tok::Punct('[') => self.blank_property_list(),
            Tok::Punct('(') => self.collection(),
            Tok::Str(s) => {
                self.pos += 1;
                match self.peek().cloned() {
                    Some(Tok::LangTag(tag)) => {
                        self.pos += 1;
                        Ok(Term::lang(s, tag))
                    }
                    Some(Tok::DoubleCaret) => {
                        self.pos += 1;
                        let dt_at = self.here();
                        let dt_tok = self.peek().cloned();
                        match dt_tok.as_ref().map(|t| self.iri_of(t, dt_at)).transpose()? {
                            Some(Some(Term::Iri(dt))) => {
                                self.pos += 1;
                                Ok(Term::typed(s, dt))
                            }
                            _ => Err(self.error("datatype IRI")),
                        }
                    }
                    _ => Ok(Term::literal(s)),
                }
            }
            Tok::Integer(n) => {
                self.pos += 1;
                Ok(Term::typed(n, xsd::INTEGER))
            }
            Tok::Decimal(n) => {
                self.pos += 1;
                Ok(Term::typed(n, xsd::DECIMAL))
            }
            Tok::Double(n) => {
                self.pos += 1;
                Ok(Term::typed(n, xsd::DOUBLE))
            }
            Tok::Word(w) if w == "true" || w == "false" => {
                self.pos += 1;
                Ok(Term::typed(w, xsd::BOOLEAN))
            }
            ref t => match self.iri_of(t, at)? {
                Some(iri) => {
                    self.pos += 1;
                    Ok(iri)
                }
                None => Err(self.error("object")),
            },
        }
    }

    /// `[ predicateObjectList? ]`
    fn blank_property_list(&mut self) -> Result<Term, ParseError> {
        self.expect_punct('[')?;
        let node = self.fresh_blank();
        if self.peek() != Some(&Tok::Punct(']')) {
            self.predicate_object_list(&node)?;
        }
        self.expect_punct(']')?;
        Ok(node)
    }

    /// `( a b ... )` as an `rdf:first`/`rdf:rest` chain ending in `rdf:nil`.
    fn collection(&mut self) -> Result<Term, ParseError> {
        self.expect_punct('(')?;
        let mut items = Vec::new();
        while self.peek() != Some(&Tok::Punct(')')) {
            if self.at_end() {
                return Err(self.error("`)`"));
            }
            let at = self.here();
            items.push((self.object()?, at));
        }
        self.expect_punct(')')?;
        if items.is_empty() {
            return Ok(Term::iri(rdf::NIL));
        }
        let nodes: Vec<Term> = items.iter().map(|_| self.fresh_blank()).collect();
        for (i, (item, at)) in items.into_iter().enumerate() {
            self.emit(nodes[i].clone(), Term::iri(rdf::FIRST), item, at)?;
            let rest = nodes.get(i + 1).cloned().unwrap_or(Term::iri(rdf::NIL));
            self.emit(nodes[i].clone(), Term::iri(rdf::REST), rest, at)?;
        }
        Ok(nodes[0].clone())
    }
}
