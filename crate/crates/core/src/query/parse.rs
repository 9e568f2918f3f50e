//! Query text:
//!
//! ```text
//! PREFIX : <http://example.edu#>
//! ASSUME closed
//! REGIME rdfs
//! SELECT ?p
//! ?p a :Product .
//! NOT { ?p :contains_allergen :gluten . }
//! ```
//!
//! Competency files hold several queries, each introduced by a
//! `QUESTION <name> <free text>` line. Lines before the first question
//! (typically prefixes) apply to all of them.

use super::{Assumption, Query, QueryError};
use crate::io::lexer::{tokenize, Tok, Token};
use crate::io::ParseError;
use crate::pattern::{PatternTerm, TriplePattern};
use crate::prefix::PrefixMap;
use crate::term::Term;
use crate::vocab::{rdf, xsd};

/// A named saved query.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompetencyQuestion {
    pub name: String,
    pub text: String,
    pub line: usize,
    pub query: Query,
}

pub fn parse_query(text: &str) -> Result<Query, QueryError> {
    parse_query_with(text, &PrefixMap::with_standard())
}

/// Parses with `prefixes` pre-registered (declarations in the text win).
pub fn parse_query_with(text: &str, prefixes: &PrefixMap) -> Result<Query, QueryError> {
    let tokens = tokenize(text, 1).map_err(lex_error)?;
    Parser::new(tokens, prefixes.clone()).query()
}

pub fn parse_competency(text: &str, prefixes: &PrefixMap) -> Result<Vec<CompetencyQuestion>, QueryError> {
    let mut preamble = String::new();
    let mut blocks: Vec<(String, String, usize, String)> = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let trimmed = line.trim_start();
        if let Some(rest) = trimmed.strip_prefix("QUESTION") {
            if rest.is_empty() || rest.starts_with(char::is_whitespace) {
                let rest = rest.trim();
                let (name, text) = rest.split_once(char::is_whitespace).unwrap_or((rest, ""));
                if name.is_empty() {
                    return Err(QueryError::Parse {
                        line: idx + 1,
                        message: "QUESTION needs a name".into(),
                    });
                }
                blocks.push((name.to_string(), text.trim().to_string(), idx + 1, String::new()));
                continue;
            }
        }
        let target = blocks.last_mut().map_or(&mut preamble, |b| &mut b.3);
        target.push_str(line);
        target.push('\n');
    }
    let header = tokenize(&preamble, 1).map_err(lex_error)?;
    blocks
        .into_iter()
        .map(|(name, text, line, body)| {
            let mut tokens = header.clone();
            tokens.extend(tokenize(&body, line + 1).map_err(lex_error)?);
            let query = Parser::new(tokens, prefixes.clone()).query()?;
            Ok(CompetencyQuestion { name, text, line, query })
        })
        .collect()
}

fn lex_error(e: ParseError) -> QueryError {
    QueryError::Parse {
        line: e.line(),
        message: e.to_string(),
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    prefixes: PrefixMap,
}

impl Parser {
    fn new(tokens: Vec<Token>, prefixes: PrefixMap) -> Self {
        Parser { tokens, pos: 0, prefixes }
    }

    fn peek(&self) -> Option<&Tok> {
        self.tokens.get(self.pos).map(|t| &t.tok)
    }

    fn line(&self) -> usize {
        self.tokens
            .get(self.pos)
            .or(self.tokens.last())
            .map_or(1, |t| t.line)
    }

    fn err(&self, message: impl Into<String>) -> QueryError {
        QueryError::Parse {
            line: self.line(),
            message: message.into(),
        }
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.tokens.get(self.pos).map(|t| t.tok.clone());
        self.pos += 1;
        t
    }

    fn keyword(&self) -> Option<String> {
        match self.peek() {
            Some(Tok::Word(w)) if w != "a" => Some(w.to_ascii_uppercase()),
            Some(Tok::Directive(d)) if d == "prefix" => Some("PREFIX".into()),
            _ => None,
        }
    }

    fn word(&mut self, what: &str) -> Result<String, QueryError> {
        match self.next() {
            Some(Tok::Word(w)) => Ok(w),
            _ => {
                self.pos -= 1;
                Err(self.err(format!("expected {what}")))
            }
        }
    }

    fn query(mut self) -> Result<Query, QueryError> {
        let mut q = Query::default();
        while self.peek().is_some() {
            match self.keyword().as_deref() {
                Some("PREFIX") => {
                    self.pos += 1;
                    let (Some(Tok::PName { prefix, local }), Some(Tok::Iri(ns))) = (self.next(), self.next()) else {
                        return Err(self.err("expected `PREFIX name: <namespace>`"));
                    };
                    if !local.is_empty() {
                        return Err(self.err("prefix name must end with `:`"));
                    }
                    self.prefixes.insert(prefix, ns);
                    if self.peek() == Some(&Tok::Punct('.')) {
                        self.pos += 1;
                    }
                }
                Some("ASSUME") => {
                    self.pos += 1;
                    q.assumption = match self.word("open or closed")?.to_ascii_lowercase().as_str() {
                        "open" => Assumption::Open,
                        "closed" => Assumption::Closed,
                        other => return Err(self.err(format!("unknown assumption `{other}`"))),
                    };
                }
                Some("REGIME") => {
                    self.pos += 1;
                    let w = self.word("none, rdfs or owl")?;
                    q.regime = Some(w.parse().map_err(|m: String| self.err(m))?);
                }
                Some("SELECT") => {
                    let line = self.line();
                    self.pos += 1;
                    while let (Some(Tok::Var(v)), true) = (self.peek(), self.line() == line) {
                        q.projection.push(v.clone());
                        self.pos += 1;
                    }
                    if q.projection.is_empty() {
                        return Err(self.err("SELECT needs at least one variable"));
                    }
                }
                Some("NOT") => {
                    self.pos += 1;
                    if self.next() != Some(Tok::Punct('{')) {
                        self.pos -= 1;
                        return Err(self.err("expected `{` after NOT"));
                    }
                    let mut block = Vec::new();
                    while self.peek() != Some(&Tok::Punct('}')) {
                        if self.peek().is_none() {
                            return Err(self.err("unterminated NOT block"));
                        }
                        block.push(self.pattern()?);
                    }
                    self.pos += 1;
                    if block.is_empty() {
                        return Err(self.err("empty NOT block"));
                    }
                    q.negations.push(block);
                }
                Some(other) if !matches!(other, "TRUE" | "FALSE") => {
                    return Err(self.err(format!("unknown keyword `{other}`")));
                }
                _ => {
                    let p = self.pattern()?;
                    q.patterns.push(p);
                }
            }
        }
        Ok(q)
    }

    fn pattern(&mut self) -> Result<TriplePattern, QueryError> {
        let s = self.term("subject")?;
        let p = self.term("predicate")?;
        let o = self.term("object")?;
        if self.peek() == Some(&Tok::Punct('.')) {
            self.pos += 1;
        }
        Ok(TriplePattern::new(s, p, o))
    }

    fn term(&mut self, what: &str) -> Result<PatternTerm, QueryError> {
        let line = self.line();
        let Some(tok) = self.next() else {
            return Err(self.err(format!("expected {what}")));
        };
        let term = match tok {
            Tok::Var(v) => return Ok(PatternTerm::Var(v)),
            Tok::Word(w) if w == "a" => Term::iri(rdf::TYPE),
            Tok::Word(w) if w == "true" || w == "false" => Term::typed(w, xsd::BOOLEAN),
            Tok::Iri(i) => Term::iri(i),
            Tok::PName { prefix, local } => {
                let ns = self.prefixes.get(&prefix).ok_or_else(|| QueryError::Parse {
                    line,
                    message: format!("unknown prefix `{prefix}:`"),
                })?;
                Term::iri(format!("{ns}{local}"))
            }
            Tok::Blank(b) => Term::blank(b),
            Tok::Integer(n) => Term::typed(n, xsd::INTEGER),
            Tok::Decimal(n) => Term::typed(n, xsd::DECIMAL),
            Tok::Double(n) => Term::typed(n, xsd::DOUBLE),
            Tok::Str(s) => match self.peek().cloned() {
                Some(Tok::LangTag(tag)) => {
                    self.pos += 1;
                    Term::lang(s, tag)
                }
                Some(Tok::DoubleCaret) => {
                    self.pos += 1;
                    match self.term("datatype")? {
                        PatternTerm::Bound(Term::Iri(dt)) => Term::typed(s, dt),
                        _ => return Err(self.err("expected datatype IRI")),
                    }
                }
                _ => Term::literal(s),
            },
            other => {
                self.pos -= 1;
                return Err(self.err(format!("expected {what}, found {}", other.describe())));
            }
        };
        term.validate().map_err(|e| QueryError::Parse {
            line,
            message: e.to_string(),
        })?;
        Ok(PatternTerm::Bound(term))
    }
}
