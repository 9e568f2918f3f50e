//! Line-oriented N-Triples.

use super::lexer::{tokenize, Tok, Token};
use super::ParseError;
use crate::graph::Graph;
use crate::term::{Term, Triple};

/// Parses one triple per non-blank, non-comment line.
pub fn parse_ntriples(text: &str) -> Result<Graph, ParseError> {
    let mut graph = Graph::new();
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let tokens = tokenize(line, lineno)?;
        if tokens.is_empty() {
            continue;
        }
        let triple = parse_line(&tokens, lineno, line)?;
        graph
            .insert(&triple)
            .map_err(|source| ParseError::Model {
                line: lineno,
                column: 1,
                source,
            })?;
    }
    Ok(graph)
}

fn read_term<'a>(
    it: &mut std::iter::Peekable<impl Iterator<Item = &'a Token>>,
    what: &str,
    lineno: usize,
    end_col: usize,
) -> Result<Term, ParseError> {
    let Some(tok) = it.next() else {
        return Err(ParseError::syntax(lineno, end_col, format!("expected {what}")));
    };
    let t = match &tok.tok {
        Tok::Iri(i) => Term::iri(i.clone()),
        Tok::Blank(b) => Term::blank(b.clone()),
        Tok::Str(s) => match it.peek().map(|t| &t.tok) {
            Some(Tok::LangTag(tag)) => {
                let tag = tag.clone();
                it.next();
                Term::lang(s.clone(), tag)
            }
            Some(Tok::DoubleCaret) => {
                it.next();
                match it.next() {
                    Some(Token { tok: Tok::Iri(dt), .. }) => Term::typed(s.clone(), dt.clone()),
                    other => {
                        let col = other.map_or(end_col, |t| t.col);
                        return Err(ParseError::syntax(lineno, col, "expected datatype IRI"));
                    }
                }
            }
            _ => Term::literal(s.clone()),
        },
        other => {
            return Err(ParseError::syntax(
                lineno,
                tok.col,
                format!("expected {what}, found {}", other.describe()),
            ))
        }
    };
    Ok(t)
}

/// Parses a single term written as in N-Triples, e.g. `<http://e/x>`,
/// `_:b1` or `"5"^^<http://www.w3.org/2001/XMLSchema#integer>`.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let tokens = tokenize(text, 1)?;
    let end_col = text.chars().count() + 1;
    let mut it = tokens.iter().peekable();
    let term = read_term(&mut it, "term", 1, end_col)?;
    if let Some(t) = it.next() {
        return Err(ParseError::syntax(1, t.col, "trailing content after term"));
    }
    term.validate().map_err(|source| ParseError::Model { line: 1, column: 1, source })?;
    Ok(term)
}

fn parse_line(tokens: &[Token], lineno: usize, line: &str) -> Result<Triple, ParseError> {
    let mut it = tokens.iter().peekable();
    let end_col = line.chars().count() + 1;
    let mut term = |what: &str| read_term(&mut it, what, lineno, end_col);
    let s = term("subject")?;
    let p = term("predicate")?;
    let o = term("object")?;
    match it.next() {
        Some(Token { tok: Tok::Punct('.'), .. }) => {}
        Some(t) => {
            return Err(ParseError::syntax(
                lineno,
                t.col,
                format!("expected `.`, found {}", t.tok.describe()),
            ))
        }
        None => return Err(ParseError::syntax(lineno, end_col, "missing terminating `.`")),
    }
    if let Some(t) = it.next() {
        return Err(ParseError::syntax(lineno, t.col, "trailing content after `.`"));
    }
    Ok(Triple::new(s, p, o))
}

/// Canonical N-Triples: one line per triple in canonical term order.
pub fn serialize_ntriples(graph: &Graph) -> String {
    let mut out = String::new();
    for t in graph.sorted_triples() {
        out.push_str(&t.to_string());
        out.push('\n');
    }
    out
}
