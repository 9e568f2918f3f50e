//! Tokenizer shared by the N-Triples, Turtle and query parsers.

use super::ParseError;
use crate::term::is_blank_label_char;

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum Tok {
    /// `<...>`, escapes resolved.
    Iri(String),
    PName { prefix: String, local: String },
    Blank(String),
    Str(String),
    LangTag(String),
    /// `@prefix` / `@base`, without the `@`.
    Directive(String),
    DoubleCaret,
    Integer(String),
    Decimal(String),
    Double(String),
    /// Bare word such as `a`, `true`, `PREFIX`, `NOT`.
    Word(String),
    /// `?name`, without the `?`.
    Var(String),
    Punct(char),
}

impl Tok {
    pub(crate) fn describe(&self) -> String {
        match self {
            Tok::Iri(i) => format!("IRI <{i}>"),
            Tok::PName { prefix, local } => format!("qname {prefix}:{local}"),
            Tok::Blank(b) => format!("blank node _:{b}"),
            Tok::Str(_) => "string literal".into(),
            Tok::LangTag(t) => format!("language tag @{t}"),
            Tok::Directive(d) => format!("@{d}"),
            Tok::DoubleCaret => "`^^`".into(),
            Tok::Integer(n) | Tok::Decimal(n) | Tok::Double(n) => format!("number {n}"),
            Tok::Word(w) => format!("`{w}`"),
            Tok::Var(v) => format!("variable ?{v}"),
            Tok::Punct(c) => format!("`{c}`"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub(crate) struct Token {
    pub tok: Tok,
    pub line: usize,
    pub col: usize,
}

struct Lexer {
    chars: Vec<char>,
    pos: usize,
    line: usize,
    col: usize,
}

impl Lexer {
    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn peek_at(&self, n: usize) -> Option<char> {
        self.chars.get(self.pos + n).copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.get(self.pos).copied()?;
        self.pos += 1;
        if c == '\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(c)
    }

    fn err(&self, message: impl Into<String>) -> ParseError {
        ParseError::syntax(self.line, self.col, message)
    }

    fn take_while(&mut self, f: impl Fn(char) -> bool) -> String {
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if !f(c) {
                break;
            }
            s.push(c);
            self.bump();
        }
        s
    }

    /// Consumes a name-like run, giving back trailing dots (they terminate
    /// statements).
    fn take_name(&mut self, f: impl Fn(char) -> bool) -> String {
        let start = (self.pos, self.line, self.col);
        let mut s = self.take_while(f);
        let trailing = s.len() - s.trim_end_matches('.').len();
        if trailing > 0 {
            s.truncate(s.len() - trailing);
            self.pos = start.0;
            self.line = start.1;
            self.col = start.2;
            for _ in 0..s.chars().count() {
                self.bump();
            }
        }
        s
    }

    fn read_escape(&mut self) -> Result<char, ParseError> {
        let Some(c) = self.bump() else {
            return Err(self.err("unterminated escape sequence"));
        };
        let hex = |lx: &mut Self, n: usize| -> Result<char, ParseError> {
            let mut v = 0u32;
            for _ in 0..n {
                let d = lx
                    .bump()
                    .and_then(|c| c.to_digit(16))
                    .ok_or_else(|| lx.err("malformed unicode escape"))?;
                v = v * 16 + d;
            }
            char::from_u32(v).ok_or_else(|| lx.err("invalid unicode code point"))
        };
        Ok(match c {
            't' => '\t',
            'b' => '\u{8}',
            'n' => '\n',
            'r' => '\r',
            'f' => '\u{c}',
            '"' => '"',
            '\'' => '\'',
            '\\' => '\\',
            'u' => hex(self, 4)?,
            'U' => hex(self, 8)?,
            other => return Err(self.err(format!("unknown escape `\\{other}`"))),
        })
    }

    fn read_iri(&mut self) -> Result<String, ParseError> {
        self.bump();
        let mut s = String::new();
        loop {
            match self.bump() {
                None | Some('\n') => return Err(self.err("unterminated IRI")),
                Some('>') => return Ok(s),
                Some('\\') => {
                    let c = self.read_escape()?;
                    s.push(c);
                }
                Some(c) if c.is_whitespace() => return Err(self.err("whitespace inside IRI")),
                Some(c) => s.push(c),
            }
        }
    }

    fn read_string(&mut self, quote: char) -> Result<String, ParseError> {
        let long = self.peek_at(1) == Some(quote) && self.peek_at(2) == Some(quote);
        let skip = if long { 3 } else { 1 };
        for _ in 0..skip {
            self.bump();
        }
        let mut s = String::new();
        loop {
            match self.bump() {
                None => return Err(self.err("unterminated string literal")),
                Some('\n') if !long => return Err(self.err("newline in string literal")),
                Some('\\') => {
                    let c = self.read_escape()?;
                    s.push(c);
                }
                Some(c) if c == quote => {
                    if !long {
                        return Ok(s);
                    }
                    if self.peek() == Some(quote) && self.peek_at(1) == Some(quote) {
                        self.bump();
                        self.bump();
                        return Ok(s);
                    }
                    s.push(c);
                }
                Some(c) => s.push(c),
            }
        }
    }

    fn read_number(&mut self) -> Tok {
        let mut s = String::new();
        if let Some(c @ ('+' | '-')) = self.peek() {
            s.push(c);
            self.bump();
        }
        s.push_str(&self.take_while(|c| c.is_ascii_digit()));
        let mut decimal = false;
        if self.peek() == Some('.') && self.peek_at(1).is_some_and(|c| c.is_ascii_digit()) {
            decimal = true;
            s.push('.');
            self.bump();
            s.push_str(&self.take_while(|c| c.is_ascii_digit()));
        }
        if let Some(e @ ('e' | 'E')) = self.peek() {
            let sign = matches!(self.peek_at(1), Some('+' | '-'));
            let digit_at = if sign { 2 } else { 1 };
            if self.peek_at(digit_at).is_some_and(|c| c.is_ascii_digit()) {
                s.push(e);
                self.bump();
                if sign {
                    s.push(self.bump().unwrap_or('+'));
                }
                s.push_str(&self.take_while(|c| c.is_ascii_digit()));
                return Tok::Double(s);
            }
        }
        if decimal {
            Tok::Decimal(s)
        } else {
            Tok::Integer(s)
        }
    }
}

fn is_name_char(c: char) -> bool {
    c.is_alphanumeric() || matches!(c, '_' | '-' | '.' | ':' | '%')
}

/// Tokenizes `text`. `first_line` offsets reported line numbers.
pub(crate) fn tokenize(text: &str, first_line: usize) -> Result<Vec<Token>, ParseError> {
    let mut lx = Lexer {
        chars: text.chars().collect(),
        pos: 0,
        line: first_line,
        col: 1,
    };
    let mut out: Vec<Token> = Vec::new();
    while let Some(c) = lx.peek() {
        if c.is_whitespace() {
            lx.bump();
            continue;
        }
        if c == '#' {
            lx.take_while(|c| c != '\n');
            continue;
        }
        let (line, col) = (lx.line, lx.col);
        let tok = match c {
            '<' => Tok::Iri(lx.read_iri()?),
            '"' | '\'' => Tok::Str(lx.read_string(c)?),
            '^' => {
                lx.bump();
                if lx.bump() != Some('^') {
                    return Err(ParseError::syntax(line, col, "expected `^^`"));
                }
                Tok::DoubleCaret
            }
            '@' => {
                lx.bump();
                let after_string = matches!(out.last(), Some(Token { tok: Tok::Str(_), .. }));
                let word = lx.take_while(|c| c.is_ascii_alphanumeric() || c == '-');
                if word.is_empty() {
                    return Err(ParseError::syntax(line, col, "expected a word after `@`"));
                }
                if after_string {
                    Tok::LangTag(word)
                } else {
                    Tok::Directive(word)
                }
            }
            '_' if lx.peek_at(1) == Some(':') => {
                lx.bump();
                lx.bump();
                let label = lx.take_name(is_blank_label_char);
                if label.is_empty() {
                    return Err(ParseError::syntax(line, col, "empty blank node label"));
                }
                Tok::Blank(label)
            }
            '?' | '$' => {
                lx.bump();
                let name = lx.take_while(|c| c.is_alphanumeric() || c == '_');
                if name.is_empty() {
                    return Err(ParseError::syntax(line, col, "empty variable name"));
                }
                Tok::Var(name)
            }
            '.' | ';' | ',' | '[' | ']' | '(' | ')' | '{' | '}' => {
                lx.bump();
                Tok::Punct(c)
            }
            c if c.is_ascii_digit()
                || (matches!(c, '+' | '-') && lx.peek_at(1).is_some_and(|d| d.is_ascii_digit())) =>
            {
                lx.read_number()
            }
            c if c.is_alphabetic() || c == '_' || c == ':' => {
                let name = lx.take_name(is_name_char);
                match name.split_once(':') {
                    Some((prefix, local)) => Tok::PName {
                        prefix: prefix.to_string(),
                        local: local.to_string(),
                    },
                    None => Tok::Word(name),
                }
            }
            other => {
                return Err(ParseError::syntax(line, col, format!("unexpected character `{other}`")));
            }
        };
        out.push(Token { tok, line, col });
    }
    Ok(out)
}
