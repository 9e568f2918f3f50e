//! Frame definition files:
//!
//! ```text
//! (Carrots
//!   <:IS-A Vegetables>
//!   <:colour orange | one-of orange purple>
//!   <:taste sweet | default>)
//! (warsaw
//!   <:INSTANCE-OF City>
//!   <:population 1 860 281>)
//! ```
//!
//! A slot body is a value optionally followed by `|`-separated modifiers:
//! `default`, `defined`, `one-of v1 v2 ...` and `type Frame`. `;` starts a
//! comment. A frame with an INSTANCE-OF slot is individual, otherwise
//! general.

use super::{Constraint, Facet, Frame, FrameError, FrameKind, FrameSystem, Strength};

const IS_A: &str = "IS-A";
const INSTANCE_OF: &str = "INSTANCE-OF";

struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
}

impl Cursor<'_> {
    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
        }
        Some(c)
    }

    fn skip_space(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == ';' {
                while self.chars.peek().is_some_and(|&c| c != '\n') {
                    self.bump();
                }
            } else if c.is_whitespace() {
                self.bump();
            } else {
                break;
            }
        }
    }

    fn err(&self, message: impl Into<String>) -> FrameError {
        FrameError::Parse {
            line: self.line,
            message: message.into(),
        }
    }
}

pub fn parse_frames(text: &str) -> Result<FrameSystem, FrameError> {
    let mut cur = Cursor {
        chars: text.chars().peekable(),
        line: 1,
    };
    let mut system = FrameSystem::new();
    loop {
        cur.skip_space();
        match cur.bump() {
            None => return Ok(system),
            Some('(') => {
                let line = cur.line;
                let frame = parse_frame(&mut cur)?;
                system.add(frame).map_err(|e| match e {
                    FrameError::Parse { .. } => e,
                    other => FrameError::Parse {
                        line,
                        message: other.to_string(),
                    },
                })?;
            }
            Some(c) => return Err(cur.err(format!("expected `(`, found `{c}`"))),
        }
    }
}

fn parse_frame(cur: &mut Cursor) -> Result<Frame, FrameError> {
    cur.skip_space();
    let mut name = String::new();
    while let Some(&c) = cur.chars.peek() {
        if c.is_whitespace() || matches!(c, '<' | ')' | '(' | ';') {
            break;
        }
        name.push(c);
        cur.bump();
    }
    if name.is_empty() {
        return Err(cur.err("missing frame name"));
    }
    let mut is_a = Vec::new();
    let mut instance_of = Vec::new();
    let mut slots = Vec::new();
    loop {
        cur.skip_space();
        match cur.bump() {
            Some(')') => break,
            Some('<') => {
                let mut body = String::new();
                loop {
                    match cur.bump() {
                        Some('>') => break,
                        Some(c) => body.push(c),
                        None => return Err(cur.err("unterminated slot")),
                    }
                }
                let (slot, facet) = parse_slot(&body).map_err(|m| cur.err(m))?;
                match slot.as_str() {
                    IS_A | INSTANCE_OF => {
                        let Some(target) = facet.value.filter(|_| facet.constraint.is_none()) else {
                            return Err(cur.err(format!("`:{slot}` needs exactly one frame name")));
                        };
                        if target.split_whitespace().count() != 1 {
                            return Err(cur.err(format!("`:{slot}` needs exactly one frame name")));
                        }
                        if slot == IS_A { &mut is_a } else { &mut instance_of }.push(target);
                    }
                    _ => {
                        if slots.iter().any(|(s, _): &(String, Facet)| *s == slot) {
                            return Err(cur.err(format!("slot `{slot}` repeated in frame `{name}`")));
                        }
                        slots.push((slot, facet));
                    }
                }
            }
            Some('.') => {
                // `...` elisions as written in informal listings.
                while cur.chars.peek() == Some(&'.') {
                    cur.bump();
                }
            }
            Some(c) => return Err(cur.err(format!("expected `<` or `)`, found `{c}`"))),
            None => return Err(cur.err(format!("frame `{name}` is not closed"))),
        }
    }
    let (kind, parents) = match (is_a.is_empty(), instance_of.is_empty()) {
        (_, true) => (FrameKind::General, is_a),
        (true, false) => (FrameKind::Individual, instance_of),
        (false, false) => {
            return Err(cur.err(format!("frame `{name}` has both IS-A and INSTANCE-OF")));
        }
    };
    Ok(Frame {
        name,
        kind,
        parents,
        slots: slots.into_iter().collect(),
    })
}

fn parse_slot(body: &str) -> Result<(String, Facet), String> {
    let mut parts = body.split('|');
    let head = parts.next().unwrap_or_default().trim();
    let Some(head) = head.strip_prefix(':') else {
        return Err(format!("slot `<{body}>` must start with `:`"));
    };
    let (slot, value) = match head.split_once(char::is_whitespace) {
        Some((s, v)) => (s, v.split_whitespace().collect::<Vec<_>>().join(" ")),
        None => (head, String::new()),
    };
    if slot.is_empty() {
        return Err("empty slot name".into());
    }
    let mut facet = Facet {
        value: (!value.is_empty()).then_some(value),
        strength: Strength::Defined,
        constraint: None,
    };
    for modifier in parts {
        let words: Vec<&str> = modifier.split_whitespace().collect();
        match words.as_slice() {
            ["default"] => facet.strength = Strength::Default,
            ["defined"] => facet.strength = Strength::Defined,
            ["one-of", values @ ..] if !values.is_empty() => {
                facet.constraint = Some(Constraint::AllowedValues(values.iter().map(|v| v.to_string()).collect()));
            }
            ["type", class] => facet.constraint = Some(Constraint::FrameType(class.to_string())),
            _ => return Err(format!("unknown slot modifier `{}`", modifier.trim())),
        }
    }
    if facet.value.is_none() && facet.constraint.is_none() {
        return Err(format!("slot `{slot}` has neither a value nor a constraint"));
    }
    Ok((slot.to_string(), facet))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn listings() {
        let s = parse_frames(
            "(Carrots\n  <:IS-A Vegetables>\n  <:colour orange>  ...)\n\
             (warsaw\n  <:INSTANCE-OF City>\n  <:voivodeship mazowieckie>\n  <:population 1 860 281>  ...)\n",
        )
        .unwrap();
        let carrots = s.get("Carrots").unwrap();
        assert_eq!(carrots.kind, FrameKind::General);
        assert_eq!(carrots.parents, vec!["Vegetables"]);
        let warsaw = s.get("warsaw").unwrap();
        assert_eq!(warsaw.kind, FrameKind::Individual);
        assert_eq!(warsaw.slots["population"].value.as_deref(), Some("1 860 281"));
    }

    #[test]
    fn modifiers() {
        let s = parse_frames(
            "; produce\n(Carrots <:IS-A Vegetables> <:IS-A Roots>\n <:colour orange | one-of orange purple> <:taste sweet | default>\n <:grower | type Farm>)",
        )
        .unwrap();
        let c = s.get("Carrots").unwrap();
        assert_eq!(c.parents, vec!["Vegetables", "Roots"]);
        assert_eq!(c.slots["taste"].strength, Strength::Default);
        assert!(matches!(c.slots["colour"].constraint, Some(Constraint::AllowedValues(ref v)) if v.len() == 2));
        assert_eq!(c.slots["grower"].value, None);
    }

    #[test]
    fn errors_carry_lines() {
        let err = parse_frames("(a <:IS-A b>)\n(b <:IS-A a>)").unwrap_err();
        assert!(matches!(err, FrameError::Parse { line: 2, .. }));
        let err = parse_frames("(x\n <:colour>)").unwrap_err();
        assert!(matches!(err, FrameError::Parse { line: 2, .. }));
        assert!(parse_frames("(x <:IS-A a> <:INSTANCE-OF b>)").is_err());
        assert!(parse_frames("(x <:c v | bogus>)").is_err());
        assert!(parse_frames("(x <:c v>").is_err());
    }
}
