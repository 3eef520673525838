//! Line-oriented N-Quads subset.
//!
//! One statement per line, exactly four terms, a terminal ` .`, `#` comment
//! lines. IRIs are `<...>`, literals are `"lex"`, `"lex"^^<dt>` or
//! `"lex"@lang`. Blank nodes and the default graph are rejected.

use alloc::collections::BTreeSet;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt::Write;

use thiserror::Error;

use crate::term::{is_valid_lang_tag, Iri, Literal, Quad, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct ParseError {
    pub line: usize,
    pub reason: String,
}

/// Parses quads in input order. Line numbers in errors are 1-based.
pub fn parse_nquads(text: &str) -> Result<Vec<Quad>, ParseError> {
    let mut quads = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let quad = parse_line(line).map_err(|reason| ParseError { line: idx + 1, reason })?;
        quads.push(quad);
    }
    Ok(quads)
}

/// Canonical serialization: one line per quad, sorted by (graph, subject,
/// predicate, object), duplicates removed.
pub fn write_nquads<'a>(quads: impl IntoIterator<Item = &'a Quad>) -> String {
    let sorted: BTreeSet<&Quad> = quads.into_iter().collect();
    let mut out = String::new();
    for quad in sorted {
        write_quad(&mut out, quad);
    }
    out
}

pub fn write_quad(out: &mut String, quad: &Quad) {
    let _ = write!(out, "<{}> <{}> ", quad.subject, quad.predicate);
    write_term(out, &quad.object);
    let _ = writeln!(out, " <{}> .", quad.graph);
}

pub fn write_term(out: &mut String, term: &Term) {
    match term {
        Term::Iri(iri) => {
            let _ = write!(out, "<{iri}>");
        }
        Term::Literal(lit) => {
            out.push('"');
            for c in lit.lexical().chars() {
                match c {
                    '"' => out.push_str("\\\""),
                    '\\' => out.push_str("\\\\"),
                    '\n' => out.push_str("\\n"),
                    '\r' => out.push_str("\\r"),
                    '\t' => out.push_str("\\t"),
                    c => out.push(c),
                }
            }
            out.push('"');
            if let Some(dt) = lit.datatype() {
                let _ = write!(out, "^^<{dt}>");
            } else if let Some(tag) = lit.langtag() {
                let _ = write!(out, "@{tag}");
            }
        }
    }
}

fn parse_line(line: &str) -> Result<Quad, String> {
    let mut cursor = Cursor { rest: line };
    let mut terms: Vec<Term> = Vec::with_capacity(4);
    loop {
        cursor.skip_ws();
        match cursor.peek() {
            None => return Err("missing terminal '.'".into()),
            Some('.') => {
                cursor.bump();
                cursor.skip_ws();
                if !(cursor.rest.is_empty() || cursor.rest.starts_with('#')) {
                    return Err(format!("unexpected content after '.': `{}`", cursor.rest));
                }
                break;
            }
            Some(_) if terms.len() == 4 => {
                return Err("expected '.' after the graph term".into());
            }
            Some(_) => terms.push(cursor.term()?),
        }
    }
    if terms.len() != 4 {
        return Err(format!("expected 4 terms, found {}", terms.len()));
    }
    let mut it = terms.into_iter();
    let subject = expect_iri(it.next(), "subject")?;
    let predicate = expect_iri(it.next(), "predicate")?;
    let object = it.next().expect("length checked");
    let graph = expect_iri(it.next(), "graph")?;
    Ok(Quad { subject, predicate, object, graph })
}

fn expect_iri(term: Option<Term>, position: &str) -> Result<Iri, String> {
    match term {
        Some(Term::Iri(iri)) => Ok(iri),
        Some(Term::Literal(_)) => Err(format!("literal in {position} position")),
        None => Err(format!("missing {position}")),
    }
}

struct Cursor<'a> {
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.peek()?;
        self.rest = &self.rest[c.len_utf8()..];
        Some(c)
    }

    fn skip_ws(&mut self) {
        self.rest = self.rest.trim_start_matches([' ', '\t']);
    }

    fn term(&mut self) -> Result<Term, String> {
        match self.peek() {
            Some('<') => self.iri().map(Term::Iri),
            Some('"') => self.literal().map(Term::Literal),
            Some('_') if self.rest.starts_with("_:") => Err("blank nodes are not supported".into()),
            Some(c) => Err(format!("malformed term starting with `{c}`")),
            None => Err("unexpected end of line".into()),
        }
    }

    fn iri(&mut self) -> Result<Iri, String> {
        self.bump();
        let end = self.rest.find('>').ok_or_else(|| "unterminated IRI".to_string())?;
        let raw = &self.rest[..end];
        self.rest = &self.rest[end + 1..];
        Iri::new(raw).map_err(|e| format!("malformed IRI: {e}"))
    }

    fn literal(&mut self) -> Result<Literal, String> {
        self.bump();
        let mut lexical = String::new();
        loop {
            match self.bump() {
                None => return Err("unterminated literal".into()),
                Some('"') => break,
                Some('\\') => lexical.push(self.escape()?),
                Some(c) => lexical.push(c),
            }
        }
        if self.rest.starts_with("^^") {
            self.rest = &self.rest[2..];
            if self.peek() != Some('<') {
                return Err("datatype must be an IRI".into());
            }
            let dt = self.iri()?;
            Ok(Literal::typed(lexical, dt))
        } else if self.rest.starts_with('@') {
            self.bump();
            let end = self
                .rest
                .find(|c: char| !(c.is_ascii_alphanumeric() || c == '-'))
                .unwrap_or(self.rest.len());
            let tag = &self.rest[..end];
            if !is_valid_lang_tag(tag) {
                return Err(format!("invalid language tag `{tag}`"));
            }
            self.rest = &self.rest[end..];
            Literal::lang(lexical, tag).map_err(|e| e.to_string())
        } else {
            Ok(Literal::simple(lexical))
        }
    }

    fn escape(&mut self) -> Result<char, String> {
        match self.bump() {
            Some('"') => Ok('"'),
            Some('\\') => Ok('\\'),
            Some('\'') => Ok('\''),
            Some('n') => Ok('\n'),
            Some('r') => Ok('\r'),
            Some('t') => Ok('\t'),
            Some('b') => Ok('\u{8}'),
            Some('f') => Ok('\u{c}'),
            Some('u') => self.unicode(4),
            Some('U') => self.unicode(8),
            Some(c) => Err(format!("unknown escape `\\{c}`")),
            None => Err("unterminated escape".into()),
        }
    }

    fn unicode(&mut self, digits: usize) -> Result<char, String> {
        if self.rest.len() < digits || !self.rest.is_char_boundary(digits) {
            return Err("truncated unicode escape".into());
        }
        let hex = &self.rest[..digits];
        self.rest = &self.rest[digits..];
        u32::from_str_radix(hex, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| format!("invalid unicode escape `{hex}`"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input() {
        assert_eq!(parse_nquads("").unwrap(), Vec::new());
        assert_eq!(parse_nquads("# only a comment\n\n").unwrap(), Vec::new());
        assert_eq!(write_nquads(&Vec::new()), "");
    }

    #[test]
    fn literal_forms() {
        let text = concat!(
            "<http://ex.org/s> <http://ex.org/p> \"plain\" <http://ex.org/g> .\n",
            "<http://ex.org/s> <http://ex.org/p> \"0.57\"^^<http://www.w3.org/2001/XMLSchema#decimal> <http://ex.org/g> .\n",
            "<http://ex.org/s> <http://ex.org/p> \"Bodenprobe\"@de <http://ex.org/g> .\n",
            "<http://ex.org/s> <http://ex.org/p> \"say \\\"hi\\\"\\n\\u00e9\" <http://ex.org/g> .\n",
        );
        let quads = parse_nquads(text).unwrap();
        assert_eq!(quads.len(), 4);
        assert!(quads[1].object.as_literal().unwrap().datatype().unwrap().as_str().ends_with("#decimal"));
        assert_eq!(quads[2].object.as_literal().unwrap().langtag(), Some("de"));
        assert_eq!(quads[3].object.as_literal().unwrap().lexical(), "say \"hi\"\né");
        let again = parse_nquads(&write_nquads(&quads)).unwrap();
        let a: BTreeSet<_> = quads.into_iter().collect();
        let b: BTreeSet<_> = again.into_iter().collect();
        assert_eq!(a, b);
    }

    #[test]
    fn errors_carry_line_numbers() {
        let text = "# header\n<http://ex.org/s> <http://ex.org/p> <http://ex.org/o> <http://ex.org/g> .\n\"lit\" <http://ex.org/p> <http://ex.org/o> <http://ex.org/g> .\n";
        let err = parse_nquads(text).unwrap_err();
        assert_eq!(err.line, 3);
        assert!(err.reason.contains("subject"), "{}", err.reason);
    }

    #[test]
    fn rejects_malformed_lines() {
        let cases = [
            ("<http://ex.org/s> <http://ex.org/p> <http://ex.org/o> <http://ex.org/g>", "terminal"),
            ("<http://ex.org/s> <http://ex.org/p> <http://ex.org/o> .", "expected 4 terms"),
            ("<http://ex.org/s> <http://ex.org/p> <http://ex.org/o> <http://ex.org/g> <http://ex.org/h> .", "after the graph"),
            ("<http://ex.org/s> \"p\" <http://ex.org/o> <http://ex.org/g> .", "predicate"),
            ("<http://ex.org/s> <http://ex.org/p> <http://ex.org/o> \"g\" .", "graph"),
            ("_:b <http://ex.org/p> <http://ex.org/o> <http://ex.org/g> .", "blank"),
            ("<not an iri> <http://ex.org/p> <http://ex.org/o> <http://ex.org/g> .", "malformed IRI"),
            ("<http://ex.org/s> <http://ex.org/p> \"open <http://ex.org/g> .", "unterminated"),
            ("<http://ex.org/s> <http://ex.org/p> \"x\"@ <http://ex.org/g> .", "language tag"),
        ];
        for (line, needle) in cases {
            let err = parse_nquads(line).unwrap_err();
            assert_eq!(err.line, 1);
            assert!(err.reason.contains(needle), "{line}: {}", err.reason);
        }
    }

    #[test]
    fn writer_sorts_by_graph_first() {
        let text = concat!(
            "<http://ex.org/a> <http://ex.org/p> <http://ex.org/o> <http://ex.org/g2> .\n",
            "<http://ex.org/z> <http://ex.org/p> <http://ex.org/o> <http://ex.org/g1> .\n",
        );
        let out = write_nquads(&parse_nquads(text).unwrap());
        assert!(out.starts_with("<http://ex.org/z>"));
    }

    #[test]
    fn trailing_comment_after_dot() {
        let quads = parse_nquads("<http://ex.org/s> <http://ex.org/p> <http://ex.org/o> <http://ex.org/g> . # note").unwrap();
        assert_eq!(quads.len(), 1);
    }
}
