//! N-Triples reading and canonical writing.

use std::fmt::Write as _;

use super::graph::Graph;
use super::term::{Iri, Literal, Term, Triple};
use crate::error::RdfError;

pub(crate) fn write_iri(out: &mut String, iri: &Iri) {
    out.push('<');
    out.push_str(iri.as_str());
    out.push('>');
}

pub(crate) fn write_string_literal(out: &mut String, lexical: &str) {
    out.push('"');
    for c in lexical.chars() {
        match c {
            '"' => out.push_str("\\\""),
            '\\' => out.push_str("\\\\"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            c if (c as u32) < 0x20 || c as u32 == 0x7f => {
                let _ = write!(out, "\\u{:04X}", c as u32);
            }
            c => out.push(c),
        }
    }
    out.push('"');
}

pub(crate) fn write_literal(out: &mut String, lit: &Literal) {
    write_string_literal(out, lit.lexical());
    if let Some(lang) = lit.language() {
        out.push('@');
        out.push_str(lang);
    } else if let Some(dt) = lit.datatype() {
        out.push_str("^^");
        write_iri(out, dt);
    }
}

pub(crate) fn write_term(out: &mut String, term: &Term) {
    match term {
        Term::Iri(i) => write_iri(out, i),
        Term::Literal(l) => write_literal(out, l),
    }
}

pub fn triple_line(t: &Triple) -> String {
    let mut line = String::with_capacity(128);
    write_iri(&mut line, &t.subject);
    line.push(' ');
    write_iri(&mut line, &t.predicate);
    line.push(' ');
    write_term(&mut line, &t.object);
    line.push_str(" .");
    line
}

/// One line per triple, lines sorted bytewise.
pub fn serialize_ntriples(graph: &Graph) -> Vec<u8> {
    let mut lines: Vec<String> = graph.iter().map(triple_line).collect();
    lines.sort_unstable();
    let mut out = Vec::with_capacity(lines.iter().map(|l| l.len() + 1).sum());
    for line in lines {
        out.extend_from_slice(line.as_bytes());
        out.push(b'\n');
    }
    out
}

pub fn parse_ntriples(input: &[u8]) -> Result<Graph, RdfError> {
    let text = std::str::from_utf8(input).map_err(|_| RdfError::NotUtf8)?;
    let mut graph = Graph::new();
    for (idx, line) in text.lines().enumerate() {
        if let Some(t) = parse_line(line, idx + 1)? {
            graph.add(t);
        }
    }
    Ok(graph)
}

/// Parses one N-Triples line; `Ok(None)` for blank and comment lines.
pub fn parse_line(line: &str, line_no: usize) -> Result<Option<Triple>, RdfError> {
    let mut cur = Cursor::new(line, line_no);
    cur.skip_ws();
    match cur.peek() {
        None | Some('#') => return Ok(None),
        _ => {}
    }
    let subject = cur.iri_or_blank()?;
    cur.skip_ws();
    let predicate = cur.iri_or_blank()?;
    cur.skip_ws();
    let object = match cur.peek() {
        Some('"') => Term::Literal(cur.literal()?),
        _ => Term::Iri(cur.iri_or_blank()?),
    };
    cur.skip_ws();
    if cur.next() != Some('.') {
        return Err(cur.error("expected '.'"));
    }
    cur.skip_ws();
    match cur.peek() {
        None | Some('#') => Ok(Some(Triple::new(subject, predicate, object))),
        Some(_) => Err(cur.error("trailing content after '.'")),
    }
}

pub(crate) struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::CharIndices<'a>>,
    src: &'a str,
    line: usize,
}

impl<'a> Cursor<'a> {
    pub(crate) fn new(src: &'a str, line: usize) -> Self {
        Cursor {
            chars: src.char_indices().peekable(),
            src,
            line,
        }
    }

    pub(crate) fn peek(&mut self) -> Option<char> {
        self.chars.peek().map(|&(_, c)| c)
    }

    pub(crate) fn next(&mut self) -> Option<char> {
        self.chars.next().map(|(_, c)| c)
    }

    pub(crate) fn rest(&mut self) -> &'a str {
        match self.chars.peek() {
            Some(&(i, _)) => &self.src[i..],
            None => "",
        }
    }

    pub(crate) fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(' ' | '\t')) {
            self.next();
        }
    }

    pub(crate) fn error(&self, message: &str) -> RdfError {
        RdfError::Syntax {
            line: self.line,
            message: message.to_string(),
        }
    }

    fn iri_or_blank(&mut self) -> Result<Iri, RdfError> {
        match self.peek() {
            Some('<') => self.iri(),
            Some('_') => Err(RdfError::BlankNodeRejected { line: self.line }),
            _ => Err(self.error("expected IRI")),
        }
    }

    pub(crate) fn iri(&mut self) -> Result<Iri, RdfError> {
        if self.next() != Some('<') {
            return Err(self.error("expected '<'"));
        }
        let mut value = String::new();
        loop {
            match self.next() {
                Some('>') => break,
                Some('\\') => value.push(self.uchar()?),
                Some(c) => value.push(c),
                None => return Err(self.error("unterminated IRI")),
            }
        }
        Iri::new(&value).map_err(|_| self.error(&format!("invalid IRI {value:?}")))
    }

    fn uchar(&mut self) -> Result<char, RdfError> {
        let len = match self.next() {
            Some('u') => 4,
            Some('U') => 8,
            _ => return Err(self.error("bad escape")),
        };
        let mut code = 0u32;
        for _ in 0..len {
            let d = self
                .next()
                .and_then(|c| c.to_digit(16))
                .ok_or_else(|| self.error("bad \\u escape"))?;
            code = code * 16 + d;
        }
        char::from_u32(code).ok_or_else(|| self.error("escape is not a character"))
    }

    pub(crate) fn quoted_string(&mut self) -> Result<String, RdfError> {
        if self.next() != Some('"') {
            return Err(self.error("expected '\"'"));
        }
        let mut value = String::new();
        loop {
            match self.next() {
                Some('"') => return Ok(value),
                Some('\\') => match self.peek() {
                    Some('u' | 'U') => value.push(self.uchar()?),
                    Some(c) => {
                        self.next();
                        value.push(match c {
                            't' => '\t',
                            'b' => '\u{8}',
                            'n' => '\n',
                            'r' => '\r',
                            'f' => '\u{c}',
                            '"' => '"',
                            '\'' => '\'',
                            '\\' => '\\',
                            _ => return Err(self.error("bad escape")),
                        });
                    }
                    None => return Err(self.error("unterminated literal")),
                },
                Some(c) => value.push(c),
                None => return Err(self.error("unterminated literal")),
            }
        }
    }

    pub(crate) fn literal(&mut self) -> Result<Literal, RdfError> {
        let lexical = self.quoted_string()?;
        match self.peek() {
            Some('@') => {
                self.next();
                let mut tag = String::new();
                while let Some(c) = self.peek() {
                    if c.is_ascii_alphanumeric() || c == '-' {
                        tag.push(c.to_ascii_lowercase());
                        self.next();
                    } else {
                        break;
                    }
                }
                Literal::lang(lexical, &tag).map_err(|e| self.error(&e.to_string()))
            }
            Some('^') => {
                self.next();
                if self.next() != Some('^') {
                    return Err(self.error("expected '^^'"));
                }
                let dt = self.iri()?;
                Ok(Literal::typed(lexical, dt))
            }
            _ => Ok(Literal::plain(lexical)),
        }
    }
}
