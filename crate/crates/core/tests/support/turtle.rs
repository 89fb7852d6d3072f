//! Reader for the Turtle subset used by fixtures and by the writer:
//! `@prefix`, IRIs, prefixed names, `a`, quoted literals with a language
//! tag or datatype, and the `;` / `,` / `.` separators. No blank nodes,
//! collections, numbers or long strings.

use std::collections::BTreeSet;
use std::iter::Peekable;
use std::str::Chars;

use scheda_core::{Iri, Literal, PrefixMap, Term, Triple};

const RDF_TYPE: &str = "http://www.w3.org/1999/02/22-rdf-syntax-ns#type";

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Iri(String),
    Name(String, String),
    Lit(String, Option<String>, Option<Box<Tok>>),
    A,
    Prefix,
    Dot,
    Semi,
    Comma,
}

struct Lexer<'a> {
    chars: Peekable<Chars<'a>>,
    line: usize,
    out: Vec<(Tok, usize)>,
}

impl Lexer<'_> {
    fn err(&self, msg: &str) -> String {
        format!("line {}: {msg}", self.line)
    }

    fn skip(&mut self) {
        while let Some(&c) = self.chars.peek() {
            if c == '\n' {
                self.line += 1;
                self.chars.next();
            } else if c.is_whitespace() {
                self.chars.next();
            } else if c == '#' {
                while let Some(&c) = self.chars.peek() {
                    if c == '\n' {
                        break;
                    }
                    self.chars.next();
                }
            } else {
                break;
            }
        }
    }

    fn iri(&mut self) -> Result<String, String> {
        let mut s = String::new();
        loop {
            match self.chars.next() {
                Some('>') => return Ok(s),
                Some('\n') | None => return Err(self.err("unterminated IRI")),
                Some(c) => s.push(c),
            }
        }
    }

    fn hex(&mut self, n: usize) -> Result<char, String> {
        let digits: String = (0..n).filter_map(|_| self.chars.next()).collect();
        u32::from_str_radix(&digits, 16)
            .ok()
            .and_then(char::from_u32)
            .ok_or_else(|| self.err("bad \\u escape"))
    }

    fn string(&mut self) -> Result<String, String> {
        let mut s = String::new();
        loop {
            match self.chars.next() {
                Some('"') => return Ok(s),
                Some('\\') => match self.chars.next() {
                    Some('n') => s.push('\n'),
                    Some('r') => s.push('\r'),
                    Some('t') => s.push('\t'),
                    Some('b') => s.push('\u{8}'),
                    Some('f') => s.push('\u{c}'),
                    Some('"') => s.push('"'),
                    Some('\'') => s.push('\''),
                    Some('\\') => s.push('\\'),
                    Some('u') => s.push(self.hex(4)?),
                    Some('U') => s.push(self.hex(8)?),
                    _ => return Err(self.err("bad escape")),
                },
                Some('\n') | None => return Err(self.err("unterminated string")),
                Some(c) => s.push(c),
            }
        }
    }

    fn word(&mut self) -> String {
        let mut w = String::new();
        while let Some(&c) = self.chars.peek() {
            if c.is_alphanumeric() || matches!(c, '_' | '-' | ':' | '.' | '/') {
                w.push(c);
                self.chars.next();
            } else {
                break;
            }
        }
        w
    }

    /// A bare word: `a`, or a prefixed name. Trailing dots end the
    /// statement rather than the name.
    fn name(&mut self, mut w: String) -> Result<(Tok, usize), String> {
        let mut dots = 0;
        while w.ends_with('.') {
            w.pop();
            dots += 1;
        }
        let tok = if w == "a" {
            Tok::A
        } else {
            let (p, l) = w.split_once(':').ok_or_else(|| self.err(&format!("unexpected {w:?}")))?;
            Tok::Name(p.to_string(), l.to_string())
        };
        Ok((tok, dots))
    }

    fn push(&mut self, t: Tok) {
        self.out.push((t, self.line));
    }

    fn run(mut self) -> Result<Vec<(Tok, usize)>, String> {
        loop {
            self.skip();
            let Some(&c) = self.chars.peek() else { return Ok(self.out) };
            match c {
                '<' => {
                    self.chars.next();
                    let iri = self.iri()?;
                    self.push(Tok::Iri(iri));
                }
                '"' => {
                    self.chars.next();
                    let lex = self.string()?;
                    match self.chars.peek() {
                        Some('@') => {
                            self.chars.next();
                            let (tag, dots) = {
                                let mut w = self.word();
                                let mut dots = 0;
                                while w.ends_with('.') {
                                    w.pop();
                                    dots += 1;
                                }
                                (w, dots)
                            };
                            self.push(Tok::Lit(lex, Some(tag), None));
                            (0..dots).for_each(|_| self.push(Tok::Dot));
                        }
                        Some('^') => {
                            self.chars.next();
                            if self.chars.next() != Some('^') {
                                return Err(self.err("expected ^^"));
                            }
                            let (dt, dots) = if self.chars.peek() == Some(&'<') {
                                self.chars.next();
                                (Tok::Iri(self.iri()?), 0)
                            } else {
                                let w = self.word();
                                self.name(w)?
                            };
                            self.push(Tok::Lit(lex, None, Some(Box::new(dt))));
                            (0..dots).for_each(|_| self.push(Tok::Dot));
                        }
                        _ => self.push(Tok::Lit(lex, None, None)),
                    }
                }
                '.' | ';' | ',' => {
                    self.chars.next();
                    self.push(match c {
                        '.' => Tok::Dot,
                        ';' => Tok::Semi,
                        _ => Tok::Comma,
                    });
                }
                '@' => {
                    self.chars.next();
                    match self.word().as_str() {
                        "prefix" => self.push(Tok::Prefix),
                        other => return Err(self.err(&format!("unknown directive @{other}"))),
                    }
                }
                _ => {
                    let w = self.word();
                    if w.is_empty() {
                        return Err(self.err(&format!("unexpected character {c:?}")));
                    }
                    let (tok, dots) = self.name(w)?;
                    self.push(tok);
                    (0..dots).for_each(|_| self.push(Tok::Dot));
                }
            }
        }
    }
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    prefixes: PrefixMap,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn err(&self, msg: &str) -> String {
        let line = self.toks.get(self.pos).or(self.toks.last()).map_or(0, |(_, l)| *l);
        format!("line {line}: {msg}")
    }

    fn take(&mut self) -> Result<Tok, String> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone()).ok_or_else(|| self.err("unexpected end"))?;
        self.pos += 1;
        Ok(t)
    }

    fn expect(&mut self, want: Tok) -> Result<(), String> {
        let got = self.take()?;
        if got == want {
            Ok(())
        } else {
            self.pos -= 1;
            Err(self.err(&format!("expected {want:?}, got {got:?}")))
        }
    }

    fn iri(&self, tok: &Tok) -> Result<Iri, String> {
        match tok {
            Tok::Iri(s) => Iri::new(s).map_err(|e| self.err(&e.to_string())),
            Tok::Name(p, l) => {
                let ns = self.prefixes.get(p).ok_or_else(|| self.err(&format!("unbound prefix {p:?}")))?;
                Iri::new(format!("{}{l}", ns.as_str())).map_err(|e| self.err(&e.to_string()))
            }
            Tok::A => Ok(Iri::new(RDF_TYPE).unwrap()),
            other => Err(self.err(&format!("expected an IRI, got {other:?}"))),
        }
    }

    fn object(&mut self) -> Result<Term, String> {
        let tok = self.take()?;
        match tok {
            Tok::Lit(lex, Some(tag), None) => {
                Literal::lang(lex, &tag).map(Term::Literal).map_err(|e| self.err(&e.to_string()))
            }
            Tok::Lit(lex, None, Some(dt)) => Ok(Term::Literal(Literal::typed(lex, self.iri(&dt)?))),
            Tok::Lit(lex, None, None) => Ok(Term::Literal(Literal::plain(lex))),
            Tok::A => Err(self.err("`a` in object position")),
            other => Ok(Term::Iri(self.iri(&other)?)),
        }
    }

    fn statements(&mut self, out: &mut BTreeSet<Triple>) -> Result<(), String> {
        while self.peek().is_some() {
            if self.peek() == Some(&Tok::Prefix) {
                self.pos += 1;
                let (p, l) = match self.take()? {
                    Tok::Name(p, l) => (p, l),
                    other => return Err(self.err(&format!("bad prefix name {other:?}"))),
                };
                if !l.is_empty() {
                    return Err(self.err("prefix declaration with a local part"));
                }
                let ns = match self.take()? {
                    Tok::Iri(s) => Iri::new(s).map_err(|e| self.err(&e.to_string()))?,
                    other => return Err(self.err(&format!("bad namespace {other:?}"))),
                };
                self.prefixes.bind(&p, ns);
                self.expect(Tok::Dot)?;
                continue;
            }
            let subject_tok = self.take()?;
            if subject_tok == Tok::A {
                return Err(self.err("`a` in subject position"));
            }
            let subject = self.iri(&subject_tok)?;
            loop {
                let verb = self.take()?;
                let predicate = self.iri(&verb)?;
                loop {
                    let object = self.object()?;
                    out.insert(Triple::new(subject.clone(), predicate.clone(), object));
                    if self.peek() == Some(&Tok::Comma) {
                        self.pos += 1;
                    } else {
                        break;
                    }
                }
                match self.take()? {
                    Tok::Dot => break,
                    Tok::Semi => {
                        // a `;` may directly precede the closing `.`
                        if self.peek() == Some(&Tok::Dot) {
                            self.pos += 1;
                            break;
                        }
                    }
                    other => return Err(self.err(&format!("expected ; or ., got {other:?}"))),
                }
            }
        }
        Ok(())
    }
}

/// Parses `text` starting from `prefixes`; `@prefix` lines add to them.
pub fn parse_with(text: &str, prefixes: PrefixMap) -> Result<BTreeSet<Triple>, String> {
    let toks = Lexer {
        chars: text.chars().peekable(),
        line: 1,
        out: Vec::new(),
    }
    .run()?;
    let mut p = Parser { toks, pos: 0, prefixes };
    let mut out = BTreeSet::new();
    p.statements(&mut out)?;
    Ok(out)
}

pub fn parse(text: &str) -> Result<BTreeSet<Triple>, String> {
    parse_with(text, PrefixMap::empty())
}
