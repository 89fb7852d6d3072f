//! Basic graph patterns: parsing pattern files and index-nested-loop
//! evaluation.

use std::collections::HashMap;
use std::fmt;

use once_cell::sync::Lazy;
use regex::Regex;

use super::{Id, TripleStore};
use crate::error::{QueryError, RdfError};
use crate::rdf::ntriples::Cursor;
use crate::rdf::{PrefixMap, Term};

static VAR_RE: Lazy<Regex> = Lazy::new(|| Regex::new(r"^[a-z][a-z0-9]*$").unwrap());

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum PatternTerm {
    /// Variable name without the leading `?`.
    Var(String),
    Const(Term),
}

impl fmt::Display for PatternTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternTerm::Var(v) => write!(f, "?{v}"),
            PatternTerm::Const(t) => f.write_str(&t.to_ntriples()),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TriplePattern {
    pub s: PatternTerm,
    pub p: PatternTerm,
    pub o: PatternTerm,
}

impl TriplePattern {
    pub fn new(s: PatternTerm, p: PatternTerm, o: PatternTerm) -> Self {
        TriplePattern { s, p, o }
    }

    fn positions(&self) -> [&PatternTerm; 3] {
        [&self.s, &self.p, &self.o]
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BgpQuery {
    patterns: Vec<TriplePattern>,
}

impl BgpQuery {
    pub fn new(patterns: Vec<TriplePattern>) -> Result<Self, QueryError> {
        if patterns.is_empty() {
            return Err(QueryError::Empty);
        }
        for (i, pat) in patterns.iter().enumerate() {
            for t in pat.positions() {
                if let PatternTerm::Var(v) = t {
                    if !VAR_RE.is_match(v) {
                        return Err(QueryError::Syntax {
                            line: i + 1,
                            message: format!("bad variable name ?{v}"),
                        });
                    }
                }
            }
        }
        Ok(BgpQuery { patterns })
    }

    /// One pattern per line: three terms, each `<iri>`, `prefix:local`
    /// (standard prefixes), `?var` or a quoted literal. An optional
    /// trailing `.` is ignored; `#` starts a comment line.
    pub fn parse(text: &str) -> Result<Self, QueryError> {
        let prefixes = PrefixMap::standard();
        let mut patterns = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let syntax = |e: RdfError| match e {
                RdfError::Syntax { message, .. } => QueryError::Syntax { line: line_no, message },
                other => QueryError::Syntax {
                    line: line_no,
                    message: other.to_string(),
                },
            };
            let mut cur = Cursor::new(trimmed, line_no);
            let mut terms = Vec::with_capacity(3);
            for _ in 0..3 {
                cur.skip_ws();
                terms.push(pattern_term(&mut cur, &prefixes).map_err(syntax)?);
            }
            cur.skip_ws();
            if cur.peek() == Some('.') {
                cur.next();
                cur.skip_ws();
            }
            if cur.peek().is_some() {
                return Err(QueryError::Syntax {
                    line: line_no,
                    message: format!("unexpected {:?}", cur.rest()),
                });
            }
            let o = terms.pop().expect("three terms");
            let p = terms.pop().expect("three terms");
            let s = terms.pop().expect("three terms");
            patterns.push(TriplePattern::new(s, p, o));
        }
        BgpQuery::new(patterns)
    }

    pub fn patterns(&self) -> &[TriplePattern] {
        &self.patterns
    }

    /// Variables in order of first appearance.
    pub fn variables(&self) -> Vec<String> {
        let mut vars: Vec<String> = Vec::new();
        for pat in &self.patterns {
            for t in pat.positions() {
                if let PatternTerm::Var(v) = t {
                    if !vars.contains(v) {
                        vars.push(v.clone());
                    }
                }
            }
        }
        vars
    }
}

fn pattern_term(cur: &mut Cursor, prefixes: &PrefixMap) -> Result<PatternTerm, RdfError> {
    match cur.peek() {
        Some('<') => Ok(PatternTerm::Const(Term::Iri(cur.iri()?))),
        Some('"') => Ok(PatternTerm::Const(Term::Literal(cur.literal()?))),
        Some('?') => {
            cur.next();
            Ok(PatternTerm::Var(word(cur)))
        }
        Some(c) if c.is_ascii_alphabetic() => {
            let name = word(cur);
            if name == "a" {
                return Ok(PatternTerm::Const(Term::Iri(prefixes.expand("rdf:type")?)));
            }
            prefixes
                .expand(&name)
                .map(|iri| PatternTerm::Const(Term::Iri(iri)))
                .map_err(|_| cur.error(&format!("unknown prefixed name {name:?}")))
        }
        _ => Err(cur.error("expected <iri>, prefix:name, ?var or \"literal\"")),
    }
}

fn word(cur: &mut Cursor) -> String {
    let mut w = String::new();
    while let Some(c) = cur.peek() {
        if c.is_whitespace() {
            break;
        }
        w.push(c);
        cur.next();
    }
    w
}

/// Query answers: one row per solution, columns in `variables` order.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Solutions {
    pub variables: Vec<String>,
    pub rows: Vec<Vec<Term>>,
}

impl Solutions {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Header of `?var` names, then N-Triples-encoded terms.
    pub fn to_tsv(&self) -> String {
        let header: Vec<String> = self.variables.iter().map(|v| format!("?{v}")).collect();
        let mut out = header.join("\t");
        out.push('\n');
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(Term::to_ntriples).collect();
            out.push_str(&cells.join("\t"));
            out.push('\n');
        }
        out
    }
}

enum Slot {
    Const(Id),
    Var(usize),
}

/// Joins the patterns in ascending order of their estimated cardinality
/// (ties keep input order) and returns solutions sorted by row.
pub fn evaluate(store: &TripleStore, query: &BgpQuery) -> Solutions {
    let variables = query.variables();
    let var_index: HashMap<&str, usize> = variables.iter().enumerate().map(|(i, v)| (v.as_str(), i)).collect();
    let empty = Solutions {
        variables: variables.clone(),
        rows: Vec::new(),
    };

    let mut compiled: Vec<[Slot; 3]> = Vec::with_capacity(query.patterns.len());
    for pat in &query.patterns {
        let mut slots = Vec::with_capacity(3);
        for t in pat.positions() {
            slots.push(match t {
                PatternTerm::Var(v) => Slot::Var(var_index[v.as_str()]),
                PatternTerm::Const(c) => match store.id(c) {
                    Some(id) => Slot::Const(id),
                    None => return empty,
                },
            });
        }
        let [s, p, o]: [Slot; 3] = slots.try_into().ok().expect("three slots");
        compiled.push([s, p, o]);
    }

    let estimate = |slots: &[Slot; 3]| {
        let bound = slots.each_ref().map(|s| match s {
            Slot::Const(id) => Some(*id),
            Slot::Var(_) => None,
        });
        store.scan(bound).count()
    };
    let mut order: Vec<(usize, usize)> = compiled.iter().map(estimate).enumerate().collect();
    order.sort_by_key(|&(i, card)| (card, i));
    if order.first().is_some_and(|&(_, card)| card == 0) {
        return empty;
    }
    let plan: Vec<&[Slot; 3]> = order.iter().map(|&(i, _)| &compiled[i]).collect();

    let mut rows = Vec::new();
    let mut binding: Vec<Option<Id>> = vec![None; variables.len()];
    join(store, &plan, &mut binding, &mut rows);

    let mut rows: Vec<Vec<Term>> = rows
        .into_iter()
        .map(|ids: Vec<Id>| ids.into_iter().map(|id| store.term(id).clone()).collect())
        .collect();
    rows.sort();
    Solutions { variables, rows }
}

fn join(store: &TripleStore, plan: &[&[Slot; 3]], binding: &mut Vec<Option<Id>>, rows: &mut Vec<Vec<Id>>) {
    let Some((first, rest)) = plan.split_first() else {
        rows.push(binding.iter().map(|b| b.expect("every variable is bound")).collect());
        return;
    };
    let pattern = first.each_ref().map(|slot| match slot {
        Slot::Const(id) => Some(*id),
        Slot::Var(v) => binding[*v],
    });
    let matches: Vec<[Id; 3]> = store.scan(pattern).collect();
    for triple in matches {
        let mut newly = Vec::new();
        let mut ok = true;
        for (slot, value) in first.iter().zip(triple) {
            if let Slot::Var(v) = slot {
                match binding[*v] {
                    Some(b) if b != value => {
                        ok = false;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        binding[*v] = Some(value);
                        newly.push(*v);
                    }
                }
            }
        }
        if ok {
            join(store, rest, binding, rows);
        }
        for v in newly {
            binding[v] = None;
        }
    }
}
