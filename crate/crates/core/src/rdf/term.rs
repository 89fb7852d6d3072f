use std::fmt;
use std::sync::Arc;

use crate::error::RdfError;

pub const XSD_STRING: &str = "http://www.w3.org/2001/XMLSchema#string";
pub const XSD_GYEAR: &str = "http://www.w3.org/2001/XMLSchema#gYear";

/// An absolute IRI.
///
/// Cloning is cheap; the string is shared.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Iri(Arc<str>);

impl Iri {
    pub fn new(value: impl AsRef<str>) -> Result<Self, RdfError> {
        let value = value.as_ref();
        if is_valid_iri(value) {
            Ok(Iri(Arc::from(value)))
        } else {
            Err(RdfError::MalformedIri(value.to_string()))
        }
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    /// The empty IRI, smaller than every valid one. Only used as a range bound.
    pub(crate) fn min_value() -> Iri {
        Iri(Arc::from(""))
    }

    /// Appends a path segment (or several, slash-separated) to this IRI.
    pub(crate) fn join(&self, suffix: &str) -> Iri {
        let mut s = String::with_capacity(self.0.len() + suffix.len() + 1);
        s.push_str(&self.0);
        if !s.ends_with('/') {
            s.push('/');
        }
        s.push_str(suffix);
        Iri(Arc::from(s))
    }
}

fn is_valid_iri(value: &str) -> bool {
    let Some(colon) = value.find(':') else {
        return false;
    };
    let scheme = &value[..colon];
    let mut chars = scheme.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() => {}
        _ => return false,
    }
    if !chars.all(|c| c.is_ascii_alphanumeric() || matches!(c, '+' | '-' | '.')) {
        return false;
    }
    // The characters below cannot appear in an N-Triples IRIREF.
    !value.chars().any(|c| {
        c.is_whitespace()
            || c.is_control()
            || matches!(c, '<' | '>' | '"' | '{' | '}' | '|' | '^' | '`' | '\\')
    })
}

impl fmt::Debug for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

impl fmt::Display for Iri {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "<{}>", self.0)
    }
}

/// An RDF literal: plain, language-tagged, or datatyped.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Literal {
    lexical: String,
    language: Option<String>,
    datatype: Option<Iri>,
}

impl Literal {
    pub fn new(
        lexical: impl Into<String>,
        language: Option<&str>,
        datatype: Option<Iri>,
    ) -> Result<Self, RdfError> {
        let lexical = lexical.into();
        if language.is_some() && datatype.is_some() {
            return Err(RdfError::MalformedLiteral(format!(
                "{lexical:?} has both a language tag and a datatype"
            )));
        }
        if let Some(tag) = language {
            if !is_valid_lang(tag) {
                return Err(RdfError::MalformedLiteral(format!(
                    "bad language tag {tag:?}"
                )));
            }
        }
        Ok(Literal {
            lexical,
            language: language.map(str::to_string),
            datatype,
        })
    }

    pub fn plain(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            language: None,
            datatype: None,
        }
    }

    pub fn lang(lexical: impl Into<String>, tag: &str) -> Result<Self, RdfError> {
        Literal::new(lexical, Some(tag), None)
    }

    /// Italian-tagged literal.
    pub fn it(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            language: Some("it".into()),
            datatype: None,
        }
    }

    /// English-tagged literal.
    pub fn en(lexical: impl Into<String>) -> Self {
        Literal {
            lexical: lexical.into(),
            language: Some("en".into()),
            datatype: None,
        }
    }

    pub fn typed(lexical: impl Into<String>, datatype: Iri) -> Self {
        Literal {
            lexical: lexical.into(),
            language: None,
            datatype: Some(datatype),
        }
    }

    pub fn gyear(year: i32) -> Self {
        Literal::typed(
            format!("{year:04}"),
            Iri(Arc::from(XSD_GYEAR)),
        )
    }

    pub fn lexical(&self) -> &str {
        &self.lexical
    }

    pub fn language(&self) -> Option<&str> {
        self.language.as_deref()
    }

    pub fn datatype(&self) -> Option<&Iri> {
        self.datatype.as_ref()
    }
}

/// Lowercase primary subtag of 2-8 letters, optionally followed by
/// lowercase alphanumeric subtags.
fn is_valid_lang(tag: &str) -> bool {
    let mut parts = tag.split('-');
    let primary = parts.next().unwrap_or("");
    (2..=8).contains(&primary.len())
        && primary.chars().all(|c| c.is_ascii_lowercase())
        && parts.all(|p| {
            (1..=8).contains(&p.len())
                && p.chars().all(|c| c.is_ascii_lowercase() || c.is_ascii_digit())
        })
}

/// Object position of a triple.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub enum Term {
    Iri(Iri),
    Literal(Literal),
}

impl Term {
    pub fn as_iri(&self) -> Option<&Iri> {
        match self {
            Term::Iri(i) => Some(i),
            Term::Literal(_) => None,
        }
    }

    pub fn as_literal(&self) -> Option<&Literal> {
        match self {
            Term::Literal(l) => Some(l),
            Term::Iri(_) => None,
        }
    }

    /// N-Triples rendering of the term.
    pub fn to_ntriples(&self) -> String {
        let mut out = String::new();
        crate::rdf::ntriples::write_term(&mut out, self);
        out
    }
}

impl From<Iri> for Term {
    fn from(i: Iri) -> Self {
        Term::Iri(i)
    }
}

impl From<&Iri> for Term {
    fn from(i: &Iri) -> Self {
        Term::Iri(i.clone())
    }
}

impl From<Literal> for Term {
    fn from(l: Literal) -> Self {
        Term::Literal(l)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_ntriples())
    }
}

/// An RDF statement. Blank nodes are not representable.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Triple {
    pub subject: Iri,
    pub predicate: Iri,
    pub object: Term,
}

impl Triple {
    pub fn new(subject: Iri, predicate: Iri, object: impl Into<Term>) -> Self {
        Triple {
            subject,
            predicate,
            object: object.into(),
        }
    }
}
