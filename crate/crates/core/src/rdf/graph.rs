use std::collections::BTreeSet;

use super::prefix::PrefixMap;
use super::term::{Iri, Term, Triple};

/// A set of triples plus the prefixes used to display them.
#[derive(Clone, Debug, Default)]
pub struct Graph {
    triples: BTreeSet<Triple>,
    prefixes: PrefixMap,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.triples == other.triples
    }
}

impl Eq for Graph {}

impl Graph {
    pub fn new() -> Self {
        Graph::default()
    }

    pub fn with_prefixes(prefixes: PrefixMap) -> Self {
        Graph {
            triples: BTreeSet::new(),
            prefixes,
        }
    }

    /// Inserts a triple; returns false if it was already present.
    pub fn add(&mut self, triple: Triple) -> bool {
        self.triples.insert(triple)
    }

    pub fn insert(&mut self, s: &Iri, p: &Iri, o: impl Into<Term>) -> bool {
        self.add(Triple::new(s.clone(), p.clone(), o))
    }

    pub fn extend(&mut self, other: Graph) {
        if self.triples.is_empty() {
            self.triples = other.triples;
        } else {
            self.triples.extend(other.triples);
        }
    }

    pub fn contains(&self, triple: &Triple) -> bool {
        self.triples.contains(triple)
    }

    pub fn len(&self) -> usize {
        self.triples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triples.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Triple> {
        self.triples.iter()
    }

    pub fn prefixes(&self) -> &PrefixMap {
        &self.prefixes
    }

    pub fn set_prefixes(&mut self, prefixes: PrefixMap) {
        self.prefixes = prefixes;
    }

    /// All triples agreeing with every bound position.
    pub fn matching<'a>(
        &'a self,
        s: Option<&'a Iri>,
        p: Option<&'a Iri>,
        o: Option<&'a Term>,
    ) -> impl Iterator<Item = &'a Triple> + 'a {
        // Triples are ordered subject-first, so a bound subject narrows to a range.
        let range: Box<dyn Iterator<Item = &Triple>> = match s {
            Some(subject) => {
                let low = Triple::new(subject.clone(), Iri::min_value(), Iri::min_value());
                Box::new(
                    self.triples
                        .range(low..)
                        .take_while(move |t| &t.subject == subject),
                )
            }
            None => Box::new(self.triples.iter()),
        };
        range.filter(move |t| {
            p.is_none_or(|p| &t.predicate == p) && o.is_none_or(|o| &t.object == o)
        })
    }

    /// Set-valued form of [`Graph::matching`].
    pub fn match_pattern(&self, s: Option<&Iri>, p: Option<&Iri>, o: Option<&Term>) -> BTreeSet<Triple> {
        self.matching(s, p, o).cloned().collect()
    }

    pub fn objects<'a>(&'a self, s: &'a Iri, p: &'a Iri) -> impl Iterator<Item = &'a Term> + 'a {
        self.matching(Some(s), Some(p), None).map(|t| &t.object)
    }

    pub fn into_triples(self) -> BTreeSet<Triple> {
        self.triples
    }

    pub fn triples(&self) -> &BTreeSet<Triple> {
        &self.triples
    }
}

impl FromIterator<Triple> for Graph {
    fn from_iter<I: IntoIterator<Item = Triple>>(iter: I) -> Self {
        Graph {
            triples: iter.into_iter().collect(),
            prefixes: PrefixMap::default(),
        }
    }
}

impl Extend<Triple> for Graph {
    fn extend<I: IntoIterator<Item = Triple>>(&mut self, iter: I) {
        self.triples.extend(iter);
    }
}
