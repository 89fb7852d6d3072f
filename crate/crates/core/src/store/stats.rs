//! Summary counts over a store.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::TripleStore;
use crate::mapping::term;
use crate::rdf::{Iri, Term};
use crate::reconcile::Target;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stats {
    pub triples: usize,
    /// Distinct subjects with at least one `rdf:type`.
    pub typed_entities: usize,
    /// Distinct instances per class.
    pub classes: BTreeMap<Iri, usize>,
    /// Distinct `rdfs:seeAlso` targets per authority.
    pub links: BTreeMap<Target, usize>,
}

pub fn stats(store: &TripleStore) -> Stats {
    let mut classes = BTreeMap::new();
    let mut typed = BTreeSet::new();
    if let Some(p) = store.id(&Term::Iri(term("rdf:type"))) {
        for [s, _, o] in store.scan([None, Some(p), None]) {
            typed.insert(s);
            if let Term::Iri(class) = store.term(o) {
                *classes.entry(class.clone()).or_insert(0) += 1;
            }
        }
    }
    let mut links: BTreeMap<Target, usize> = Target::ALL.iter().map(|t| (*t, 0)).collect();
    if let Some(p) = store.id(&Term::Iri(term("rdfs:seeAlso"))) {
        let targets: BTreeSet<_> = store.scan([None, Some(p), None]).map(|[_, _, o]| o).collect();
        for o in targets {
            if let Term::Iri(iri) = store.term(o) {
                if let Some(t) = Target::classify(iri) {
                    *links.entry(t).or_insert(0) += 1;
                }
            }
        }
    }
    Stats {
        triples: store.len(),
        typed_entities: typed.len(),
        classes,
        links,
    }
}

impl fmt::Display for Stats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "triples\t{}", self.triples)?;
        writeln!(f, "typed-entities\t{}", self.typed_entities)?;
        for (class, n) in &self.classes {
            writeln!(f, "class\t{class}\t{n}")?;
        }
        for (target, n) in &self.links {
            writeln!(f, "links\t{}\t{n}", target.name())?;
        }
        Ok(())
    }
}
