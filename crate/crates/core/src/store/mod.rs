//! In-memory triple store with three orderings of the same triple set.

mod bgp;
mod stats;

use std::collections::{BTreeSet, HashMap};
use std::ops::Bound;

pub use bgp::{evaluate, BgpQuery, PatternTerm, Solutions, TriplePattern};
pub use stats::{stats, Stats};

use crate::rdf::{Graph, Iri, Term, Triple};

pub(crate) type Id = u32;

/// Key order of an index, as positions into (subject, predicate, object).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Index {
    Spo,
    Pos,
    Osp,
}

impl Index {
    pub const ALL: [Index; 3] = [Index::Spo, Index::Pos, Index::Osp];

    fn order(self) -> [usize; 3] {
        match self {
            Index::Spo => [0, 1, 2],
            Index::Pos => [1, 2, 0],
            Index::Osp => [2, 0, 1],
        }
    }

    /// The index whose key starts with every bound position.
    fn for_pattern(bound: [bool; 3]) -> Index {
        match bound {
            [true, _, false] | [true, true, true] | [false, false, false] => Index::Spo,
            [false, true, _] => Index::Pos,
            [_, false, true] => Index::Osp,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct TripleStore {
    terms: Vec<Term>,
    ids: HashMap<Term, Id>,
    spo: BTreeSet<[Id; 3]>,
    pos: BTreeSet<[Id; 3]>,
    osp: BTreeSet<[Id; 3]>,
}

impl TripleStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_graph(graph: &Graph) -> Self {
        let mut store = Self::new();
        store.bulk_load([graph]);
        store
    }

    fn intern(&mut self, term: Term) -> Id {
        if let Some(&id) = self.ids.get(&term) {
            return id;
        }
        let id = Id::try_from(self.terms.len()).expect("fewer than 2^32 distinct terms");
        self.terms.push(term.clone());
        self.ids.insert(term, id);
        id
    }

    pub fn insert(&mut self, t: &Triple) -> bool {
        let s = self.intern(Term::Iri(t.subject.clone()));
        let p = self.intern(Term::Iri(t.predicate.clone()));
        let o = self.intern(t.object.clone());
        if !self.spo.insert([s, p, o]) {
            return false;
        }
        self.pos.insert([p, o, s]);
        self.osp.insert([o, s, p]);
        true
    }

    /// Adds every triple of every graph.
    pub fn bulk_load<'a>(&mut self, graphs: impl IntoIterator<Item = &'a Graph>) {
        for g in graphs {
            for t in g.iter() {
                self.insert(t);
            }
        }
    }

    pub fn len(&self) -> usize {
        self.spo.len()
    }

    pub fn is_empty(&self) -> bool {
        self.spo.is_empty()
    }

    pub(crate) fn id(&self, term: &Term) -> Option<Id> {
        self.ids.get(term).copied()
    }

    pub(crate) fn term(&self, id: Id) -> &Term {
        &self.terms[id as usize]
    }

    fn set(&self, index: Index) -> &BTreeSet<[Id; 3]> {
        match index {
            Index::Spo => &self.spo,
            Index::Pos => &self.pos,
            Index::Osp => &self.osp,
        }
    }

    /// Id triples (in s, p, o order) matching the bound positions, read
    /// through `index`: a range over its bound key prefix, then a filter.
    pub(crate) fn scan_ids(&self, index: Index, pattern: [Option<Id>; 3]) -> impl Iterator<Item = [Id; 3]> + '_ {
        let order = index.order();
        let key = order.map(|i| pattern[i]);
        let prefix = key.iter().take_while(|k| k.is_some()).count();
        let mut low = [Id::MIN; 3];
        let mut high = [Id::MAX; 3];
        for i in 0..prefix {
            low[i] = key[i].unwrap_or_default();
            high[i] = low[i];
        }
        self.set(index)
            .range((Bound::Included(low), Bound::Included(high)))
            .filter(move |k| key.iter().zip(k.iter()).all(|(want, got)| want.is_none_or(|w| w == *got)))
            .map(move |k| {
                let mut spo = [0; 3];
                for (slot, &pos) in order.iter().enumerate() {
                    spo[pos] = k[slot];
                }
                spo
            })
    }

    pub(crate) fn scan(&self, pattern: [Option<Id>; 3]) -> impl Iterator<Item = [Id; 3]> + '_ {
        let bound = pattern.map(|p| p.is_some());
        self.scan_ids(Index::for_pattern(bound), pattern)
    }

    fn resolve(&self, s: Option<&Iri>, p: Option<&Iri>, o: Option<&Term>) -> Option<[Option<Id>; 3]> {
        let s = match s {
            Some(s) => Some(self.id(&Term::Iri(s.clone()))?),
            None => None,
        };
        let p = match p {
            Some(p) => Some(self.id(&Term::Iri(p.clone()))?),
            None => None,
        };
        let o = match o {
            Some(o) => Some(self.id(o)?),
            None => None,
        };
        Some([s, p, o])
    }

    fn to_triple(&self, [s, p, o]: [Id; 3]) -> Triple {
        let iri = |id| match self.term(id) {
            Term::Iri(i) => i.clone(),
            Term::Literal(_) => unreachable!("subjects and predicates are IRIs"),
        };
        Triple::new(iri(s), iri(p), self.term(o).clone())
    }

    /// Triples agreeing with every bound position, via a chosen index.
    pub fn lookup_via(&self, index: Index, s: Option<&Iri>, p: Option<&Iri>, o: Option<&Term>) -> BTreeSet<Triple> {
        match self.resolve(s, p, o) {
            Some(pattern) => self.scan_ids(index, pattern).map(|k| self.to_triple(k)).collect(),
            None => BTreeSet::new(),
        }
    }

    /// Triples agreeing with every bound position, via the index whose key
    /// prefix covers the bound positions.
    pub fn lookup(&self, s: Option<&Iri>, p: Option<&Iri>, o: Option<&Term>) -> BTreeSet<Triple> {
        match self.resolve(s, p, o) {
            Some(pattern) => self.scan(pattern).map(|k| self.to_triple(k)).collect(),
            None => BTreeSet::new(),
        }
    }

    pub fn to_graph(&self) -> Graph {
        self.spo.iter().map(|&k| self.to_triple(k)).collect()
    }
}
