//! Brute-force pattern matching: every pattern against every triple,
//! combined by nested loops, with no indexes and no reordering.

use std::collections::BTreeMap;

use scheda_core::store::{BgpQuery, PatternTerm};
use scheda_core::{Graph, Term};

fn bind(pt: &PatternTerm, value: &Term, row: &mut BTreeMap<String, Term>) -> bool {
    match pt {
        PatternTerm::Const(c) => c == value,
        PatternTerm::Var(v) => match row.get(v) {
            Some(bound) => bound == value,
            None => {
                row.insert(v.clone(), value.clone());
                true
            }
        },
    }
}

/// Solutions in the variable order of `query.variables()`, sorted.
pub fn nested_loop(graph: &Graph, query: &BgpQuery) -> Vec<Vec<Term>> {
    let triples: Vec<_> = graph.iter().cloned().collect();
    let mut partial: Vec<BTreeMap<String, Term>> = vec![BTreeMap::new()];
    for pattern in query.patterns() {
        let mut next = Vec::new();
        for row in &partial {
            for t in &triples {
                let mut r = row.clone();
                if bind(&pattern.s, &Term::Iri(t.subject.clone()), &mut r)
                    && bind(&pattern.p, &Term::Iri(t.predicate.clone()), &mut r)
                    && bind(&pattern.o, &t.object, &mut r)
                {
                    next.push(r);
                }
            }
        }
        partial = next;
    }
    let vars = query.variables();
    let mut rows: Vec<Vec<Term>> = partial
        .into_iter()
        .map(|r| vars.iter().map(|v| r[v].clone()).collect())
        .collect();
    rows.sort();
    rows
}
