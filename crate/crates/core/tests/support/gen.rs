//! Seeded random graphs and patterns.

use rand::seq::SliceRandom;
use rand::Rng;

use scheda_core::store::{BgpQuery, PatternTerm, TriplePattern};
use scheda_core::{Graph, Iri, Literal, Term, Triple};

const NAMESPACES: &[&str] = &[
    "https://w3id.org/zericatalog/person/",
    "http://www.cidoc-crm.org/cidoc-crm/",
    "http://example.org/a/b#",
    "urn:x:",
];

const TEXTS: &[&str] = &[
    "Scheda F 72486",
    "Fotografia \"Battesimo\"",
    "back\\slash",
    "two\nlines",
    "tab\there",
    "carriage\rreturn",
    "Università di Bologna",
    "Ἀθῆναι",
    "emoji 🎞",
    "",
    "1940",
    "semi; colon, comma. dot",
    "# not a comment",
    "<not an iri>",
];

pub fn iri<R: Rng>(rng: &mut R, pool: usize) -> Iri {
    let ns = NAMESPACES.choose(rng).unwrap();
    let n = rng.gen_range(0..pool.max(1));
    let local = match rng.gen_range(0..4) {
        0 => format!("n{n}"),
        1 => format!("E{n}_Thing"),
        2 => format!("{n}/item"),
        _ => format!("x-{n}.v"),
    };
    Iri::new(format!("{ns}{local}")).unwrap()
}

pub fn literal<R: Rng>(rng: &mut R) -> Literal {
    let text = TEXTS.choose(rng).unwrap().to_string();
    match rng.gen_range(0..5) {
        0 => Literal::plain(text),
        1 => Literal::it(text),
        2 => Literal::lang(text, "en-gb").unwrap(),
        3 => Literal::gyear(rng.gen_range(1400..2030)),
        _ => Literal::typed(text, Iri::new("http://www.w3.org/2001/XMLSchema#string").unwrap()),
    }
}

pub fn triple<R: Rng>(rng: &mut R, pool: usize) -> Triple {
    let s = iri(rng, pool);
    let p = iri(rng, 4);
    let o: Term = if rng.gen_bool(0.7) {
        iri(rng, pool).into()
    } else {
        literal(rng).into()
    };
    Triple::new(s, p, o)
}

/// Up to `max` triples drawn from a pool small enough to repeat terms.
pub fn graph<R: Rng>(rng: &mut R, max: usize) -> Graph {
    let n = rng.gen_range(0..=max);
    let pool = (n / 3).max(2);
    (0..n).map(|_| triple(rng, pool)).collect()
}

fn position<R: Rng>(rng: &mut R, from: &[Term], fresh: impl FnOnce(&mut R) -> Term) -> PatternTerm {
    const VARS: &[&str] = &["a", "b", "c", "d"];
    match rng.gen_range(0..10) {
        0..=5 => PatternTerm::Var(VARS.choose(rng).unwrap().to_string()),
        6..=8 if !from.is_empty() => PatternTerm::Const(from.choose(rng).unwrap().clone()),
        _ => PatternTerm::Const(fresh(rng)),
    }
}

/// 1 to `max` patterns whose constants mostly occur in `graph`.
pub fn bgp<R: Rng>(rng: &mut R, graph: &Graph, max: usize) -> BgpQuery {
    let triples: Vec<&Triple> = graph.iter().collect();
    let n = rng.gen_range(1..=max);
    let patterns = (0..n)
        .map(|_| {
            let anchor = triples.choose(rng);
            let s: Vec<Term> = anchor.map(|t| Term::Iri(t.subject.clone())).into_iter().collect();
            let p: Vec<Term> = anchor.map(|t| Term::Iri(t.predicate.clone())).into_iter().collect();
            let o: Vec<Term> = anchor.map(|t| t.object.clone()).into_iter().collect();
            TriplePattern::new(
                position(rng, &s, |r| Term::Iri(iri(r, 3))),
                position(rng, &p, |r| Term::Iri(iri(r, 4))),
                position(rng, &o, |r| Term::Literal(literal(r))),
            )
        })
        .collect();
    BgpQuery::new(patterns).unwrap()
}
