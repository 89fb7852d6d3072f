mod support;

use proptest::prelude::*;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scheda_core::store::{Index, PatternTerm};
use scheda_core::{evaluate, stats, BgpQuery, Term, TripleStore};

use support::{corpus, gen, oracle};

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn evaluation_matches_brute_force(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gen::graph(&mut rng, 300);
        let store = TripleStore::from_graph(&g);
        for _ in 0..4 {
            let q = gen::bgp(&mut rng, &g, 3);
            let got = evaluate(&store, &q);
            prop_assert_eq!(&got.variables, &q.variables());
            prop_assert_eq!(got.rows, oracle::nested_loop(&g, &q));
        }
    }

    #[test]
    fn every_index_returns_the_same_matches(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = gen::graph(&mut rng, 150);
        let store = TripleStore::from_graph(&g);
        prop_assert_eq!(store.to_graph(), g.clone());
        let triples: Vec<_> = g.iter().collect();
        for _ in 0..8 {
            let Some(t) = triples.choose(&mut rng) else { break };
            let mask: [bool; 3] = [rand::Rng::gen(&mut rng), rand::Rng::gen(&mut rng), rand::Rng::gen(&mut rng)];
            let s = mask[0].then_some(&t.subject);
            let p = mask[1].then_some(&t.predicate);
            let o = mask[2].then_some(&t.object);
            let expected: std::collections::BTreeSet<_> = g
                .iter()
                .filter(|x| s.is_none_or(|s| &x.subject == s)
                    && p.is_none_or(|p| &x.predicate == p)
                    && o.is_none_or(|o| &x.object == o))
                .cloned()
                .collect();
            for index in Index::ALL {
                prop_assert_eq!(&store.lookup_via(index, s, p, o), &expected);
            }
            prop_assert_eq!(&store.lookup(s, p, o), &expected);
        }
    }

    #[test]
    fn loading_order_and_repeats_do_not_change_the_store(a in any::<u64>(), b in any::<u64>()) {
        let ga = gen::graph(&mut ChaCha8Rng::seed_from_u64(a), 80);
        let gb = gen::graph(&mut ChaCha8Rng::seed_from_u64(b), 80);
        let mut one = TripleStore::new();
        one.bulk_load([&ga, &gb]);
        let mut two = TripleStore::new();
        two.bulk_load([&gb, &ga, &gb]);
        let mut union = ga.clone();
        union.extend(gb.clone());
        prop_assert_eq!(one.len(), union.len());
        prop_assert_eq!(one.to_graph(), two.to_graph());
        prop_assert_eq!(stats(&one), stats(&two));
        prop_assert_eq!(stats(&one), stats(&TripleStore::from_graph(&union)));
    }
}

#[test]
fn constant_missing_from_the_store_gives_no_rows() {
    let g = corpus::graph();
    let store = TripleStore::from_graph(&g);
    let q = BgpQuery::parse("?x rdfs:label \"no such label\"@it").unwrap();
    assert!(evaluate(&store, &q).is_empty());
}

#[test]
fn corpus_queries_match_brute_force() {
    let g = corpus::graph();
    let store = TripleStore::from_graph(&g);
    for text in [
        "?e a fentry:FEntry\n?e fentry:describes ?p",
        "?r pro:withRole ?role\n?r pro:relatesTo ?x\n?x a ?c",
        "?a hico:isExtractedFrom ?d\n?d a fabio:MetadataDocument",
        "?x crm:P2_has_type ?t\n?t rdfs:label ?l",
        "?s ?p ?s",
    ] {
        let q = BgpQuery::parse(text).unwrap();
        assert_eq!(evaluate(&store, &q).rows, oracle::nested_loop(&g, &q), "{text}");
    }
    let q = BgpQuery::parse("?e a fentry:FEntry").unwrap();
    assert_eq!(evaluate(&store, &q).len(), 1);
}

#[test]
fn corpus_statistics() {
    let g = corpus::graph();
    let s = stats(&TripleStore::from_graph(&g));
    assert_eq!(s.triples, g.len());
    let typed: std::collections::BTreeSet<_> = g
        .iter()
        .filter(|t| t.predicate.as_str() == "http://www.w3.org/1999/02/22-rdf-syntax-ns#type")
        .map(|t| t.subject.clone())
        .collect();
    assert_eq!(s.typed_entities, typed.len());
    assert!(s.links.values().all(|&n| n == 0));
}

#[test]
fn pattern_terms_print_as_ntriples() {
    let q = BgpQuery::parse("?x a <http://example.org/C>").unwrap();
    let p = &q.patterns()[0];
    assert_eq!(p.s.to_string(), "?x");
    assert_eq!(
        p.p,
        PatternTerm::Const(Term::Iri(scheda_core::Iri::new("http://www.w3.org/1999/02/22-rdf-syntax-ns#type").unwrap()))
    );
    assert_eq!(p.o.to_string(), "<http://example.org/C>");
}
