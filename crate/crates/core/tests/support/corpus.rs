//! The fixture corpus and the hand-labeled reconciliation gold set.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;

use scheda_core::{parse_records, EntryRecord, Graph, Iri, MatchStatus, Pipeline, Reconciliation, DEFAULT_BASE};

use super::fixtures;

pub fn records() -> Vec<EntryRecord> {
    let dir = fixtures().join("corpus");
    let mut files: Vec<_> = fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    files.sort();
    files
        .into_iter()
        .flat_map(|f| parse_records(&fs::read(f).unwrap()).unwrap())
        .collect()
}

pub fn graph() -> Graph {
    let batch = Pipeline::default().run(&records());
    assert!(batch.errors.is_empty(), "{:?}", batch.errors);
    batch.merged()
}

pub struct Gold {
    /// Local IRI to the authority id it should be linked to.
    pub links: BTreeMap<Iri, String>,
    /// Local IRIs that must end up in review.
    pub review: BTreeSet<Iri>,
}

pub fn gold() -> Gold {
    let text = fs::read_to_string(fixtures().join("authorities/gold.tsv")).unwrap();
    let base = Iri::new(DEFAULT_BASE).unwrap();
    let mut g = Gold {
        links: BTreeMap::new(),
        review: BTreeSet::new(),
    };
    for line in text.lines().filter(|l| !l.starts_with('#') && !l.trim().is_empty()) {
        let (local, target) = line.split_once('\t').unwrap();
        let iri = Iri::new(format!("{}{local}", base.as_str())).unwrap();
        if target == "review" {
            g.review.insert(iri);
        } else {
            g.links.insert(iri, target.to_string());
        }
    }
    g
}

/// Accepted matches compared with the gold set on the rows not built to
/// be ambiguous.
#[derive(Debug, Default)]
pub struct GoldCheck {
    pub true_positives: usize,
    pub extra: Vec<(Iri, String, f64)>,
    pub missing: Vec<(Iri, String)>,
    /// Ambiguous gold rows that were accepted, rejected or linked.
    pub leaked: Vec<Iri>,
}

impl GoldCheck {
    pub fn precision(&self) -> f64 {
        let accepted = self.true_positives + self.extra.len();
        if accepted == 0 {
            1.0
        } else {
            self.true_positives as f64 / accepted as f64
        }
    }

    pub fn passed(&self) -> bool {
        self.extra.is_empty() && self.missing.is_empty() && self.leaked.is_empty()
    }
}

pub fn check(result: &Reconciliation, gold: &Gold) -> GoldCheck {
    let mut out = GoldCheck::default();
    let accepted: BTreeMap<&Iri, (&str, f64)> = result
        .with_status(MatchStatus::Accepted)
        .map(|c| (&c.local, (c.authority.as_str(), c.score)))
        .collect();
    for (local, (auth, score)) in &accepted {
        if gold.review.contains(*local) {
            continue;
        }
        match gold.links.get(*local) {
            Some(want) if want == auth => out.true_positives += 1,
            _ => out.extra.push(((*local).clone(), auth.to_string(), *score)),
        }
    }
    for (local, want) in &gold.links {
        if accepted.get(local).map(|(a, _)| *a) != Some(want.as_str()) {
            out.missing.push((local.clone(), want.clone()));
        }
    }
    let in_review: BTreeSet<&Iri> = result.review().into_iter().map(|c| &c.local).collect();
    for local in &gold.review {
        let linked = result.links.iter().any(|t| &t.subject == local);
        if linked || !in_review.contains(local) {
            out.leaked.push(local.clone());
        }
    }
    out
}
