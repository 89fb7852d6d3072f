//! Excerpt fixtures use short local names under `:`. Normalization maps
//! each of them onto the IRI the converter mints, through `aliases.tsv`.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::Path;

use scheda_core::{Iri, PrefixMap, Term, Triple};

use super::turtle;

const LOCAL_NS: &str = "urn:x-local:";

pub fn aliases(path: &Path) -> BTreeMap<String, String> {
    fs::read_to_string(path)
        .expect("alias table")
        .lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let (name, target) = l.split_once('\t').expect("two columns");
            (name.to_string(), target.to_string())
        })
        .collect()
}

fn rename(iri: &Iri, aliases: &BTreeMap<String, String>, base: &str) -> Result<Iri, String> {
    match iri.as_str().strip_prefix(LOCAL_NS) {
        Some(local) => {
            let target = aliases.get(local).ok_or_else(|| format!("no alias for :{local}"))?;
            Ok(Iri::new(format!("{base}{target}")).unwrap())
        }
        None => Ok(iri.clone()),
    }
}

/// Parses an excerpt file and rewrites its `:` names under `base`.
pub fn load(path: &Path, aliases: &BTreeMap<String, String>, base: &str) -> Result<BTreeSet<Triple>, String> {
    let text = fs::read_to_string(path).map_err(|e| e.to_string())?;
    let mut prefixes = PrefixMap::standard();
    prefixes.bind("", Iri::new(LOCAL_NS).unwrap());
    let raw = turtle::parse_with(&text, prefixes).map_err(|e| format!("{}: {e}", path.display()))?;
    raw.into_iter()
        .map(|t| {
            let object = match &t.object {
                Term::Iri(i) => Term::Iri(rename(i, aliases, base)?),
                other => other.clone(),
            };
            Ok(Triple::new(rename(&t.subject, aliases, base)?, rename(&t.predicate, aliases, base)?, object))
        })
        .collect()
}

/// Every `.ttl` file in `dir`, sorted by name.
pub fn files(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut v: Vec<_> = fs::read_dir(dir)
        .expect("excerpt directory")
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ttl"))
        .collect();
    v.sort();
    v
}
