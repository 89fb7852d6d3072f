//! Offline alignment of local agents, places and terms against authority
//! snapshots.

use std::collections::{BTreeMap, HashSet};
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::SnapshotError;
use crate::iri::slugify;
use crate::mapping::term;
use crate::rdf::{Graph, Iri, Term};

const NAME_WEIGHT: f64 = 0.8;
const DATE_WEIGHT: f64 = 0.2;

/// Tolerance for comparing scores against the threshold and margin.
const EPS: f64 = 1e-9;

const COLUMNS: [&str; 12] = [
    "id",
    "kind",
    "preferred_name",
    "aliases",
    "birth_year",
    "death_year",
    "viaf",
    "ulan",
    "wikidata",
    "geonames",
    "aat",
    "dbpedia",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum AuthorityKind {
    /// People and groups.
    Person,
    Place,
    Term,
}

impl FromStr for AuthorityKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "person" => Ok(AuthorityKind::Person),
            "place" => Ok(AuthorityKind::Place),
            "term" => Ok(AuthorityKind::Term),
            other => Err(format!("unknown kind {other:?}")),
        }
    }
}

/// External datasets links may point to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Viaf,
    Ulan,
    Wikidata,
    Geonames,
    Aat,
    Dbpedia,
}

impl Target {
    pub const ALL: [Target; 6] = [
        Target::Viaf,
        Target::Ulan,
        Target::Wikidata,
        Target::Geonames,
        Target::Aat,
        Target::Dbpedia,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Target::Viaf => "viaf",
            Target::Ulan => "ulan",
            Target::Wikidata => "wikidata",
            Target::Geonames => "geonames",
            Target::Aat => "aat",
            Target::Dbpedia => "dbpedia",
        }
    }

    /// The dataset an IRI belongs to, judged by host and path.
    pub fn classify(iri: &Iri) -> Option<Target> {
        let rest = iri.as_str().split_once("://")?.1;
        let (host, path) = rest.split_once('/').unwrap_or((rest, ""));
        let host = host.strip_prefix("www.").unwrap_or(host);
        let under = |domain: &str| host == domain || host.ends_with(&format!(".{domain}"));
        if under("viaf.org") {
            Some(Target::Viaf)
        } else if host == "vocab.getty.edu" && path.starts_with("ulan/") {
            Some(Target::Ulan)
        } else if host == "vocab.getty.edu" && path.starts_with("aat/") {
            Some(Target::Aat)
        } else if under("geonames.org") {
            Some(Target::Geonames)
        } else if under("wikidata.org") {
            Some(Target::Wikidata)
        } else if under("dbpedia.org") {
            Some(Target::Dbpedia)
        } else {
            None
        }
    }
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AuthorityRecord {
    pub id: String,
    pub kind: AuthorityKind,
    pub preferred_name: String,
    pub aliases: Vec<String>,
    pub birth_year: Option<i32>,
    pub death_year: Option<i32>,
    pub external: BTreeMap<Target, Iri>,
}

impl AuthorityRecord {
    pub fn names(&self) -> impl Iterator<Item = &str> {
        std::iter::once(self.preferred_name.as_str()).chain(self.aliases.iter().map(String::as_str))
    }
}

/// Reads a snapshot TSV (header row required, `#` comments allowed).
pub fn load_snapshot(input: &[u8]) -> Result<Vec<AuthorityRecord>, SnapshotError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(b'\t')
        .comment(Some(b'#'))
        .flexible(true)
        .quoting(false)
        .from_reader(input);
    let header_err = |message: String| SnapshotError::BadRow { line: 1, message };
    let headers = reader.headers().map_err(|e| header_err(e.to_string()))?;
    if headers.iter().map(str::trim).ne(COLUMNS) {
        return Err(header_err(format!("expected header {}", COLUMNS.join("\t"))));
    }

    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for row in reader.records() {
        let row = row.map_err(|e| SnapshotError::BadRow {
            line: e.position().map_or(0, |p| p.line() as usize),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line() as usize);
        let bad = |message: String| SnapshotError::BadRow { line, message };
        if row.len() != COLUMNS.len() {
            return Err(bad(format!("expected {} columns, found {}", COLUMNS.len(), row.len())));
        }
        let col = |i: usize| row.get(i).unwrap_or("").trim();

        let id = col(0);
        if id.is_empty() {
            return Err(bad("empty id".into()));
        }
        if !seen.insert(id.to_string()) {
            return Err(SnapshotError::DuplicateId { id: id.into(), line });
        }
        let kind: AuthorityKind = col(1).parse().map_err(bad)?;
        let preferred_name = col(2);
        if preferred_name.is_empty() {
            return Err(bad("empty preferred_name".into()));
        }
        let aliases = col(3)
            .split('|')
            .map(str::trim)
            .filter(|a| !a.is_empty())
            .map(String::from)
            .collect();
        let year = |i: usize| -> Result<Option<i32>, SnapshotError> {
            match col(i) {
                "" => Ok(None),
                v => v.parse().map(Some).map_err(|_| SnapshotError::BadYear {
                    value: v.to_string(),
                    line,
                }),
            }
        };
        let (birth_year, death_year) = (year(4)?, year(5)?);
        if let (Some(b), Some(d)) = (birth_year, death_year) {
            if b > d {
                return Err(SnapshotError::BadYear {
                    value: format!("{b}-{d}"),
                    line,
                });
            }
        }
        let mut external = BTreeMap::new();
        for (i, target) in Target::ALL.iter().enumerate() {
            let v = col(6 + i);
            if !v.is_empty() {
                let iri = Iri::new(v).map_err(|e| bad(format!("{} column: {e}", target.name())))?;
                external.insert(*target, iri);
            }
        }
        out.push(AuthorityRecord {
            id: id.to_string(),
            kind,
            preferred_name: preferred_name.to_string(),
            aliases,
            birth_year,
            death_year,
            external,
        });
    }
    Ok(out)
}

fn sorted_tokens(slug: &str) -> String {
    let mut tokens: Vec<&str> = slug.split('-').collect();
    tokens.sort_unstable();
    tokens.join("-")
}

/// Jaro-Winkler on slugs, taking the better of the given token order and
/// sorted token order.
pub fn name_similarity(a: &str, b: &str) -> f64 {
    let (Ok(a), Ok(b)) = (slugify(a), slugify(b)) else {
        return 0.0;
    };
    let direct = strsim::jaro_winkler(&a, &b);
    let sorted = strsim::jaro_winkler(&sorted_tokens(&a), &sorted_tokens(&b));
    direct.max(sorted)
}

/// 1 unless both sides carry years and the spans cannot overlap.
pub fn date_compatibility(local: Option<(i32, i32)>, auth: &AuthorityRecord) -> f64 {
    let Some((from, to)) = local else { return 1.0 };
    if auth.birth_year.is_none() && auth.death_year.is_none() {
        return 1.0;
    }
    let birth = auth.birth_year.unwrap_or(i32::MIN);
    let death = auth.death_year.unwrap_or(i32::MAX);
    if from <= death && birth <= to {
        1.0
    } else {
        0.0
    }
}

pub fn score_match(local_name: &str, local_years: Option<(i32, i32)>, auth: &AuthorityRecord) -> f64 {
    let name = auth
        .names()
        .map(|n| name_similarity(local_name, n))
        .fold(0.0, f64::max);
    NAME_WEIGHT * name + DATE_WEIGHT * date_compatibility(local_years, auth)
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReconcileParams {
    pub threshold: f64,
    pub margin: f64,
}

impl Default for ReconcileParams {
    fn default() -> Self {
        ReconcileParams {
            threshold: 0.85,
            margin: 0.05,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum MatchStatus {
    Accepted,
    Ambiguous,
    Rejected,
}

#[derive(Clone, Debug, PartialEq)]
pub struct MatchCandidate {
    pub local: Iri,
    pub authority: String,
    pub score: f64,
    pub status: MatchStatus,
    pub runner_up: Option<(String, f64)>,
}

/// A local resource eligible for reconciliation.
#[derive(Clone, Debug, PartialEq)]
pub struct LocalEntity {
    pub iri: Iri,
    pub kind: AuthorityKind,
    pub names: Vec<String>,
    pub years: Option<(i32, i32)>,
}

/// Source of candidate authority records; snapshots implement it, and a
/// remote lookup service could too.
pub trait AuthorityResolver: Sync {
    fn candidates(&self, entity: &LocalEntity) -> Vec<&AuthorityRecord>;
}

impl AuthorityResolver for [AuthorityRecord] {
    fn candidates(&self, entity: &LocalEntity) -> Vec<&AuthorityRecord> {
        self.iter().filter(|a| a.kind == entity.kind).collect()
    }
}

impl AuthorityResolver for Vec<AuthorityRecord> {
    fn candidates(&self, entity: &LocalEntity) -> Vec<&AuthorityRecord> {
        self.as_slice().candidates(entity)
    }
}

const KIND_CLASSES: [(&str, AuthorityKind); 6] = [
    ("crm:E21_Person", AuthorityKind::Person),
    ("crm:E74_Group", AuthorityKind::Person),
    ("crm:E53_Place", AuthorityKind::Place),
    ("crm:E55_Type", AuthorityKind::Term),
    ("crm:E57_Material", AuthorityKind::Term),
    ("crm:E58_Measurement_Unit", AuthorityKind::Term),
];

fn years_from_notes(graph: &Graph, node: &Iri) -> Option<(i32, i32)> {
    let note = term("crm:P3_has_note");
    let found = graph.objects(node, &note).find_map(|o| {
        let text = o.as_literal()?.lexical();
        let years: Vec<i32> = text
            .split(|c: char| !c.is_ascii_digit())
            .filter(|t| t.len() == 4)
            .filter_map(|t| t.parse().ok())
            .collect();
        match years.as_slice() {
            [y] => Some((*y, *y)),
            [a, b, ..] if a <= b => Some((*a, *b)),
            _ => None,
        }
    });
    found
}

/// Typed agents, places and terms with their labels, ordered by IRI.
pub fn local_entities(graph: &Graph) -> Vec<LocalEntity> {
    let rdf_type = term("rdf:type");
    let label = term("rdfs:label");
    let mut found: BTreeMap<Iri, AuthorityKind> = BTreeMap::new();
    for (class, kind) in KIND_CLASSES {
        let class = Term::Iri(term(class));
        for t in graph.matching(None, Some(&rdf_type), Some(&class)) {
            found.entry(t.subject.clone()).or_insert(kind);
        }
    }
    found
        .into_iter()
        .filter_map(|(iri, kind)| {
            let names: Vec<String> = graph
                .objects(&iri, &label)
                .filter_map(|o| o.as_literal().map(|l| l.lexical().to_string()))
                .collect();
            if names.is_empty() {
                return None;
            }
            let years = match kind {
                AuthorityKind::Person => years_from_notes(graph, &iri),
                _ => None,
            };
            Some(LocalEntity { iri, kind, names, years })
        })
        .collect()
}

#[derive(Clone, Debug, Default)]
pub struct Reconciliation {
    /// `rdfs:seeAlso` links for accepted matches.
    pub links: Graph,
    /// Best candidate per local entity that had any, ordered by local IRI.
    pub candidates: Vec<MatchCandidate>,
}

impl Reconciliation {
    pub fn with_status(&self, status: MatchStatus) -> impl Iterator<Item = &MatchCandidate> {
        self.candidates.iter().filter(move |c| c.status == status)
    }

    pub fn review(&self) -> Vec<&MatchCandidate> {
        self.with_status(MatchStatus::Ambiguous).collect()
    }

    /// `local-iri, authority-id, score, runner-up-id, runner-up-score`.
    pub fn review_tsv(&self) -> String {
        let mut out = String::from("local\tauthority\tscore\trunner_up\trunner_up_score\n");
        for c in self.review() {
            let (rid, rscore) = match &c.runner_up {
                Some((id, s)) => (id.as_str(), format!("{s:.4}")),
                None => ("", String::new()),
            };
            out.push_str(&format!(
                "{}\t{}\t{:.4}\t{rid}\t{rscore}\n",
                c.local.as_str(),
                c.authority,
                c.score
            ));
        }
        out
    }
}

fn judge(entity: &LocalEntity, resolver: &(impl AuthorityResolver + ?Sized), params: ReconcileParams) -> Option<(MatchCandidate, Vec<Iri>)> {
    let mut scored: Vec<(f64, &AuthorityRecord)> = resolver
        .candidates(entity)
        .into_iter()
        .map(|auth| {
            let score = entity
                .names
                .iter()
                .map(|n| score_match(n, entity.years, auth))
                .fold(0.0, f64::max);
            (score, auth)
        })
        .collect();
    // Highest score first; ties by authority id keep the order stable.
    scored.sort_by(|a, b| b.0.total_cmp(&a.0).then_with(|| a.1.id.cmp(&b.1.id)));
    let (best_score, best) = *scored.first()?;
    let runner_up = scored.get(1).map(|(s, a)| (a.id.clone(), *s));
    let status = if best_score + EPS < params.threshold {
        MatchStatus::Rejected
    } else if runner_up
        .as_ref()
        .is_some_and(|(_, s)| best_score - s + EPS < params.margin)
    {
        MatchStatus::Ambiguous
    } else {
        MatchStatus::Accepted
    };
    let targets = match status {
        MatchStatus::Accepted => best.external.values().cloned().collect(),
        _ => Vec::new(),
    };
    Some((
        MatchCandidate {
            local: entity.iri.clone(),
            authority: best.id.clone(),
            score: best_score,
            status,
            runner_up,
        },
        targets,
    ))
}

/// Scores every local entity against the resolver's candidates. A match
/// is accepted when it reaches the threshold and leads the runner-up by
/// at least the margin; a close runner-up makes it ambiguous.
pub fn reconcile_with(
    graph: &Graph,
    resolver: &(impl AuthorityResolver + ?Sized),
    params: ReconcileParams,
) -> Reconciliation {
    let entities = local_entities(graph);
    let judged: Vec<_> = entities
        .par_iter()
        .filter_map(|e| judge(e, resolver, params))
        .collect();
    let see_also = term("rdfs:seeAlso");
    let mut out = Reconciliation::default();
    for (candidate, targets) in judged {
        for t in targets {
            out.links.insert(&candidate.local, &see_also, t);
        }
        out.candidates.push(candidate);
    }
    out
}

pub fn reconcile(graph: &Graph, snapshot: &[AuthorityRecord], params: ReconcileParams) -> Reconciliation {
    reconcile_with(graph, snapshot, params)
}
