//! Deterministic IRIs for everything the mapper creates.
//!
//! Top-level resources live at `{base}{kind}/{slug}`; nodes derived from
//! them (creations, roles, measurements, ...) append facet segments, e.g.
//! `photo/72486/positive/item/custody/1`.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use unicode_normalization::char::is_combining_mark;
use unicode_normalization::UnicodeNormalization;

use crate::error::IriError;
use crate::rdf::Iri;

pub const DEFAULT_BASE: &str = "https://w3id.org/zericatalog/";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntityKind {
    Fentry,
    Oaentry,
    Photo,
    Artwork,
    Person,
    Group,
    Place,
    Event,
    Term,
    Time,
    Document,
    Archive,
}

impl EntityKind {
    pub const ALL: [EntityKind; 12] = [
        EntityKind::Fentry,
        EntityKind::Oaentry,
        EntityKind::Photo,
        EntityKind::Artwork,
        EntityKind::Person,
        EntityKind::Group,
        EntityKind::Place,
        EntityKind::Event,
        EntityKind::Term,
        EntityKind::Time,
        EntityKind::Document,
        EntityKind::Archive,
    ];

    pub fn segment(self) -> &'static str {
        match self {
            EntityKind::Fentry => "fentry",
            EntityKind::Oaentry => "oaentry",
            EntityKind::Photo => "photo",
            EntityKind::Artwork => "artwork",
            EntityKind::Person => "person",
            EntityKind::Group => "group",
            EntityKind::Place => "place",
            EntityKind::Event => "event",
            EntityKind::Term => "term",
            EntityKind::Time => "time",
            EntityKind::Document => "document",
            EntityKind::Archive => "archive",
        }
    }
}

impl FromStr for EntityKind {
    type Err = IriError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        EntityKind::ALL
            .into_iter()
            .find(|k| k.segment() == s)
            .ok_or_else(|| IriError::UnknownKind(s.to_string()))
    }
}

impl fmt::Display for EntityKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.segment())
    }
}

/// Path suffix identifying a node derived from another resource.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Facet {
    Shot,
    Expression,
    Creation,
    /// A manifestation named by its format, e.g. `positive`.
    Manifestation(String),
    Item,
    Measurement,
    Dimension(String),
    Condition,
    ConditionState,
    Contact(String),
    Appellation,
    Evidence(String),
    Role(usize),
    Interpretation(usize),
    Custody(usize),
    Move(usize),
    Acquisition(usize),
    Identifier(usize),
    Title(usize),
    Influence(usize),
}

impl Facet {
    fn path(&self) -> Result<String, IriError> {
        Ok(match self {
            Facet::Shot => "shot".into(),
            Facet::Expression => "expression".into(),
            Facet::Creation => "creation".into(),
            Facet::Manifestation(name) => slugify(name)?,
            Facet::Item => "item".into(),
            Facet::Measurement => "measurement".into(),
            Facet::Dimension(name) => slugify(name)?,
            Facet::Condition => "condition".into(),
            Facet::ConditionState => "condition/state".into(),
            Facet::Contact(name) => format!("contact/{}", slugify(name)?),
            Facet::Appellation => "appellation".into(),
            Facet::Evidence(name) => format!("evidence/{}", slugify(name)?),
            Facet::Role(n) => format!("role/{n}"),
            Facet::Interpretation(n) => format!("interpretation/{n}"),
            Facet::Custody(n) => format!("custody/{n}"),
            Facet::Move(n) => format!("move/{n}"),
            Facet::Acquisition(n) => format!("acquisition/{n}"),
            Facet::Identifier(n) => format!("identifier/{n}"),
            Facet::Title(n) => format!("title/{n}"),
            Facet::Influence(n) => format!("influence/{n}"),
        })
    }
}

/// Lowercase ASCII slug: NFKD, drop combining marks, lowercase, collapse
/// every run of other characters into one hyphen, trim hyphens.
pub fn slugify(name: &str) -> Result<String, IriError> {
    let mut slug = String::with_capacity(name.len());
    let mut pending_hyphen = false;
    for c in name.nfkd().filter(|c| !is_combining_mark(*c)) {
        let c = c.to_ascii_lowercase();
        if c.is_ascii_alphanumeric() {
            if pending_hyphen && !slug.is_empty() {
                slug.push('-');
            }
            pending_hyphen = false;
            slug.push(c);
        } else {
            pending_hyphen = true;
        }
    }
    if slug.is_empty() {
        Err(IriError::EmptyAfterNormalization(name.to_string()))
    } else {
        Ok(slug)
    }
}

/// Whitespace-normalized key; two keys are the same entity iff these agree.
pub fn canonical_key(key: &str) -> String {
    key.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Slug assignments for keys whose plain slugs collide within one run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CollisionTable {
    assigned: HashMap<(EntityKind, String), String>,
}

impl CollisionTable {
    pub fn slug_for(&self, kind: EntityKind, canonical: &str) -> Option<&str> {
        self.assigned.get(&(kind, canonical.to_string())).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.assigned.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assigned.is_empty()
    }
}

/// Assigns slugs first-come in observation order: the first key claiming a
/// slug keeps it, later distinct keys get `-2`, `-3`, ...
#[derive(Debug, Default)]
pub struct CollisionBuilder {
    claimed: HashMap<(EntityKind, String), String>,
    slugs: HashMap<(EntityKind, String), String>,
    suffixed: HashMap<(EntityKind, String), String>,
}

impl CollisionBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Registers a key; returns true if it was given a suffixed slug.
    pub fn observe(&mut self, kind: EntityKind, key: &str) -> Result<bool, IriError> {
        let canonical = canonical_key(key);
        if let Some(slug) = self.slugs.get(&(kind, canonical.clone())) {
            return Ok(self.suffixed.contains_key(&(kind, slug.clone())));
        }
        let bare = slugify(&canonical)?;
        let mut slug = bare.clone();
        let mut n = 2;
        while self.claimed.contains_key(&(kind, slug.clone())) {
            slug = format!("{bare}-{n}");
            n += 1;
        }
        self.claimed.insert((kind, slug.clone()), canonical.clone());
        self.slugs.insert((kind, canonical.clone()), slug.clone());
        let collided = slug != bare;
        if collided {
            self.suffixed.insert((kind, slug), canonical);
        }
        Ok(collided)
    }

    /// Only suffixed assignments need to be stored; everything else keeps
    /// its plain slug.
    pub fn build(self) -> CollisionTable {
        CollisionTable {
            assigned: self
                .suffixed
                .into_iter()
                .map(|((kind, slug), canonical)| ((kind, canonical), slug))
                .collect(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct IriPolicy {
    base: Iri,
    collisions: Arc<CollisionTable>,
}

impl Default for IriPolicy {
    fn default() -> Self {
        IriPolicy::new(DEFAULT_BASE).expect("default base is valid")
    }
}

impl IriPolicy {
    pub fn new(base: &str) -> Result<Self, IriError> {
        if !base.ends_with('/') {
            return Err(IriError::BadBase(base.to_string()));
        }
        let base = Iri::new(base).map_err(|_| IriError::BadBase(base.to_string()))?;
        Ok(IriPolicy {
            base,
            collisions: Arc::new(CollisionTable::default()),
        })
    }

    pub fn with_collisions(mut self, table: CollisionTable) -> Self {
        self.collisions = Arc::new(table);
        self
    }

    pub fn base(&self) -> &Iri {
        &self.base
    }

    /// Slug used for `key` in this run.
    pub fn slug(&self, kind: EntityKind, key: &str) -> Result<String, IriError> {
        let canonical = canonical_key(key);
        if canonical.is_empty() {
            return Err(IriError::EmptyKey);
        }
        match self.collisions.slug_for(kind, &canonical) {
            Some(slug) => Ok(slug.to_string()),
            None => slugify(&canonical),
        }
    }

    pub fn mint(&self, kind: EntityKind, key: &str, sub: Option<&Facet>) -> Result<Iri, IriError> {
        let slug = self.slug(kind, key)?;
        let iri = self.base.join(&format!("{}/{}", kind.segment(), slug));
        match sub {
            Some(facet) => self.derive(&iri, facet),
            None => Ok(iri),
        }
    }

    /// `{parent}/{facet}`.
    pub fn derive(&self, parent: &Iri, facet: &Facet) -> Result<Iri, IriError> {
        Ok(parent.join(&facet.path()?))
    }

    /// True for IRIs under this policy's base.
    pub fn is_minted(&self, iri: &Iri) -> bool {
        iri.as_str().starts_with(self.base.as_str())
    }
}
