//! Pattern builders and the per-record orchestration.

use std::collections::{HashMap, HashSet};

use once_cell::sync::Lazy;
use regex::Regex;

use crate::error::{BuildError, ConvertError};
use crate::iri::{canonical_key, slugify, EntityKind, Facet, IriPolicy};
use crate::rdf::{Graph, Iri, Literal, Term};
use crate::record::{EntryKind, EntryRecord, FieldOccurrence, Fields, Warning, WarningKind};

use super::registry::{term, TermRegistry};
use super::table::{Level, MappingTable, ObjectKind};
use super::vocab::{
    cataloguer_role, influence_kind, lookup_role, FixedTerm, RoleFamily, RoleRef, AUTHORSHIP_ATTRIBUTION,
    HEIGHT, IDENTIFIER_CODES, INVENTORY_NUMBER, PREFERRED_ATTRIBUTION, ROLE_ATTRIBUTION, TITLE_CODES, WIDTH,
};

static SINGLE_YEAR: Lazy<Regex> = Lazy::new(|| Regex::new(r"^(\d{4})$").unwrap());
static YEAR_RANGE: Lazy<Regex> = Lazy::new(|| Regex::new(r"^(\d{4})\s*-\s*(\d{4})$").unwrap());
static FULL_DATE: Lazy<Regex> = Lazy::new(|| Regex::new(r"^(\d{4})-\d{2}-\d{2}$").unwrap());

/// Facet names a manifestation may not take, since derived nodes use them.
const RESERVED_FACETS: &[&str] = &[
    "shot",
    "creation",
    "expression",
    "title",
    "role",
    "interpretation",
    "evidence",
    "influence",
    "identifier",
    "item",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct ConvertOptions {
    /// Fail on role names outside the role vocabulary instead of minting a
    /// local role.
    pub strict_roles: bool,
}

/// Output of one record conversion.
#[derive(Clone, Debug, Default)]
pub struct Conversion {
    pub graph: Graph,
    pub warnings: Vec<Warning>,
    /// Every (kind, key) pair minted through the policy, in mint order.
    pub minted: Vec<(EntityKind, String)>,
}

/// A manifestation and its single item. For OA entries both are the
/// artwork item.
#[derive(Clone, Debug)]
pub struct Carrier {
    pub facet: String,
    pub manifestation: Iri,
    pub item: Iri,
    pub digital: bool,
    pub fields: Vec<FieldOccurrence>,
}

/// Nodes a record's builders share.
#[derive(Clone, Debug)]
pub struct Nodes {
    pub entry: Iri,
    pub expression: Iri,
    /// The photograph (F) or the artwork (OA).
    pub subject: Iri,
    pub subject_label: (String, Option<String>),
    pub creation: Option<Iri>,
    pub shot: Option<Iri>,
    pub carriers: Vec<Carrier>,
    pub artwork: Option<Iri>,
    pub artwork_item: Option<Iri>,
    pub cataloguer: Option<Iri>,
}

pub struct EntryBuilder<'a> {
    record: &'a EntryRecord,
    table: &'a MappingTable,
    policy: &'a IriPolicy,
    options: ConvertOptions,
    graph: Graph,
    warnings: Vec<Warning>,
    minted: Vec<(EntityKind, String)>,
    counters: HashMap<(Iri, &'static str), usize>,
    pub nodes: Nodes,
}

/// Converts one record with default options.
pub fn convert_entry(record: &EntryRecord, table: &MappingTable, policy: &IriPolicy) -> Result<Graph, ConvertError> {
    convert_entry_with(record, table, policy, ConvertOptions::default()).map(|c| c.graph)
}

pub fn convert_entry_with(
    record: &EntryRecord,
    table: &MappingTable,
    policy: &IriPolicy,
    options: ConvertOptions,
) -> Result<Conversion, ConvertError> {
    let tag = |source: BuildError| ConvertError {
        record_id: record.id.clone(),
        source,
    };
    let mut b = EntryBuilder::new(record, table, policy, options).map_err(tag)?;
    b.run().map_err(tag)?;
    Ok(b.finish())
}

fn is_truthy(value: &str) -> bool {
    !matches!(
        value.trim().to_lowercase().as_str(),
        "" | "no" | "false" | "0" | "n"
    )
}

fn year_span(raw: &str) -> Option<(i32, i32)> {
    let raw = raw.trim();
    let year = |s: &str| s.parse::<i32>().ok();
    if let Some(c) = SINGLE_YEAR.captures(raw) {
        let y = year(&c[1])?;
        return Some((y, y));
    }
    if let Some(c) = YEAR_RANGE.captures(raw) {
        let (a, b) = (year(&c[1])?, year(&c[2])?);
        return (a <= b).then_some((a, b));
    }
    if let Some(c) = FULL_DATE.captures(raw) {
        let y = year(&c[1])?;
        return Some((y, y));
    }
    None
}

fn parse_measure(raw: &str) -> Result<String, BuildError> {
    let text = raw.trim().replace(',', ".");
    match text.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 0.0 && !text.starts_with('+') => Ok(text),
        _ => Err(BuildError::BadDimension(raw.to_string())),
    }
}

fn has_any(fields: &[FieldOccurrence], codes: &[&str]) -> bool {
    fields.iter().any(|f| codes.contains(&f.code.as_str()))
}

impl<'a> EntryBuilder<'a> {
    pub fn new(
        record: &'a EntryRecord,
        table: &'a MappingTable,
        policy: &'a IriPolicy,
        options: ConvertOptions,
    ) -> Result<Self, BuildError> {
        let mut minted = Vec::new();
        let mut mint = |kind: EntityKind, key: &str| -> Result<Iri, BuildError> {
            minted.push((kind, canonical_key(key)));
            Ok(policy.mint(kind, key, None)?)
        };
        let (entry, subject) = match record.kind {
            EntryKind::F => (
                mint(EntityKind::Fentry, &record.id)?,
                mint(EntityKind::Photo, &record.id)?,
            ),
            EntryKind::OA => {
                let key = record.field("OAWK").map_or(record.id.as_str(), FieldOccurrence::key);
                (
                    mint(EntityKind::Oaentry, &record.id)?,
                    mint(EntityKind::Artwork, key)?,
                )
            }
        };
        let expression = policy.derive(&entry, &Facet::Expression)?;
        let subject_label = Self::subject_label(record);
        Ok(EntryBuilder {
            record,
            table,
            policy,
            options,
            graph: Graph::new(),
            warnings: Vec::new(),
            minted,
            counters: HashMap::new(),
            nodes: Nodes {
                entry,
                expression,
                subject,
                subject_label,
                creation: None,
                shot: None,
                carriers: Vec::new(),
                artwork: None,
                artwork_item: None,
                cataloguer: None,
            },
        })
    }

    fn subject_label(record: &EntryRecord) -> (String, Option<String>) {
        let title = TITLE_CODES
            .iter()
            .find_map(|(code, _)| record.field(code))
            .or_else(|| record.field("SGTI"));
        match (record.kind, title) {
            (EntryKind::F, Some(t)) => (
                format!("Fotografia \"{}\"", t.value),
                t.translation.as_ref().map(|en| format!("Photograph \"{en}\"")),
            ),
            (EntryKind::F, None) => (
                format!("Fotografia {}", record.id),
                Some(format!("Photograph {}", record.id)),
            ),
            (EntryKind::OA, Some(t)) => (t.value.clone(), t.translation.clone()),
            (EntryKind::OA, None) => (
                format!("Opera d'arte {}", record.id),
                Some(format!("Work of art {}", record.id)),
            ),
        }
    }

    /// Runs every builder in order.
    pub fn run(&mut self) -> Result<(), BuildError> {
        self.build_entry_skeleton()?;
        self.map_work_level()?;
        self.map_expression_level()?;
        self.map_manifestation_level()?;
        self.map_item_level()?;
        self.map_roles()?;
        self.map_interpretations()?;
        self.map_influences()?;
        self.apply_field_table()?;
        Ok(())
    }

    pub fn finish(self) -> Conversion {
        Conversion {
            graph: self.graph,
            warnings: self.warnings,
            minted: self.minted,
        }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    // ---- emission helpers ----

    fn add(&mut self, s: &Iri, p: &str, o: impl Into<Term>) {
        self.graph.insert(s, &term(p), o);
    }

    fn a(&mut self, s: &Iri, class: &str) {
        self.add(s, "rdf:type", term(class));
    }

    fn label(&mut self, s: &Iri, it: &str, en: Option<&str>) {
        self.add(s, "rdfs:label", Literal::it(it));
        if let Some(en) = en {
            self.add(s, "rdfs:label", Literal::en(en));
        }
    }

    fn label_occ(&mut self, s: &Iri, occ: &FieldOccurrence) {
        self.label(s, &occ.value, occ.translation.as_deref());
    }

    fn mint(&mut self, kind: EntityKind, key: &str) -> Result<Iri, BuildError> {
        let iri = self.policy.mint(kind, key, None)?;
        self.minted.push((kind, canonical_key(key)));
        Ok(iri)
    }

    fn derive(&self, parent: &Iri, facet: Facet) -> Result<Iri, BuildError> {
        Ok(self.policy.derive(parent, &facet)?)
    }

    fn next_index(&mut self, parent: &Iri, tag: &'static str) -> usize {
        let n = self.counters.entry((parent.clone(), tag)).or_insert(0);
        *n += 1;
        *n
    }

    fn warn(&mut self, code: &str, kind: WarningKind, message: String) {
        self.warnings.push(Warning {
            record_id: self.record.id.clone(),
            code: code.to_string(),
            kind,
            message,
        });
    }

    fn describe(&mut self, node: &Iri) {
        let entry = self.nodes.entry.clone();
        let describes = match self.record.kind {
            EntryKind::F => "fentry:describes",
            EntryKind::OA => "oaentry:describes",
        };
        self.add(&entry, describes, node.clone());
        self.add(&entry, "crm:P70_documents", node.clone());
    }

    fn fixed_term(&mut self, t: &FixedTerm) -> Result<Iri, BuildError> {
        let iri = self.mint(EntityKind::Term, t.key)?;
        self.a(&iri, t.class);
        self.label(&iri, t.it, Some(t.en));
        Ok(iri)
    }

    fn term_node(&mut self, occ: &FieldOccurrence, class: &str) -> Result<Iri, BuildError> {
        let iri = self.mint(EntityKind::Term, occ.key())?;
        self.a(&iri, class);
        self.label_occ(&iri, occ);
        Ok(iri)
    }

    /// Person or group named by `name`; `kind_hint` holds a type field.
    fn agent(
        &mut self,
        name: &FieldOccurrence,
        kind_hint: Option<&FieldOccurrence>,
        default: EntityKind,
    ) -> Result<Iri, BuildError> {
        let kind = match kind_hint.and_then(|h| slugify(&h.value).ok()).as_deref() {
            Some("persona" | "person" | "p") => EntityKind::Person,
            Some("ente" | "group" | "gruppo" | "istituzione" | "institution" | "e") => EntityKind::Group,
            _ => default,
        };
        let iri = self.mint(kind, name.key())?;
        match kind {
            EntityKind::Person => self.a(&iri, "crm:E21_Person"),
            _ => self.a(&iri, "crm:E74_Group"),
        }
        self.a(&iri, "crm:E39_Actor");
        self.a(&iri, "foaf:Agent");
        self.label_occ(&iri, name);
        Ok(iri)
    }

    fn place(&mut self, occ: &FieldOccurrence) -> Result<Iri, BuildError> {
        let iri = self.mint(EntityKind::Place, occ.key())?;
        self.a(&iri, "crm:E53_Place");
        self.label_occ(&iri, occ);
        Ok(iri)
    }

    /// Time-span node named by its literal; carries the raw text and, when
    /// it reads as a year, year range or full date, gYear bounds.
    fn time_span(&mut self, occ: &FieldOccurrence) -> Result<Iri, BuildError> {
        let raw = occ.value.trim();
        let iri = self.mint(EntityKind::Time, raw)?;
        self.a(&iri, "crm:E52_Time-Span");
        self.label(&iri, raw, None);
        self.add(&iri, "crm:P3_has_note", Literal::plain(raw));
        if let Some((begin, end)) = year_span(raw) {
            self.add(&iri, "crm:P82a_begin_of_the_begin", Literal::gyear(begin));
            self.add(&iri, "crm:P82b_end_of_the_end", Literal::gyear(end));
        }
        Ok(iri)
    }

    fn artwork_nodes(&mut self, artwork: &Iri, label: &(String, Option<String>)) -> Result<Iri, BuildError> {
        self.a(artwork, "fabio:ArtisticWork");
        self.a(artwork, "crm:E28_Conceptual_Object");
        self.label(artwork, &label.0, label.1.as_deref());
        let item = self.derive(artwork, Facet::Item)?;
        self.a(&item, "fabio:AnalogItem");
        self.a(&item, "crm:E22_Man-Made_Object");
        self.label(
            &item,
            &format!("Oggetto: {}", label.0),
            label.1.as_ref().map(|en| format!("Object: {en}")).as_deref(),
        );
        Ok(item)
    }

    // ---- builders ----

    /// Entry node, its expression, identifiers, subjects and cross
    /// references.
    pub fn build_entry_skeleton(&mut self) -> Result<(), BuildError> {
        let record = self.record;
        let entry = self.nodes.entry.clone();
        let expression = self.nodes.expression.clone();
        let id = &record.id;

        match record.kind {
            EntryKind::F => {
                self.a(&entry, "fentry:FEntry");
                self.label(&entry, &format!("Scheda F {id}"), Some(&format!("F Entry {id}")));
            }
            EntryKind::OA => {
                self.a(&entry, "oaentry:OAEntry");
                self.a(&entry, "fabio:Work");
                self.label(&entry, &format!("Scheda OA {id}"), Some(&format!("OA Entry {id}")));
            }
        }
        self.a(&entry, "crm:E31_Document");
        self.a(&expression, "fabio:MetadataDocument");
        self.a(&expression, "fabio:Expression");
        self.add(&entry, "frbr:realization", expression.clone());
        self.add(&expression, "frbr:realizationOf", entry.clone());
        self.label(
            &expression,
            &format!("Contenuto della scheda {} {id}", record.kind),
            Some(&format!("Content of {} Entry {id}", record.kind)),
        );

        for occ in &record.fields {
            let Some((_, kind)) = IDENTIFIER_CODES.iter().find(|(c, _)| *c == occ.code) else {
                continue;
            };
            let n = self.next_index(&entry, "identifier");
            let node = self.derive(&entry, Facet::Identifier(n))?;
            let kind_iri = self.fixed_term(kind)?;
            self.a(&node, "crm:E42_Identifier");
            self.add(&node, "crm:P2_has_type", kind_iri);
            self.add(&node, "crm:P3_has_note", Literal::plain(occ.value.clone()));
            self.label(&node, &format!("{} {}", kind.it, occ.value), Some(&format!("{} {}", kind.en, occ.value)));
            self.add(&entry, "crm:P140i_was_attributed_by", node);
        }

        let subject = self.nodes.subject.clone();
        let label = self.nodes.subject_label.clone();
        match record.kind {
            EntryKind::F => {
                self.a(&subject, "fentry:Photograph");
                self.a(&subject, "crm:E28_Conceptual_Object");
                self.label(&subject, &label.0, label.1.as_deref());
                self.describe(&subject);
                for occ in record.all("ROZ") {
                    let oa = self.mint(EntityKind::Oaentry, &occ.value)?;
                    self.a(&oa, "oaentry:OAEntry");
                    self.a(&oa, "fabio:Work");
                    self.a(&oa, "crm:E31_Document");
                    self.label(&oa, &format!("Scheda OA {}", occ.value), Some(&format!("OA Entry {}", occ.value)));
                    self.add(&entry, "crm:P67_refers_to", oa);
                }
                if let Some(occ) = record.field("OAWK") {
                    let artwork = self.mint(EntityKind::Artwork, occ.key())?;
                    let label = (
                        format!("Opera d'arte {}", occ.value),
                        Some(format!("Work of art {}", occ.key())),
                    );
                    let item = self.artwork_nodes(&artwork, &label)?;
                    self.describe(&artwork);
                    self.describe(&item);
                    self.nodes.artwork = Some(artwork);
                    self.nodes.artwork_item = Some(item);
                }
            }
            EntryKind::OA => {
                let item = self.artwork_nodes(&subject, &label)?;
                self.describe(&subject);
                self.describe(&item);
                self.nodes.artwork = Some(subject);
                self.nodes.artwork_item = Some(item);
            }
        }
        Ok(())
    }

    /// Creation event, authors, titles, archival containment,
    /// documentation and the work-to-artwork links.
    pub fn map_work_level(&mut self) -> Result<(), BuildError> {
        let record = self.record;
        let subject = self.nodes.subject.clone();
        let label = self.nodes.subject_label.clone();

        let creation = self.derive(&subject, Facet::Creation)?;
        self.a(&creation, "crm:E65_Creation");
        self.label(
            &creation,
            &format!("Creazione: {}", label.0),
            label.1.as_ref().map(|en| format!("Creation: {en}")).as_deref(),
        );
        self.add(&subject, "crm:P94i_was_created_by", creation.clone());
        self.add(&creation, "crm:P94_has_created", subject.clone());
        self.nodes.creation = Some(creation.clone());

        for block in record.blocks("AUT") {
            let Some(name) = block.field("AUTN") else {
                return Err(BuildError::DanglingActor { group: "AUT".into() });
            };
            let agent = self.agent(name, block.field("AUTT"), EntityKind::Person)?;
            if let Some(life) = block.field("AUTA") {
                self.add(&agent, "crm:P3_has_note", Literal::plain(life.value.clone()));
            }
            if let Some(g) = block.field("AUTG") {
                let group = self.agent(g, None, EntityKind::Group)?;
                self.add(&agent, "crm:P107i_is_current_or_former_member_of", group);
            }
            self.add(&creation, "crm:P14_carried_out_by", agent);
        }
        if let Some(d) = record.field("DTZ") {
            let span = self.time_span(d)?;
            self.add(&creation, "crm:P4_has_time_span", span);
        }
        if let Some(p) = record.field("LRC") {
            let place = self.place(p)?;
            self.add(&creation, "crm:P7_took_place_at", place);
        }
        if let Some(o) = record.field("LRO") {
            let event = self.mint(EntityKind::Event, o.key())?;
            self.a(&event, "crm:E5_Event");
            self.a(&event, "crm:E4_Period");
            self.label_occ(&event, o);
            self.add(&creation, "crm:P10_falls_within", event);
        }

        for occ in &record.fields {
            let Some((_, kind)) = TITLE_CODES.iter().find(|(c, _)| *c == occ.code) else {
                continue;
            };
            let n = self.next_index(&subject, "title");
            let title = self.derive(&subject, Facet::Title(n))?;
            let kind_iri = self.fixed_term(kind)?;
            self.a(&title, "crm:E35_Title");
            self.add(&title, "crm:P2_has_type", kind_iri);
            self.label_occ(&title, occ);
            self.add(&subject, "crm:P102_has_title", title);
        }

        let mut part = subject.clone();
        let mut seen = HashSet::new();
        let chain: Vec<&FieldOccurrence> = record.all("ARCH").collect();
        for (i, occ) in chain.iter().enumerate() {
            let node = self.mint(EntityKind::Archive, occ.key())?;
            if node == subject || !seen.insert(node.clone()) {
                break;
            }
            if i + 1 == chain.len() {
                self.a(&node, "fabio:WorkCollection");
            } else {
                self.a(&node, "fabio:Work");
                self.a(&node, "crm:E90_Symbolic_Object");
            }
            self.label_occ(&node, occ);
            self.add(&part, "crm:P106i_forms_part_of", node.clone());
            part = node;
        }

        for occ in record.all("BIBH") {
            let doc = self.mint(EntityKind::Document, occ.key())?;
            self.a(&doc, "crm:E31_Document");
            self.label_occ(&doc, occ);
            self.add(&subject, "crm:P70i_is_documented_in", doc);
        }

        if let (Some(artwork), Some(item)) = (self.nodes.artwork.clone(), self.nodes.artwork_item.clone()) {
            if record.kind == EntryKind::F {
                self.add(&subject, "frbr:subject", item.clone());
            }
            self.add(&artwork, "fabio:hasPortrayal", item);
        }
        Ok(())
    }

    /// The shot of a photograph; nothing for OA entries.
    pub fn map_expression_level(&mut self) -> Result<(), BuildError> {
        if self.record.kind != EntryKind::F {
            return Ok(());
        }
        let photo = self.nodes.subject.clone();
        let creation = self.nodes.creation.clone().expect("work level runs first");
        let shot = self.derive(&photo, Facet::Shot)?;
        self.a(&shot, "fentry:Shot");
        let title = TITLE_CODES
            .iter()
            .find_map(|(code, _)| self.record.field(code))
            .or_else(|| self.record.field("SGTI"));
        match title {
            Some(t) => {
                let it = format!("Scatto (immagine) della fotografia \"{}\"", t.value);
                let en = t.translation.as_ref().map(|en| format!("Shot of the photograph \"{en}\""));
                self.label(&shot, &it, en.as_deref());
            }
            None => {
                let id = &self.record.id;
                self.label(
                    &shot,
                    &format!("Scatto (immagine) della fotografia {id}"),
                    Some(&format!("Shot of the photograph {id}")),
                );
            }
        }
        self.add(&photo, "frbr:realization", shot.clone());
        self.add(&shot, "frbr:realizationOf", photo);
        self.add(&shot, "crm:P94i_was_created_by", creation.clone());
        self.add(&creation, "crm:P94_has_created", shot.clone());
        self.nodes.shot = Some(shot);
        Ok(())
    }

    fn uses_carrier_level(&self, fields: &[FieldOccurrence]) -> bool {
        let record = self.record;
        let level_of = |code: &str| self.table.row(record.kind, code).map(|r| r.level);
        fields
            .iter()
            .map(|f| f.code.as_str())
            .chain(record.groups.iter().map(|g| g.code.as_str()))
            .any(|code| matches!(level_of(code), Some(Level::Manifestation | Level::Item)))
    }

    fn facet_name(&self, block: &[FieldOccurrence], taken: &HashSet<String>) -> Result<String, BuildError> {
        let base = match block.field("FRMT") {
            Some(t) => slugify(t.key())?,
            None => "manifestation".to_string(),
        };
        let base = if RESERVED_FACETS.contains(&base.as_str()) {
            format!("format-{base}")
        } else {
            base
        };
        let mut name = base.clone();
        let mut n = 2;
        while taken.contains(&name) {
            name = format!("{base}-{n}");
            n += 1;
        }
        Ok(name)
    }

    /// Manifestations with their items, materials, features and
    /// measurements.
    pub fn map_manifestation_level(&mut self) -> Result<(), BuildError> {
        let record = self.record;
        match record.kind {
            EntryKind::OA => {
                let item = self.nodes.artwork_item.clone().expect("skeleton runs first");
                self.nodes.carriers.push(Carrier {
                    facet: "item".into(),
                    manifestation: item.clone(),
                    item,
                    digital: false,
                    fields: record.fields.clone(),
                });
            }
            EntryKind::F => {
                let mut blocks: Vec<Vec<FieldOccurrence>> = record.blocks("FRM").map(<[_]>::to_vec).collect();
                if blocks.is_empty() && self.uses_carrier_level(&record.fields) {
                    blocks.push(Vec::new());
                }
                if let Some(first) = blocks.first_mut() {
                    first.extend(record.fields.iter().cloned());
                }
                let photo = self.nodes.subject.clone();
                let shot = self.nodes.shot.clone().expect("expression level runs first");
                let mut taken = HashSet::new();
                for fields in blocks {
                    let facet = self.facet_name(&fields, &taken)?;
                    taken.insert(facet.clone());
                    let digital = fields
                        .field("FRMD")
                        .map(|d| matches!(slugify(d.key()).as_deref(), Ok("digitale" | "digital")))
                        .unwrap_or(false);
                    let manifestation = self.derive(&photo, Facet::Manifestation(facet.clone()))?;
                    let item = self.derive(&manifestation, Facet::Item)?;
                    let (mclass, iclass) = if digital {
                        ("fabio:DigitalManifestation", "fabio:DigitalItem")
                    } else {
                        ("fabio:AnalogManifestation", "fabio:AnalogItem")
                    };
                    self.a(&manifestation, "crm:E22_Man-Made_Object");
                    self.a(&manifestation, mclass);
                    let (fmt_it, fmt_en) = match fields.field("FRMT") {
                        Some(t) => {
                            let ty = self.term_node(t, "crm:E55_Type")?;
                            self.add(&manifestation, "crm:P2_has_type", ty);
                            (t.value.clone(), t.key().to_string())
                        }
                        None => ("manifestazione".to_string(), "manifestation".to_string()),
                    };
                    let id = &record.id;
                    self.label(
                        &manifestation,
                        &format!("Fotografia {id}: {fmt_it}"),
                        Some(&format!("Photograph {id}: {fmt_en}")),
                    );
                    self.a(&item, iclass);
                    self.a(&item, "crm:E22_Man-Made_Object");
                    self.label(
                        &item,
                        &format!("Fotografia {id}: {fmt_it}, esemplare"),
                        Some(&format!("Photograph {id}: {fmt_en}, item")),
                    );
                    self.add(&shot, "frbr:embodiment", manifestation.clone());
                    self.add(&manifestation, "frbr:exemplar", item.clone());
                    self.describe(&item);
                    if let Some(depicted) = self.nodes.artwork_item.clone() {
                        self.add(&item, "crm:P62_depicts", depicted);
                    }
                    self.nodes.carriers.push(Carrier {
                        facet,
                        manifestation,
                        item,
                        digital,
                        fields,
                    });
                }
            }
        }

        for i in 0..self.nodes.carriers.len() {
            let carrier = self.nodes.carriers[i].clone();
            let m = &carrier.manifestation;
            for occ in carrier.fields.all("MTCM") {
                let material = self.term_node(occ, "crm:E57_Material")?;
                self.add(m, "crm:P45_consists_of", material);
            }
            for occ in carrier.fields.all("MTCF") {
                let feature = self.term_node(occ, "crm:E55_Type")?;
                self.add(m, "crm:P56_bears_feature", feature);
            }
            self.measurement(&carrier)?;
        }
        Ok(())
    }

    fn measurement(&mut self, carrier: &Carrier) -> Result<(), BuildError> {
        let fields = &carrier.fields;
        if !has_any(fields, &["MISA", "MISL"]) {
            return Ok(());
        }
        let m = &carrier.manifestation;
        let measurement = self.derive(m, Facet::Measurement)?;
        self.a(&measurement, "crm:E16_Measurement");
        self.label(&measurement, "Misure", Some("Measurements"));
        self.add(m, "crm:P39i_was_measured_by", measurement.clone());
        let unit = match fields.field("MISU") {
            Some(u) => {
                let iri = self.term_node(u, "crm:E58_Measurement_Unit")?;
                Some((iri, u.value.clone(), slugify(u.key())?))
            }
            None => None,
        };
        for (code, kind) in [("MISA", HEIGHT), ("MISL", WIDTH)] {
            let Some(occ) = fields.field(code) else { continue };
            let value = parse_measure(&occ.value)?;
            let unit_slug = unit.as_ref().map_or("", |u| u.2.as_str());
            let dim = self.derive(&measurement, Facet::Dimension(format!("{}-{}{}", kind.key, value, unit_slug)))?;
            let kind_iri = self.fixed_term(&kind)?;
            self.a(&dim, "crm:E54_Dimension");
            self.add(&dim, "crm:P2_has_type", kind_iri);
            self.add(&dim, "crm:P90_has_value", Literal::plain(value.clone()));
            let unit_text = unit.as_ref().map_or(String::new(), |u| format!(" {}", u.1));
            if let Some((unit_iri, _, _)) = &unit {
                self.add(&dim, "crm:P91_has_unit", unit_iri.clone());
            }
            self.label(
                &dim,
                &format!("{} {value}{unit_text}", kind.it),
                Some(&format!("{} {value}{unit_text}", kind.en)),
            );
            self.add(&measurement, "crm:P40_observed_dimension", dim);
        }
        Ok(())
    }

    fn carrier_for(&self, selector: Option<&FieldOccurrence>, group: &str) -> Result<Carrier, BuildError> {
        let carriers = &self.nodes.carriers;
        let found = match selector {
            Some(sel) => {
                let wanted = slugify(sel.key())?;
                carriers.iter().find(|c| c.facet == wanted)
            }
            None => carriers.first(),
        };
        found
            .cloned()
            .ok_or_else(|| BuildError::MissingRoleTarget(selector.map_or(group.to_string(), |s| s.value.clone())))
    }

    /// Physical copies: identifiers, condition, location, keeper,
    /// ownership, custody transfers, moves and exhibitions.
    pub fn map_item_level(&mut self) -> Result<(), BuildError> {
        let record = self.record;
        for i in 0..self.nodes.carriers.len() {
            let carrier = self.nodes.carriers[i].clone();
            self.item_details(&carrier)?;
        }
        for block in record.blocks("TRC") {
            let carrier = self.carrier_for(block.field("TRCM"), "TRC")?;
            self.transfer(&carrier.item, block)?;
        }
        for block in record.blocks("MST") {
            let carrier = self.carrier_for(block.field("MSTM"), "MST")?;
            self.exhibition(&carrier.item, block)?;
        }
        Ok(())
    }

    fn item_details(&mut self, carrier: &Carrier) -> Result<(), BuildError> {
        let fields = &carrier.fields;
        let item = &carrier.item;

        for occ in fields.all("INVN") {
            let n = self.next_index(item, "identifier");
            let node = self.derive(item, Facet::Identifier(n))?;
            let kind = self.fixed_term(&INVENTORY_NUMBER)?;
            self.a(&node, "crm:E42_Identifier");
            self.add(&node, "crm:P2_has_type", kind);
            self.add(&node, "crm:P3_has_note", Literal::plain(occ.value.clone()));
            self.label(
                &node,
                &format!("{} {}", INVENTORY_NUMBER.it, occ.value),
                Some(&format!("{} {}", INVENTORY_NUMBER.en, occ.value)),
            );
            self.add(item, "crm:P140i_was_attributed_by", node);
        }

        if has_any(fields, &["STCC", "STCN"]) {
            let assessment = self.derive(item, Facet::Condition)?;
            let state = self.derive(item, Facet::ConditionState)?;
            self.a(&assessment, "crm:E14_Condition_Assessment");
            self.label(&assessment, "Valutazione dello stato di conservazione", Some("Condition assessment"));
            self.a(&state, "crm:E3_Condition_State");
            self.label(&state, "Stato di conservazione", Some("Condition state"));
            self.add(item, "crm:P34i_was_assessed_by", assessment.clone());
            self.add(&assessment, "crm:P34_concerned", item.clone());
            self.add(&assessment, "crm:P35_has_identified", state.clone());
            if let Some(c) = fields.field("STCC") {
                let ty = self.term_node(c, "crm:E55_Type")?;
                self.add(&state, "crm:P2_has_type", ty);
            }
            if let Some(n) = fields.field("STCN") {
                self.add(&state, "crm:P3_has_note", Literal::plain(n.value.clone()));
            }
        }

        let chain: Vec<&FieldOccurrence> = fields.all("LOCP").collect();
        let mut places: Vec<Iri> = Vec::new();
        for occ in &chain {
            let place = self.place(occ)?;
            if places.contains(&place) {
                return Err(BuildError::CyclicPlaceChain(occ.value.clone()));
            }
            places.push(place);
        }
        if let Some(first) = places.first() {
            self.add(item, "crm:P55_has_current_location", first.clone());
        }
        for pair in places.windows(2) {
            self.add(&pair[0], "crm:P89_falls_within", pair[1].clone());
        }

        if let Some(k) = fields.field("KEEP") {
            let keeper = self.agent(k, None, EntityKind::Group)?;
            self.add(item, "crm:P50_has_current_keeper", keeper.clone());
            if let Some(r) = fields.field("KEER") {
                let place = self.place(r)?;
                self.add(&keeper, "crm:P74_has_current_or_former_residence", place);
            }
            if let Some(c) = fields.field("KEEA") {
                let contact = self.derive(&keeper, Facet::Contact(c.key().to_string()))?;
                self.a(&contact, "crm:E51_Contact_Point");
                self.label_occ(&contact, c);
                self.add(&keeper, "crm:P76_has_contact_point", contact);
            }
        }

        if let Some(o) = fields.field("OWNR") {
            let owner = self.agent(o, None, EntityKind::Group)?;
            self.add(item, "crm:P52_has_current_owner", owner.clone());
            if has_any(fields, &["ACQT", "ACQD"]) {
                let n = self.next_index(item, "acquisition");
                let acq = self.derive(item, Facet::Acquisition(n))?;
                self.a(&acq, "crm:E8_Acquisition");
                self.label(&acq, &format!("Acquisizione: {}", o.value), Some(&format!("Acquisition: {}", o.key())));
                self.add(&owner, "crm:P22i_acquired_title_through", acq.clone());
                self.add(&acq, "crm:P22_transferred_title_to", owner);
                self.add(&acq, "crm:P24_transferred_title_of", item.clone());
                if let Some(t) = fields.field("ACQT") {
                    let ty = self.term_node(t, "crm:E55_Type")?;
                    self.add(&acq, "crm:P2_has_type", ty);
                }
                if let Some(d) = fields.field("ACQD") {
                    let span = self.time_span(d)?;
                    self.add(&acq, "crm:P4_has_time_span", span);
                }
            }
        }
        Ok(())
    }

    fn transfer(&mut self, item: &Iri, block: &[FieldOccurrence]) -> Result<(), BuildError> {
        let date = match block.field("TRCD") {
            Some(d) => Some(self.time_span(d)?),
            None => None,
        };
        if has_any(block, &["TRCS", "TRCR"]) {
            let n = self.next_index(item, "custody");
            let node = self.derive(item, Facet::Custody(n))?;
            self.a(&node, "crm:E10_Transfer_of_Custody");
            self.label(&node, &format!("Passaggio di custodia {n}"), Some(&format!("Transfer of custody {n}")));
            if let Some(s) = block.field("TRCS") {
                let from = self.agent(s, None, EntityKind::Group)?;
                self.add(&node, "crm:P28_custody_surrendered_by", from);
            }
            if let Some(r) = block.field("TRCR") {
                let to = self.agent(r, None, EntityKind::Group)?;
                self.add(&node, "crm:P29_custody_received_by", to);
            }
            self.add(&node, "crm:P30_transferred_custody_of", item.clone());
            self.add(item, "crm:P30i_custody_transferred_through", node.clone());
            if let Some(d) = date {
                self.add(&node, "crm:P4_has_time_span", d);
            }
        } else if has_any(block, &["TRCF", "TRCP"]) {
            let n = self.next_index(item, "move");
            let node = self.derive(item, Facet::Move(n))?;
            self.a(&node, "crm:E9_Move");
            self.label(&node, &format!("Spostamento {n}"), Some(&format!("Move {n}")));
            self.add(&node, "crm:P25_moved", item.clone());
            if let Some(f) = block.field("TRCF") {
                let from = self.place(f)?;
                self.add(&node, "crm:P27_moved_from", from);
            }
            if let Some(t) = block.field("TRCP") {
                let to = self.place(t)?;
                self.add(&node, "crm:P26_moved_to", to);
            }
            if let Some(d) = date {
                self.add(&node, "crm:P4_has_time_span", d);
            }
        } else {
            return Err(BuildError::DanglingActor { group: "TRC".into() });
        }
        Ok(())
    }

    fn exhibition(&mut self, item: &Iri, block: &[FieldOccurrence]) -> Result<(), BuildError> {
        let title = block.field("MSTT");
        let place = block.field("MSTL");
        let date = block.field("MSTD");
        let mut key = String::from("exhibition");
        match (place, title) {
            (Some(p), _) => key.extend([" ", p.key()]),
            (None, Some(t)) => key.extend([" ", t.key()]),
            (None, None) => return Err(BuildError::DanglingActor { group: "MST".into() }),
        }
        if let Some(d) = date {
            key.extend([" ", d.value.as_str()]);
        }
        let event = self.mint(EntityKind::Event, &key)?;
        self.a(&event, "crm:E5_Event");
        match (title, place) {
            (Some(t), _) => self.label_occ(&event, t),
            (None, Some(p)) => {
                let when = date.map_or(String::new(), |d| format!(" {}", d.value));
                self.label(&event, &format!("Mostra, {}{when}", p.value), Some(&format!("Exhibition, {}{when}", p.key())));
            }
            (None, None) => unreachable!(),
        }
        if let Some(t) = title {
            let appellation = self.derive(&event, Facet::Appellation)?;
            self.a(&appellation, "crm:E41_Appellation");
            self.label_occ(&appellation, t);
            self.add(&event, "crm:P1_is_identified_by", appellation);
        }
        if let Some(p) = place {
            let place = self.place(p)?;
            self.add(&event, "crm:P7_took_place_at", place);
        }
        if let Some(d) = date {
            let span = self.time_span(d)?;
            self.add(&event, "crm:P4_has_time_span", span);
        }
        self.add(&event, "crm:P12_occurred_in_the_presence_of", item.clone());
        self.add(item, "crm:P12i_was_present_at", event);
        Ok(())
    }

    fn resolve_role(&mut self, occ: &FieldOccurrence) -> Result<RoleRef, BuildError> {
        if let Some(role) = lookup_role(&[&occ.value, occ.key()]) {
            return Ok(role);
        }
        if self.options.strict_roles {
            return Err(BuildError::UnknownRole(occ.value.clone()));
        }
        let iri = self.mint(EntityKind::Term, occ.key())?;
        self.a(&iri, "pro:Role");
        self.label_occ(&iri, occ);
        self.warn(
            &occ.code,
            WarningKind::UnknownRole,
            format!("role {:?} is not in the role vocabulary; minted {}", occ.value, iri.as_str()),
        );
        Ok(RoleRef {
            iri,
            label_it: occ.value.clone(),
            family: RoleFamily::Other,
        })
    }

    fn role_target(&self, spec: Option<&FieldOccurrence>, family: RoleFamily) -> Result<Iri, BuildError> {
        let n = &self.nodes;
        let missing = |what: &str| BuildError::MissingRoleTarget(what.to_string());
        let Some(spec) = spec else {
            return match family {
                RoleFamily::Photographer => Ok(n.shot.clone().unwrap_or_else(|| n.subject.clone())),
                RoleFamily::Publisher => n
                    .carriers
                    .first()
                    .map(|c| c.manifestation.clone())
                    .ok_or_else(|| missing("manifestation")),
                RoleFamily::Cataloguing => Ok(n.entry.clone()),
                RoleFamily::Other => Ok(n.subject.clone()),
            };
        };
        let wanted = spec.key().trim().to_lowercase();
        match wanted.as_str() {
            "entry" => Ok(n.entry.clone()),
            "work" => Ok(n.subject.clone()),
            "shot" => n.shot.clone().ok_or_else(|| missing("shot")),
            "artwork" => n.artwork.clone().ok_or_else(|| missing("artwork")),
            "artwork-item" => n.artwork_item.clone().ok_or_else(|| missing("artwork-item")),
            "manifestation" => n.carriers.first().map(|c| c.manifestation.clone()).ok_or_else(|| missing(&wanted)),
            "item" => n.carriers.first().map(|c| c.item.clone()).ok_or_else(|| missing(&wanted)),
            other => {
                let (facet, item) = match other.strip_suffix("/item") {
                    Some(f) => (f, true),
                    None => (other, false),
                };
                let facet = slugify(facet)?;
                n.carriers
                    .iter()
                    .find(|c| c.facet == facet)
                    .map(|c| if item { c.item.clone() } else { c.manifestation.clone() })
                    .ok_or_else(|| missing(other))
            }
        }
    }

    /// A `pro:RoleInTime` binding `agent` to `role` with respect to
    /// `target`, optionally at `time`.
    pub fn build_role_in_time(
        &mut self,
        agent: &Iri,
        agent_name: &str,
        role: &RoleRef,
        target: &Iri,
        time: Option<&Iri>,
    ) -> Result<Iri, BuildError> {
        let n = self.next_index(target, "role");
        let node = self.derive(target, Facet::Role(n))?;
        self.a(&node, "pro:RoleInTime");
        self.label(&node, &format!("{agent_name}, {}", role.label_it), None);
        self.add(&node, "pro:withRole", role.iri.clone());
        self.add(&node, "pro:relatesTo", target.clone());
        self.add(&node, "pro:isHeldBy", agent.clone());
        self.add(agent, "pro:holdsRoleInTime", node.clone());
        if let Some(t) = time {
            self.add(&node, "tv:atTime", t.clone());
        }
        Ok(node)
    }

    /// Cataloguing roles on the entry and responsibility roles anywhere in
    /// the FRBR tree.
    pub fn map_roles(&mut self) -> Result<(), BuildError> {
        let record = self.record;
        let entry = self.nodes.entry.clone();
        let mut cataloguers = Vec::new();
        let mut first_date = None;
        for block in record.blocks("CMP") {
            let Some(name) = block.field("CMPN") else {
                return Err(BuildError::DanglingActor { group: "CMP".into() });
            };
            let agent = self.agent(name, None, EntityKind::Person)?;
            let role = match block.field("CMPR") {
                Some(r) => self.resolve_role(r)?,
                None => cataloguer_role(),
            };
            let time = match block.field("CMPD") {
                Some(d) => Some(self.time_span(d)?),
                None => None,
            };
            if first_date.is_none() {
                first_date = time.clone();
            }
            self.build_role_in_time(&agent, &name.value, &role, &entry, time.as_ref())?;
            cataloguers.push(agent);
        }
        if let Some(first) = cataloguers.first() {
            self.nodes.cataloguer = Some(first.clone());
            let creation = self.derive(&entry, Facet::Creation)?;
            self.a(&creation, "crm:E65_Creation");
            self.label(
                &creation,
                &format!("Redazione della scheda {} {}", record.kind, record.id),
                Some(&format!("Compilation of {} Entry {}", record.kind, record.id)),
            );
            self.add(&entry, "crm:P94i_was_created_by", creation.clone());
            self.add(&creation, "crm:P94_has_created", entry.clone());
            for agent in &cataloguers {
                self.add(&creation, "crm:P14_carried_out_by", agent.clone());
            }
            if let Some(d) = first_date {
                self.add(&creation, "crm:P4_has_time_span", d);
            }
        }

        for block in record.blocks("RUO") {
            let Some(name) = block.field("RUON") else {
                return Err(BuildError::DanglingActor { group: "RUO".into() });
            };
            let Some(role_occ) = block.field("RUOR") else {
                return Err(BuildError::UnknownRole(String::new()));
            };
            let agent = self.agent(name, block.field("RUOT"), EntityKind::Person)?;
            let role = self.resolve_role(role_occ)?;
            let target = self.role_target(block.field("RUOL"), role.family)?;
            let time = match block.field("RUOD") {
                Some(d) => Some(self.time_span(d)?),
                None => None,
            };
            let node = self.build_role_in_time(&agent, &name.value, &role, &target, time.as_ref())?;
            if has_any(block, &["RUOC", "RUOP", "RUOI", "RUOE"]) {
                let base = self.fixed_term(&ROLE_ATTRIBUTION)?;
                self.interpretation_from_block(&node, base, block, ["RUOC", "RUOP", "RUOI", "RUOE"])?;
            }
        }
        Ok(())
    }

    fn interpretation_from_block(
        &mut self,
        attributed: &Iri,
        base_type: Iri,
        block: &[FieldOccurrence],
        [crit, pref, agent_code, evid]: [&str; 4],
    ) -> Result<Iri, BuildError> {
        let mut types = vec![base_type];
        if block.field(pref).is_some_and(|p| is_truthy(&p.value)) {
            types.push(self.fixed_term(&PREFERRED_ATTRIBUTION)?);
        }
        let mut criteria = Vec::new();
        for c in block.all(crit) {
            criteria.push(self.term_node(c, "hico:InterpretationCriterion")?);
        }
        let agent = match block.field(agent_code) {
            Some(a) => Some(self.agent(a, None, EntityKind::Person)?),
            None => self.nodes.cataloguer.clone(),
        };
        let evidence = match block.field(evid) {
            Some(e) => {
                let node = self.derive(&self.nodes.subject, Facet::Evidence(e.key().to_string()))?;
                self.label_occ(&node, e);
                Some(node)
            }
            None => None,
        };
        self.build_interpretation_act(attributed, &types, &criteria, agent.as_ref(), evidence.as_ref())
    }

    /// A `hico:InterpretationAct` that generated `attributed`, extracted
    /// from this entry's expression.
    pub fn build_interpretation_act(
        &mut self,
        attributed: &Iri,
        types: &[Iri],
        criteria: &[Iri],
        agent: Option<&Iri>,
        evidence: Option<&Iri>,
    ) -> Result<Iri, BuildError> {
        if types.is_empty() {
            return Err(BuildError::MissingType);
        }
        if criteria.is_empty() {
            return Err(BuildError::MissingCriterion);
        }
        let n = self.next_index(attributed, "interpretation");
        let act = self.derive(attributed, Facet::Interpretation(n))?;
        self.a(&act, "hico:InterpretationAct");
        self.label(&act, &format!("Atto interpretativo {n}"), Some(&format!("Interpretation act {n}")));
        self.add(attributed, "prov:wasGeneratedBy", act.clone());
        for t in types {
            self.add(&act, "hico:hasInterpretationType", t.clone());
        }
        for c in criteria {
            self.add(&act, "hico:hasInterpretationCriterion", c.clone());
        }
        let expression = self.nodes.expression.clone();
        self.add(&act, "hico:isExtractedFrom", expression);
        if let Some(agent) = agent {
            self.add(&act, "prov:wasAssociatedWith", agent.clone());
        }
        if let Some(e) = evidence {
            self.add(&act, "cito:citesAsEvidence", e.clone());
        }
        Ok(act)
    }

    /// Authorship attributions recorded in [AUT] paragraphs.
    pub fn map_interpretations(&mut self) -> Result<(), BuildError> {
        let record = self.record;
        let creation = self.nodes.creation.clone().expect("work level runs first");
        for block in record.blocks("AUT") {
            if has_any(block, &["AUTC", "AUTP", "AUTI", "AUTE"]) {
                let base = self.fixed_term(&AUTHORSHIP_ATTRIBUTION)?;
                self.interpretation_from_block(&creation, base, block, ["AUTC", "AUTP", "AUTI", "AUTE"])?;
            }
        }
        Ok(())
    }

    /// An influence node from `former` to `derived`.
    pub fn build_influence(&mut self, former: &Iri, derived: &Iri, kind: &str) -> Result<Iri, BuildError> {
        let class = influence_kind(&[kind]).ok_or_else(|| BuildError::UnknownInfluenceKind(kind.to_string()))?;
        let n = self.next_index(derived, "influence");
        let node = self.derive(derived, Facet::Influence(n))?;
        self.a(&node, class);
        self.a(&node, "prov:Influence");
        self.label(&node, &format!("Relazione con opera precedente {n}"), Some(&format!("Relation to former work {n}")));
        self.add(&node, "oaentry:hasFormerWork", former.clone());
        self.add(&node, "oaentry:hasConceived", derived.clone());
        self.add(derived, "oaentry:isConveivedByMeansOf", node.clone());
        Ok(node)
    }

    /// Relations to former works recorded in [ROF] paragraphs.
    pub fn map_influences(&mut self) -> Result<(), BuildError> {
        let record = self.record;
        let derived = self.nodes.subject.clone();
        for block in record.blocks("ROF") {
            let Some(kind) = block.field("ROFF") else {
                return Err(BuildError::UnknownInfluenceKind(String::new()));
            };
            let kind_name = if influence_kind(&[&kind.value]).is_some() {
                kind.value.as_str()
            } else {
                kind.key()
            };
            let former_key = block
                .field("ROFK")
                .map(|k| k.key())
                .or_else(|| block.field("ROFO").map(|o| o.key()))
                .ok_or(BuildError::MissingFormerWork)?;
            let former = self.mint(EntityKind::Artwork, former_key)?;
            self.a(&former, "fabio:ArtisticWork");
            self.a(&former, "crm:E28_Conceptual_Object");
            match block.field("ROFO") {
                Some(o) => self.label_occ(&former, o),
                None => self.label(&former, &format!("Opera d'arte {former_key}"), None),
            }
            let node = self.build_influence(&former, &derived, kind_name)?;
            if has_any(block, &["ROFC", "ROFP", "ROFI", "ROFE"]) {
                let base = term("oaentry:influence-between-works-attribution");
                self.a(&base, "hico:InterpretationType");
                self.interpretation_from_block(&node, base, block, ["ROFC", "ROFP", "ROFI", "ROFE"])?;
            }
        }
        Ok(())
    }

    fn level_node(&self, level: Level, carrier: Option<usize>) -> Option<Iri> {
        let n = &self.nodes;
        let carrier = n.carriers.get(carrier.unwrap_or(0));
        match level {
            Level::Entry => Some(n.entry.clone()),
            Level::Work => Some(n.subject.clone()),
            Level::Expression => n.shot.clone(),
            Level::Manifestation => carrier.map(|c| c.manifestation.clone()),
            Level::Item => carrier.map(|c| c.item.clone()),
        }
    }

    /// Table-driven simple fields. Fields inside an [FRM] paragraph land
    /// on that paragraph's manifestation or item.
    pub fn apply_field_table(&mut self) -> Result<(), BuildError> {
        let record = self.record;
        let mut placed: Vec<(&FieldOccurrence, Option<usize>)> = record.fields.iter().map(|f| (f, None)).collect();
        for group in &record.groups {
            let is_frm = group.code == "FRM" && record.kind == EntryKind::F;
            for (i, rep) in group.repetitions.iter().enumerate() {
                placed.extend(rep.iter().map(|f| (f, is_frm.then_some(i))));
            }
        }
        for (occ, carrier) in placed {
            let Some(row) = self.table.row(record.kind, &occ.code) else { continue };
            if row.object == ObjectKind::Pattern {
                continue;
            }
            let Some(node) = self.level_node(row.level, carrier) else { continue };
            let predicate = row.predicate.clone();
            match row.object {
                ObjectKind::Literal => {
                    self.graph.insert(&node, &predicate, Literal::plain(occ.value.clone()));
                }
                ObjectKind::LangLiteralIt => {
                    self.graph.insert(&node, &predicate, Literal::it(occ.value.clone()));
                    if let Some(en) = &occ.translation {
                        self.graph.insert(&node, &predicate, Literal::en(en.clone()));
                    }
                }
                ObjectKind::SlugIri => {
                    let t = self.term_node(occ, "crm:E55_Type")?;
                    self.graph.insert(&node, &predicate, t);
                }
                ObjectKind::TypedTerm => match TermRegistry::standard().get(occ.value.trim()) {
                    Some(t) => {
                        self.graph.insert(&node, &predicate, t.clone());
                    }
                    None => self.warn(
                        &occ.code,
                        WarningKind::UnknownTerm,
                        format!("{:?} is not a registered term", occ.value),
                    ),
                },
                ObjectKind::Pattern => {}
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::record::parse_records;

    fn convert(text: &str) -> Result<Conversion, ConvertError> {
        let rec = parse_records(text.as_bytes()).unwrap().remove(0);
        convert_entry_with(&rec, &MappingTable::default_table(), &IriPolicy::default(), ConvertOptions::default())
    }

    #[test]
    fn year_spans() {
        assert_eq!(year_span("1926-1932"), Some((1926, 1932)));
        assert_eq!(year_span("1989"), Some((1989, 1989)));
        assert_eq!(year_span("2012-11-04"), Some((2012, 2012)));
        assert_eq!(year_span("1932-1926"), None);
        assert_eq!(year_span("ante 1940"), None);
    }

    #[test]
    fn measures() {
        assert_eq!(parse_measure("194").unwrap(), "194");
        assert_eq!(parse_measure("19,4").unwrap(), "19.4");
        assert!(parse_measure("circa 20").is_err());
        assert!(parse_measure("-3").is_err());
    }

    #[test]
    fn bad_dimension_is_tagged_with_record() {
        let err = convert("TSK: F\nID: 1\n[FRM]\nFRMT: positivo\nMISA: alto\n[/FRM]\n").unwrap_err();
        assert_eq!(err.record_id, "1");
        assert_eq!(err.source, BuildError::BadDimension("alto".into()));
    }

    #[test]
    fn cyclic_place_chain() {
        let err = convert("TSK: F\nID: 1\nLOCP: Sala A\nLOCP: Edificio\nLOCP: sala a\n").unwrap_err();
        assert!(matches!(err.source, BuildError::CyclicPlaceChain(_)));
    }

    #[test]
    fn dangling_actor() {
        let err = convert("TSK: OA\nID: 2\n[AUT]\nAUTA: 1400-1450\n[/AUT]\n").unwrap_err();
        assert_eq!(err.source, BuildError::DanglingActor { group: "AUT".into() });
    }

    #[test]
    fn unknown_role_falls_back_or_fails() {
        let text = "TSK: OA\nID: 3\n[RUO]\nRUON: Rossi\nRUOR: restauratore\n[/RUO]\n";
        let conv = convert(text).unwrap();
        assert_eq!(conv.warnings.len(), 1);
        assert_eq!(conv.warnings[0].kind, WarningKind::UnknownRole);
        let rec = parse_records(text.as_bytes()).unwrap().remove(0);
        let strict = ConvertOptions { strict_roles: true };
        let err = convert_entry_with(&rec, &MappingTable::default_table(), &IriPolicy::default(), strict).unwrap_err();
        assert_eq!(err.source, BuildError::UnknownRole("restauratore".into()));
    }

    #[test]
    fn unknown_influence_kind() {
        let err = convert("TSK: OA\nID: 4\n[ROF]\nROFF: replica\nROFO: Originale\n[/ROF]\n").unwrap_err();
        assert_eq!(err.source, BuildError::UnknownInfluenceKind("replica".into()));
    }

    #[test]
    fn interpretation_needs_a_criterion() {
        let err = convert("TSK: OA\nID: 5\n[AUT]\nAUTN: Rossi\nAUTP: si\n[/AUT]\n").unwrap_err();
        assert_eq!(err.source, BuildError::MissingCriterion);
    }

    #[test]
    fn interpretation_needs_a_type() {
        let rec = EntryRecord::new(EntryKind::OA, "6");
        let table = MappingTable::default_table();
        let policy = IriPolicy::default();
        let mut b = EntryBuilder::new(&rec, &table, &policy, ConvertOptions::default()).unwrap();
        let subject = b.nodes.subject.clone();
        let crit = policy.mint(EntityKind::Term, "style", None).unwrap();
        assert_eq!(
            b.build_interpretation_act(&subject, &[], &[crit], None, None).unwrap_err(),
            BuildError::MissingType
        );
    }

    #[test]
    fn publisher_needs_a_manifestation() {
        let err = convert("TSK: F\nID: 7\n[RUO]\nRUON: Brogi\nRUOR: editore\n[/RUO]\n").unwrap_err();
        assert_eq!(err.source, BuildError::MissingRoleTarget("manifestation".into()));
    }

    #[test]
    fn manifestation_facets_are_unique() {
        let conv = convert(
            "TSK: F\nID: 8\n[FRM]\nFRMT: positivo @en: positive\n[/FRM]\n[FRM]\nFRMT: positive\n[/FRM]\n[FRM]\nFRMT: shot\n[/FRM]\n",
        )
        .unwrap();
        let text = String::from_utf8(crate::rdf::serialize_ntriples(&conv.graph)).unwrap();
        assert!(text.contains("/photo/8/positive/item>"));
        assert!(text.contains("/photo/8/positive-2/item>"));
        assert!(text.contains("/photo/8/format-shot/item>"));
    }
}
