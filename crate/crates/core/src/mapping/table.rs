//! The field mapping table: which field code lands on which node, through
//! which predicate.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::TableError;
use crate::mapping::registry::TermRegistry;
use crate::rdf::Iri;
use crate::record::{is_field_code, EntryKind};

const DEFAULT_TABLE: &str = include_str!("../../data/mapping.tsv");

const COLUMNS: [&str; 6] = ["kind", "code", "level", "predicate", "object", "mandatory"];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Level {
    Entry,
    Work,
    Expression,
    Manifestation,
    Item,
}

impl FromStr for Level {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "entry" => Level::Entry,
            "work" => Level::Work,
            "expression" => Level::Expression,
            "manifestation" => Level::Manifestation,
            "item" => Level::Item,
            other => return Err(format!("unknown level {other:?}")),
        })
    }
}

/// How a field value becomes an RDF object.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ObjectKind {
    /// Plain literal.
    Literal,
    /// `@it` literal, plus `@en` when the value carries a translation.
    LangLiteralIt,
    /// The value names a registry term by curie.
    TypedTerm,
    /// A minted `term/{slug}` node typed `crm:E55_Type`.
    SlugIri,
    /// Consumed by a pattern builder; the predicate documents its main link.
    Pattern,
}

impl FromStr for ObjectKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        Ok(match s {
            "literal" => ObjectKind::Literal,
            "lang-literal-it" => ObjectKind::LangLiteralIt,
            "typed-term" => ObjectKind::TypedTerm,
            "slug-iri" => ObjectKind::SlugIri,
            "pattern" => ObjectKind::Pattern,
            other => return Err(format!("unknown object kind {other:?}")),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MappingRow {
    pub kind: EntryKind,
    pub code: String,
    pub level: Level,
    pub curie: String,
    pub predicate: Iri,
    pub object: ObjectKind,
    pub mandatory: bool,
}

#[derive(Clone, Debug, Default)]
pub struct MappingTable {
    rows: Vec<MappingRow>,
    index: HashMap<(EntryKind, String), usize>,
}

impl MappingTable {
    /// The table shipped with the crate.
    pub fn default_table() -> MappingTable {
        MappingTable::parse(DEFAULT_TABLE.as_bytes()).expect("shipped mapping table is valid")
    }

    /// Tab-separated, one header row, `#` comments.
    pub fn parse(input: &[u8]) -> Result<MappingTable, TableError> {
        let registry = TermRegistry::standard();
        let mut reader = csv::ReaderBuilder::new()
            .delimiter(b'\t')
            .comment(Some(b'#'))
            .has_headers(true)
            .flexible(true)
            .from_reader(input);

        let headers = reader.headers().map_err(|e| TableError::BadRow {
            line: 1,
            message: e.to_string(),
        })?;
        let names: Vec<&str> = headers.iter().map(str::trim).collect();
        if names != COLUMNS {
            return Err(TableError::BadRow {
                line: 1,
                message: format!("expected header {}", COLUMNS.join("\t")),
            });
        }

        let mut table = MappingTable::default();
        for result in reader.records() {
            let rec = result.map_err(|e| TableError::BadRow {
                line: e.position().map_or(0, |p| p.line() as usize),
                message: e.to_string(),
            })?;
            let line = rec.position().map_or(0, |p| p.line() as usize);
            let bad = |message: String| TableError::BadRow { line, message };
            if rec.len() != COLUMNS.len() {
                return Err(bad(format!("expected {} columns, found {}", COLUMNS.len(), rec.len())));
            }
            let col = |i: usize| rec.get(i).unwrap_or("").trim();

            let kind = EntryKind::parse(col(0)).ok_or_else(|| bad(format!("unknown kind {:?}", col(0))))?;
            let code = col(1);
            if !is_field_code(code) {
                return Err(bad(format!("bad field code {code:?}")));
            }
            let level: Level = col(2).parse().map_err(bad)?;
            let curie = col(3);
            let predicate = registry
                .get(curie)
                .cloned()
                .ok_or_else(|| TableError::UnknownPredicate {
                    curie: curie.to_string(),
                    line,
                })?;
            let object: ObjectKind = col(4).parse().map_err(bad)?;
            let mandatory = match col(5) {
                "yes" | "true" => true,
                "no" | "false" | "" => false,
                other => return Err(bad(format!("mandatory must be yes or no, found {other:?}"))),
            };
            if table.index.contains_key(&(kind, code.to_string())) {
                return Err(TableError::DuplicateRow {
                    kind: kind.to_string(),
                    code: code.to_string(),
                    line,
                });
            }
            table.index.insert((kind, code.to_string()), table.rows.len());
            table.rows.push(MappingRow {
                kind,
                code: code.to_string(),
                level,
                curie: curie.to_string(),
                predicate,
                object,
                mandatory,
            });
        }
        Ok(table)
    }

    pub fn row(&self, kind: EntryKind, code: &str) -> Option<&MappingRow> {
        self.index.get(&(kind, code.to_string())).map(|&i| &self.rows[i])
    }

    pub fn rows_for(&self, kind: EntryKind) -> impl Iterator<Item = &MappingRow> {
        self.rows.iter().filter(move |r| r.kind == kind)
    }

    pub fn rows(&self) -> &[MappingRow] {
        &self.rows
    }

    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Level::Entry => "entry",
            Level::Work => "work",
            Level::Expression => "expression",
            Level::Manifestation => "manifestation",
            Level::Item => "item",
        })
    }
}
