//! Catalog-entry to linked-data toolkit: record parsing, IRI minting, the
//! FRBR/CIDOC-CRM mapping, validation, reconciliation and an indexed
//! triple store.

pub mod error;
pub mod iri;
pub mod mapping;
pub mod rdf;
pub mod pipeline;
pub mod reconcile;
pub mod record;
pub mod store;
pub mod validate;

pub use error::{BuildError, ConvertError, IriError, QueryError, RdfError, RecordError, SnapshotError, TableError};
pub use iri::{slugify, EntityKind, Facet, IriPolicy, DEFAULT_BASE};
pub use mapping::{convert_entry, convert_entry_with, ConvertOptions, MappingTable, TermRegistry};
pub use rdf::{Graph, Iri, Literal, PrefixMap, Term, Triple};
pub use record::{check_record, parse_records, EntryKind, EntryRecord, Warning};
pub use pipeline::{Batch, EntryOutput, Pipeline};
pub use reconcile::{load_snapshot, reconcile, AuthorityKind, AuthorityRecord, MatchStatus, ReconcileParams, Reconciliation, Target};
pub use store::{evaluate, stats, BgpQuery, Solutions, Stats, TripleStore};
pub use validate::{validate, validate_with, Rule, ValidationReport, Violation};
