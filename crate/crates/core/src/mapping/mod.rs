//! Record to RDF conversion.

mod convert;
mod registry;
mod table;
mod vocab;

pub use convert::{convert_entry, convert_entry_with, Carrier, Conversion, ConvertOptions, EntryBuilder, Nodes};
pub use registry::{term, TermRegistry};
pub use table::{Level, MappingRow, MappingTable, ObjectKind};
pub use vocab::{influence_kind, lookup_role, FixedTerm, RoleFamily, RoleRef, FIXED_TERMS, PREFERRED_MARKER};
