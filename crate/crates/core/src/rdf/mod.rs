//! RDF data model, N-Triples reader/writer and Turtle writer.

mod graph;
pub mod ntriples;
mod prefix;
mod term;
pub mod turtle;

pub use graph::Graph;
pub use ntriples::{parse_ntriples, serialize_ntriples};
pub use prefix::{PrefixMap, DEFAULT_PREFIXES};
pub use term::{Iri, Literal, Term, Triple, XSD_GYEAR, XSD_STRING};
pub use turtle::serialize_turtle;
