//! Helpers shared by the integration tests: an independent Turtle reader,
//! excerpt normalization, random graphs and a brute-force pattern matcher.
#![allow(dead_code)]

pub mod corpus;
pub mod excerpts;
pub mod gen;
pub mod oracle;
pub mod turtle;

use std::path::PathBuf;

/// Fixture root, shared with the cli crate's tests.
pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}
