use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RdfError {
    #[error("malformed IRI: {0:?}")]
    MalformedIri(String),
    #[error("malformed literal: {0}")]
    MalformedLiteral(String),
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: blank nodes are not supported")]
    BlankNodeRejected { line: usize },
    #[error("input is not valid UTF-8")]
    NotUtf8,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RecordError {
    #[error("record starting at line {line}: missing TSK header")]
    MissingTsk { line: usize },
    #[error("record starting at line {line}: missing ID header")]
    MissingId { line: usize },
    #[error("line {line}: group [{code}] is never closed")]
    UnclosedGroup { code: String, line: usize },
    #[error("line {line}: {message}")]
    BadFieldSyntax { line: usize, message: String },
    #[error("line {line}: group [{code}] opened inside another group")]
    NestedGroup { code: String, line: usize },
    #[error("line {line}: duplicate record id {id}")]
    DuplicateId { id: String, line: usize },
    #[error("input is not valid UTF-8")]
    NotUtf8,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IriError {
    #[error("unknown entity kind {0:?}")]
    UnknownKind(String),
    #[error("empty key")]
    EmptyKey,
    #[error("{0:?} is empty after normalization")]
    EmptyAfterNormalization(String),
    #[error("base IRI must be absolute and end with '/': {0:?}")]
    BadBase(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TableError {
    #[error("line {line}: {message}")]
    BadRow { line: usize, message: String },
    #[error("line {line}: duplicate row for ({kind}, {code})")]
    DuplicateRow { kind: String, code: String, line: usize },
    #[error("line {line}: predicate {curie} is not in the term registry")]
    UnknownPredicate { curie: String, line: usize },
}

/// Failures of a single pattern builder.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("[{group}] block names no agent")]
    DanglingActor { group: String },
    #[error("unparseable measure {0:?}")]
    BadDimension(String),
    #[error("place {0:?} is declared inside itself")]
    CyclicPlaceChain(String),
    #[error("unknown role {0:?}")]
    UnknownRole(String),
    #[error("interpretation without criterion")]
    MissingCriterion,
    #[error("interpretation without type")]
    MissingType,
    #[error("unknown influence kind {0:?}")]
    UnknownInfluenceKind(String),
    #[error("[ROF] block names no former work")]
    MissingFormerWork,
    #[error("no node for role target {0:?}")]
    MissingRoleTarget(String),
    #[error(transparent)]
    Iri(#[from] IriError),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("record {record_id}: {source}")]
pub struct ConvertError {
    pub record_id: String,
    #[source]
    pub source: BuildError,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SnapshotError {
    #[error("line {line}: duplicate authority id {id}")]
    DuplicateId { id: String, line: usize },
    #[error("line {line}: bad year {value:?}")]
    BadYear { value: String, line: usize },
    #[error("line {line}: {message}")]
    BadRow { line: usize, message: String },
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum QueryError {
    #[error("query has no patterns")]
    Empty,
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
}
