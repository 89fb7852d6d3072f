//! Catalog entry records and their line-based file format.
//!
//! ```text
//! # comment
//! TSK: F
//! ID: 72486
//! OGTD: positivo
//! SGLT: Battesimo di Cristo @en: Baptism of Christ
//! [AUT]
//! AUTN: Brogi, Giacomo
//! [/AUT]
//! %%
//! TSK: OA
//! ...
//! ```
//!
//! `%%` separates records. `[CODE]` / `[/CODE]` delimit one repetition of a
//! paragraph; paragraphs do not nest. A value may carry an English rendering
//! after ` @en: `.

use std::collections::HashSet;
use std::fmt;

use once_cell::sync::Lazy;
use regex::Regex;

use crate::error::RecordError;
use crate::mapping::MappingTable;

static CODE_RE: Lazy<Regex> = Lazy::new(|| Regex::new(r"^[A-Z][A-Z0-9]{2,5}$").unwrap());

const TRANSLATION_MARK: &str = " @en: ";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EntryKind {
    F,
    OA,
}

impl EntryKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EntryKind::F => "F",
            EntryKind::OA => "OA",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "F" => Some(EntryKind::F),
            "OA" => Some(EntryKind::OA),
            _ => None,
        }
    }
}

impl fmt::Display for EntryKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldOccurrence {
    pub code: String,
    pub value: String,
    /// English rendering supplied by the cataloguer, if any.
    pub translation: Option<String>,
}

impl FieldOccurrence {
    pub fn new(code: &str, value: &str) -> Self {
        FieldOccurrence {
            code: code.to_string(),
            value: value.to_string(),
            translation: None,
        }
    }

    pub fn with_translation(mut self, en: &str) -> Self {
        self.translation = Some(en.to_string());
        self
    }

    /// The English rendering when present, else the source value.
    pub fn key(&self) -> &str {
        self.translation.as_deref().unwrap_or(&self.value)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldGroup {
    pub code: String,
    pub repetitions: Vec<Vec<FieldOccurrence>>,
}

/// Field lookups shared by records and group repetitions.
pub trait Fields {
    fn occurrences(&self) -> &[FieldOccurrence];

    fn field(&self, code: &str) -> Option<&FieldOccurrence> {
        self.occurrences().iter().find(|f| f.code == code)
    }

    fn value(&self, code: &str) -> Option<&str> {
        self.field(code).map(|f| f.value.as_str())
    }

    fn all<'a>(&'a self, code: &'a str) -> Box<dyn Iterator<Item = &'a FieldOccurrence> + 'a> {
        Box::new(self.occurrences().iter().filter(move |f| f.code == code))
    }
}

impl Fields for [FieldOccurrence] {
    fn occurrences(&self) -> &[FieldOccurrence] {
        self
    }
}

impl Fields for Vec<FieldOccurrence> {
    fn occurrences(&self) -> &[FieldOccurrence] {
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EntryRecord {
    pub kind: EntryKind,
    pub id: String,
    pub fields: Vec<FieldOccurrence>,
    pub groups: Vec<FieldGroup>,
}

impl Fields for EntryRecord {
    fn occurrences(&self) -> &[FieldOccurrence] {
        &self.fields
    }
}

impl EntryRecord {
    pub fn new(kind: EntryKind, id: &str) -> Self {
        EntryRecord {
            kind,
            id: id.to_string(),
            fields: Vec::new(),
            groups: Vec::new(),
        }
    }

    pub fn group(&self, code: &str) -> Option<&FieldGroup> {
        self.groups.iter().find(|g| g.code == code)
    }

    /// Repetitions of paragraph `code`, in input order.
    pub fn blocks<'a>(&'a self, code: &str) -> impl Iterator<Item = &'a [FieldOccurrence]> + 'a {
        self.group(code)
            .into_iter()
            .flat_map(|g| g.repetitions.iter().map(Vec::as_slice))
    }

    pub fn push_block(&mut self, code: &str, fields: Vec<FieldOccurrence>) {
        match self.groups.iter_mut().find(|g| g.code == code) {
            Some(g) => g.repetitions.push(fields),
            None => self.groups.push(FieldGroup {
                code: code.to_string(),
                repetitions: vec![fields],
            }),
        }
    }

    /// Every field code the record uses, including codes inside paragraphs.
    pub fn all_codes(&self) -> impl Iterator<Item = &str> {
        self.fields.iter().map(|f| f.code.as_str()).chain(self.groups.iter().flat_map(|g| {
            std::iter::once(g.code.as_str())
                .chain(g.repetitions.iter().flatten().map(|f| f.code.as_str()))
        }))
    }

    /// Debug dump in the input syntax; parsing it yields an equal record.
    pub fn to_text(&self) -> String {
        fn field_line(out: &mut String, f: &FieldOccurrence) {
            out.push_str(&f.code);
            out.push_str(": ");
            out.push_str(&f.value);
            if let Some(en) = &f.translation {
                out.push_str(TRANSLATION_MARK);
                out.push_str(en);
            }
            out.push('\n');
        }
        let mut out = format!("TSK: {}\nID: {}\n", self.kind, self.id);
        for f in &self.fields {
            field_line(&mut out, f);
        }
        for g in &self.groups {
            for rep in &g.repetitions {
                out.push_str(&format!("[{}]\n", g.code));
                for f in rep {
                    field_line(&mut out, f);
                }
                out.push_str(&format!("[/{}]\n", g.code));
            }
        }
        out
    }
}

pub fn is_field_code(code: &str) -> bool {
    CODE_RE.is_match(code)
}

#[derive(Default)]
struct PendingRecord {
    start: usize,
    kind: Option<EntryKind>,
    id: Option<String>,
    fields: Vec<FieldOccurrence>,
    blocks: Vec<(String, Vec<FieldOccurrence>)>,
    open: Option<(String, usize, Vec<FieldOccurrence>)>,
    touched: bool,
}

impl PendingRecord {
    fn finish(self, seen: &mut HashSet<String>) -> Result<Option<EntryRecord>, RecordError> {
        if let Some((code, line, _)) = self.open {
            return Err(RecordError::UnclosedGroup { code, line });
        }
        if !self.touched {
            return Ok(None);
        }
        let kind = self.kind.ok_or(RecordError::MissingTsk { line: self.start })?;
        let id = self.id.ok_or(RecordError::MissingId { line: self.start })?;
        if !seen.insert(id.clone()) {
            return Err(RecordError::DuplicateId { id, line: self.start });
        }
        let mut record = EntryRecord::new(kind, &id);
        record.fields = self.fields;
        for (code, fields) in self.blocks {
            record.push_block(&code, fields);
        }
        Ok(Some(record))
    }
}

fn parse_field(line: &str, line_no: usize) -> Result<FieldOccurrence, RecordError> {
    let bad = |message: String| RecordError::BadFieldSyntax { line: line_no, message };
    let (code, rest) = line
        .split_once(':')
        .ok_or_else(|| bad(format!("expected `CODE: value`, got {line:?}")))?;
    let code = code.trim();
    if !is_field_code(code) {
        return Err(bad(format!("invalid field code {code:?}")));
    }
    let (value, translation) = match rest.split_once(TRANSLATION_MARK) {
        Some((v, en)) => (v.trim(), Some(en.trim())),
        None => (rest.trim(), None),
    };
    if value.is_empty() {
        return Err(bad(format!("field {code} has an empty value")));
    }
    if translation == Some("") {
        return Err(bad(format!("field {code} has an empty translation")));
    }
    Ok(FieldOccurrence {
        code: code.to_string(),
        value: value.to_string(),
        translation: translation.map(str::to_string),
    })
}

/// Parses a record file. Records keep field order; comments and blank lines
/// are skipped.
pub fn parse_records(input: &[u8]) -> Result<Vec<EntryRecord>, RecordError> {
    let text = std::str::from_utf8(input).map_err(|_| RecordError::NotUtf8)?;
    let mut records = Vec::new();
    let mut seen = HashSet::new();
    let mut cur = PendingRecord {
        start: 1,
        ..Default::default()
    };

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        if line == "%%" {
            let done = std::mem::take(&mut cur);
            records.extend(done.finish(&mut seen)?);
            cur.start = line_no + 1;
            continue;
        }
        if !cur.touched {
            cur.start = line_no;
            cur.touched = true;
        }

        if let Some(code) = line.strip_prefix("[/").and_then(|l| l.strip_suffix(']')) {
            match cur.open.take() {
                Some((open, _, fields)) if open == code => {
                    if fields.is_empty() {
                        return Err(RecordError::BadFieldSyntax {
                            line: line_no,
                            message: format!("group [{code}] is empty"),
                        });
                    }
                    cur.blocks.push((open, fields));
                }
                _ => {
                    return Err(RecordError::BadFieldSyntax {
                        line: line_no,
                        message: format!("[/{code}] does not close an open group"),
                    })
                }
            }
            continue;
        }
        if let Some(code) = line.strip_prefix('[').and_then(|l| l.strip_suffix(']')) {
            if !is_field_code(code) {
                return Err(RecordError::BadFieldSyntax {
                    line: line_no,
                    message: format!("invalid group code {code:?}"),
                });
            }
            if cur.open.is_some() {
                return Err(RecordError::NestedGroup {
                    code: code.to_string(),
                    line: line_no,
                });
            }
            cur.open = Some((code.to_string(), line_no, Vec::new()));
            continue;
        }

        if let Some(v) = line.strip_prefix("TSK:") {
            if cur.open.is_some() || cur.kind.is_some() {
                return Err(RecordError::BadFieldSyntax {
                    line: line_no,
                    message: "TSK must appear once, outside groups".into(),
                });
            }
            cur.kind = Some(EntryKind::parse(v.trim()).ok_or_else(|| {
                RecordError::BadFieldSyntax {
                    line: line_no,
                    message: format!("TSK must be F or OA, got {:?}", v.trim()),
                }
            })?);
            continue;
        }
        if let Some(v) = line.strip_prefix("ID:") {
            let v = v.trim();
            if cur.open.is_some() || cur.id.is_some() {
                return Err(RecordError::BadFieldSyntax {
                    line: line_no,
                    message: "ID must appear once, outside groups".into(),
                });
            }
            if v.is_empty() || !v.bytes().all(|b| b.is_ascii_digit()) {
                return Err(RecordError::BadFieldSyntax {
                    line: line_no,
                    message: format!("ID must be numeric, got {v:?}"),
                });
            }
            cur.id = Some(v.to_string());
            continue;
        }

        let field = parse_field(line, line_no)?;
        match cur.open.as_mut() {
            Some((_, _, fields)) => fields.push(field),
            None => cur.fields.push(field),
        }
    }
    records.extend(cur.finish(&mut seen)?);
    Ok(records)
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum WarningKind {
    UnknownCode,
    MissingMandatory,
    UnknownRole,
    UnknownTerm,
    MissingOaReference,
}

impl WarningKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            WarningKind::UnknownCode => "unknown-code",
            WarningKind::MissingMandatory => "missing-mandatory",
            WarningKind::UnknownRole => "unknown-role",
            WarningKind::UnknownTerm => "unknown-term",
            WarningKind::MissingOaReference => "missing-oa-reference",
        }
    }
}

/// A non-fatal finding about a record. Displays as
/// `WARN <record-id> <code> <message>`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Warning {
    pub record_id: String,
    pub code: String,
    pub kind: WarningKind,
    pub message: String,
}

impl fmt::Display for Warning {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "WARN {} {} {}: {}",
            self.record_id,
            self.code,
            self.kind.as_str(),
            self.message
        )
    }
}

/// Warnings for codes the table does not know and for mandatory codes the
/// record lacks. Conversion proceeds regardless.
pub fn check_record(record: &EntryRecord, table: &MappingTable) -> Vec<Warning> {
    let mut warnings = Vec::new();
    let present: HashSet<&str> = record.all_codes().collect();
    let mut reported = HashSet::new();
    for code in record.all_codes() {
        if table.row(record.kind, code).is_none() && reported.insert(code) {
            warnings.push(Warning {
                record_id: record.id.clone(),
                code: code.to_string(),
                kind: WarningKind::UnknownCode,
                message: format!("{code} is not mapped for {} entries", record.kind),
            });
        }
    }
    for row in table.rows_for(record.kind).filter(|r| r.mandatory) {
        if !present.contains(row.code.as_str()) {
            warnings.push(Warning {
                record_id: record.id.clone(),
                code: row.code.clone(),
                kind: WarningKind::MissingMandatory,
                message: format!("mandatory field {} is missing", row.code),
            });
        }
    }
    if record.kind == EntryKind::F && present.contains("OAWK") && !present.contains("ROZ") {
        warnings.push(Warning {
            record_id: record.id.clone(),
            code: "ROZ".into(),
            kind: WarningKind::MissingOaReference,
            message: "entry describes a work of art but references no OA entry".into(),
        });
    }
    warnings
}
