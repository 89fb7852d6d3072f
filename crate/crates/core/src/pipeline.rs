//! Batch conversion: parallel per-record conversion with run-wide,
//! order-deterministic slug collision resolution.

use rayon::prelude::*;

use crate::error::ConvertError;
use crate::iri::{CollisionBuilder, CollisionTable, EntityKind, IriPolicy};
use crate::mapping::{convert_entry_with, Conversion, ConvertOptions, MappingTable, FIXED_TERMS};
use crate::rdf::Graph;
use crate::record::{check_record, EntryKind, EntryRecord, Warning};

/// Graph produced for one record.
#[derive(Clone, Debug)]
pub struct EntryOutput {
    pub kind: EntryKind,
    pub id: String,
    pub graph: Graph,
}

#[derive(Clone, Debug, Default)]
pub struct Batch {
    /// Successful conversions, in input order.
    pub entries: Vec<EntryOutput>,
    /// Record checks and conversion warnings, in input order.
    pub warnings: Vec<Warning>,
    pub errors: Vec<ConvertError>,
    pub collisions: CollisionTable,
}

impl Batch {
    /// Union of every entry graph.
    pub fn merged(&self) -> Graph {
        let mut g = Graph::new();
        for e in &self.entries {
            for t in e.graph.iter() {
                g.add(t.clone());
            }
        }
        g
    }
}

#[derive(Clone, Debug)]
pub struct Pipeline {
    pub table: MappingTable,
    pub policy: IriPolicy,
    pub options: ConvertOptions,
    /// Worker threads; 0 lets rayon decide.
    pub jobs: usize,
}

impl Default for Pipeline {
    fn default() -> Self {
        Pipeline {
            table: MappingTable::default_table(),
            policy: IriPolicy::default(),
            options: ConvertOptions::default(),
            jobs: 0,
        }
    }
}

type Outcome = Result<Conversion, ConvertError>;

impl Pipeline {
    fn convert_all(&self, records: &[&EntryRecord], policy: &IriPolicy) -> Vec<Outcome> {
        let work = || {
            records
                .par_iter()
                .map(|r| convert_entry_with(r, &self.table, policy, self.options))
                .collect()
        };
        if self.jobs == 0 {
            return work();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build() {
            Ok(pool) => pool.install(work),
            Err(e) => {
                log::warn!("thread pool unavailable ({e}); converting on the global pool");
                work()
            }
        }
    }

    /// Converts `records`. Keys whose slugs collide are numbered in the
    /// order they are first minted, walking records in input order, so the
    /// output does not depend on `jobs`.
    pub fn run(&self, records: &[EntryRecord]) -> Batch {
        let all: Vec<&EntryRecord> = records.iter().collect();
        let mut outcomes = self.convert_all(&all, &self.policy);

        let mut builder = CollisionBuilder::new();
        for t in FIXED_TERMS {
            builder
                .observe(EntityKind::Term, t.key)
                .expect("fixed term keys are valid slugs");
        }
        let mut redo = Vec::new();
        for (i, outcome) in outcomes.iter().enumerate() {
            let Ok(conv) = outcome else { continue };
            let mut collided = false;
            for (kind, key) in &conv.minted {
                // Keys were minted once already, so they slugify.
                collided |= builder.observe(*kind, key).unwrap_or(false);
            }
            if collided {
                redo.push(i);
            }
        }
        let collisions = builder.build();

        if !redo.is_empty() {
            log::debug!("{} records reconverted after slug collisions", redo.len());
            let policy = self.policy.clone().with_collisions(collisions.clone());
            let again: Vec<&EntryRecord> = redo.iter().map(|&i| &records[i]).collect();
            for (i, outcome) in redo.iter().zip(self.convert_all(&again, &policy)) {
                outcomes[*i] = outcome;
            }
        }

        let mut batch = Batch {
            collisions,
            ..Batch::default()
        };
        for (record, outcome) in records.iter().zip(outcomes) {
            batch.warnings.extend(check_record(record, &self.table));
            match outcome {
                Ok(conv) => {
                    batch.warnings.extend(conv.warnings);
                    batch.entries.push(EntryOutput {
                        kind: record.kind,
                        id: record.id.clone(),
                        graph: conv.graph,
                    });
                }
                Err(e) => batch.errors.push(e),
            }
        }
        batch
    }
}
