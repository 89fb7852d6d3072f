use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use scheda_core::mapping::ConvertOptions;
use scheda_core::rdf::{parse_ntriples, serialize_ntriples, serialize_turtle};
use scheda_core::{
    evaluate, load_snapshot, parse_records, reconcile, stats, validate_with, BgpQuery, EntryKind, EntryRecord, Graph,
    IriPolicy, MappingTable, MatchStatus, Pipeline, PrefixMap, ReconcileParams, TripleStore, DEFAULT_BASE,
};

#[derive(Parser)]
#[command(name = "scheda", version, about = "Convert photo-archive catalogue records to RDF and work with the result")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Convert F and OA records to RDF.
    Convert(ConvertArgs),
    /// Check a graph against the structural rules.
    Validate(ValidateArgs),
    /// Link local agents, places and terms to an authority snapshot.
    Reconcile(ReconcileArgs),
    /// Print triple, entity and link counts.
    Stats(StatsArgs),
    /// Evaluate a basic graph pattern.
    Query(QueryArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Turtle,
    Ntriples,
}

impl Format {
    fn extension(self) -> &'static str {
        match self {
            Format::Turtle => "ttl",
            Format::Ntriples => "nt",
        }
    }
}

#[derive(Args)]
struct ConvertArgs {
    /// A `.rec` file or a directory of them.
    #[arg(long)]
    input: PathBuf,
    /// Mapping table; the built-in table when omitted.
    #[arg(long)]
    mapping: Option<PathBuf>,
    #[arg(long, default_value = DEFAULT_BASE)]
    base: String,
    /// Output directory, or output file with --merge.
    #[arg(long)]
    out: PathBuf,
    #[arg(long, value_enum, default_value = "turtle")]
    format: Format,
    /// Write one file holding every entry graph.
    #[arg(long)]
    merge: bool,
    /// Worker threads (0: one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
    /// Fail records with unknown role values instead of warning.
    #[arg(long)]
    strict_roles: bool,
}

#[derive(Args)]
struct ValidateArgs {
    /// N-Triples graph.
    #[arg(long)]
    graph: PathBuf,
    /// Where to write the TSV report.
    #[arg(long)]
    report: Option<PathBuf>,
    #[arg(long, default_value = DEFAULT_BASE)]
    base: String,
}

#[derive(Args)]
struct ReconcileArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Authority snapshot TSV.
    #[arg(long)]
    authorities: PathBuf,
    #[arg(long, default_value_t = 0.85)]
    min_score: f64,
    #[arg(long, default_value_t = 0.05)]
    margin: f64,
    /// N-Triples file for accepted links.
    #[arg(long)]
    out: PathBuf,
    /// TSV of ambiguous candidates.
    #[arg(long)]
    review: Option<PathBuf>,
}

#[derive(Args)]
struct StatsArgs {
    #[arg(long)]
    graph: PathBuf,
}

#[derive(Args)]
struct QueryArgs {
    #[arg(long)]
    graph: PathBuf,
    /// Pattern file, one triple pattern per line.
    #[arg(long)]
    bgp: PathBuf,
}

fn main() -> ExitCode {
    env_logger::Builder::new()
        .filter_level(log::LevelFilter::Warn)
        .parse_default_env()
        .init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(2) } else { ExitCode::SUCCESS };
        }
    };
    let result = match cli.command {
        Command::Convert(a) => convert(a),
        Command::Validate(a) => validate(a),
        Command::Reconcile(a) => reconcile_cmd(a),
        Command::Stats(a) => stats_cmd(a),
        Command::Query(a) => query(a),
    };
    match result {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    fs::read(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, bytes: &[u8]) -> Result<()> {
    fs::write(path, bytes).with_context(|| format!("cannot write {}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph> {
    parse_ntriples(&read(path)?).with_context(|| path.display().to_string())
}

fn policy(base: &str) -> Result<IriPolicy> {
    IriPolicy::new(base).with_context(|| format!("bad base IRI {base:?}"))
}

fn record_files(input: &Path) -> Result<Vec<PathBuf>> {
    if !input.is_dir() {
        return Ok(vec![input.to_path_buf()]);
    }
    let mut files = Vec::new();
    for entry in fs::read_dir(input).with_context(|| format!("cannot list {}", input.display()))? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "rec") {
            files.push(path);
        }
    }
    files.sort();
    if files.is_empty() {
        bail!("no .rec files in {}", input.display());
    }
    Ok(files)
}

fn load_records(input: &Path) -> Result<Vec<EntryRecord>> {
    let mut records = Vec::new();
    let mut seen = BTreeSet::new();
    for file in record_files(input)? {
        let parsed = parse_records(&read(&file)?).with_context(|| file.display().to_string())?;
        for r in parsed {
            if !seen.insert((r.kind, r.id.clone())) {
                bail!("{}: record {} {} appears twice in the input", file.display(), r.kind, r.id);
            }
            records.push(r);
        }
    }
    Ok(records)
}

fn serialize(graph: &Graph, format: Format) -> Vec<u8> {
    match format {
        Format::Turtle => serialize_turtle(graph, &PrefixMap::standard()),
        Format::Ntriples => serialize_ntriples(graph),
    }
}

fn file_stem(kind: EntryKind, id: &str) -> String {
    let segment = match kind {
        EntryKind::F => "fentry",
        EntryKind::OA => "oaentry",
    };
    format!("{segment}-{id}")
}

fn convert(a: ConvertArgs) -> Result<u8> {
    let policy = policy(&a.base)?;
    let table = match &a.mapping {
        Some(path) => MappingTable::parse(&read(path)?).with_context(|| path.display().to_string())?,
        None => MappingTable::default_table(),
    };
    let records = load_records(&a.input)?;
    let pipeline = Pipeline {
        table,
        policy,
        options: ConvertOptions {
            strict_roles: a.strict_roles,
        },
        jobs: a.jobs,
    };
    let batch = pipeline.run(&records);
    for w in &batch.warnings {
        eprintln!("{w}");
    }

    if a.merge {
        if let Some(dir) = a.out.parent().filter(|d| !d.as_os_str().is_empty()) {
            fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
        }
        write(&a.out, &serialize(&batch.merged(), a.format))?;
    } else {
        fs::create_dir_all(&a.out).with_context(|| format!("cannot create {}", a.out.display()))?;
        for e in &batch.entries {
            let name = format!("{}.{}", file_stem(e.kind, &e.id), a.format.extension());
            write(&a.out.join(name), &serialize(&e.graph, a.format))?;
        }
    }
    eprintln!(
        "converted {} of {} records, {} warnings",
        batch.entries.len(),
        records.len(),
        batch.warnings.len()
    );
    if batch.errors.is_empty() {
        return Ok(0);
    }
    for e in &batch.errors {
        eprintln!("error: {e}");
    }
    Ok(2)
}

fn validate(a: ValidateArgs) -> Result<u8> {
    let policy = policy(&a.base)?;
    let graph = load_graph(&a.graph)?;
    let report = validate_with(&graph, &policy);
    if let Some(path) = &a.report {
        write(path, report.to_tsv().as_bytes())?;
    }
    print!("{report}");
    Ok(if report.is_clean() { 0 } else { 1 })
}

fn reconcile_cmd(a: ReconcileArgs) -> Result<u8> {
    if !(0.0..=1.0).contains(&a.min_score) || !(0.0..=1.0).contains(&a.margin) {
        bail!("--min-score and --margin must lie in [0, 1]");
    }
    let graph = load_graph(&a.graph)?;
    let snapshot = load_snapshot(&read(&a.authorities)?).with_context(|| a.authorities.display().to_string())?;
    let params = ReconcileParams {
        threshold: a.min_score,
        margin: a.margin,
    };
    let result = reconcile(&graph, &snapshot, params);
    write(&a.out, &serialize_ntriples(&result.links))?;
    if let Some(path) = &a.review {
        write(path, result.review_tsv().as_bytes())?;
    }
    for (label, status) in [
        ("accepted", MatchStatus::Accepted),
        ("ambiguous", MatchStatus::Ambiguous),
        ("rejected", MatchStatus::Rejected),
    ] {
        println!("{label}\t{}", result.with_status(status).count());
    }
    println!("links\t{}", result.links.len());
    Ok(0)
}

fn stats_cmd(a: StatsArgs) -> Result<u8> {
    let store = TripleStore::from_graph(&load_graph(&a.graph)?);
    print!("{}", stats(&store));
    Ok(0)
}

fn query(a: QueryArgs) -> Result<u8> {
    let text = String::from_utf8(read(&a.bgp)?).with_context(|| format!("{} is not UTF-8", a.bgp.display()))?;
    let q = BgpQuery::parse(&text).with_context(|| a.bgp.display().to_string())?;
    let store = TripleStore::from_graph(&load_graph(&a.graph)?);
    print!("{}", evaluate(&store, &q).to_tsv());
    Ok(0)
}
