//! One PASS/FAIL line per acceptance criterion. Failures are reported,
//! not raised, unless ACCEPTANCE_STRICT=1 is set.

#[path = "../../core/tests/support/mod.rs"]
mod support;

use std::collections::BTreeSet;
use std::fs;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::Path;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scheda_core::rdf::{parse_ntriples, serialize_ntriples, serialize_turtle};
use scheda_core::{
    evaluate, load_snapshot, reconcile, validate, Graph, Iri, PrefixMap, ReconcileParams, Rule, Triple, TripleStore,
    DEFAULT_BASE,
};

use support::{corpus, excerpts, fixtures, gen, oracle, turtle};

const EXCERPT_TIME_LIMIT: Duration = Duration::from_secs(1);
const ROUND_TRIP_GRAPHS: u64 = 200;
const ROUND_TRIP_MAX_TRIPLES: usize = 200;
const QUERIES: u64 = 100;
const QUERY_MAX_PATTERNS: usize = 3;
const QUERY_MAX_TRIPLES: usize = 500;
const THROUGHPUT_RECORDS: usize = 10_000;
const THROUGHPUT_LIMIT: Duration = Duration::from_secs(60);
const AAT_POLYPTYCH: &str = "http://vocab.getty.edu/aat/300178235";

type Criterion = (&'static str, fn() -> Outcome);

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn missing(graph: &Graph, expected: &BTreeSet<Triple>) -> usize {
    expected.iter().filter(|t| !graph.contains(t)).count()
}

fn excerpt_conformance() -> Outcome {
    let start = Instant::now();
    let graph = corpus::graph();
    let aliases = excerpts::aliases(&fixtures().join("aliases.tsv"));
    let files = excerpts::files(&fixtures().join("excerpts"));
    let mut gone = 0;
    let mut short = Vec::new();
    for f in &files {
        let expected = excerpts::load(f, &aliases, DEFAULT_BASE).unwrap();
        let n = missing(&graph, &expected);
        if n > 0 {
            short.push(f.file_stem().unwrap().to_string_lossy().into_owned());
        }
        gone += n;
    }
    let elapsed = start.elapsed();
    let pass = files.len() == 12 && gone == 0 && elapsed < EXCERPT_TIME_LIMIT;
    outcome(
        pass,
        format!(
            "{} of {} excerpts contained, {gone} triples missing {short:?}, {:.3}s (limit {}s)",
            files.len() - short.len(),
            files.len(),
            elapsed.as_secs_f64(),
            EXCERPT_TIME_LIMIT.as_secs()
        ),
    )
}

fn type_conformance() -> Outcome {
    let graph = corpus::graph();
    let aliases = excerpts::aliases(&fixtures().join("aliases.tsv"));
    let usage = excerpts::load(&fixtures().join("types/type-usage.ttl"), &aliases, DEFAULT_BASE).unwrap();
    let alignment = excerpts::load(&fixtures().join("types/type-alignment.ttl"), &aliases, DEFAULT_BASE).unwrap();
    let snapshot = load_snapshot(&fs::read(fixtures().join("authorities/snapshot.tsv")).unwrap()).unwrap();
    let result = reconcile(&graph, &snapshot, ReconcileParams::default());
    let mut linked = graph.clone();
    linked.extend(result.links.clone());
    let polyptych = Iri::new(format!("{DEFAULT_BASE}term/polyptych")).unwrap();
    let see_also: BTreeSet<String> = result
        .links
        .iter()
        .filter(|t| t.subject == polyptych)
        .map(|t| t.object.to_ntriples())
        .collect();
    let exact = see_also == BTreeSet::from([format!("<{AAT_POLYPTYCH}>")]);
    let (u, a) = (missing(&graph, &usage), missing(&linked, &alignment));
    outcome(
        u == 0 && a == 0 && exact,
        format!(
            "type usage: {u} of {} triples missing; alignment: {a} of {} missing; polyptych links {see_also:?}",
            usage.len(),
            alignment.len()
        ),
    )
}

fn load_turtle(path: &Path) -> Graph {
    let text = fs::read_to_string(path).unwrap();
    turtle::parse_with(&text, PrefixMap::standard()).unwrap().into_iter().collect()
}

fn validator_discrimination() -> Outcome {
    let mut files: Vec<_> = fs::read_dir(fixtures().join("validation"))
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    files.sort();
    let mut seeded = 0;
    let mut wrong = Vec::new();
    let mut covered = BTreeSet::new();
    let mut clean = 0;
    for f in &files {
        let name = f.file_stem().unwrap().to_string_lossy().into_owned();
        let report = validate(&load_turtle(f));
        let code = name.split('-').next().unwrap().to_uppercase();
        match Rule::ALL.iter().find(|r| r.to_string() == code) {
            Some(rule) => {
                seeded += 1;
                covered.insert(*rule);
                if report.rules() != BTreeSet::from([*rule]) {
                    wrong.push(format!("{name}: {:?}", report.rules()));
                }
            }
            None => {
                clean += 1;
                if !report.is_clean() {
                    wrong.push(format!("{name}: {:?}", report.rules()));
                }
            }
        }
    }
    for entry in scheda_core::Pipeline::default().run(&corpus::records()).entries {
        clean += 1;
        let report = validate(&entry.graph);
        if !report.is_clean() {
            wrong.push(format!("{} {}: {:?}", entry.kind, entry.id, report.rules()));
        }
    }
    outcome(
        seeded >= 12 && covered.len() == 12 && wrong.is_empty(),
        format!(
            "{seeded} seeded fixtures covering {} rules, {clean} well-formed graphs, {} mismatches {wrong:?}",
            covered.len(),
            wrong.len()
        ),
    )
}

fn round_trip() -> Outcome {
    let mut failures = Vec::new();
    let mut triples = 0;
    for seed in 0..ROUND_TRIP_GRAPHS {
        let g = gen::graph(&mut ChaCha8Rng::seed_from_u64(seed), ROUND_TRIP_MAX_TRIPLES);
        triples += g.len();
        let set: BTreeSet<Triple> = g.iter().cloned().collect();
        let nt: BTreeSet<Triple> = parse_ntriples(&serialize_ntriples(&g)).unwrap().into_triples();
        let ttl = String::from_utf8(serialize_turtle(&g, &PrefixMap::standard())).unwrap();
        let ttl = turtle::parse(&ttl);
        if nt != set || ttl.as_ref() != Ok(&nt) {
            failures.push(seed);
        }
    }
    outcome(
        failures.is_empty(),
        format!(
            "{ROUND_TRIP_GRAPHS} graphs, {triples} triples, N-Triples identity and Turtle agreement; failing seeds {failures:?}"
        ),
    )
}

fn query_oracle() -> Outcome {
    let mut failures = Vec::new();
    let mut nonempty = 0;
    for seed in 0..QUERIES {
        let mut rng = ChaCha8Rng::seed_from_u64(1_000 + seed);
        let g = gen::graph(&mut rng, QUERY_MAX_TRIPLES);
        let q = gen::bgp(&mut rng, &g, QUERY_MAX_PATTERNS);
        let got = evaluate(&TripleStore::from_graph(&g), &q);
        let want = oracle::nested_loop(&g, &q);
        if !got.rows.is_empty() {
            nonempty += 1;
        }
        if got.rows != want || got.variables != q.variables() {
            failures.push(seed);
        }
    }
    outcome(
        failures.is_empty(),
        format!("{QUERIES} queries ({nonempty} with answers), exact agreement; failing seeds {failures:?}"),
    )
}

fn reconciliation_gold() -> Outcome {
    let graph = corpus::graph();
    let snapshot = load_snapshot(&fs::read(fixtures().join("authorities/snapshot.tsv")).unwrap()).unwrap();
    let result = reconcile(&graph, &snapshot, ReconcileParams::default());
    let gold = corpus::gold();
    let check = corpus::check(&result, &gold);
    let extra: Vec<String> = check
        .extra
        .iter()
        .map(|(l, a, s)| format!("{}->{a} ({s:.4})", l.as_str().trim_start_matches(DEFAULT_BASE)))
        .collect();
    outcome(
        check.passed(),
        format!(
            "{} snapshot rows; precision {:.3} ({} gold links accepted, extra {extra:?}); missing {:?}; ambiguous rows leaked {:?}",
            snapshot.len(),
            check.precision(),
            check.true_positives,
            check.missing,
            check.leaked
        ),
    )
}

fn scheda(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_scheda")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

/// Every artifact of a full convert, validate, reconcile and stats run,
/// by file name.
fn full_run(dir: &Path, jobs: &str) -> Vec<(String, Vec<u8>)> {
    let input = fixtures().join("corpus");
    let input = input.to_str().unwrap();
    let snapshot = fixtures().join("authorities/snapshot.tsv");
    let p = |name: &str| dir.join(name).to_str().unwrap().to_string();
    let (code, _) = scheda(&["convert", "--input", input, "--out", &p("entries"), "--jobs", jobs]);
    assert_eq!(code, 0);
    let (code, _) = scheda(&[
        "convert", "--input", input, "--out", &p("merged.nt"), "--format", "ntriples", "--merge", "--jobs", jobs,
    ]);
    assert_eq!(code, 0);
    let (code, report) = scheda(&["validate", "--graph", &p("merged.nt"), "--report", &p("report.tsv")]);
    assert_eq!(code, 0);
    fs::write(dir.join("validate.out"), report).unwrap();
    let (code, counts) = scheda(&[
        "reconcile",
        "--graph",
        &p("merged.nt"),
        "--authorities",
        snapshot.to_str().unwrap(),
        "--out",
        &p("links.nt"),
        "--review",
        &p("review.tsv"),
    ]);
    assert_eq!(code, 0);
    fs::write(dir.join("reconcile.out"), counts).unwrap();
    let (code, stats) = scheda(&["stats", "--graph", &p("merged.nt")]);
    assert_eq!(code, 0);
    fs::write(dir.join("stats.out"), stats).unwrap();

    let mut artifacts = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let path = e.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                let name = path.strip_prefix(dir).unwrap().to_string_lossy().into_owned();
                artifacts.push((name, fs::read(&path).unwrap()));
            }
        }
    }
    artifacts.sort();
    artifacts
}

fn determinism() -> Outcome {
    let tmp = tempfile::tempdir().unwrap();
    let runs: Vec<_> = [("a", "0"), ("b", "0"), ("one", "1"), ("eight", "8")]
        .iter()
        .map(|(name, jobs)| {
            let dir = tmp.path().join(name);
            fs::create_dir(&dir).unwrap();
            full_run(&dir, jobs)
        })
        .collect();
    let identical = runs[0] == runs[1];
    let sets: Vec<BTreeSet<Triple>> = runs[2..]
        .iter()
        .map(|r| {
            let merged = &r.iter().find(|(n, _)| n == "merged.nt").unwrap().1;
            parse_ntriples(merged).unwrap().into_triples()
        })
        .collect();
    let same_sets = sets[0] == sets[1];
    outcome(
        identical && same_sets,
        format!(
            "{} artifacts byte-identical across two runs: {identical}; --jobs 1 and --jobs 8 give equal sets of {} triples: {same_sets}",
            runs[0].len(),
            sets[0].len()
        ),
    )
}

fn throughput() -> Outcome {
    let records = scheda_bench::synthetic_records(THROUGHPUT_RECORDS, 1);
    let text: String = records.iter().map(|r| format!("{}%%\n", r.to_text())).collect();
    let start = Instant::now();
    let parsed = scheda_core::parse_records(text.as_bytes()).unwrap();
    let batch = scheda_core::Pipeline::default().run(&parsed);
    let merged = batch.merged();
    let bytes = serialize_ntriples(&merged).len();
    let elapsed = start.elapsed();
    let ok = batch.entries.len() == THROUGHPUT_RECORDS && batch.errors.is_empty();
    outcome(
        ok && elapsed < THROUGHPUT_LIMIT,
        format!(
            "{} of {THROUGHPUT_RECORDS} records converted to {} triples ({bytes} bytes) in {:.2}s (limit {}s)",
            batch.entries.len(),
            merged.len(),
            elapsed.as_secs_f64(),
            THROUGHPUT_LIMIT.as_secs()
        ),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 8] = [
        ("excerpt conformance", excerpt_conformance),
        ("type conformance", type_conformance),
        ("validator discrimination", validator_discrimination),
        ("serializer round trip", round_trip),
        ("query oracle equivalence", query_oracle),
        ("reconciliation gold set", reconciliation_gold),
        ("determinism", determinism),
        ("throughput", throughput),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let o = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            outcome(false, format!("panicked: {msg}"))
        });
        if !o.pass {
            failed += 1;
        }
        println!("{} {} {name}: {}", if o.pass { "PASS" } else { "FAIL" }, i + 1, o.detail);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 && std::env::var("ACCEPTANCE_STRICT").is_ok_and(|v| v == "1") {
        return ExitCode::FAILURE;
    }
    ExitCode::SUCCESS
}
