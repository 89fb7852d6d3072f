//! Synthetic corpora for benchmarks and the throughput check: the fixture
//! records replicated under fresh ids, with names and places drawn from
//! small pools so that agents and places recur across entries.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use scheda_core::{parse_records, EntryRecord};

const TEMPLATES: [&str; 4] = [
    include_str!("../../core/tests/fixtures/corpus/fentry-72486.rec"),
    include_str!("../../core/tests/fixtures/corpus/oaentry-43677.rec"),
    include_str!("../../core/tests/fixtures/corpus/oaentry-15429.rec"),
    include_str!("../../core/tests/fixtures/corpus/oaentry-75147.rec"),
];

const PHOTOGRAPHERS: &[&str] = &["Brogi", "Alinari", "Anderson", "Villani", "Perotti", "Sansaini"];
const ARTISTS: &[&str] = &[
    "Verrocchio, Andrea del",
    "Botticelli, Sandro",
    "Lippi, Filippo",
    "Perugino, Pietro",
    "Ghirlandaio, Domenico",
];
const PLACES: &[(&str, &str)] = &[
    ("Firenze", "Florence"),
    ("Roma", "Rome"),
    ("Venezia", "Venice"),
    ("Bologna", "Bologna"),
    ("Londra", "London"),
];

fn replicate(template: &str, copy: usize, rng: &mut ChaCha8Rng) -> String {
    let photographer = PHOTOGRAPHERS.choose(rng).unwrap();
    let artist = ARTISTS.choose(rng).unwrap();
    let (place_it, place_en) = PLACES.choose(rng).unwrap();
    let mut out = String::with_capacity(template.len() + 64);
    for line in template.lines() {
        let replaced = match line.split_once(": ") {
            Some(("ID", id)) => format!("ID: {}", 1_000_000 * (copy + 1) + id.parse::<usize>().unwrap()),
            Some(("ROZ", id)) => format!("ROZ: {}", 1_000_000 * (copy + 1) + id.parse::<usize>().unwrap()),
            Some(("OAWK", key)) => format!("OAWK: {key} {copy}"),
            Some(("ROFK", key)) => format!("ROFK: {key} {copy}"),
            Some(("NCTN", _)) => format!("NCTN: {copy:08}"),
            Some(("INVN", _)) => format!("INVN: {}", 200_000 + copy),
            Some(("AUTN", "Brogi")) | Some(("RUON", "Brogi")) => {
                let (code, _) = line.split_once(": ").unwrap();
                format!("{code}: {photographer}")
            }
            Some(("AUTN", _)) => format!("AUTN: {artist}"),
            Some(("LRC", _)) => format!("LRC: {place_it} @en: {place_en}"),
            _ => line.to_string(),
        };
        out.push_str(&replaced);
        out.push('\n');
    }
    out
}

/// `n` records cycling through the fixture templates, reproducible from
/// `seed`.
pub fn synthetic_records(n: usize, seed: u64) -> Vec<EntryRecord> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut text = String::new();
    for i in 0..n {
        text.push_str(&replicate(TEMPLATES[i % TEMPLATES.len()], i / TEMPLATES.len(), &mut rng));
        text.push_str("%%\n");
    }
    parse_records(text.as_bytes()).expect("templates parse")
}

#[cfg(test)]
mod tests {
    use super::*;
    use scheda_core::Pipeline;

    #[test]
    fn replicas_parse_and_convert() {
        let records = synthetic_records(40, 7);
        assert_eq!(records.len(), 40);
        let batch = Pipeline::default().run(&records);
        assert!(batch.errors.is_empty(), "{:?}", batch.errors);
        assert_eq!(batch.entries.len(), 40);
    }

    #[test]
    fn same_seed_same_records() {
        assert_eq!(synthetic_records(12, 1), synthetic_records(12, 1));
    }
}
