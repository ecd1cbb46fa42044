mod common;

use std::path::PathBuf;

use common::*;
use turnover::census::{run_census, summarize, triples, write_jsonl, CensusOptions, CensusRecord};
use turnover::Case;

/// Compares against the golden file, or rewrites it when TURNOVER_BLESS is set.
fn check_golden(name: &str, got: &str) {
    let path = golden_path(name);
    if std::env::var_os("TURNOVER_BLESS").is_some() {
        std::fs::write(&path, got).unwrap();
        return;
    }
    let want = std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e} (set TURNOVER_BLESS=1 to create)", path.display()));
    if let Err(e) = compare_csv(got, &want) {
        panic!("{name}: {e}");
    }
}

#[test]
fn regular_census_matches_snapshot() {
    let records = run_census(&CensusOptions::new(Case::Regular, 6)).unwrap();
    let summary = summarize(&records);
    assert_eq!(summary.inconsistent, 0);
    assert_eq!(summary.numeric_disagreements, 0);
    check_golden("regular_n6.csv", &census_csv(&records));
}

#[test]
fn special_censuses_match_snapshot() {
    for (case, name) in [(Case::SpecialPoint, "special_point_n6.csv"), (Case::SpecialLine, "special_line_n6.csv")] {
        let records = run_census(&CensusOptions::new(case, 6)).unwrap();
        assert_eq!(summarize(&records).inconsistent, 0);
        check_golden(name, &census_csv(&records));
    }
}

#[test]
fn census_jsonl_round_trips() {
    let records = run_census(&CensusOptions::new(Case::SpecialLine, 5)).unwrap();
    assert!(!records.is_empty());
    let mut buf = Vec::new();
    write_jsonl(&mut buf, &records).unwrap();
    let back: Vec<CensusRecord> = String::from_utf8(buf).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(back, records);
}

/// Full regular census 3 ≤ nᵢ ≤ 12. Slow: run with `cargo test --release -- --ignored`.
/// Writes the per-triple list and the full records next to the test binaries either way.
#[test]
#[ignore]
fn full_regular_census_triple_count() {
    let records = run_census(&CensusOptions::new(Case::Regular, 12)).unwrap();
    let found = triples(&records);
    let mut artifact = format!("# {} triples with a passing quadrangle, 3 <= n_i <= 12\n", found.len());
    for t in &found {
        let n = records.iter().filter(|r| r.signature == *t).count();
        artifact.push_str(&format!("{},{},{},{n}\n", t[0], t[1], t[2]));
    }
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR"));
    let path = dir.join("regular_census_n12_triples.csv");
    std::fs::write(&path, artifact).unwrap();
    std::fs::write(dir.join("regular_census_n12.csv"), census_csv(&records)).unwrap();
    let summary = summarize(&records);
    assert_eq!(summary.inconsistent, 0);
    assert!((506..=560).contains(&found.len()), "{} triples, outside [506, 560]; per-triple list in {}", found.len(), path.display());
}
