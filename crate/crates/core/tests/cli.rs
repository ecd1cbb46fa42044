use std::path::Path;
use std::process::{Command, Output};

use turnover::census::read_pgm;
use turnover::InvariantReport;

fn turnover(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_turnover")).args(args).env_remove("TURNOVER_WORKERS").output().unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn invariants_prints_a_round_tripping_report() {
    let o = turnover(&["invariants", "--signature", "3,3,4", "--selection", "1,1,1", "--s", "0.29", "--t", "0.2", "--branch", "plus"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = String::from_utf8(o.stdout).unwrap();
    let report: InvariantReport = serde_json::from_str(&text).unwrap();
    assert_eq!(report.f, 1);
    assert_eq!(text.trim(), serde_json::to_string_pretty(&report).unwrap());
    assert!(text.contains("\"e_over_chi\": \"-1/1\""));
}

#[test]
fn invariants_outside_the_character_variety_exits_one() {
    let o = turnover(&["invariants", "--signature", "3,3,4", "--selection", "1,1,1", "--s", "3", "--t", "3"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("C1") && err.contains("margins"), "{err}");
}

#[test]
fn invariants_with_a_failing_certificate_exits_one() {
    let o = turnover(&["invariants", "--signature", "3,3,4", "--selection", "1,1,1", "--s", "0.2", "--t", "0.3"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("Q2"), "{}", stderr(&o));
}

#[test]
fn bad_arguments_exit_two() {
    for args in [
        vec!["invariants", "--selection", "1,1,1", "--s", "0.3", "--t", "0.2"],
        vec!["invariants", "--signature", "3,3,3", "--selection", "1,1,1", "--s", "0.3", "--t", "0.2"],
        vec!["invariants", "--signature", "3,3,4", "--selection", "2,1,1", "--s", "0.3", "--t", "0.2"],
        vec!["invariants", "--signature", "3,3,4", "--selection", "1,1,1", "--s", "0", "--t", "0.2"],
        vec!["scan", "--signature", "3,3,4", "--selection", "1,1,1", "--s-range", "1:0:5", "--out", "x.pgm"],
        vec!["census", "--case", "diagonal", "--n-max", "5", "--out", "x.csv"],
        vec!["goldman", "--bogus"],
    ] {
        let o = turnover(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn scan_writes_raster_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let (pgm, csv) = (dir.path().join("region.pgm"), dir.path().join("region.csv"));
    let o = turnover(&[
        "scan",
        "--signature",
        "3,3,4",
        "--selection",
        "1,1,1",
        "--s-range",
        "0:1:40",
        "--t-range",
        "0:1:30",
        "--out",
        path_str(&pgm),
        "--csv",
        path_str(&csv),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (w, h, codes) = read_pgm(&std::fs::read_to_string(&pgm).unwrap()).unwrap();
    assert_eq!((w, h), (40, 30));
    assert!(codes.contains(&1) && codes.contains(&2) && codes.iter().all(|&c| c <= 3));
    assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 1 + 40 * 30);
}

#[test]
fn goldman_raster_has_both_signs() {
    let dir = tempfile::tempdir().unwrap();
    let pgm = dir.path().join("goldman.pgm");
    let o = turnover(&[
        "goldman",
        "--signature",
        "3,3,4",
        "--selection",
        "1,1,1",
        "--s-range",
        "0:1:60",
        "--t-range",
        "0:1:60",
        "--out",
        path_str(&pgm),
    ]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let (_, _, codes) = read_pgm(&std::fs::read_to_string(&pgm).unwrap()).unwrap();
    assert!(codes.contains(&0) && codes.contains(&1) && codes.contains(&2));
}

#[test]
fn special_line_census_stays_in_range() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("census.csv");
    let o = turnover(&["census", "--case", "special-line", "--n-max", "8", "--out", path_str(&csv)]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = header.iter().position(|h| *h == "e_over_chi").unwrap();
    let mut rows = 0;
    for line in lines {
        let v = turnover::output::parse_ratio(line.split(',').nth(col).unwrap()).unwrap();
        assert!(v > num_rational::Ratio::from_integer(0) && v <= num_rational::Ratio::new(1, 2), "{line}");
        rows += 1;
    }
    assert!(rows > 0);
}

#[test]
fn config_file_replicates_flags() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.conf");
    std::fs::write(&cfg, "# point query\nsignature = 3,3,4\nselection = 1,1,1\ns = 0.29\nt = 0.2\n").unwrap();
    let from_cfg = turnover(&["--config", path_str(&cfg), "invariants"]);
    let from_flags = turnover(&["invariants", "--signature", "3,3,4", "--selection", "1,1,1", "--s", "0.29", "--t", "0.2"]);
    assert_eq!(from_cfg.status.code(), Some(0), "{}", stderr(&from_cfg));
    assert_eq!(from_cfg.stdout, from_flags.stdout);
    // Flags win over the file.
    let moved = turnover(&["--config", path_str(&cfg), "invariants", "--s", "3"]);
    assert_eq!(moved.status.code(), Some(1));
    std::fs::write(&cfg, "colour = red\n").unwrap();
    assert_eq!(turnover(&["--config", path_str(&cfg), "invariants"]).status.code(), Some(2));
}

#[test]
fn output_does_not_depend_on_worker_count() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for workers in ["1", "3"] {
        let csv = dir.path().join(format!("scan{workers}.csv"));
        let pgm = dir.path().join(format!("scan{workers}.pgm"));
        let o = Command::new(env!("CARGO_BIN_EXE_turnover"))
            .args(["scan", "--signature", "3,3,4", "--selection", "1,1,1", "--s-range", "0.2:0.4:25", "--t-range", "0.05:0.35:25"])
            .args(["--out", path_str(&pgm), "--csv", path_str(&csv)])
            .env("TURNOVER_WORKERS", workers)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
        outputs.push((std::fs::read(&csv).unwrap(), std::fs::read(&pgm).unwrap(), o.stdout));
    }
    assert!(outputs[0] == outputs[1]);
}
