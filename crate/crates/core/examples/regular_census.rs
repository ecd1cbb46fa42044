//! Regular-case census over 3 ≤ nᵢ ≤ N (default 6), with a per-triple roll-up.
//!
//!     cargo run --release --example regular_census -- 8

use std::time::Instant;

use turnover::census::{run_census, summarize, triples, CensusOptions};
use turnover::Case;

fn main() {
    let n_max: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(6);
    let start = Instant::now();
    let records = run_census(&CensusOptions::new(Case::Regular, n_max)).expect("census failed");
    let summary = summarize(&records);
    println!("n_max = {n_max}: {} records over {} triples in {:.1}s", summary.records, summary.triples, start.elapsed().as_secs_f64());
    println!("e/chi range [{}, {}]", summary.e_over_chi_min.unwrap_or_default(), summary.e_over_chi_max.unwrap_or_default());
    let values: Vec<String> = summary.e_over_chi_values.iter().map(|v| v.to_string()).collect();
    println!("distinct e/chi: {}", values.join(" "));
    println!("inconsistent: {}, numeric disagreements: {}", summary.inconsistent, summary.numeric_disagreements);
    for t in triples(&records) {
        let n = records.iter().filter(|r| r.signature == t).count();
        println!("  ({},{},{}) {n}", t[0], t[1], t[2]);
    }
}
