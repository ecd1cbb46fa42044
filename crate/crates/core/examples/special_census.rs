//! Rigid special-case censuses: I₂ a rotation about a point or about a complex geodesic.
//!
//!     cargo run --release --example special_census -- 10

use turnover::census::{run_census, summarize, CensusOptions};
use turnover::Case;

fn main() {
    let n_max: u32 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(8);
    for case in [Case::SpecialPoint, Case::SpecialLine] {
        let records = run_census(&CensusOptions::new(case, n_max)).expect("census failed");
        let s = summarize(&records);
        println!(
            "{case}: {} examples over {} triples, e/chi in [{}, {}], {} inconsistent",
            s.records,
            s.triples,
            s.e_over_chi_min.unwrap_or_default(),
            s.e_over_chi_max.unwrap_or_default(),
            s.inconsistent
        );
        let values: Vec<String> = s.e_over_chi_values.iter().map(|v| v.to_string()).collect();
        println!("  distinct e/chi: {}", values.join(" "));
    }
}
