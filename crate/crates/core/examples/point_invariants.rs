//! Euler number, Toledo invariant and the 3τ = 2(e+χ) check at one point, as JSON.
//!
//!     cargo run --example point_invariants

use turnover::invariants::invariant_report;
use turnover::quadrangle::{build_quadrangle, check_quadrangle};
use turnover::{Branch, Case, CharVarPoint, EigenvalueSelection, TurnoverSignature};

fn main() {
    let sig = TurnoverSignature::new(3, 3, 4).unwrap();
    let sel = EigenvalueSelection::new(sig, Case::Regular, [1, 1, 1], 0).unwrap();
    let rep = turnover::charvar::solve(&sel, CharVarPoint { s: 0.29, t: 0.2, branch: Branch::Plus }).unwrap();
    let qd = build_quadrangle(&rep).unwrap();
    assert!(check_quadrangle(&qd, &sel).pass, "this point passes the quadrangle conditions");
    let report = invariant_report(&sel, &qd, &rep).unwrap();
    println!("{}", serde_json::to_string_pretty(&report).unwrap());
}
