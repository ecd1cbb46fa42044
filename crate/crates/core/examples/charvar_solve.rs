//! Eigenvalue selections of a signature and the representation at one (s,t).
//!
//!     cargo run --example charvar_solve -- 3,3,4 0.29 0.2

use turnover::charvar::{c1_margins, delta, enumerate_lifted, parse_triple, solve};
use turnover::output::fmt_ratio;
use turnover::{Branch, Case, CharVarPoint, TurnoverSignature};

fn main() {
    let args: Vec<String> = std::env::args().skip(1).collect();
    let n = parse_triple(args.first().map(String::as_str).unwrap_or("3,3,4")).expect("signature n1,n2,n3");
    let s: f64 = args.get(1).and_then(|a| a.parse().ok()).unwrap_or(0.29);
    let t: f64 = args.get(2).and_then(|a| a.parse().ok()).unwrap_or(0.2);
    let sig = TurnoverSignature::new(n[0], n[1], n[2]).expect("hyperbolic signature");
    println!("{sig}: chi = {}", fmt_ratio(&sig.chi()));
    for sel in enumerate_lifted(sig, Case::Regular).expect("regular selections") {
        let margins = c1_margins(&sel, s, t).unwrap();
        print!("l = {:?} lift {}: C1 margins {:?}", sel.l, sel.lift, margins.map(|m| (m * 1e6).round() / 1e6));
        match delta(&sel, s, t) {
            Ok(d) => print!(", delta {d:.6}"),
            Err(e) => print!(", {e}"),
        }
        for branch in [Branch::Plus, Branch::Minus] {
            match solve(&sel, CharVarPoint { s, t, branch }) {
                Ok(rep) => print!(
                    "\n    {branch:?}: trace residual {:.1e}, relation residual {:.1e}, G = {:.6}",
                    rep.trace_residual(),
                    rep.relation_residual(),
                    rep.goldman()
                ),
                Err(e) => print!("\n    {branch:?}: {e}"),
            }
        }
        println!();
    }
}
