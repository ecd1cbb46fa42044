//! The quadrangle of bisectors of one representation and every certificate margin.
//!
//!     cargo run --example quadrangle_check -- 0.29 0.2

use turnover::quadrangle::{build_quadrangle, check_quadrangle};
use turnover::{Branch, Case, CharVarPoint, EigenvalueSelection, TurnoverSignature};

fn main() {
    let args: Vec<f64> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (s, t) = (args.first().copied().unwrap_or(0.29), args.get(1).copied().unwrap_or(0.2));
    let sig = TurnoverSignature::new(3, 3, 4).unwrap();
    let sel = EigenvalueSelection::new(sig, Case::Regular, [1, 1, 1], 0).unwrap();
    let rep = turnover::charvar::solve(&sel, CharVarPoint { s, t, branch: Branch::Plus }).expect("point outside the character variety");
    let qd = build_quadrangle(&rep).expect("quadrangle");
    let r = check_quadrangle(&qd, &sel);
    println!("(s,t) = ({s}, {t})");
    println!("Q1   tance - 1:        {:?}", r.q1);
    println!("Q2   triangle slacks:  {:?}", r.q2);
    println!("Q3.1 transversality:   {:?}", r.q31);
    println!("Q3.2 transversality:   {:?}", r.q32);
    println!("Q3.3 sector signs:     {:?}", r.q33);
    println!("Q4   angles:           {}", r.q4);
    println!("pass {} (min margin {:.3e}, first failure {:?})", r.pass, r.min_margin, r.first_failure());
}
