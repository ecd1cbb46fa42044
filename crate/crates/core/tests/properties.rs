mod common;

use common::*;
use proptest::prelude::*;
use turnover::charvar::{enumerate_lifted, reduce_mod2, solve};
use turnover::chgeom::{cyclic_order_o, herm, herm_cross};
use turnover::output::{fmt_f64, fmt_ratio, parse_ratio};
use turnover::{Branch, CVec3, Case, CharVarPoint, RepresentationTriple, C64};

fn cvec() -> impl Strategy<Value = CVec3> {
    prop::array::uniform6(-3.0f64..3.0).prop_map(|x| CVec3::new(C64::new(x[0], x[1]), C64::new(x[2], x[3]), C64::new(x[4], x[5])))
}

fn check_generators(rep: &RepresentationTriple) -> Result<(), TestCaseError> {
    let n = rep.selection.signature.n;
    for (m, k) in rep.generators().iter().zip(n) {
        prop_assert!(m.unitarity_defect() < 1e-10, "unitarity {:e}", m.unitarity_defect());
        prop_assert!((m.det() - 1.0).norm() < 1e-10, "det {}", m.det());
        prop_assert!(m.pow(k).cube_root_scalar(1e-8).is_some(), "order {k}");
    }
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn herm_cross_is_orthogonal(a in cvec(), b in cvec()) {
        if let Ok(x) = herm_cross(&a, &b) {
            let scale = a.euclid() * b.euclid() * x.euclid();
            prop_assert!(herm(&a, &x).norm() <= 1e-12 * scale.max(1.0));
            prop_assert!(herm(&b, &x).norm() <= 1e-12 * scale.max(1.0));
        }
    }

    #[test]
    fn cyclic_order_flips_under_transposition(a in 0.0..std::f64::consts::TAU, b in 0.0..std::f64::consts::TAU, c in 0.0..std::f64::consts::TAU) {
        let t = |x: f64| C64::from_polar(1.0, x);
        if let (Ok(o1), Ok(o2)) = (cyclic_order_o(t(a), t(b), t(c)), cyclic_order_o(t(a), t(c), t(b))) {
            prop_assert_eq!(o1 + o2, 1);
            prop_assert_eq!(Ok(o1), cyclic_order_o(t(b), t(c), t(a)));
        }
    }

    #[test]
    fn floats_and_ratios_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite()), p in -1000i64..1000, q in 1i64..1000) {
        prop_assert_eq!(fmt_f64(x).parse::<f64>().unwrap(), x);
        let r = num_rational::Ratio::new(p, q);
        prop_assert_eq!(parse_ratio(&fmt_ratio(&r)).unwrap(), r);
        let m = reduce_mod2(r);
        prop_assert!(*m.numer() > -m.denom() && *m.numer() <= *m.denom());
    }

    #[test]
    fn regular_solutions_satisfy_the_relation(k in 0usize..1000, s in 0.0f64..1.0, t in 0.0f64..1.0, plus in any::<bool>()) {
        let regions = REGIONS.with(|r| r.clone());
        let (sel, g) = &regions[k % regions.len()];
        let s = g.s_min + s * (g.s_max - g.s_min);
        let t = g.t_min + t * (g.t_max - g.t_min);
        let branch = if plus { Branch::Plus } else { Branch::Minus };
        if let Ok(rep) = solve(sel, CharVarPoint { s, t, branch }) {
            prop_assert!(rep.trace_residual() < 1e-9);
            prop_assert!(rep.relation_residual() < 1e-9);
            check_generators(&rep)?;
        }
    }
}

thread_local! {
    static REGIONS: Vec<(turnover::EigenvalueSelection, turnover::census::GridSpec)> = regular_regions(5);
}

#[test]
fn special_solutions_satisfy_the_relation() {
    let mut solved = 0;
    for case in [Case::SpecialPoint, Case::SpecialLine] {
        for sig in turnover::census::census_signatures(case, 7) {
            for sel in enumerate_lifted(sig, case).unwrap_or_default() {
                if let Ok(rep) = solve(&sel, CharVarPoint { s: 0.0, t: 0.0, branch: Branch::Plus }) {
                    assert!(rep.trace_residual() < 1e-9 && rep.relation_residual() < 1e-9);
                    check_generators(&rep).unwrap();
                    solved += 1;
                }
            }
        }
    }
    assert!(solved > 100, "{solved}");
}
