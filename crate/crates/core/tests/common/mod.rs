//! Fixtures shared by the integration tests and the acceptance runner.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use turnover::census::{auto_extent, census_signatures, CensusGrid, GridSpec};
use turnover::charvar::{enumerate_lifted, solve};
use turnover::{Branch, Case, CharVarPoint, EigenvalueSelection, RepresentationTriple, TurnoverSignature};

pub fn sig(a: u32, b: u32, c: u32) -> TurnoverSignature {
    TurnoverSignature::new(a, b, c).unwrap()
}

pub fn sel_334() -> EigenvalueSelection {
    EigenvalueSelection::new(sig(3, 3, 4), Case::Regular, [1, 1, 1], 0).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Regular selections (all lifts) with a nonempty character variety, with their grids.
pub fn regular_regions(n_max: u32) -> Vec<(EigenvalueSelection, GridSpec)> {
    let mut out = Vec::new();
    for s in census_signatures(Case::Regular, n_max) {
        for sel in enumerate_lifted(s, Case::Regular).unwrap_or_default() {
            if let Ok(Some(g)) = auto_extent(&sel, &CensusGrid::default()) {
                out.push((sel, g));
            }
        }
    }
    out
}

/// Rejection-samples solver successes round-robin over the regions until `total`
/// are found or every region has had `max_tries` draws.
pub fn sample_representations(regions: &[(EigenvalueSelection, GridSpec)], total: usize, seed: u64) -> Vec<RepresentationTriple> {
    let max_tries = 400;
    let mut r = rng(seed);
    let mut out = Vec::new();
    for _ in 0..max_tries {
        for (sel, g) in regions {
            if out.len() == total {
                return out;
            }
            let s = r.gen_range(g.s_min..g.s_max);
            let t = r.gen_range(g.t_min..g.t_max);
            let branch = if r.gen_bool(0.5) { Branch::Plus } else { Branch::Minus };
            if let Ok(rep) = solve(sel, CharVarPoint { s, t, branch }) {
                out.push(rep);
            }
        }
    }
    out
}

/// Distinct signatures among the representations.
pub fn signature_count(reps: &[RepresentationTriple]) -> usize {
    let set: std::collections::BTreeSet<[u32; 3]> = reps.iter().map(|r| r.selection.signature.n).collect();
    set.len()
}

/// Brute-force search for I₂ at fixed (s,t): v runs over the unit sphere of u^⊥
/// as cos a·w₁ + e^{iφ} sin a·w₂, grid minima of |tr(I₂I₁) − Σγ| are polished by
/// Newton steps, and the distinct roots are returned.
pub mod oracle {
    use turnover::chgeom::{herm, herm_cross};
    use turnover::{CVec3, EigenvalueSelection, Isometry, C64};

    pub const ROOT_TOL: f64 = 1e-11;

    pub struct Sphere {
        pub u: CVec3,
        w1: CVec3,
        w2: CVec3,
    }

    impl Sphere {
        pub fn new(s: f64, t: f64) -> Sphere {
            let u = CVec3::real((1.0 + s + t).sqrt(), s.sqrt(), t.sqrt());
            let e2 = CVec3::e2();
            let w1 = (e2 - u * (herm(&e2, &u) / u.self_product())).normalized().unwrap();
            let w2 = herm_cross(&u, &w1).unwrap().normalized().unwrap();
            Sphere { u, w1, w2 }
        }

        pub fn point(&self, a: f64, phi: f64) -> CVec3 {
            self.w1 * a.cos() + self.w2 * C64::from_polar(a.sin(), phi)
        }
    }

    pub fn defect(sel: &EigenvalueSelection, sp: &Sphere, v: &CVec3) -> C64 {
        let b = sel.beta();
        let (u, uu, vv) = (sp.u, sp.u.self_product(), v.self_product());
        let i2 = Isometry::from_map(|x| u * ((b[0] - b[2]) * herm(x, &u) / uu) + *v * ((b[1] - b[2]) * herm(x, v) / vv) + *x * b[2]);
        (i2 * Isometry::diag(sel.alpha())).trace() - sel.gamma_sum()
    }

    fn newton(sel: &EigenvalueSelection, sp: &Sphere, mut a: f64, mut phi: f64) -> Option<CVec3> {
        let h = 1e-7;
        for _ in 0..60 {
            let f = defect(sel, sp, &sp.point(a, phi));
            if f.norm() < ROOT_TOL {
                return Some(sp.point(a, phi));
            }
            let fa = (defect(sel, sp, &sp.point(a + h, phi)) - f) / h;
            let fp = (defect(sel, sp, &sp.point(a, phi + h)) - f) / h;
            let det = fa.re * fp.im - fp.re * fa.im;
            if det.abs() < 1e-14 {
                return None;
            }
            a -= (f.re * fp.im - fp.re * f.im) / det;
            phi -= (fa.re * f.im - f.re * fa.im) / det;
        }
        None
    }

    /// Distinct roots v (up to phase) of the trace equation at (s,t).
    pub fn roots(sel: &EigenvalueSelection, s: f64, t: f64, na: usize, nphi: usize) -> Vec<CVec3> {
        let sp = Sphere::new(s, t);
        let a_at = |i: usize| std::f64::consts::FRAC_PI_2 * (i as f64 + 0.5) / na as f64;
        let phi_at = |j: usize| std::f64::consts::TAU * j as f64 / nphi as f64;
        let grid: Vec<Vec<f64>> =
            (0..na).map(|i| (0..nphi).map(|j| defect(sel, &sp, &sp.point(a_at(i), phi_at(j))).norm()).collect()).collect();
        let mut found: Vec<CVec3> = Vec::new();
        for i in 0..na {
            for j in 0..nphi {
                let g = grid[i][j];
                let is_min =
                    (i.saturating_sub(1)..=(i + 1).min(na - 1)).all(|ii| (0..3).all(|dj| grid[ii][(j + nphi + dj - 1) % nphi] >= g));
                if !is_min {
                    continue;
                }
                if let Some(v) = newton(sel, &sp, a_at(i), phi_at(j)) {
                    if !found.iter().any(|w| w.projective_distance(&v) < 1e-6) {
                        found.push(v);
                    }
                }
            }
        }
        found
    }
}

/// Outcome of comparing the oracle with the solver on an n×n (s,t) grid.
#[derive(Debug, Default, Clone, Copy)]
pub struct OracleSummary {
    pub points: usize,
    /// Oracle roots found at points where C1 or Δ ≥ 0 fails.
    pub roots_outside: usize,
    pub solver_solutions: usize,
    /// Solver solutions with no oracle root within 1e-6.
    pub missed: usize,
}

/// Runs the oracle on the selection's grid, widened by a quarter on each far side.
pub fn oracle_check(sel: &EigenvalueSelection, g: &GridSpec, n: usize) -> OracleSummary {
    use turnover::charvar::{c1_margins, delta};
    let ds = 0.25 * (g.s_max - g.s_min);
    let dt = 0.25 * (g.t_max - g.t_min);
    let wide = GridSpec::new((g.s_min, g.s_max + ds), (g.t_min, g.t_max + dt), n, n).unwrap();
    let mut sum = OracleSummary::default();
    for j in 0..n {
        for i in 0..n {
            let (s, t) = (wide.s_at(i), wide.t_at(j));
            sum.points += 1;
            let roots = oracle::roots(sel, s, t, 24, 48);
            let inside = c1_margins(sel, s, t).unwrap().iter().all(|&m| m >= -1e-9) && delta(sel, s, t).is_ok_and(|d| d >= -1e-9);
            if !inside {
                sum.roots_outside += roots.len();
            }
            for branch in [Branch::Plus, Branch::Minus] {
                if let Ok(rep) = solve(sel, CharVarPoint { s, t, branch }) {
                    sum.solver_solutions += 1;
                    if !roots.iter().any(|v| v.projective_distance(&rep.v) < 1e-6) {
                        sum.missed += 1;
                    }
                }
            }
        }
    }
    sum
}

/// Three regular selections from different signatures for the oracle.
pub fn oracle_selections() -> Vec<(EigenvalueSelection, GridSpec)> {
    let mut out: Vec<(EigenvalueSelection, GridSpec)> = Vec::new();
    let s334 = sel_334();
    out.push((s334, auto_extent(&s334, &CensusGrid::default()).unwrap().unwrap()));
    for (sel, g) in regular_regions(5) {
        if out.len() == 3 {
            break;
        }
        if out.iter().all(|(o, _)| o.signature != sel.signature) {
            out.push((sel, g));
        }
    }
    out
}

/// Field-wise CSV comparison; floats may differ in the last few ulps across platforms.
pub fn compare_csv(got: &str, want: &str) -> Result<(), String> {
    fn same(a: &str, b: &str) -> bool {
        a == b
            || match (a.parse::<f64>(), b.parse::<f64>()) {
                (Ok(x), Ok(y)) => (x - y).abs() <= 1e-9 * x.abs().max(y.abs()).max(1.0),
                _ => false,
            }
    }
    let (gl, wl): (Vec<&str>, Vec<&str>) = (got.lines().collect(), want.lines().collect());
    if gl.len() != wl.len() {
        return Err(format!("{} rows, expected {}", gl.len(), wl.len()));
    }
    for (k, (g, w)) in gl.iter().zip(&wl).enumerate() {
        let (gf, wf): (Vec<&str>, Vec<&str>) = (g.split(',').collect(), w.split(',').collect());
        if gf.len() != wf.len() || !gf.iter().zip(&wf).all(|(a, b)| same(a, b)) {
            return Err(format!("line {} differs:\n got  {g}\n want {w}", k + 1));
        }
    }
    Ok(())
}

pub fn golden_path(name: &str) -> std::path::PathBuf {
    std::path::PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden").join(name)
}

pub fn census_csv(records: &[turnover::census::CensusRecord]) -> String {
    let mut buf = Vec::new();
    turnover::census::write_census_csv(&mut buf, records).unwrap();
    String::from_utf8(buf).unwrap()
}
