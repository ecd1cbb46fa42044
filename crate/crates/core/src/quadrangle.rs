//! The quadrangle of bisectors C₁C₂C₃C₄ and its discreteness certificate.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charvar::{Case, EigenvalueSelection, RepresentationTriple};
use crate::chgeom::{bisector_between, herm, herm_cross, tance, BisectorSegment, CVec3, GeomError, C64};
use crate::isom::{eigenvector_for, IsomError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadrangleError {
    #[error(transparent)]
    Isom(#[from] IsomError),
    #[error(transparent)]
    Geom(#[from] GeomError),
}

/// Vertex polars and centers, with the bisector sides when Q1 holds.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadrangleData {
    /// p₁..p₄, normalized to ⟨p,p⟩ = 1.
    pub p: [CVec3; 4],
    /// c₁..c₄, normalized to ⟨c,c⟩ = −1; cⱼ is the negative fixed point of the vertex isometry.
    pub c: [CVec3; 4],
    /// B[C₁,C₂], B[C₂,C₃], B[C₃,C₄], B[C₄,C₁].
    pub sides: Option<[BisectorSegment; 4]>,
    /// B[C₂,C₄].
    pub diagonal: Option<BisectorSegment>,
}

impl QuadrangleData {
    pub fn side(&self, k: usize) -> Option<&BisectorSegment> {
        self.sides.as_ref().map(|s| &s[k])
    }
}

/// Signed margins of Q1–Q4; a condition holds iff its margins are positive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuadrangleReport {
    /// ta − 1 for (p₁,p₂), (p₂,p₃), (p₁,p₃), (p₁,p₄), (p₂,p₄).
    pub q1: [f64; 5],
    /// Slacks of the six triangle inequalities, unprimed then primed; absent when Q1 fails.
    pub q2: Option<[f64; 6]>,
    pub q31: Option<f64>,
    pub q32: Option<f64>,
    /// The two Im(...) signs; the condition is ≥ 0.
    pub q33: Option<[f64; 2]>,
    pub q4: bool,
    pub pass: bool,
    /// Smallest margin, Q3.3 included.
    pub min_margin: f64,
    /// Set when a Q3.3 sign is zero within tolerance and was accepted.
    pub q33_borderline: bool,
}

/// First failing condition, in certificate order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Condition {
    Q1,
    Q2,
    Q31,
    Q32,
    Q33,
    Q4,
}

impl QuadrangleReport {
    pub fn first_failure(&self) -> Option<Condition> {
        let pos = |x: &f64| *x > 0.0;
        if !self.q1.iter().all(pos) {
            return Some(Condition::Q1);
        }
        if !self.q2.is_some_and(|q| q.iter().all(pos)) {
            return Some(Condition::Q2);
        }
        if !self.q31.is_some_and(|x| x > 0.0) {
            return Some(Condition::Q31);
        }
        if !self.q32.is_some_and(|x| x > 0.0) {
            return Some(Condition::Q32);
        }
        if !self.q33.is_some_and(|q| q.iter().all(|&x| x >= -Q33_TOL)) {
            return Some(Condition::Q33);
        }
        if !self.q4 {
            return Some(Condition::Q4);
        }
        None
    }
}

/// Tolerance below which a Q3.3 sign counts as zero.
pub const Q33_TOL: f64 = 1e-12;

fn ta(p: &CVec3, q: &CVec3) -> f64 {
    tance(p, q).unwrap_or(f64::NAN)
}

/// √(1−1/ta(pⱼ,pₖ))·√(1−1/ta(pⱼ,pᵢ)) − |Re(⟨pₖ,pᵢ⟩⟨pⱼ,pⱼ⟩/(⟨pₖ,pⱼ⟩⟨pⱼ,pᵢ⟩)) − 1|.
///
/// Positive iff the bisectors B[Cⱼ,Cᵢ] and B[Cⱼ,Cₖ] meet transversally along Cⱼ.
pub fn transversality_slack(pi: &CVec3, pj: &CVec3, pk: &CVec3) -> f64 {
    let x = (herm(pk, pi) * herm(pj, pj) / (herm(pk, pj) * herm(pj, pi))).re;
    let bound = (1.0 - 1.0 / ta(pj, pk)).max(0.0).sqrt() * (1.0 - 1.0 / ta(pj, pi)).max(0.0).sqrt();
    bound - (x - 1.0).abs()
}

fn unit_phase(z: C64) -> C64 {
    z / z.norm()
}

/// Slacks of the three triangle inequalities for vertex data (t, s, ε).
fn triangle_slacks(t: f64, s: f64, eps: C64) -> [f64; 3] {
    let (e0, e1) = (eps.re, eps.im);
    let rhs = 1.0 + 2.0 * t * t * s * e0;
    [rhs - (e0 * e0 * t * t + s * s + t * t), rhs - (e0 * e0 * s * s + 2.0 * t * t), -e1]
}

/// Evaluates Q1–Q4 on the quadrangle.
pub fn check_quadrangle(qd: &QuadrangleData, sel: &EigenvalueSelection) -> QuadrangleReport {
    let [p1, p2, p3, p4] = &qd.p;
    let q1 = [ta(p1, p2) - 1.0, ta(p2, p3) - 1.0, ta(p1, p3) - 1.0, ta(p1, p4) - 1.0, ta(p2, p4) - 1.0];
    let q4 = sel.q4_holds();
    if !q1.iter().all(|&m| m > 0.0) {
        let min_margin = q1.iter().copied().fold(f64::INFINITY, nan_min);
        return QuadrangleReport { q1, q2: None, q31: None, q32: None, q33: None, q4, pass: false, min_margin, q33_borderline: false };
    }
    let t = ta(p1, p2).sqrt();
    let s = ta(p2, p4).sqrt();
    let tp = ta(p2, p3).sqrt();
    let eps = unit_phase(herm(p1, p2) * herm(p2, p4) * herm(p4, p1));
    let epsp = unit_phase(herm(p2, p3) * herm(p3, p4) * herm(p4, p2));
    let a = triangle_slacks(t, s, eps);
    let b = triangle_slacks(tp, s, epsp);
    let q2 = [a[0], a[1], a[2], b[0], b[1], b[2]];
    let q31 = transversality_slack(p1, p2, p3);
    let q32 = transversality_slack(p3, p4, p1);
    let c3 = &qd.c[2];
    let cc = -c3.self_product();
    let q33 = [(herm(p1, c3) * herm(c3, p2) / herm(p1, p2)).im / cc, (herm(p4, c3) * herm(c3, p1) / herm(p4, p1)).im / cc];
    let q33_borderline = q33.iter().any(|x| x.abs() <= Q33_TOL);
    let strict = q1.iter().chain(&q2).chain([&q31, &q32]).copied().fold(f64::INFINITY, nan_min);
    let min_margin = q33.iter().copied().fold(strict, nan_min);
    let pass = strict > 0.0 && q33.iter().all(|&x| x >= -Q33_TOL) && q4;
    QuadrangleReport { q1, q2: Some(q2), q31: Some(q31), q32: Some(q32), q33: Some(q33), q4, pass, min_margin, q33_borderline }
}

fn nan_min(a: f64, b: f64) -> f64 {
    if a.is_nan() || b.is_nan() {
        f64::NAN
    } else {
        a.min(b)
    }
}

fn assemble(p: [CVec3; 4], c: [CVec3; 4]) -> QuadrangleData {
    let pairs = [(0, 1), (1, 2), (2, 3), (3, 0)];
    let sides: Option<Vec<BisectorSegment>> = pairs.iter().map(|&(i, j)| bisector_between(&p[i], &p[j]).ok()).collect();
    let sides = sides.map(|v| [v[0], v[1], v[2], v[3]]);
    let diagonal = sides.and_then(|_| bisector_between(&p[1], &p[3]).ok());
    match diagonal {
        Some(_) => QuadrangleData { p, c, sides, diagonal },
        None => QuadrangleData { p, c, sides: None, diagonal: None },
    }
}

/// Builds C₁..C₄ with the given polar p₂ and center c₂ of the second vertex.
pub fn quadrangle_with(rep: &RepresentationTriple, p2: CVec3, c2: CVec3) -> Result<QuadrangleData, QuadrangleError> {
    let g = rep.selection.gamma();
    let c3 = eigenvector_for(&rep.i3, g[0].inv())?.normalized()?;
    let p3 = eigenvector_for(&rep.i3, g[1].inv())?.normalized()?;
    let i1inv = rep.i1.inverse();
    let p4 = i1inv.apply(&p2).normalized()?;
    let c4 = i1inv.apply(&c2).normalized()?;
    let p = [CVec3::e2(), p2.normalized()?, p3, p4];
    let c = [CVec3::e1(), c2.normalized()?, c3, c4];
    Ok(assemble(p, c))
}

/// Grid of the p₂ search for rotations about a point.
pub const P2_SEARCH: (usize, usize) = (24, 48);

/// Candidate polars cos a·w₁ + e^{iφ} sin a·w₂ in u^⊥, in search order.
pub fn special_point_candidates(u: &CVec3) -> Result<Vec<CVec3>, GeomError> {
    let e2 = CVec3::e2();
    let uu = u.self_product();
    let w1 = (e2 - *u * (herm(&e2, u) / uu)).normalized()?;
    let w2 = herm_cross(u, &w1)?.normalized()?;
    let (na, nphi) = P2_SEARCH;
    let mut out = Vec::with_capacity(na * nphi);
    for i in 0..na {
        let a = std::f64::consts::FRAC_PI_2 * i as f64 / (na - 1) as f64;
        for j in 0..nphi {
            let phi = std::f64::consts::TAU * j as f64 / nphi as f64;
            out.push(w1 * a.cos() + w2 * C64::from_polar(a.sin(), phi));
            if i == 0 {
                break;
            }
        }
    }
    Ok(out)
}

/// Builds C₁..C₄ from a representation.
///
/// For a rotation about a point the polar p₂ is free in u^⊥; the candidate with
/// the largest minimum margin is used (earliest wins ties).
pub fn build_quadrangle(rep: &RepresentationTriple) -> Result<QuadrangleData, QuadrangleError> {
    match rep.selection.case {
        Case::Regular | Case::SpecialLine => quadrangle_with(rep, rep.v, rep.u),
        Case::SpecialPoint => {
            let mut best: Option<(f64, QuadrangleData)> = None;
            for p2 in special_point_candidates(&rep.u)? {
                let qd = quadrangle_with(rep, p2, rep.u)?;
                let m = check_quadrangle(&qd, &rep.selection).min_margin;
                if m.is_nan() {
                    continue;
                }
                if best.as_ref().is_none_or(|(b, _)| m > *b) {
                    best = Some((m, qd));
                }
            }
            match best {
                Some((_, qd)) => Ok(qd),
                None => quadrangle_with(rep, rep.v, rep.u),
            }
        }
    }
}
