//! Discrete invariants of the disc orbibundle H²_C/G → S²(n₁,n₂,n₃).
//!
//! χ is the orbifold Euler characteristic, e = f − Σ lⱼ/nⱼ the Euler number,
//! and τ the Toledo invariant, known in closed form mod 2.

use std::f64::consts::PI;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charvar::{reduce_mod2, Branch, Case, EigenvalueSelection, RepresentationTriple};
use crate::chgeom::{bisector_between, cyclic_order_o, herm, theta_coordinate, CVec3, End, GeomError, Slice, C64};
use crate::isom::{classify_restriction, Class, IsomError, Isometry, Restriction};
use crate::output::{float17, float17_opt, ratio};
use crate::quadrangle::QuadrangleData;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum InvariantsError {
    #[error(transparent)]
    Geom(#[from] GeomError),
    #[error(transparent)]
    Isom(#[from] IsomError),
    #[error("quadrangle sides are missing (Q1 fails)")]
    MissingSides,
    #[error("holonomy of triangle {triangle} is {class:?} (|tr| = {abs_trace:.6})")]
    NonEllipticHolonomy { triangle: &'static str, class: Class, abs_trace: f64 },
    #[error("cyclic order indeterminate for every retry base point")]
    IndeterminateOrder,
    #[error("inner product {modulus:.3e} too small inside an Arg")]
    NumericalInstability { modulus: f64 },
}

/// Holonomy of a triangle of bisectors, restricted to its first vertex.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HolonomyData {
    pub holonomy: Isometry,
    pub restriction: Restriction,
    /// Interior fixed point of the restriction, as w in c + w·d, when elliptic.
    pub fixed_w: Option<C64>,
}

/// Product of the reflections in the middle slices of B[a,b], B[b,c], B[c,a], applied in that order.
pub fn triangle_holonomy(qa: &CVec3, qb: &CVec3, qc: &CVec3) -> Result<HolonomyData, InvariantsError> {
    let rab = bisector_between(qa, qb)?.middle_reflection();
    let rbc = bisector_between(qb, qc)?.middle_reflection();
    let rca = bisector_between(qc, qa)?.middle_reflection();
    let holonomy = rca * rbc * rab;
    let slice = Slice::from_polar(qa)?;
    let restriction = classify_restriction(&holonomy, &slice, crate::chgeom::TOL)?;
    let fixed_w = (restriction.class == Class::Elliptic).then(|| disc_fixed_point(&restriction.matrix)).flatten();
    Ok(HolonomyData { holonomy, restriction, fixed_w })
}

fn disc_fixed_point(m: &[[C64; 2]; 2]) -> Option<C64> {
    // w = (m₁₀ + m₁₁w)/(m₀₀ + m₀₁w)  ⇔  m₀₁w² + (m₀₀ − m₁₁)w − m₁₀ = 0.
    let (a, b, c) = (m[0][1], m[0][0] - m[1][1], -m[1][0]);
    if a.norm() < 1e-14 {
        return (b.norm() > 1e-14).then(|| -c / b).filter(|w| w.norm() < 1.0);
    }
    let d = (b * b - a * c * 4.0).sqrt();
    [(-b + d) / (a * 2.0), (-b - d) / (a * 2.0)].into_iter().find(|w| w.norm() < 1.0)
}

/// Rotation numbers (l₁,l₂,l₃) from the exact exponents.
pub fn rotation_numbers(sel: &EigenvalueSelection) -> [u32; 3] {
    sel.rotation_numbers()
}

/// Number of retry base points on ∂C₁.
pub const BASE_POINT_RETRIES: u32 = 14;

/// Middle reflections and holonomies used by [`compute_f`].
#[derive(Debug, Clone, Copy)]
pub struct Holonomies {
    /// Holonomy of Δ(C₁,C₂,C₄).
    pub i: HolonomyData,
    /// Holonomy of Δ(C₃,C₄,C₂).
    pub j: HolonomyData,
}

pub fn holonomies(qd: &QuadrangleData) -> Result<Holonomies, InvariantsError> {
    let [p1, p2, p3, p4] = &qd.p;
    let i = triangle_holonomy(p1, p2, p4)?;
    let j = triangle_holonomy(p3, p4, p2)?;
    for (name, h) in [("C1C2C4", &i), ("C3C4C2", &j)] {
        if h.restriction.class != Class::Elliptic {
            return Err(InvariantsError::NonEllipticHolonomy {
                triangle: name,
                class: h.restriction.class,
                abs_trace: h.restriction.abs_trace,
            });
        }
    }
    Ok(Holonomies { i, j })
}

/// The integer f for the base point z₁ = c + θd on ∂C₁.
pub fn compute_f_at(qd: &QuadrangleData, rep: &RepresentationTriple, hol: &Holonomies, theta: C64) -> Result<i64, InvariantsError> {
    let sides = qd.sides.ok_or(InvariantsError::MissingSides)?;
    let (b12, b23) = (&sides[0], &sides[1]);
    let s1 = Slice::from_polar(&qd.p[0])?;
    let s3 = Slice::from_polar(&qd.p[2])?;
    let z1 = s1.boundary_point(theta);
    let z2 = b12.meridional_transport(&z1, End::First)?;
    let z3 = b23.meridional_transport(&rep.i2.apply(&z2), End::First)?;
    let z3p = b23.meridional_transport(&z2, End::First)?;
    let i3z3 = rep.i3.apply(&z3);
    let jinv_z3p = hol.j.holonomy.inverse().apply(&z3p);
    let th3 = |z: &CVec3| theta_coordinate(&s3, z);
    let th1 = |z: &CVec3| theta_coordinate(&s1, z);
    let a = cyclic_order_o(th3(&z3p)?, th3(&z3)?, th3(&i3z3)?)?;
    let b = cyclic_order_o(th3(&z3p)?, th3(&i3z3)?, th3(&jinv_z3p)?)?;
    let c = cyclic_order_o(th1(&z1)?, th1(&rep.i1.inverse().apply(&z1))?, th1(&hol.i.holonomy.apply(&z1))?)?;
    Ok(i64::from(a) + i64::from(b) - i64::from(c))
}

/// Retry schedule θⱼ = exp(iπj/7) for the base point.
pub fn retry_theta(j: u32) -> C64 {
    C64::from_polar(1.0, PI * f64::from(j) / 7.0)
}

/// The homology integer f, retrying base points when an order is indeterminate.
pub fn compute_f(qd: &QuadrangleData, rep: &RepresentationTriple) -> Result<i64, InvariantsError> {
    let hol = holonomies(qd)?;
    for j in 0..BASE_POINT_RETRIES {
        match compute_f_at(qd, rep, &hol, retry_theta(j)) {
            Ok(f) => return Ok(f),
            Err(InvariantsError::Geom(GeomError::IndeterminateOrder { .. })) => continue,
            Err(e) => return Err(e),
        }
    }
    Err(InvariantsError::IndeterminateOrder)
}

/// Toledo invariant from the six base-point-change terms.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToledoNumeric {
    pub j: [f64; 6],
    /// (2/π)ΣJ.
    pub raw: f64,
    /// `raw` reduced to (−1, 1].
    pub mod2: f64,
}

/// Reduces a real to (−1, 1] modulo 2.
pub fn reduce_mod2_f64(x: f64) -> f64 {
    let r = x - 2.0 * (x / 2.0).floor();
    if r > 1.0 {
        r - 2.0
    } else {
        r
    }
}

/// Distance between two reals on ℝ/2ℤ.
pub fn mod2_distance(a: f64, b: f64) -> f64 {
    let d = (a - b).rem_euclid(2.0);
    d.min(2.0 - d)
}

pub fn toledo_mod2_numeric(qd: &QuadrangleData, rep: &RepresentationTriple) -> Result<ToledoNumeric, InvariantsError> {
    let sides = qd.sides.ok_or(InvariantsError::MissingSides)?;
    let sel = &rep.selection;
    let (alpha1, beta1, gamma1) = (sel.alpha()[0], sel.beta()[0], sel.gamma()[0]);
    let [c1, c2, c3, _] = qd.c;
    let c1p = sides[0].middle_reflection().apply(&c2);
    let c3p = sides[1].middle_reflection().apply(&c2);
    let i1inv = rep.i1.inverse();
    let i3c3p = rep.i3.apply(&c3p);
    let i1c2 = i1inv.apply(&c2);
    let i1c1p = i1inv.apply(&c1p);
    let h = herm;
    let args = [
        h(&c2, &c3) * h(&c3, &c3p) / h(&c2, &c3p),
        gamma1.inv() * h(&c2, &i3c3p) * h(&c3p, &c3) / h(&c2, &c3),
        beta1 * h(&c2, &i1c2) * h(&c2, &c3p) / h(&c2, &i3c3p),
        h(&c2, &i1c1p) * h(&c1p, &c2) / h(&c2, &i1c2),
        alpha1 * h(&c2, &c1) * h(&c1, &c1p) / h(&c2, &i1c1p),
        h(&c2, &c1p) * h(&c1p, &c1) / h(&c2, &c1),
    ];
    let mut j = [0.0; 6];
    for (jk, z) in j.iter_mut().zip(args) {
        if z.norm().is_nan() || z.norm() <= 1e-12 {
            return Err(InvariantsError::NumericalInstability { modulus: z.norm() });
        }
        *jk = 0.5 * z.arg() - PI / 2.0;
    }
    let raw = 2.0 / PI * j.iter().sum::<f64>();
    Ok(ToledoNumeric { j, raw, mod2: reduce_mod2_f64(raw) })
}

/// Tolerance of the numeric Toledo cross-check.
pub const TOLEDO_TOL: f64 = 1e-6;

/// Exact invariants together with the floating-point cross-checks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InvariantReport {
    pub signature: [u32; 3],
    pub case: Case,
    pub l: [u32; 3],
    pub lift: u8,
    pub branch: Option<Branch>,
    #[serde(with = "float17_opt")]
    pub s: Option<f64>,
    #[serde(with = "float17_opt")]
    pub t: Option<f64>,
    #[serde(with = "ratio")]
    pub chi: Ratio<i64>,
    pub f: i64,
    #[serde(with = "ratio")]
    pub e: Ratio<i64>,
    #[serde(with = "ratio")]
    pub e_over_chi: Ratio<i64>,
    /// 2(e+χ)/3.
    #[serde(with = "ratio")]
    pub tau: Ratio<i64>,
    /// Arg(α₁β₁γ₁⁻¹)/π in (−1, 1], exact.
    #[serde(with = "ratio")]
    pub tau_mod2_closed_exact: Ratio<i64>,
    #[serde(with = "float17")]
    pub tau_mod2_closed: f64,
    #[serde(with = "float17")]
    pub tau_mod2_numeric: f64,
    /// (2/π)ΣJ before reduction.
    #[serde(with = "float17")]
    pub tau_numeric_raw: f64,
    /// τ ≡ τ_mod2_closed (mod 2), exactly.
    pub consistency: bool,
    /// |τ_mod2_numeric − τ_mod2_closed| (mod 2) below tolerance.
    pub numeric_agrees: bool,
    /// 3τ/2 − χ.
    #[serde(with = "ratio")]
    pub e_cor: Ratio<i64>,
    /// |tr| of the two holonomy restrictions.
    #[serde(with = "float17")]
    pub holonomy_i_trace: f64,
    #[serde(with = "float17")]
    pub holonomy_j_trace: f64,
}

/// Assembles the report from f and the numeric Toledo terms.
pub fn assemble_report(
    sel: &EigenvalueSelection,
    rep: &RepresentationTriple,
    f: i64,
    toledo: &ToledoNumeric,
    hol: &Holonomies,
) -> InvariantReport {
    let chi = sel.signature.chi();
    let l = sel.rotation_numbers();
    let lsum = (0..3).fold(Ratio::from_integer(0), |acc, k| acc + Ratio::new(i64::from(l[k]), i64::from(sel.signature.n[k])));
    let e = Ratio::from_integer(f) - lsum;
    let tau = (e + chi) * Ratio::new(2, 3);
    let closed = sel.tau_mod2_closed();
    let closed_f = *closed.numer() as f64 / *closed.denom() as f64;
    InvariantReport {
        signature: sel.signature.n,
        case: sel.case,
        l,
        lift: sel.lift,
        branch: rep.point.map(|p| p.branch),
        s: rep.point.map(|p| p.s),
        t: rep.point.map(|p| p.t),
        chi,
        f,
        e,
        e_over_chi: e / chi,
        tau,
        tau_mod2_closed_exact: closed,
        tau_mod2_closed: closed_f,
        tau_mod2_numeric: toledo.mod2,
        tau_numeric_raw: toledo.raw,
        consistency: reduce_mod2(tau) == closed,
        numeric_agrees: mod2_distance(toledo.mod2, closed_f) < TOLEDO_TOL,
        e_cor: tau * Ratio::new(3, 2) - chi,
        holonomy_i_trace: hol.i.restriction.abs_trace,
        holonomy_j_trace: hol.j.restriction.abs_trace,
    }
}

/// Full invariant computation for a quadrangle that passes its certificate.
pub fn invariant_report(
    sel: &EigenvalueSelection,
    qd: &QuadrangleData,
    rep: &RepresentationTriple,
) -> Result<InvariantReport, InvariantsError> {
    let hol = holonomies(qd)?;
    let mut f = None;
    for j in 0..BASE_POINT_RETRIES {
        match compute_f_at(qd, rep, &hol, retry_theta(j)) {
            Ok(v) => {
                f = Some(v);
                break;
            }
            Err(InvariantsError::Geom(GeomError::IndeterminateOrder { .. })) => continue,
            Err(e) => return Err(e),
        }
    }
    let f = f.ok_or(InvariantsError::IndeterminateOrder)?;
    let toledo = toledo_mod2_numeric(qd, rep)?;
    Ok(assemble_report(sel, rep, f, &toledo, &hol))
}
