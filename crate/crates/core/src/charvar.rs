//! Character variety of the turnover G(n₁,n₂,n₃) in PU(2,1).
//!
//! I₁ is diagonal with eigenvalues α, I₂ has eigenvalues β with center u and
//! polar v, and I₃ = (I₂I₁)⁻¹ has eigenvalues γ⁻¹. All roots of unity are
//! held as integer exponents: α_j = exp(2πi a_j / (3n₁)) and so on.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chgeom::{c, herm, CVec3, C64};
use crate::isom::{eigenvector_for, goldman_discriminant, Isometry};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CharVarError {
    #[error("signature ({0},{1},{2}) is not hyperbolic or has an order below two")]
    BadSignature(u32, u32, u32),
    #[error("selection {l:?} is out of range for {case} on {sig}")]
    BadSelection { sig: TurnoverSignature, case: Case, l: [u32; 3] },
    #[error("no {case} selection exists for {sig}")]
    EmptyEnumeration { sig: TurnoverSignature, case: Case },
    #[error("condition C1 violated, margins {margins:?}")]
    ConditionC1Violated { margins: [f64; 3] },
    #[error("condition C2 violated, discriminant {delta:.6e}")]
    DeltaNegative { delta: f64 },
    #[error("s and t must be positive (s = {s}, t = {t}); the boundary stratum is not parameterized")]
    NonGenericBoundary { s: f64, t: f64 },
    #[error("the {case} equations have no solution, margins {margins:?}")]
    Infeasible { case: Case, margins: Vec<f64> },
    #[error("post-verification residual {residual:.3e} is too large")]
    ResidualTooLarge { residual: f64 },
    #[error("the negative fixed point of I₃ has eigenvalue γ{found}⁻¹ instead of γ₁⁻¹")]
    WrongEigenvalueType { found: usize },
    #[error("operation needs a {expected} selection, got {got}")]
    WrongCase { expected: Case, got: Case },
}

/// Orders of the three generators, with Σ 1/nⱼ < 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct TurnoverSignature {
    pub n: [u32; 3],
}

impl TurnoverSignature {
    pub fn new(n1: u32, n2: u32, n3: u32) -> Result<Self, CharVarError> {
        let ok = n1 >= 2 && n2 >= 2 && n3 >= 2 && {
            let (a, b, c) = (u64::from(n1), u64::from(n2), u64::from(n3));
            a * b + b * c + c * a < a * b * c
        };
        if ok {
            Ok(TurnoverSignature { n: [n1, n2, n3] })
        } else {
            Err(CharVarError::BadSignature(n1, n2, n3))
        }
    }

    /// Orbifold Euler characteristic −1 + Σ 1/nⱼ.
    pub fn chi(&self) -> Ratio<i64> {
        self.n.iter().fold(Ratio::from_integer(-1), |acc, &n| acc + Ratio::new(1, i64::from(n)))
    }
}

impl fmt::Display for TurnoverSignature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n[0], self.n[1], self.n[2])
    }
}

impl FromStr for TurnoverSignature {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let v = parse_triple(s)?;
        TurnoverSignature::new(v[0], v[1], v[2]).map_err(|e| e.to_string())
    }
}

/// Parses "a,b,c" into three unsigned integers.
pub fn parse_triple(s: &str) -> Result<[u32; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("expected three comma-separated integers, got {s:?}"));
    }
    let mut out = [0u32; 3];
    for (o, p) in out.iter_mut().zip(&parts) {
        *o = p.parse().map_err(|_| format!("not a nonnegative integer: {p:?}"))?;
    }
    Ok(out)
}

/// How I₂ sits in its conjugacy class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Case {
    /// I₂ regular elliptic.
    Regular,
    /// I₂ a rotation about a point (β₂ = β₃).
    SpecialPoint,
    /// I₂ a rotation about a complex geodesic (β₁ = β₃).
    SpecialLine,
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Case::Regular => "regular",
            Case::SpecialPoint => "special-point",
            Case::SpecialLine => "special-line",
        })
    }
}

impl FromStr for Case {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "regular" => Ok(Case::Regular),
            "special-point" => Ok(Case::SpecialPoint),
            "special-line" => Ok(Case::SpecialLine),
            _ => Err(format!("unknown case {s:?} (regular, special-point, special-line)")),
        }
    }
}

/// Sign of the square root in the second regular-case lemma.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize, Default)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    /// "+i√Δ" in v₂.
    #[default]
    Plus,
    Minus,
}

impl Branch {
    pub fn sign(self) -> f64 {
        match self {
            Branch::Plus => 1.0,
            Branch::Minus => -1.0,
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Branch::Plus => "plus",
            Branch::Minus => "minus",
        })
    }
}

impl FromStr for Branch {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "plus" | "+" => Ok(Branch::Plus),
            "minus" | "-" => Ok(Branch::Minus),
            _ => Err(format!("unknown branch {s:?} (plus, minus)")),
        }
    }
}

fn root(exp: i64, order: i64) -> C64 {
    C64::from_polar(1.0, std::f64::consts::TAU * exp as f64 / order as f64)
}

/// Conjugacy-class data for (I₁, I₂, I₃).
///
/// Rotation numbers: α₃/α₁ = e^{2πil₁/n₁}, β₃/β₁ = e^{2πil₂/n₂}, and l₃ is the
/// rotation number of I₃ itself, γ₁/γ₃ = e^{2πil₃/n₃}. `lift` picks one of the
/// three SU(2,1) lifts of γ relative to α and β; the lifts give different
/// trace equations and therefore different components.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct EigenvalueSelection {
    pub signature: TurnoverSignature,
    pub case: Case,
    pub l: [u32; 3],
    pub lift: u8,
    /// Exponents over 3n₁, 3n₂, 3n₃, reduced to [0, 3n).
    pub a: [i64; 3],
    pub b: [i64; 3],
    pub g: [i64; 3],
}

impl EigenvalueSelection {
    pub fn new(sig: TurnoverSignature, case: Case, l: [u32; 3], lift: u8) -> Result<Self, CharVarError> {
        let [n1, n2, n3] = sig.n.map(i64::from);
        let [l1, l2, l3] = l.map(i64::from);
        let bad = || CharVarError::BadSelection { sig, case, l };
        let regular_range = |l: i64, n: i64| (1..=n - 2).contains(&l);
        if !regular_range(l1, n1) || !regular_range(l3, n3) || lift > 2 || n1 < 3 || n3 < 3 {
            return Err(bad());
        }
        let l2_ok = match case {
            Case::Regular => regular_range(l2, n2),
            Case::SpecialPoint => l2 == n2 - 1,
            Case::SpecialLine => l2 == 0,
        };
        if !l2_ok {
            return Err(bad());
        }
        let a1 = (1 - l1).rem_euclid(n1);
        let b1 = (1 - l2).rem_euclid(n2);
        let g1 = (l3 - 1).rem_euclid(n3) + i64::from(lift) * n3;
        let a = [a1, a1 - 3, a1 + 3 * l1].map(|x| x.rem_euclid(3 * n1));
        let b = [b1, b1 - 3, b1 + 3 * l2].map(|x| x.rem_euclid(3 * n2));
        let g = [g1, g1 + 3, g1 - 3 * l3].map(|x| x.rem_euclid(3 * n3));
        Ok(EigenvalueSelection { signature: sig, case, l, lift, a, b, g })
    }

    fn orders(&self) -> [i64; 3] {
        self.signature.n.map(|n| 3 * i64::from(n))
    }

    pub fn alpha(&self) -> [C64; 3] {
        let m = self.orders()[0];
        self.a.map(|e| root(e, m))
    }

    pub fn beta(&self) -> [C64; 3] {
        let m = self.orders()[1];
        self.b.map(|e| root(e, m))
    }

    pub fn gamma(&self) -> [C64; 3] {
        let m = self.orders()[2];
        self.g.map(|e| root(e, m))
    }

    pub fn gamma_sum(&self) -> C64 {
        self.gamma().iter().sum()
    }

    /// Each eigenvalue triple has product one (exponent sums vanish).
    pub fn products_are_one(&self) -> bool {
        let m = self.orders();
        [self.a, self.b, self.g].iter().zip(m).all(|(e, m)| e.iter().sum::<i64>() % m == 0)
    }

    /// α₂/α₁ = e^{−2πi/n₁}, β₂/β₁ = e^{−2πi/n₂}, γ₂/γ₁ = e^{2πi/n₃}, exactly.
    pub fn q4_holds(&self) -> bool {
        let m = self.orders();
        (self.a[1] - self.a[0] + 3).rem_euclid(m[0]) == 0
            && (self.b[1] - self.b[0] + 3).rem_euclid(m[1]) == 0
            && (self.g[1] - self.g[0] - 3).rem_euclid(m[2]) == 0
    }

    /// Rotation numbers read off the exponents.
    pub fn rotation_numbers(&self) -> [u32; 3] {
        let [n1, n2, n3] = self.signature.n.map(i64::from);
        let r = |d: i64, n: i64| {
            debug_assert_eq!(d.rem_euclid(3), 0);
            (d / 3).rem_euclid(n) as u32
        };
        [r(self.a[2] - self.a[0], n1), r(self.b[2] - self.b[0], n2), r(self.g[0] - self.g[2], n3)]
    }

    /// Arg(α₁β₁γ₁⁻¹)/π reduced to (−1, 1], exactly.
    pub fn tau_mod2_closed(&self) -> Ratio<i64> {
        let m = self.orders();
        let turns = Ratio::new(self.a[0], m[0]) + Ratio::new(self.b[0], m[1]) - Ratio::new(self.g[0], m[2]);
        reduce_mod2(turns * 2)
    }

    /// Whether the three eigenvalues of each generator are pairwise distinct.
    pub fn distinct(&self) -> [bool; 3] {
        let d = |e: [i64; 3]| e[0] != e[1] && e[1] != e[2] && e[0] != e[2];
        [d(self.a), d(self.b), d(self.g)]
    }
}

impl fmt::Display for EigenvalueSelection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} l=({},{},{}) lift={}", self.signature, self.case, self.l[0], self.l[1], self.l[2], self.lift)
    }
}

/// Reduces a rational to the interval (−1, 1] modulo 2.
pub fn reduce_mod2(x: Ratio<i64>) -> Ratio<i64> {
    let two = Ratio::from_integer(2);
    let mut r = x - two * (x / two).floor();
    if r > Ratio::from_integer(1) {
        r -= two;
    }
    r
}

/// Selections with the canonical lift, ordered by (l₁,l₂,l₃).
pub fn enumerate_selections(sig: TurnoverSignature, case: Case) -> Result<Vec<EigenvalueSelection>, CharVarError> {
    let out: Vec<_> = enumerate_lifted(sig, case)?.into_iter().filter(|s| s.lift == 0).collect();
    Ok(out)
}

/// Selections with all three relative lifts, ordered by (l₁,l₂,l₃,lift).
pub fn enumerate_lifted(sig: TurnoverSignature, case: Case) -> Result<Vec<EigenvalueSelection>, CharVarError> {
    let [n1, n2, n3] = sig.n;
    let l2s: Vec<u32> = match case {
        Case::Regular => (1..n2.saturating_sub(1)).collect(),
        Case::SpecialPoint => vec![n2 - 1],
        Case::SpecialLine => vec![0],
    };
    let mut out = Vec::new();
    for l1 in 1..n1.saturating_sub(1) {
        for &l2 in &l2s {
            for l3 in 1..n3.saturating_sub(1) {
                for lift in 0..3 {
                    out.push(EigenvalueSelection::new(sig, case, [l1, l2, l3], lift)?);
                }
            }
        }
    }
    if out.is_empty() {
        return Err(CharVarError::EmptyEnumeration { sig, case });
    }
    Ok(out)
}

/// A point (s,t) of the regular-case parameter plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CharVarPoint {
    pub s: f64,
    pub t: f64,
    pub branch: Branch,
}

/// A representation I₃I₂I₁ = 1 together with the spectral points of I₂.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RepresentationTriple {
    pub i1: Isometry,
    pub i2: Isometry,
    pub i3: Isometry,
    /// Negative fixed point of I₂ (regular and special-point cases); for the
    /// special-line case, a chosen point of the fixed line.
    pub u: CVec3,
    /// Positive fixed point of I₂ with eigenvalue β₂ (regular and special-line
    /// cases); for the special-point case, a default point of u^⊥.
    pub v: CVec3,
    pub selection: EigenvalueSelection,
    pub point: Option<CharVarPoint>,
}

impl RepresentationTriple {
    /// |tr(I₂I₁) − Σγ|.
    pub fn trace_residual(&self) -> f64 {
        ((self.i2 * self.i1).trace() - self.selection.gamma_sum()).norm()
    }

    /// Largest entry of I₃I₂I₁ − Id.
    pub fn relation_residual(&self) -> f64 {
        (self.i3 * self.i2 * self.i1).distance_to_identity()
    }

    /// Distance between the characteristic coefficients of I₃ and those of diag(γ⁻¹).
    pub fn i3_spectrum_residual(&self) -> f64 {
        let gi = self.selection.gamma().map(|g| g.inv());
        let target = Isometry::diag(gi).char_coefficients();
        let got = self.i3.char_coefficients();
        (0..3).map(|k| (got[k] - target[k]).norm()).fold(0.0, f64::max)
    }

    pub fn commutator_trace(&self) -> C64 {
        (self.i1 * self.i2 * self.i1.inverse() * self.i2.inverse()).trace()
    }

    /// Goldman's discriminant of tr[I₁,I₂]; negative iff the commutator is regular elliptic.
    pub fn goldman(&self) -> f64 {
        goldman_discriminant(self.commutator_trace())
    }

    pub fn generators(&self) -> [Isometry; 3] {
        [self.i1, self.i2, self.i3]
    }
}

struct Alphas {
    a: [C64; 3],
    a21: C64,
    a31: C64,
    det_m: f64,
}

fn alphas(sel: &EigenvalueSelection) -> Alphas {
    let a = sel.alpha();
    let a21 = a[1] - a[0];
    let a31 = a[2] - a[0];
    let det_m = a21.re * a31.im - a31.re * a21.im;
    Alphas { a, a21, a31, det_m }
}

fn regular_constants(sel: &EigenvalueSelection) -> (Alphas, C64, C64) {
    let al = alphas(sel);
    let b = sel.beta();
    let b23 = b[1] - b[2];
    let k = (sel.gamma_sum() - al.a[0] * (b[0] + b[1] - b[2]) - b[2] * (al.a[1] + al.a[2])) / b23;
    let r = (b[0] - b[2]) / b23;
    (al, k, r)
}

/// (|v₂|², |v₃|², |v₂|²+|v₃|²−1) at (s,t); all positive iff C1 holds. Affine in (s,t).
pub fn c1_margins(sel: &EigenvalueSelection, s: f64, t: f64) -> Result<[f64; 3], CharVarError> {
    if sel.case != Case::Regular {
        return Err(CharVarError::WrongCase { expected: Case::Regular, got: sel.case });
    }
    let (al, k, r) = regular_constants(sel);
    let (a21, a31, dm) = (al.a21, al.a31, al.det_m);
    let v2 = (s * (a31 * a21.conj() * r.conj()).im + t * a31.norm_sqr() * r.conj().im + (a31 * k.conj()).im) / dm;
    let v3 = (s * a21.norm_sqr() * r.im + t * (a21.conj() * a31 * r).im + (a21.conj() * k).im) / dm;
    Ok([v2, v3, v2 + v3 - 1.0])
}

/// Affine coefficients (constant, ∂s, ∂t) of the three C1 margins.
pub fn c1_affine(sel: &EigenvalueSelection) -> Result<[[f64; 3]; 3], CharVarError> {
    let m0 = c1_margins(sel, 0.0, 0.0)?;
    let ms = c1_margins(sel, 1.0, 0.0)?;
    let mt = c1_margins(sel, 0.0, 1.0)?;
    Ok(std::array::from_fn(|i| [m0[i], ms[i] - m0[i], mt[i] - m0[i]]))
}

/// Condition C2 discriminant Δ at (s,t), or the C1 failure.
pub fn delta(sel: &EigenvalueSelection, s: f64, t: f64) -> Result<f64, CharVarError> {
    let m = c1_margins(sel, s, t)?;
    if m.iter().any(|&x| x <= 0.0) {
        return Err(CharVarError::ConditionC1Violated { margins: m });
    }
    let [v2s, v3s, v1s] = m;
    let big_s = 1.0 + s + t;
    let a = -t * v3s + big_s * v1s + s * v2s;
    Ok(4.0 * v1s * v2s * s * big_s - a * a)
}

/// Residual bound for post-verification of every solver.
pub const RESIDUAL_LIMIT: f64 = 1e-8;

fn finish(
    sel: &EigenvalueSelection,
    i2: Isometry,
    u: CVec3,
    v: CVec3,
    point: Option<CharVarPoint>,
) -> Result<RepresentationTriple, CharVarError> {
    let i1 = Isometry::diag(sel.alpha());
    let i3 = (i2 * i1).inverse();
    let rep = RepresentationTriple { i1, i2, i3, u, v, selection: *sel, point };
    let residual = rep.trace_residual().max(rep.relation_residual()).max(i2.unitarity_defect());
    if residual > RESIDUAL_LIMIT || residual.is_nan() {
        return Err(CharVarError::ResidualTooLarge { residual });
    }
    check_i3_type(&rep)?;
    Ok(rep)
}

/// I₃ must fix a negative point with eigenvalue γ₁⁻¹; the trace equation alone
/// does not distinguish γ₁ from γ₂ or γ₃.
fn check_i3_type(rep: &RepresentationTriple) -> Result<(), CharVarError> {
    let g = rep.selection.gamma();
    let mut found = None;
    for (k, gk) in g.iter().enumerate() {
        let v = eigenvector_for(&rep.i3, gk.inv()).map_err(|_| CharVarError::ResidualTooLarge { residual: rep.i3_spectrum_residual() })?;
        if v.self_product() < 0.0 {
            found = Some(k);
        }
    }
    match found {
        Some(0) => Ok(()),
        Some(k) => Err(CharVarError::WrongEigenvalueType { found: k + 1 }),
        None => Err(CharVarError::ResidualTooLarge { residual: rep.i3_spectrum_residual() }),
    }
}

/// Solves the trace equation at a regular-case point (s,t) on the given branch.
pub fn solve_regular(sel: &EigenvalueSelection, pt: CharVarPoint) -> Result<RepresentationTriple, CharVarError> {
    let CharVarPoint { s, t, branch } = pt;
    if !(s > 0.0 && t > 0.0) {
        return Err(CharVarError::NonGenericBoundary { s, t });
    }
    let m = c1_margins(sel, s, t)?;
    if m.iter().any(|&x| x <= 0.0) {
        return Err(CharVarError::ConditionC1Violated { margins: m });
    }
    let [v2s, v3s, v1s] = m;
    let big_s = 1.0 + s + t;
    let a = -t * v3s + big_s * v1s + s * v2s;
    let d = 4.0 * v1s * v2s * s * big_s - a * a;
    if d < 0.0 {
        return Err(CharVarError::DeltaNegative { delta: d });
    }
    let v1 = v1s.sqrt();
    let b = -s * v2s + big_s * v1s + t * v3s;
    let sq = branch.sign() * d.sqrt();
    let v2 = c(a, sq) / (2.0 * v1 * (s * big_s).sqrt());
    let v3 = c(b, -sq) / (2.0 * v1 * (t * big_s).sqrt());
    let u = CVec3::real(big_s.sqrt(), s.sqrt(), t.sqrt());
    let v = CVec3::new(c(v1, 0.0), v2, v3);
    let beta = sel.beta();
    let uu = u.self_product();
    let vv = v.self_product();
    // Elliptic isometry with u ↦ β₁, v ↦ β₂ and the rest ↦ β₃.
    let i2 =
        Isometry::from_map(|x| u * ((beta[0] - beta[2]) * herm(x, &u) / uu) + v * ((beta[1] - beta[2]) * herm(x, &v) / vv) + *x * beta[2]);
    if herm(&u, &v).norm() > 1e-9 {
        return Err(CharVarError::ResidualTooLarge { residual: herm(&u, &v).norm() });
    }
    finish(sel, i2, u, v, Some(pt))
}

/// Right-hand sides (Im(α₁₃k̄)/det M, Im(α₂₁k̄)/det M) of the special-case equations.
pub fn special_squares(sel: &EigenvalueSelection) -> Result<[f64; 2], CharVarError> {
    let al = alphas(sel);
    let b = sel.beta();
    let b12 = b[0] - b[1];
    let k = match sel.case {
        Case::SpecialPoint => (sel.gamma_sum() - al.a[0] * b[0] - b[1] * (al.a[1] + al.a[2])) / b12,
        Case::SpecialLine => (sel.gamma_sum() - al.a[0] * b[1] - b[0] * (al.a[1] + al.a[2])) / b12,
        Case::Regular => return Err(CharVarError::WrongCase { expected: Case::SpecialPoint, got: Case::Regular }),
    };
    let a13 = al.a[0] - al.a[2];
    Ok([(a13 * k.conj()).im / al.det_m, (al.a21 * k.conj()).im / al.det_m])
}

/// The unique representation with I₂ a rotation about a point, if any.
pub fn solve_special_point(sel: &EigenvalueSelection) -> Result<RepresentationTriple, CharVarError> {
    if sel.case != Case::SpecialPoint {
        return Err(CharVarError::WrongCase { expected: Case::SpecialPoint, got: sel.case });
    }
    let [u2s, u3s] = special_squares(sel)?;
    if u2s < 0.0 || u3s < 0.0 {
        return Err(CharVarError::Infeasible { case: sel.case, margins: vec![u2s, u3s] });
    }
    let u = CVec3::real((1.0 + u2s + u3s).sqrt(), u2s.sqrt(), u3s.sqrt());
    let beta = sel.beta();
    let uu = u.self_product();
    let i2 = Isometry::from_map(|x| u * ((beta[0] - beta[1]) * herm(x, &u) / uu) + *x * beta[1]);
    let v = crate::chgeom::herm_cross(&u, &CVec3::e3()).ok().and_then(|w| w.normalized().ok()).unwrap_or_else(CVec3::e3);
    finish(sel, i2, u, v, None)
}

/// The unique representation with I₂ a rotation about a complex geodesic, if any.
pub fn solve_special_line(sel: &EigenvalueSelection) -> Result<RepresentationTriple, CharVarError> {
    if sel.case != Case::SpecialLine {
        return Err(CharVarError::WrongCase { expected: Case::SpecialLine, got: sel.case });
    }
    let [v2s, v3s] = special_squares(sel)?;
    let v1s = v2s + v3s - 1.0;
    if v2s < 0.0 || v3s < 0.0 || v1s < 0.0 {
        return Err(CharVarError::Infeasible { case: sel.case, margins: vec![v2s, v3s, v1s] });
    }
    let v = CVec3::real(v1s.sqrt(), v2s.sqrt(), v3s.sqrt());
    let beta = sel.beta();
    let vv = v.self_product();
    let i2 = Isometry::from_map(|x| v * ((beta[1] - beta[0]) * herm(x, &v) / vv) + *x * beta[0]);
    let e1 = CVec3::e1();
    let u = (e1 - v * (herm(&e1, &v) / vv)).normalized().map_err(|_| CharVarError::ResidualTooLarge { residual: f64::NAN })?;
    finish(sel, i2, u, v, None)
}

/// Dispatches on the selection's case; `pt` is ignored for the rigid special cases.
pub fn solve(sel: &EigenvalueSelection, pt: CharVarPoint) -> Result<RepresentationTriple, CharVarError> {
    match sel.case {
        Case::Regular => solve_regular(sel, pt),
        Case::SpecialPoint => solve_special_point(sel),
        Case::SpecialLine => solve_special_line(sel),
    }
}
