//! Hermitian geometry of signature (−,+,+).
//!
//! Points of the complex hyperbolic plane and of its exterior are held as
//! complex 3-vectors in the frame where the form is `diag(-1, 1, 1)`.
//! The form is linear in the first slot and conjugate-linear in the second.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_complex::Complex64;
use thiserror::Error;

/// Complex scalar used throughout the crate.
pub type C64 = Complex64;

/// Default tolerance for sign predicates.
pub const TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    #[error("degenerate input: {0}")]
    DegenerateInput(&'static str),
    #[error("complex geodesics are not ultraparallel (tance {tance})")]
    NotUltraparallel { tance: f64 },
    #[error("point is not on the boundary circle of the slice (defect {defect:.3e})")]
    NotOnSlice { defect: f64 },
    #[error("cyclic order is indeterminate: two points are {gap:.3e} apart")]
    IndeterminateOrder { gap: f64 },
}

pub fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// A complex 3-vector, usually a projective point.
#[derive(Clone, Copy, PartialEq)]
pub struct CVec3(pub [C64; 3]);

impl fmt::Debug for CVec3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {}, {}]", self.0[0], self.0[1], self.0[2])
    }
}

impl CVec3 {
    pub const fn new(x1: C64, x2: C64, x3: C64) -> Self {
        CVec3([x1, x2, x3])
    }

    pub fn real(x1: f64, x2: f64, x3: f64) -> Self {
        CVec3([c(x1, 0.0), c(x2, 0.0), c(x3, 0.0)])
    }

    pub fn e1() -> Self {
        Self::real(1.0, 0.0, 0.0)
    }

    pub fn e2() -> Self {
        Self::real(0.0, 1.0, 0.0)
    }

    pub fn e3() -> Self {
        Self::real(0.0, 0.0, 1.0)
    }

    pub fn zero() -> Self {
        Self::real(0.0, 0.0, 0.0)
    }

    pub fn conj(&self) -> Self {
        CVec3(self.0.map(|z| z.conj()))
    }

    /// Plain (bilinear) cross product.
    pub fn cross(&self, o: &CVec3) -> CVec3 {
        let [a1, a2, a3] = self.0;
        let [b1, b2, b3] = o.0;
        CVec3([a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1])
    }

    /// Euclidean norm of the coordinates (not the Hermitian form).
    pub fn euclid(&self) -> f64 {
        self.0.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨x, x⟩ as a real number.
    pub fn self_product(&self) -> f64 {
        herm(self, self).re
    }

    pub fn sign_class(&self, tol: f64) -> SignClass {
        SignClass::of(self, tol)
    }

    /// Rescales so that |⟨x,x⟩| = 1, keeping the phase.
    pub fn normalized(&self) -> Result<CVec3, GeomError> {
        let n = self.self_product();
        let scale = self.euclid().powi(2);
        if scale == 0.0 || n.abs() <= TOL * scale {
            return Err(GeomError::DegenerateInput("cannot normalize an isotropic or zero vector"));
        }
        Ok(*self * C64::from(1.0 / n.abs().sqrt()))
    }

    /// Rescales to unit Euclidean length with the largest coordinate real positive.
    /// Used for isotropic points and as a deterministic gauge.
    pub fn gauge_fixed(&self) -> CVec3 {
        let k = (0..3).max_by(|&i, &j| self.0[i].norm().total_cmp(&self.0[j].norm())).unwrap();
        let a = self.0[k];
        if a == C64::from(0.0) {
            return *self;
        }
        let phase = a.conj() / a.norm();
        *self * (phase / self.euclid())
    }

    /// Largest coordinate distance between two projective points after gauge fixing.
    pub fn projective_distance(&self, o: &CVec3) -> f64 {
        let a = self.gauge_fixed();
        let b = o.gauge_fixed();
        (a - b).euclid()
    }
}

impl Index<usize> for CVec3 {
    type Output = C64;
    fn index(&self, i: usize) -> &C64 {
        &self.0[i]
    }
}

impl Add for CVec3 {
    type Output = CVec3;
    fn add(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] + o.0[0], self.0[1] + o.0[1], self.0[2] + o.0[2]])
    }
}

impl Sub for CVec3 {
    type Output = CVec3;
    fn sub(self, o: CVec3) -> CVec3 {
        CVec3([self.0[0] - o.0[0], self.0[1] - o.0[1], self.0[2] - o.0[2]])
    }
}

impl Neg for CVec3 {
    type Output = CVec3;
    fn neg(self) -> CVec3 {
        CVec3(self.0.map(|z| -z))
    }
}

impl Mul<C64> for CVec3 {
    type Output = CVec3;
    fn mul(self, k: C64) -> CVec3 {
        CVec3(self.0.map(|z| z * k))
    }
}

impl Mul<f64> for CVec3 {
    type Output = CVec3;
    fn mul(self, k: f64) -> CVec3 {
        CVec3(self.0.map(|z| z * k))
    }
}

/// The form −x₁ȳ₁ + x₂ȳ₂ + x₃ȳ₃.
pub fn herm(x: &CVec3, y: &CVec3) -> C64 {
    -x.0[0] * y.0[0].conj() + x.0[1] * y.0[1].conj() + x.0[2] * y.0[2].conj()
}

/// ta(p,q) = ⟨p,q⟩⟨q,p⟩ / (⟨p,p⟩⟨q,q⟩).
pub fn tance(p: &CVec3, q: &CVec3) -> Result<f64, GeomError> {
    let pp = p.self_product();
    let qq = q.self_product();
    if pp.abs() <= TOL * p.euclid().powi(2) || qq.abs() <= TOL * q.euclid().powi(2) {
        return Err(GeomError::DegenerateInput("tance of an isotropic point"));
    }
    Ok(herm(p, q).norm_sqr() / (pp * qq))
}

/// A nonzero w with ⟨w,a⟩ = ⟨w,b⟩ = 0.
pub fn herm_cross(a: &CVec3, b: &CVec3) -> Result<CVec3, GeomError> {
    let ja = CVec3([-a.0[0], a.0[1], a.0[2]]).conj();
    let jb = CVec3([-b.0[0], b.0[1], b.0[2]]).conj();
    let w = ja.cross(&jb);
    if w.euclid() <= 1e-12 * a.euclid() * b.euclid() {
        return Err(GeomError::DegenerateInput("herm_cross of parallel vectors"));
    }
    Ok(w)
}

/// Sign of ⟨p,p⟩ with the signed value kept.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SignClass {
    Negative(f64),
    Isotropic(f64),
    Positive(f64),
}

impl SignClass {
    pub fn of(p: &CVec3, tol: f64) -> SignClass {
        let v = p.self_product();
        if v < -tol {
            SignClass::Negative(v)
        } else if v > tol {
            SignClass::Positive(v)
        } else {
            SignClass::Isotropic(v)
        }
    }

    pub fn value(&self) -> f64 {
        match *self {
            SignClass::Negative(v) | SignClass::Isotropic(v) | SignClass::Positive(v) => v,
        }
    }
}

/// A complex geodesic with a chosen center and boundary direction.
///
/// Boundary points are `[c + θ d]` with `|θ| = 1`; increasing `arg θ` is the
/// counterclockwise orientation of the circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Slice {
    pub center: CVec3,
    pub polar: CVec3,
    pub dir: CVec3,
}

impl Slice {
    /// The slice with polar `q`, centered at the projection of e₁.
    pub fn from_polar(q: &CVec3) -> Result<Slice, GeomError> {
        let e1 = CVec3::e1();
        let qq = q.self_product();
        if qq <= TOL * q.euclid().powi(2) {
            return Err(GeomError::DegenerateInput("slice polar must be positive"));
        }
        let center = e1 - *q * (herm(&e1, q) / qq);
        Slice::with_center(center, q)
    }

    /// The slice with polar `q` and center `center` (orthogonal to `q`).
    pub fn with_center(center: CVec3, q: &CVec3) -> Result<Slice, GeomError> {
        let center = center.gauge_fixed().normalized()?;
        let polar = q.gauge_fixed().normalized()?;
        if herm(&center, &polar).norm() > 1e-8 || center.self_product() > 0.0 {
            return Err(GeomError::DegenerateInput("slice center must be negative and orthogonal to the polar"));
        }
        let dir = herm_cross(&center, &polar)?.gauge_fixed().normalized()?;
        Ok(Slice { center, polar, dir })
    }

    /// The boundary point with coordinate θ.
    pub fn boundary_point(&self, theta: C64) -> CVec3 {
        self.center + self.dir * theta
    }
}

/// θ = −⟨z,d⟩/⟨z,c⟩ for a boundary point z of the slice.
pub fn theta_coordinate(s: &Slice, z: &CVec3) -> Result<C64, GeomError> {
    let zc = herm(z, &s.center);
    let scale = z.euclid();
    let off = herm(z, &s.polar).norm() / scale;
    if zc.norm() <= 1e-12 * scale {
        return Err(GeomError::NotOnSlice { defect: f64::INFINITY });
    }
    let theta = -herm(z, &s.dir) / zc;
    let defect = off.max((theta.norm() - 1.0).abs());
    if defect > 1e-7 {
        return Err(GeomError::NotOnSlice { defect });
    }
    Ok(theta)
}

/// Guard band for [`cyclic_order_o`], in radians.
pub const ORDER_GUARD: f64 = 1e-9;

/// 1 iff the three circle points are pairwise distinct and not in counterclockwise order.
pub fn cyclic_order_o(t1: C64, t2: C64, t3: C64) -> Result<u8, GeomError> {
    use std::f64::consts::TAU;
    let a1 = t1.arg();
    let d2 = (t2.arg() - a1).rem_euclid(TAU);
    let d3 = (t3.arg() - a1).rem_euclid(TAU);
    let gaps = [d2, d3, (d3 - d2).abs()];
    for g in gaps {
        let g = g.min(TAU - g);
        if g == 0.0 {
            return Ok(0);
        }
        if g < ORDER_GUARD {
            return Err(GeomError::IndeterminateOrder { gap: g });
        }
    }
    Ok(u8::from(d2 > d3))
}

/// Which end of a bisector segment.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum End {
    First,
    Second,
}

/// A bisector segment between two ultraparallel complex geodesics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BisectorSegment {
    pub q1: CVec3,
    pub q2: CVec3,
    /// Polar of the complex spine, normalized to ⟨p,p⟩ = 1.
    pub spine: CVec3,
    /// Feet of the vertices on the spine, ⟨c₁,c₂⟩ real negative.
    pub c1: CVec3,
    pub c2: CVec3,
    /// Midpoint of the real spine segment.
    pub mid: CVec3,
    /// Polar of the middle slice.
    pub mid_polar: CVec3,
}

/// The bisector segment B[C₁,C₂] for vertex polars q₁, q₂.
pub fn bisector_between(q1: &CVec3, q2: &CVec3) -> Result<BisectorSegment, GeomError> {
    if q1.self_product() <= TOL * q1.euclid().powi(2) || q2.self_product() <= TOL * q2.euclid().powi(2) {
        return Err(GeomError::DegenerateInput("bisector vertices need positive polars"));
    }
    let spine = herm_cross(q1, q2)?;
    let ta = tance(q1, q2)?;
    if ta <= 1.0 + TOL {
        return Err(GeomError::NotUltraparallel { tance: ta });
    }
    let spine = spine.gauge_fixed().normalized()?;
    let c1 = herm_cross(q1, &spine)?.gauge_fixed().normalized()?;
    let c2 = herm_cross(q2, &spine)?.normalized()?;
    // ⟨c₁, λc₂⟩ = λ̄⟨c₁,c₂⟩ is real negative for λ = −⟨c₁,c₂⟩/|⟨c₁,c₂⟩|.
    let h = herm(&c1, &c2);
    let c2 = c2 * (-h / h.norm());
    let mid = (c1 + c2).normalized()?;
    let mid_polar = herm_cross(&mid, &spine)?.normalized()?;
    Ok(BisectorSegment { q1: *q1, q2: *q2, spine, c1, c2, mid, mid_polar })
}

impl BisectorSegment {
    fn ends(&self, from: End) -> (&CVec3, &CVec3, &CVec3) {
        match from {
            End::First => (&self.c1, &self.c2, &self.q1),
            End::Second => (&self.c2, &self.c1, &self.q2),
        }
    }

    /// Moves a boundary point of one vertex slice along its meridian to the other end.
    pub fn meridional_transport(&self, z: &CVec3, from: End) -> Result<CVec3, GeomError> {
        let (cf, ct, qf) = self.ends(from);
        let scale = z.euclid();
        let defect = herm(z, qf).norm() / scale + z.self_product().abs() / (scale * scale);
        if defect > 1e-7 {
            return Err(GeomError::NotOnSlice { defect });
        }
        let zc = herm(z, cf);
        if zc.norm() <= 1e-12 * scale {
            return Err(GeomError::NotOnSlice { defect: f64::INFINITY });
        }
        // z ∝ c_from + θ p with θ = −⟨z,p⟩/⟨z,c_from⟩.
        let theta = -herm(z, &self.spine) / zc;
        Ok(*ct + self.spine * theta)
    }

    /// Reflection in the middle slice; swaps the vertex slices and fixes every meridian.
    pub fn middle_reflection(&self) -> crate::isom::Isometry {
        crate::isom::Isometry::reflection(&self.mid_polar)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn i() -> C64 {
        c(0.0, 1.0)
    }

    #[test]
    fn herm_examples() {
        let e1 = CVec3::e1();
        assert_eq!(herm(&e1, &e1), c(-1.0, 0.0));
        assert_eq!(herm(&CVec3::real(1.0, 1.0, 0.0), &CVec3::e2()), c(1.0, 0.0));
        let x = CVec3::new(c(1.0, 0.0), i(), c(0.0, 0.0));
        assert_eq!(herm(&x, &e1), c(-1.0, 0.0));
    }

    #[test]
    fn tance_examples() {
        let e1 = CVec3::e1();
        assert!((tance(&e1, &e1).unwrap() - 1.0).abs() < 1e-15);
        let q = CVec3::real(2f64.sqrt(), 1.0, 0.0);
        assert!((tance(&e1, &q).unwrap() - 2.0).abs() < 1e-12);
        assert_eq!(tance(&CVec3::e2(), &CVec3::e3()).unwrap(), 0.0);
        assert!(tance(&CVec3::real(1.0, 1.0, 0.0), &e1).is_err());
    }

    #[test]
    fn herm_cross_examples() {
        let w = herm_cross(&CVec3::e1(), &CVec3::e2()).unwrap();
        assert!(w[0].norm() < 1e-15 && w[1].norm() < 1e-15 && w[2].norm() > 0.5);
        let w = herm_cross(&CVec3::e2(), &CVec3::e3()).unwrap();
        assert!(w[1].norm() < 1e-15 && w[2].norm() < 1e-15);
        let a = CVec3::real(1.0, 1.0, 1.0);
        let b = CVec3::new(c(1.0, 0.0), i(), c(0.0, 0.0));
        let w = herm_cross(&a, &b).unwrap();
        assert!(herm(&w, &a).norm() < 1e-12 && herm(&w, &b).norm() < 1e-12);
        assert!(herm_cross(&a, &(a * c(0.0, 2.0))).is_err());
    }

    #[test]
    fn bisector_example() {
        let q1 = CVec3::e2();
        let q2 = CVec3::real(1.0, 2f64.sqrt(), 0.0);
        let b = bisector_between(&q1, &q2).unwrap();
        assert!(b.spine.projective_distance(&CVec3::e3()) < 1e-12);
        assert!(b.c1.projective_distance(&CVec3::e1()) < 1e-12);
        assert!(b.c2.projective_distance(&CVec3::real(2f64.sqrt(), 1.0, 0.0)) < 1e-12);
        assert!(b.mid.projective_distance(&CVec3::real(1.0 + 2f64.sqrt(), 1.0, 0.0)) < 1e-12);
        let d1 = tance(&b.mid, &b.c1).unwrap();
        let d2 = tance(&b.mid, &b.c2).unwrap();
        assert!((d1 - d2).abs() < 1e-12);
        assert_eq!(bisector_between(&q1, &q1), Err(GeomError::DegenerateInput("herm_cross of parallel vectors")));
        assert!(matches!(bisector_between(&q1, &CVec3::e3()), Err(GeomError::NotUltraparallel { .. })));
    }

    #[test]
    fn transport_examples() {
        let b = bisector_between(&CVec3::e2(), &CVec3::real(1.0, 2f64.sqrt(), 0.0)).unwrap();
        let z = CVec3::real(1.0, 0.0, 1.0);
        let w = b.meridional_transport(&z, End::First).unwrap();
        assert!(w.self_product().abs() < 1e-12);
        assert!(w.projective_distance(&CVec3::real(2f64.sqrt(), 1.0, 1.0)) < 1e-12);
        let zi = b.c1 + b.spine * i();
        let wi = b.meridional_transport(&zi, End::First).unwrap();
        assert!(wi.projective_distance(&(b.c2 + b.spine * i())) < 1e-12);
        assert!(matches!(b.meridional_transport(&b.c1, End::First), Err(GeomError::NotOnSlice { .. })));
    }

    #[test]
    fn theta_examples() {
        let s = Slice::from_polar(&CVec3::e2()).unwrap();
        assert!(s.dir.projective_distance(&CVec3::e3()) < 1e-15);
        let th = theta_coordinate(&s, &CVec3::new(c(1.0, 0.0), c(0.0, 0.0), i())).unwrap();
        assert!((th - i()).norm() < 1e-15);
        assert!((theta_coordinate(&s, &CVec3::real(1.0, 0.0, 1.0)).unwrap() - 1.0).norm() < 1e-15);
        assert!((theta_coordinate(&s, &CVec3::real(1.0, 0.0, -1.0)).unwrap() + 1.0).norm() < 1e-15);
    }

    #[test]
    fn order_examples() {
        let one = c(1.0, 0.0);
        assert_eq!(cyclic_order_o(one, i(), -one), Ok(0));
        assert_eq!(cyclic_order_o(one, -one, i()), Ok(1));
        assert_eq!(cyclic_order_o(one, one, i()), Ok(0));
        let near = C64::from_polar(1.0, 1e-12);
        assert!(cyclic_order_o(one, near, i()).is_err());
    }
}
