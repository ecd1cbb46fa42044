//! SU(2,1) representatives of holomorphic isometries.

use std::ops::Mul;

use thiserror::Error;

use crate::chgeom::{c, herm, CVec3, Slice, C64, TOL};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IsomError {
    #[error("degenerate spectral data: {0}")]
    DegenerateInput(&'static str),
    #[error("{lambda} is not an eigenvalue (residual {residual:.3e})")]
    NotAnEigenvalue { lambda: C64, residual: f64 },
    #[error("eigenvalue {lambda} has a two-dimensional eigenspace")]
    RepeatedEigenvalueAmbiguity { lambda: C64 },
    #[error("isometry does not stabilize the slice (defect {defect:.3e})")]
    NotStable { defect: f64 },
}

/// A 3×3 complex matrix acting on column vectors.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Isometry(pub [[C64; 3]; 3]);

impl Isometry {
    pub fn identity() -> Self {
        Self::diag([c(1.0, 0.0); 3])
    }

    pub fn diag(d: [C64; 3]) -> Self {
        let z = c(0.0, 0.0);
        Isometry([[d[0], z, z], [z, d[1], z], [z, z, d[2]]])
    }

    /// The matrix whose columns are the images of e₁, e₂, e₃.
    pub fn from_columns(cols: [CVec3; 3]) -> Self {
        let mut m = [[c(0.0, 0.0); 3]; 3];
        for (j, col) in cols.iter().enumerate() {
            for (i, row) in m.iter_mut().enumerate() {
                row[j] = col.0[i];
            }
        }
        Isometry(m)
    }

    /// Builds a matrix from a linear map given pointwise.
    pub fn from_map(f: impl Fn(&CVec3) -> CVec3) -> Self {
        Self::from_columns([f(&CVec3::e1()), f(&CVec3::e2()), f(&CVec3::e3())])
    }

    /// x ↦ −x + 2⟨x,p⟩/⟨p,p⟩ p, the reflection in the complex geodesic with polar p.
    pub fn reflection(p: &CVec3) -> Self {
        let pp = p.self_product();
        Self::from_map(|x| -*x + *p * (herm(x, p) * 2.0 / pp))
    }

    pub fn apply(&self, x: &CVec3) -> CVec3 {
        let m = &self.0;
        CVec3(std::array::from_fn(|i| m[i][0] * x.0[0] + m[i][1] * x.0[1] + m[i][2] * x.0[2]))
    }

    pub fn scale(&self, k: C64) -> Self {
        Isometry(self.0.map(|r| r.map(|z| z * k)))
    }

    pub fn trace(&self) -> C64 {
        self.0[0][0] + self.0[1][1] + self.0[2][2]
    }

    pub fn det(&self) -> C64 {
        let m = &self.0;
        m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
            + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
    }

    pub fn adjoint(&self) -> Self {
        Isometry(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].conj())))
    }

    /// Inverse through the form: M⁻¹ = J M* J. Exact for matrices preserving the form.
    pub fn inverse(&self) -> Self {
        let s = [-1.0, 1.0, 1.0];
        Isometry(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].conj() * (s[i] * s[j]))))
    }

    /// General inverse through the adjugate.
    pub fn inverse_general(&self) -> Self {
        let m = &self.0;
        let d = self.det();
        let cof = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
        let adj = [
            [cof(1, 2, 1, 2), -cof(0, 2, 1, 2), cof(0, 1, 1, 2)],
            [-cof(1, 2, 0, 2), cof(0, 2, 0, 2), -cof(0, 1, 0, 2)],
            [cof(1, 2, 0, 1), -cof(0, 2, 0, 1), cof(0, 1, 0, 1)],
        ];
        Isometry(adj.map(|r| r.map(|z| z / d)))
    }

    pub fn pow(&self, n: u32) -> Self {
        (0..n).fold(Self::identity(), |acc, _| acc * *self)
    }

    /// Largest entry of M*JM − J.
    pub fn unitarity_defect(&self) -> f64 {
        let s = [-1.0, 1.0, 1.0];
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                let v: C64 = (0..3).map(|k| self.0[k][i].conj() * self.0[k][j] * s[k]).sum();
                let target = if i == j { s[i] } else { 0.0 };
                worst = worst.max((v - target).norm());
            }
        }
        worst
    }

    /// Largest entry of M − Id.
    pub fn distance_to_identity(&self) -> f64 {
        self.distance_to(&Self::identity())
    }

    pub fn distance_to(&self, o: &Isometry) -> f64 {
        let mut worst: f64 = 0.0;
        for i in 0..3 {
            for j in 0..3 {
                worst = worst.max((self.0[i][j] - o.0[i][j]).norm());
            }
        }
        worst
    }

    /// If M is within `tol` of ω·Id for a cube root of unity ω, returns ω's index k (ω = e^{2πik/3}).
    pub fn cube_root_scalar(&self, tol: f64) -> Option<u8> {
        (0..3u8).find(|&k| {
            let w = C64::from_polar(1.0, std::f64::consts::TAU * f64::from(k) / 3.0);
            self.distance_to(&Self::identity().scale(w)) < tol
        })
    }

    /// Characteristic polynomial coefficients (tr, second invariant, det).
    pub fn char_coefficients(&self) -> [C64; 3] {
        let m = &self.0;
        let e2 = m[0][0] * m[1][1] - m[0][1] * m[1][0] + m[0][0] * m[2][2] - m[0][2] * m[2][0] + m[1][1] * m[2][2] - m[1][2] * m[2][1];
        [self.trace(), e2, self.det()]
    }
}

impl Mul for Isometry {
    type Output = Isometry;
    fn mul(self, o: Isometry) -> Isometry {
        Isometry(std::array::from_fn(|i| std::array::from_fn(|j| (0..3).map(|k| self.0[i][k] * o.0[k][j]).sum())))
    }
}

/// Pairwise orthogonal fixed points and their eigenvalues.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralData {
    pub c: CVec3,
    pub p: CVec3,
    pub q: CVec3,
    pub eps: [C64; 3],
}

/// x ↦ (ε₁−ε₃)⟨x,c⟩/⟨c,c⟩ c + (ε₂−ε₃)⟨x,p⟩/⟨p,p⟩ p + ε₃x.
pub fn elliptic_from_axes(d: &SpectralData) -> Result<Isometry, IsomError> {
    let [e1, e2, e3] = d.eps;
    for e in d.eps {
        if (e.norm() - 1.0).abs() > 1e-12 {
            return Err(IsomError::DegenerateInput("eigenvalues must have modulus one"));
        }
    }
    if (e1 * e2 * e3 - 1.0).norm() > 1e-12 {
        return Err(IsomError::DegenerateInput("eigenvalue product must be one"));
    }
    let scale = d.c.euclid() * d.p.euclid();
    let orth = herm(&d.c, &d.p).norm() / scale;
    let orth =
        orth.max(herm(&d.c, &d.q).norm() / (d.c.euclid() * d.q.euclid())).max(herm(&d.p, &d.q).norm() / (d.p.euclid() * d.q.euclid()));
    if orth > 1e-8 {
        return Err(IsomError::DegenerateInput("fixed points are not orthogonal"));
    }
    let cc = d.c.self_product();
    let pp = d.p.self_product();
    if cc >= -TOL || pp <= TOL {
        return Err(IsomError::DegenerateInput("center must be negative and polar positive"));
    }
    Ok(Isometry::from_map(|x| d.c * ((e1 - e3) * herm(x, &d.c) / cc) + d.p * ((e2 - e3) * herm(x, &d.p) / pp) + *x * e3))
}

/// A kernel vector of M − λ·Id from cross products of its rows.
pub fn eigenvector_for(m: &Isometry, lambda: C64) -> Result<CVec3, IsomError> {
    let mut a = *m;
    for (i, row) in a.0.iter_mut().enumerate() {
        row[i] -= lambda;
    }
    let rows = a.0.map(CVec3);
    let scale = rows.iter().map(|r| r.euclid()).fold(0.0, f64::max).max(1.0);
    let mut best = CVec3::zero();
    for (i, j) in [(0, 1), (0, 2), (1, 2)] {
        let v = rows[i].cross(&rows[j]);
        if v.euclid() > best.euclid() {
            best = v;
        }
    }
    if best.euclid() <= 1e-9 * scale * scale {
        // Rank at most one: the eigenspace is at least two-dimensional.
        return Err(IsomError::RepeatedEigenvalueAmbiguity { lambda });
    }
    let v = best * (1.0 / best.euclid());
    let residual = a.apply(&v).euclid();
    if residual > 1e-8 * scale {
        return Err(IsomError::NotAnEigenvalue { lambda, residual });
    }
    Ok(v)
}

/// Goldman's discriminant |z|⁴ − 8Re(z³) + 18|z|² − 27.
pub fn goldman_discriminant(z: C64) -> f64 {
    let n = z.norm_sqr();
    n * n - 8.0 * (z * z * z).re + 18.0 * n - 27.0
}

/// Dynamics of an isometry of a complex geodesic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Class {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

/// Classification with the normalized trace |tr| of the restriction (in SU(1,1)).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Restriction {
    pub class: Class,
    pub abs_trace: f64,
    /// 2×2 matrix of the restriction in the basis (center, dir), determinant one.
    pub matrix: [[C64; 2]; 2],
}

/// Restricts `m` to the complex geodesic of `s` and classifies it by the trace.
pub fn classify_restriction(m: &Isometry, s: &Slice, tol: f64) -> Result<Restriction, IsomError> {
    let mq = m.apply(&s.polar);
    let proj = herm(&mq, &s.polar);
    let defect = (mq - s.polar * proj).euclid() / mq.euclid();
    if defect > 1e-7 {
        return Err(IsomError::NotStable { defect });
    }
    let mc = m.apply(&s.center);
    let md = m.apply(&s.dir);
    // Coordinates in the orthonormal pair (c, d) with ⟨c,c⟩ = −1, ⟨d,d⟩ = 1.
    let coord = |x: &CVec3| [-herm(x, &s.center), herm(x, &s.dir)];
    let [a, b] = coord(&mc);
    let [cc, dd] = coord(&md);
    let det = a * dd - cc * b;
    let k = det.sqrt();
    let matrix = [[a / k, cc / k], [b / k, dd / k]];
    let abs_trace = (matrix[0][0] + matrix[1][1]).norm();
    let class = if abs_trace < 2.0 - tol {
        Class::Elliptic
    } else if abs_trace > 2.0 + tol {
        Class::Hyperbolic
    } else {
        Class::Parabolic
    };
    Ok(Restriction { class, abs_trace, matrix })
}
