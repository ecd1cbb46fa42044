//! A regular elliptic isometry of order 5 built from its fixed points, then
//! checked for unitarity, order and the dynamics of its restriction.
//!
//!     cargo run --example elliptic_isometry

use std::f64::consts::TAU;

use turnover::chgeom::{c, herm_cross, Slice};
use turnover::isom::{classify_restriction, eigenvector_for, elliptic_from_axes, SpectralData};
use turnover::{CVec3, C64};

fn root(k: i64, m: i64) -> C64 {
    c(0.0, TAU * k as f64 / m as f64).exp()
}

fn main() {
    // Exponents over 15 = 3·5: α = (0, −3, 3) gives α₂/α₁ = e^{−2πi/5}.
    let eps = [root(0, 15), root(-3, 15), root(3, 15)];
    let center = CVec3::real(1.0, 0.2, 0.1);
    let polar = CVec3::e2();
    let polar = polar - center * (turnover::chgeom::herm(&polar, &center) / center.self_product());
    let q = herm_cross(&center, &polar).unwrap();
    let m = elliptic_from_axes(&SpectralData { c: center, p: polar, q, eps }).unwrap();

    println!("unitarity defect {:.2e}", m.unitarity_defect());
    println!("det {:.12}", m.det());
    println!("M^5 = cube root of unity #{:?}", m.pow(5).cube_root_scalar(1e-8));
    let c1 = eigenvector_for(&m, eps[0]).unwrap();
    println!("eigenvector for eps1 is {}", if c1.self_product() < 0.0 { "negative" } else { "positive" });
    let slice = Slice::from_polar(&polar).unwrap();
    let r = classify_restriction(&m, &slice, 1e-9).unwrap();
    println!("restriction to the fixed complex geodesic: {:?}, |tr| = {:.9}", r.class, r.abs_trace);
}
