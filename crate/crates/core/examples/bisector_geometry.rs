//! Two ultraparallel complex geodesics, the bisector segment between them, and
//! the two ways of moving a boundary point across it.
//!
//!     cargo run --example bisector_geometry

use turnover::chgeom::{bisector_between, c, herm, tance, theta_coordinate, End, Slice};
use turnover::CVec3;

fn main() {
    let q1 = CVec3::e2();
    let q2 = CVec3::new(c(1.5, 0.0), c(2.0, 0.5), c(0.3, 0.0));
    println!("<q1,q1> = {:+.6}, <q2,q2> = {:+.6}", q1.self_product(), q2.self_product());
    println!("tance(q1, q2) = {:.9} (ultraparallel iff > 1)", tance(&q1, &q2).unwrap());

    let b = bisector_between(&q1, &q2).unwrap();
    println!(
        "feet on the spine: <c1,c1> = {:+.6}, <c2,c2> = {:+.6}, <c1,c2> = {:.6}",
        b.c1.self_product(),
        b.c2.self_product(),
        herm(&b.c1, &b.c2)
    );

    let s1 = Slice::with_center(b.c1, &q1).unwrap();
    let s2 = Slice::with_center(b.c2, &q2).unwrap();
    let reflect = b.middle_reflection();
    for k in 0..4 {
        let theta = c(0.0, std::f64::consts::FRAC_PI_2 * k as f64).exp();
        let z = s1.boundary_point(theta);
        let moved = b.meridional_transport(&z, End::First).unwrap();
        let mirrored = reflect.apply(&z);
        println!(
            "theta {:+.3}  transported {:+.3}  reflected {:+.3}  projective gap {:.2e}",
            theta.arg(),
            theta_coordinate(&s2, &moved).unwrap().arg(),
            theta_coordinate(&s2, &mirrored).unwrap().arg(),
            moved.projective_distance(&mirrored),
        );
    }
}
