//! Sign of Goldman's discriminant over the (3,3,4) character variety, drawn as text.
//!
//!     cargo run --release --example goldman_raster

use turnover::census::{goldman_code, scan_grid, GridSpec};
use turnover::{Branch, Case, EigenvalueSelection, TurnoverSignature};

fn main() {
    let sig = TurnoverSignature::new(3, 3, 4).unwrap();
    let sel = EigenvalueSelection::new(sig, Case::Regular, [1, 1, 1], 0).unwrap();
    let grid = GridSpec::new((0.0, 0.8), (0.0, 0.8), 64, 32).unwrap();
    let cells = scan_grid(&sel, Branch::Plus, &grid);
    println!("'.' outside, '+' G >= 0, '-' G < 0; s to the right, t upward");
    for j in (0..grid.nt).rev() {
        let row: String = (0..grid.ns)
            .map(|i| match goldman_code(&cells[j * grid.ns + i]) {
                0 => '.',
                1 => '+',
                _ => '-',
            })
            .collect();
        println!("{row}");
    }
}
