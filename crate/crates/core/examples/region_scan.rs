//! Stage raster of the (3,3,4) character variety: writes region.pgm and region.csv.
//!
//!     cargo run --release --example region_scan -- out_dir

use std::fs::File;
use std::io::BufWriter;
use std::path::PathBuf;

use turnover::census::{scan_grid, write_cells_csv, write_stage_pgm, GridSpec, StageCounts};
use turnover::{Branch, Case, EigenvalueSelection, TurnoverSignature};

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| ".".into()));
    let sig = TurnoverSignature::new(3, 3, 4).unwrap();
    let sel = EigenvalueSelection::new(sig, Case::Regular, [1, 1, 1], 0).unwrap();
    let grid = GridSpec::new((0.0, 1.0), (0.0, 1.0), 200, 200).unwrap();
    let cells = scan_grid(&sel, Branch::Plus, &grid);
    write_stage_pgm(BufWriter::new(File::create(dir.join("region.pgm")).unwrap()), &grid, &cells).unwrap();
    write_cells_csv(BufWriter::new(File::create(dir.join("region.csv")).unwrap()), &cells).unwrap();
    println!("{:?}", StageCounts::of(&cells));
    let g_pos = cells.iter().filter(|c| c.goldman.is_some_and(|g| g > 0.0)).count();
    let g_neg = cells.iter().filter(|c| c.goldman.is_some_and(|g| g < 0.0)).count();
    println!("inside the character variety: G > 0 in {g_pos} cells, G < 0 in {g_neg}");
}
