//! Complex hyperbolic disc orbibundles over turnovers S²(n₁,n₂,n₃).
//!
//! The pipeline is: pick conjugacy classes ([`charvar`]), solve the trace
//! equation for a representation, build the quadrangle of bisectors and check
//! its discreteness certificate ([`quadrangle`]), then compute the Euler number
//! and Toledo invariant ([`invariants`]). [`census`] sweeps parameter grids and
//! signatures.

pub mod census;
pub mod charvar;
pub mod chgeom;
pub mod config;
pub mod invariants;
pub mod isom;
pub mod output;
pub mod quadrangle;

pub use charvar::{Branch, Case, CharVarPoint, EigenvalueSelection, RepresentationTriple, TurnoverSignature};
pub use chgeom::{CVec3, C64};
pub use invariants::InvariantReport;
pub use isom::Isometry;
pub use quadrangle::{QuadrangleData, QuadrangleReport};
