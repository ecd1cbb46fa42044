//! Parameter-plane scans and censuses over signatures.

use std::collections::BTreeSet;
use std::fmt;
use std::io::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use num_rational::Ratio;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::charvar::{
    c1_affine, enumerate_lifted, solve, Branch, Case, CharVarError, CharVarPoint, EigenvalueSelection, RepresentationTriple,
    TurnoverSignature,
};
use crate::invariants::{invariant_report, InvariantReport, InvariantsError};
use crate::output::{float17, float17_opt, fmt_f64, fmt_ratio};
use crate::quadrangle::{build_quadrangle, check_quadrangle, QuadrangleData, QuadrangleError, QuadrangleReport};

#[derive(Debug, Error)]
pub enum CensusError {
    #[error("bad grid: {0}")]
    BadGrid(String),
    #[error("budget exceeded after {elapsed:.1}s ({done} of {total} selections)")]
    BudgetExceeded { elapsed: f64, done: usize, total: usize },
    #[error(transparent)]
    CharVar(#[from] CharVarError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// A rectangular grid of cells in the (s,t) plane, sampled at cell centers.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub s_min: f64,
    pub s_max: f64,
    pub t_min: f64,
    pub t_max: f64,
    pub ns: usize,
    pub nt: usize,
}

impl GridSpec {
    pub fn new(s: (f64, f64), t: (f64, f64), ns: usize, nt: usize) -> Result<Self, CensusError> {
        let g = GridSpec { s_min: s.0, s_max: s.1, t_min: t.0, t_max: t.1, ns, nt };
        g.validate()?;
        Ok(g)
    }

    pub fn validate(&self) -> Result<(), CensusError> {
        let ok = self.s_min >= 0.0
            && self.t_min >= 0.0
            && self.s_max > self.s_min
            && self.t_max > self.t_min
            && self.s_max.is_finite()
            && self.t_max.is_finite()
            && self.ns >= 1
            && self.nt >= 1;
        if ok {
            Ok(())
        } else {
            Err(CensusError::BadGrid(format!("{self:?}")))
        }
    }

    /// [0,4]² at 200×200.
    pub fn default_square() -> Self {
        GridSpec { s_min: 0.0, s_max: 4.0, t_min: 0.0, t_max: 4.0, ns: 200, nt: 200 }
    }

    pub fn from_ranges(s: &AxisRange, t: &AxisRange) -> Result<Self, CensusError> {
        GridSpec::new((s.min, s.max), (t.min, t.max), s.n, t.n)
    }

    pub fn s_at(&self, i: usize) -> f64 {
        self.s_min + (i as f64 + 0.5) * (self.s_max - self.s_min) / self.ns as f64
    }

    pub fn t_at(&self, j: usize) -> f64 {
        self.t_min + (j as f64 + 0.5) * (self.t_max - self.t_min) / self.nt as f64
    }

    pub fn len(&self) -> usize {
        self.ns * self.nt
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// One axis "min:max:n".
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AxisRange {
    pub min: f64,
    pub max: f64,
    pub n: usize,
}

impl FromStr for AxisRange {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').collect();
        let bad = || format!("expected min:max:n, got {s:?}");
        if parts.len() != 3 {
            return Err(bad());
        }
        let min: f64 = parts[0].trim().parse().map_err(|_| bad())?;
        let max: f64 = parts[1].trim().parse().map_err(|_| bad())?;
        let n: usize = parts[2].trim().parse().map_err(|_| bad())?;
        if !(min >= 0.0 && max > min && max.is_finite() && n >= 1) {
            return Err(format!("range {s:?} needs 0 <= min < max and n >= 1"));
        }
        Ok(AxisRange { min, max, n })
    }
}

/// How far a cell got through the pipeline.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Stage {
    OutsideCharVar,
    CharVar,
    QuadranglePass,
}

impl fmt::Display for Stage {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Stage::OutsideCharVar => "outside",
            Stage::CharVar => "charvar",
            Stage::QuadranglePass => "pass",
        })
    }
}

/// Everything computed at one parameter point.
#[derive(Debug, Clone)]
pub struct PointOutcome {
    pub rep: Result<RepresentationTriple, CharVarError>,
    pub quadrangle: Option<(QuadrangleData, QuadrangleReport)>,
    pub invariants: Option<Result<InvariantReport, InvariantsError>>,
}

impl PointOutcome {
    pub fn stage(&self) -> Stage {
        match (&self.quadrangle, &self.invariants) {
            (Some((_, q)), Some(Ok(_))) if q.pass => Stage::QuadranglePass,
            _ if self.rep.is_ok() => Stage::CharVar,
            _ => Stage::OutsideCharVar,
        }
    }
}

/// Runs the whole pipeline at one point; the point is ignored for the rigid special cases.
pub fn evaluate_point(sel: &EigenvalueSelection, pt: CharVarPoint) -> PointOutcome {
    let rep = solve(sel, pt);
    let Ok(r) = &rep else {
        return PointOutcome { rep, quadrangle: None, invariants: None };
    };
    let qd = match build_quadrangle(r) {
        Ok(qd) => qd,
        Err(QuadrangleError::Isom(_) | QuadrangleError::Geom(_)) => {
            return PointOutcome { rep, quadrangle: None, invariants: None };
        }
    };
    let qr = check_quadrangle(&qd, sel);
    let invariants = qr.pass.then(|| invariant_report(sel, &qd, r));
    PointOutcome { rep, quadrangle: Some((qd, qr)), invariants }
}

/// Classification of one grid cell.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CellResult {
    pub i: usize,
    pub j: usize,
    #[serde(with = "float17")]
    pub s: f64,
    #[serde(with = "float17")]
    pub t: f64,
    pub stage: Stage,
    /// G(s,t) when the representation exists.
    #[serde(with = "float17_opt")]
    pub goldman: Option<f64>,
    /// Smallest C1/C2 or quadrangle margin.
    #[serde(with = "float17")]
    pub min_margin: f64,
    pub report: Option<InvariantReport>,
    /// Set when the quadrangle passes but the invariants could not be computed.
    pub invariant_error: Option<String>,
}

impl CellResult {
    /// Raster code: 0 outside, 1 CharVar, 2 QuadranglePass, 3 QuadranglePass with G < 0.
    pub fn code(&self) -> u8 {
        match self.stage {
            Stage::OutsideCharVar => 0,
            Stage::CharVar => 1,
            Stage::QuadranglePass if self.goldman.is_some_and(|g| g < 0.0) => 3,
            Stage::QuadranglePass => 2,
        }
    }
}

fn charvar_margin(e: &CharVarError) -> f64 {
    match e {
        CharVarError::ConditionC1Violated { margins } => margins.iter().copied().fold(f64::INFINITY, f64::min),
        CharVarError::DeltaNegative { delta } => *delta,
        _ => f64::NAN,
    }
}

fn evaluate_cell(sel: &EigenvalueSelection, branch: Branch, grid: &GridSpec, i: usize, j: usize) -> CellResult {
    let (s, t) = (grid.s_at(i), grid.t_at(j));
    let out = evaluate_point(sel, CharVarPoint { s, t, branch });
    let stage = out.stage();
    let goldman = out.rep.as_ref().ok().map(RepresentationTriple::goldman);
    let min_margin = match (&out.rep, &out.quadrangle) {
        (Err(e), _) => charvar_margin(e),
        (Ok(_), Some((_, q))) => q.min_margin,
        (Ok(_), None) => f64::NAN,
    };
    let (report, invariant_error) = match out.invariants {
        Some(Ok(r)) => (Some(r), None),
        Some(Err(e)) => (None, Some(e.to_string())),
        None => (None, None),
    };
    CellResult { i, j, s, t, stage, goldman, min_margin, report, invariant_error }
}

/// Scans the grid; cells are ordered by (j, i), i.e. row-major with t as the row.
pub fn scan_grid(sel: &EigenvalueSelection, branch: Branch, grid: &GridSpec) -> Vec<CellResult> {
    (0..grid.len()).into_par_iter().map(|k| evaluate_cell(sel, branch, grid, k % grid.ns, k / grid.ns)).collect()
}

/// Cell counts per stage, plus passing cells with G < 0.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageCounts {
    pub outside: usize,
    pub charvar: usize,
    pub pass: usize,
    pub pass_goldman_negative: usize,
    /// Passing quadrangles whose invariants failed (non-elliptic holonomy and the like).
    pub invariant_errors: usize,
}

impl StageCounts {
    pub fn of(cells: &[CellResult]) -> Self {
        let mut c = StageCounts::default();
        for cell in cells {
            match cell.stage {
                Stage::OutsideCharVar => c.outside += 1,
                Stage::CharVar => c.charvar += 1,
                Stage::QuadranglePass => c.pass += 1,
            }
            if cell.code() == 3 {
                c.pass_goldman_negative += 1;
            }
            if cell.invariant_error.is_some() {
                c.invariant_errors += 1;
            }
        }
        c
    }
}

/// Which square-root branches a census visits.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BranchPolicy {
    #[default]
    Both,
    Plus,
    Minus,
}

impl BranchPolicy {
    pub fn branches(self) -> &'static [Branch] {
        match self {
            BranchPolicy::Both => &[Branch::Plus, Branch::Minus],
            BranchPolicy::Plus => &[Branch::Plus],
            BranchPolicy::Minus => &[Branch::Minus],
        }
    }
}

impl FromStr for BranchPolicy {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "both" => Ok(BranchPolicy::Both),
            "plus" => Ok(BranchPolicy::Plus),
            "minus" => Ok(BranchPolicy::Minus),
            _ => Err(format!("unknown branch policy {s:?} (both, plus, minus)")),
        }
    }
}

/// Grid policy of a census: per-selection extents are found automatically.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CensusGrid {
    /// Cells per axis in each pass.
    pub resolution: usize,
    /// Initial side of the search square.
    pub initial_extent: f64,
    /// Largest side the search square may grow to.
    pub max_extent: f64,
}

impl Default for CensusGrid {
    fn default() -> Self {
        CensusGrid { resolution: 48, initial_extent: 4.0, max_extent: 256.0 }
    }
}

/// Clips the square [0,L]² by the half-planes a + b s + c t ≥ 0 and returns the bounding box.
fn clipped_bbox(halfplanes: &[[f64; 3]], l: f64) -> Option<[f64; 4]> {
    let mut poly = vec![(0.0, 0.0), (l, 0.0), (l, l), (0.0, l)];
    for h in halfplanes {
        let val = |p: &(f64, f64)| h[0] + h[1] * p.0 + h[2] * p.1;
        let mut out = Vec::new();
        for k in 0..poly.len() {
            let (p, q) = (poly[k], poly[(k + 1) % poly.len()]);
            let (vp, vq) = (val(&p), val(&q));
            if vp >= 0.0 {
                out.push(p);
            }
            if (vp >= 0.0) != (vq >= 0.0) {
                let r = vp / (vp - vq);
                out.push((p.0 + r * (q.0 - p.0), p.1 + r * (q.1 - p.1)));
            }
        }
        poly = out;
        if poly.is_empty() {
            return None;
        }
    }
    let fold = |f: fn(f64, f64) -> f64, init: f64, k: usize| poly.iter().map(|p| if k == 0 { p.0 } else { p.1 }).fold(init, f);
    let bbox = [fold(f64::min, f64::INFINITY, 0), fold(f64::max, 0.0, 0), fold(f64::min, f64::INFINITY, 1), fold(f64::max, 0.0, 1)];
    // Slivers thinner than this hold no cell centers worth scanning.
    let min_width = 1e-9 * l;
    (bbox[1] - bbox[0] > min_width && bbox[3] - bbox[2] > min_width).then_some(bbox)
}

/// Grid enclosing the C1 polygon, grown until the character variety stays clear of the far edges.
///
/// The region C1 ∧ Δ ≥ 0 does not depend on the branch.
pub fn auto_extent(sel: &EigenvalueSelection, policy: &CensusGrid) -> Result<Option<GridSpec>, CensusError> {
    let aff = c1_affine(sel)?;
    let r = policy.resolution;
    let mut l = policy.initial_extent;
    loop {
        let Some(bb) = clipped_bbox(&aff, l) else {
            return Ok(None);
        };
        let coarse = GridSpec::new((bb[0], bb[1]), (bb[2], bb[3]), r, r)?;
        let cells = scan_charvar_only(sel, &coarse);
        let hits: Vec<(usize, usize)> = cells.iter().filter(|c| c.2).map(|c| (c.0, c.1)).collect();
        let touches = hits.iter().any(|&(i, j)| (i + 1 == r && bb[1] >= l) || (j + 1 == r && bb[3] >= l));
        if touches && l < policy.max_extent {
            l *= 4.0;
            continue;
        }
        if hits.is_empty() {
            return Ok(None);
        }
        let ds = (bb[1] - bb[0]) / r as f64;
        let dt = (bb[3] - bb[2]) / r as f64;
        let i0 = hits.iter().map(|h| h.0).min().unwrap_or(0);
        let i1 = hits.iter().map(|h| h.0).max().unwrap_or(0);
        let j0 = hits.iter().map(|h| h.1).min().unwrap_or(0);
        let j1 = hits.iter().map(|h| h.1).max().unwrap_or(0);
        let s_lo = (bb[0] + ds * i0 as f64 - ds).max(bb[0]);
        let s_hi = (bb[0] + ds * (i1 + 1) as f64 + ds).min(bb[1]);
        let t_lo = (bb[2] + dt * j0 as f64 - dt).max(bb[2]);
        let t_hi = (bb[2] + dt * (j1 + 1) as f64 + dt).min(bb[3]);
        if s_hi <= s_lo || t_hi <= t_lo {
            return Ok(None);
        }
        return Ok(Some(GridSpec::new((s_lo, s_hi), (t_lo, t_hi), r, r)?));
    }
}

/// (i, j, in CharVar) per cell, without the quadrangle stage.
fn scan_charvar_only(sel: &EigenvalueSelection, grid: &GridSpec) -> Vec<(usize, usize, bool)> {
    (0..grid.len())
        .map(|k| {
            let (i, j) = (k % grid.ns, k / grid.ns);
            let ok = crate::charvar::delta(sel, grid.s_at(i), grid.t_at(j)).is_ok_and(|d| d >= 0.0);
            (i, j, ok)
        })
        .collect()
}

/// One (signature, selection, branch) with a passing quadrangle.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusRecord {
    pub signature: [u32; 3],
    pub case: Case,
    pub l: [u32; 3],
    pub lift: u8,
    pub branch: Option<Branch>,
    /// The passing cell with the largest margin (earliest on ties); absent for rigid cases.
    pub cell: Option<(usize, usize)>,
    pub grid: Option<GridSpec>,
    pub report: InvariantReport,
    pub counts: StageCounts,
    /// Distinct e/χ values over the passing cells.
    #[serde(with = "ratio_list")]
    pub e_over_chi_values: Vec<Ratio<i64>>,
}

mod ratio_list {
    use super::*;
    use serde::{Deserializer, Serializer};

    pub fn serialize<S: Serializer>(v: &[Ratio<i64>], s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(v.iter().map(fmt_ratio))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<Ratio<i64>>, D::Error> {
        let v: Vec<String> = Vec::deserialize(d)?;
        v.iter().map(|s| crate::output::parse_ratio(s).map_err(serde::de::Error::custom)).collect()
    }
}

/// Picks the representative passing cell and builds the record.
pub fn record_from_cells(sel: &EigenvalueSelection, branch: Branch, grid: &GridSpec, cells: &[CellResult]) -> Option<CensusRecord> {
    let mut best: Option<&CellResult> = None;
    for c in cells.iter().filter(|c| c.stage == Stage::QuadranglePass) {
        if best.is_none_or(|b| c.min_margin > b.min_margin) {
            best = Some(c);
        }
    }
    let best = best?;
    let values: BTreeSet<Ratio<i64>> = cells.iter().filter_map(|c| c.report.as_ref().map(|r| r.e_over_chi)).collect();
    Some(CensusRecord {
        signature: sel.signature.n,
        case: sel.case,
        l: sel.l,
        lift: sel.lift,
        branch: Some(branch),
        cell: Some((best.i, best.j)),
        grid: Some(*grid),
        report: best.report.clone()?,
        counts: StageCounts::of(cells),
        e_over_chi_values: values.into_iter().collect(),
    })
}

/// Census record of one rigid special-case selection, if its quadrangle passes.
pub fn special_record(sel: &EigenvalueSelection) -> Option<CensusRecord> {
    let pt = CharVarPoint { s: 0.0, t: 0.0, branch: Branch::Plus };
    let out = evaluate_point(sel, pt);
    let stage = out.stage();
    let report = match out.invariants {
        Some(Ok(r)) => r,
        _ => return None,
    };
    let counts = StageCounts { pass: usize::from(stage == Stage::QuadranglePass), ..StageCounts::default() };
    Some(CensusRecord {
        signature: sel.signature.n,
        case: sel.case,
        l: sel.l,
        lift: sel.lift,
        branch: None,
        cell: None,
        grid: None,
        e_over_chi_values: vec![report.e_over_chi],
        report,
        counts,
    })
}

/// Signatures visited by a census with the given upper bound, in lexicographic order.
pub fn census_signatures(case: Case, n_max: u32) -> Vec<TurnoverSignature> {
    let n2_min = if case == Case::Regular { 3 } else { 2 };
    let mut out = Vec::new();
    for n1 in 3..=n_max {
        for n2 in n2_min..=n_max {
            for n3 in 3..=n_max {
                if let Ok(s) = TurnoverSignature::new(n1, n2, n3) {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Census settings.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CensusOptions {
    pub case: Case,
    pub n_max: u32,
    pub grid: CensusGrid,
    pub branches: BranchPolicy,
    /// Wall-clock limit in seconds, checked between selections.
    pub max_seconds: Option<f64>,
}

impl CensusOptions {
    pub fn new(case: Case, n_max: u32) -> Self {
        CensusOptions { case, n_max, grid: CensusGrid::default(), branches: BranchPolicy::Both, max_seconds: None }
    }
}

/// Census records, sorted by (signature, selection, lift, branch).
pub fn run_census(opts: &CensusOptions) -> Result<Vec<CensusRecord>, CensusError> {
    let mut jobs: Vec<(EigenvalueSelection, Option<Branch>)> = Vec::new();
    for sig in census_signatures(opts.case, opts.n_max) {
        let sels = match enumerate_lifted(sig, opts.case) {
            Ok(s) => s,
            Err(CharVarError::EmptyEnumeration { .. }) => continue,
            Err(e) => return Err(e.into()),
        };
        for sel in sels {
            if opts.case == Case::Regular {
                jobs.extend(opts.branches.branches().iter().map(|&b| (sel, Some(b))));
            } else {
                jobs.push((sel, None));
            }
        }
    }
    let start = Instant::now();
    let total = jobs.len();
    let mut records = Vec::new();
    // Chunks keep the wall-clock check cheap while leaving results whole.
    for (k, chunk) in jobs.chunks(256).enumerate() {
        if let Some(limit) = opts.max_seconds {
            let elapsed = start.elapsed().as_secs_f64();
            if elapsed > limit {
                return Err(CensusError::BudgetExceeded { elapsed, done: k * 256, total });
            }
        }
        let part: Vec<Option<CensusRecord>> = chunk
            .par_iter()
            .map(|(sel, branch)| match branch {
                None => Ok(special_record(sel)),
                Some(b) => census_selection(sel, *b, &opts.grid),
            })
            .collect::<Result<_, CensusError>>()?;
        records.extend(part.into_iter().flatten());
    }
    Ok(records)
}

/// Scans one regular selection on its auto-extent grid.
pub fn census_selection(sel: &EigenvalueSelection, branch: Branch, grid: &CensusGrid) -> Result<Option<CensusRecord>, CensusError> {
    let Some(spec) = auto_extent(sel, grid)? else {
        return Ok(None);
    };
    let cells: Vec<CellResult> = (0..spec.len()).map(|k| evaluate_cell(sel, branch, &spec, k % spec.ns, k / spec.ns)).collect();
    Ok(record_from_cells(sel, branch, &spec, &cells))
}

/// Aggregate statistics of a census.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CensusSummary {
    pub records: usize,
    /// Signatures with at least one record.
    pub triples: usize,
    #[serde(with = "ratio_list")]
    pub e_over_chi_values: Vec<Ratio<i64>>,
    pub e_over_chi_min: Option<String>,
    pub e_over_chi_max: Option<String>,
    /// Records whose τ disagrees with the closed form mod 2.
    pub inconsistent: usize,
    /// Records whose numeric Toledo check disagrees.
    pub numeric_disagreements: usize,
}

pub fn summarize(records: &[CensusRecord]) -> CensusSummary {
    let triples: BTreeSet<[u32; 3]> = records.iter().map(|r| r.signature).collect();
    let values: BTreeSet<Ratio<i64>> = records.iter().flat_map(|r| r.e_over_chi_values.iter().copied()).collect();
    CensusSummary {
        records: records.len(),
        triples: triples.len(),
        e_over_chi_min: values.first().map(fmt_ratio),
        e_over_chi_max: values.last().map(fmt_ratio),
        e_over_chi_values: values.into_iter().collect(),
        inconsistent: records.iter().filter(|r| !r.report.consistency).count(),
        numeric_disagreements: records.iter().filter(|r| !r.report.numeric_agrees).count(),
    }
}

/// Signatures with at least one record.
pub fn triples(records: &[CensusRecord]) -> BTreeSet<[u32; 3]> {
    records.iter().map(|r| r.signature).collect()
}

fn opt_f(x: Option<f64>) -> String {
    x.map(fmt_f64).unwrap_or_default()
}

/// Header of [`write_cells_csv`].
pub const CELL_CSV_HEADER: &str = "i,j,s,t,stage,code,goldman,min_margin,f,e,e_over_chi,tau,tau_mod2_closed,tau_mod2_numeric,consistency";

pub fn write_cells_csv<W: Write>(mut w: W, cells: &[CellResult]) -> io::Result<()> {
    writeln!(w, "{CELL_CSV_HEADER}")?;
    for c in cells {
        let inv = match &c.report {
            Some(r) => format!(
                "{},{},{},{},{},{},{}",
                r.f,
                fmt_ratio(&r.e),
                fmt_ratio(&r.e_over_chi),
                fmt_ratio(&r.tau),
                fmt_f64(r.tau_mod2_closed),
                fmt_f64(r.tau_mod2_numeric),
                r.consistency
            ),
            None => ",,,,,,".to_string(),
        };
        writeln!(
            w,
            "{},{},{},{},{},{},{},{},{}",
            c.i,
            c.j,
            fmt_f64(c.s),
            fmt_f64(c.t),
            c.stage,
            c.code(),
            opt_f(c.goldman),
            fmt_f64(c.min_margin),
            inv
        )?;
    }
    Ok(())
}

/// Header of [`write_census_csv`].
pub const CENSUS_CSV_HEADER: &str = "n1,n2,n3,case,l1,l2,l3,lift,branch,s,t,chi,f,e,e_over_chi,tau,tau_mod2_closed,tau_mod2_numeric,consistency,outside,charvar,pass,pass_goldman_negative";

pub fn write_census_csv<W: Write>(mut w: W, records: &[CensusRecord]) -> io::Result<()> {
    writeln!(w, "{CENSUS_CSV_HEADER}")?;
    for rec in records {
        let r = &rec.report;
        let [n1, n2, n3] = rec.signature;
        let [l1, l2, l3] = rec.l;
        writeln!(
            w,
            "{n1},{n2},{n3},{},{l1},{l2},{l3},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{},{}",
            rec.case,
            rec.lift,
            rec.branch.map(|b| b.to_string()).unwrap_or_default(),
            opt_f(r.s),
            opt_f(r.t),
            fmt_ratio(&r.chi),
            r.f,
            fmt_ratio(&r.e),
            fmt_ratio(&r.e_over_chi),
            fmt_ratio(&r.tau),
            fmt_f64(r.tau_mod2_closed),
            fmt_f64(r.tau_mod2_numeric),
            r.consistency,
            rec.counts.outside,
            rec.counts.charvar,
            rec.counts.pass,
            rec.counts.pass_goldman_negative
        )?;
    }
    Ok(())
}

/// One JSON object per line.
pub fn write_jsonl<W: Write, T: Serialize>(mut w: W, items: &[T]) -> io::Result<()> {
    for it in items {
        serde_json::to_writer(&mut w, it)?;
        writeln!(w)?;
    }
    Ok(())
}

/// Text PGM with t increasing upwards; `code` maps a cell to a gray level ≤ `maxval`.
pub fn write_pgm<W: Write>(
    mut w: W,
    grid: &GridSpec,
    cells: &[CellResult],
    maxval: u8,
    code: impl Fn(&CellResult) -> u8,
) -> io::Result<()> {
    writeln!(w, "P2")?;
    writeln!(w, "# s {} {} t {} {}", fmt_f64(grid.s_min), fmt_f64(grid.s_max), fmt_f64(grid.t_min), fmt_f64(grid.t_max))?;
    writeln!(w, "{} {}", grid.ns, grid.nt)?;
    writeln!(w, "{maxval}")?;
    for j in (0..grid.nt).rev() {
        let row: Vec<String> = (0..grid.ns).map(|i| code(&cells[j * grid.ns + i]).to_string()).collect();
        writeln!(w, "{}", row.join(" "))?;
    }
    Ok(())
}

/// Stage raster: 0 outside, 1 CharVar, 2 QuadranglePass, 3 QuadranglePass with G < 0.
pub fn write_stage_pgm<W: Write>(w: W, grid: &GridSpec, cells: &[CellResult]) -> io::Result<()> {
    write_pgm(w, grid, cells, 3, CellResult::code)
}

/// Goldman raster: 0 outside, 1 G ≥ 0, 2 G < 0.
pub fn goldman_code(c: &CellResult) -> u8 {
    match c.goldman {
        None => 0,
        Some(g) if g < 0.0 => 2,
        Some(_) => 1,
    }
}

pub fn write_goldman_pgm<W: Write>(w: W, grid: &GridSpec, cells: &[CellResult]) -> io::Result<()> {
    write_pgm(w, grid, cells, 2, goldman_code)
}

/// Parses a P2 raster back into (width, height, row-major codes from the top row).
pub fn read_pgm(text: &str) -> Result<(usize, usize, Vec<u8>), String> {
    let mut tokens = text.lines().filter(|l| !l.starts_with('#')).flat_map(str::split_whitespace);
    if tokens.next() != Some("P2") {
        return Err("not a P2 file".into());
    }
    let mut num = || -> Result<usize, String> { tokens.next().ok_or("truncated")?.parse::<usize>().map_err(|e| e.to_string()) };
    let (w, h, _max) = (num()?, num()?, num()?);
    let data = (0..w * h).map(|_| num().map(|v| v as u8)).collect::<Result<_, _>>()?;
    Ok((w, h, data))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sel334() -> EigenvalueSelection {
        let sig = TurnoverSignature::new(3, 3, 4).unwrap();
        EigenvalueSelection::new(sig, Case::Regular, [1, 1, 1], 0).unwrap()
    }

    #[test]
    fn axis_ranges() {
        let r: AxisRange = "0:4:200".parse().unwrap();
        assert_eq!((r.min, r.max, r.n), (0.0, 4.0, 200));
        assert!("4:0:10".parse::<AxisRange>().is_err());
        assert!("0:1".parse::<AxisRange>().is_err());
        assert!("0:1:0".parse::<AxisRange>().is_err());
    }

    #[test]
    fn clipping() {
        // s ≤ 1, t ≤ 2 inside [0,4]².
        let bb = clipped_bbox(&[[1.0, -1.0, 0.0], [2.0, 0.0, -1.0]], 4.0).unwrap();
        assert_eq!(bb, [0.0, 1.0, 0.0, 2.0]);
        assert!(clipped_bbox(&[[-1.0, -1.0, -1.0]], 4.0).is_none());
    }

    #[test]
    fn small_scan_is_ordered() {
        let g = GridSpec::new((0.0, 0.4), (0.0, 0.6), 8, 6).unwrap();
        let cells = scan_grid(&sel334(), Branch::Plus, &g);
        assert_eq!(cells.len(), 48);
        for (k, c) in cells.iter().enumerate() {
            assert_eq!((c.i, c.j), (k % 8, k / 8));
            assert_eq!(c.report.is_some(), c.stage == Stage::QuadranglePass);
        }
        let mut buf = Vec::new();
        write_stage_pgm(&mut buf, &g, &cells).unwrap();
        let (w, h, data) = read_pgm(std::str::from_utf8(&buf).unwrap()).unwrap();
        assert_eq!((w, h, data.len()), (8, 6, 48));
    }

    #[test]
    fn auto_extent_334() {
        let spec = auto_extent(&sel334(), &CensusGrid::default()).unwrap().unwrap();
        assert!(spec.s_max < 1.0 && spec.t_max < 1.0, "{spec:?}");
    }

    #[test]
    fn auto_extent_of_a_degenerate_polygon_is_empty() {
        // C1 clips the square to a point on the t axis here.
        let sig = TurnoverSignature::new(12, 10, 3).unwrap();
        for lift in 0..3 {
            let sel = EigenvalueSelection::new(sig, Case::Regular, [10, 8, 1], lift).unwrap();
            assert_eq!(auto_extent(&sel, &CensusGrid::default()).unwrap(), None);
        }
    }
}
