//! Command-line front end: point queries, region scans, censuses and Goldman rasters.
//!
//! Exit status is 0 on success, 1 when the query is infeasible (no
//! representation, or the quadrangle fails its certificate) or output cannot be
//! written, and 2 on bad arguments.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use turnover::census::{self, AxisRange, BranchPolicy, CensusError, CensusOptions, GridSpec, StageCounts};
use turnover::charvar::{self, parse_triple, CharVarError};
use turnover::config::{resolve_workers, with_workers, ConfigError, RunConfig};
use turnover::invariants::invariant_report;
use turnover::quadrangle::{build_quadrangle, check_quadrangle};
use turnover::{Branch, Case, CharVarPoint, EigenvalueSelection, TurnoverSignature};

#[derive(Parser, Debug)]
#[command(name = "turnover", version, about = "Complex hyperbolic disc orbibundles over turnovers")]
struct Cli {
    /// key = value file supplying any flag below (flags win).
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads; defaults to $TURNOVER_WORKERS, then one per core.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the invariant report of one representation as JSON.
    Invariants {
        #[command(flatten)]
        sel: SelectionArgs,
        #[arg(long)]
        s: Option<f64>,
        #[arg(long)]
        t: Option<f64>,
        #[arg(long)]
        branch: Option<Branch>,
    },
    /// Classify a grid of (s,t) cells and write a stage raster.
    Scan {
        #[command(flatten)]
        sel: SelectionArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        branch: Option<Branch>,
        /// PGM raster (0 outside, 1 character variety, 2 quadrangle pass, 3 pass with G<0).
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        csv: Option<PathBuf>,
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Census over all signatures with orders up to --n-max.
    Census {
        #[arg(long)]
        case: Option<Case>,
        #[arg(long)]
        n_max: Option<u32>,
        #[arg(long)]
        branches: Option<BranchPolicy>,
        #[arg(long)]
        max_seconds: Option<f64>,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        jsonl: Option<PathBuf>,
    },
    /// Raster of the sign of Goldman's discriminant (0 outside, 1 G>=0, 2 G<0).
    Goldman {
        #[command(flatten)]
        sel: SelectionArgs,
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long)]
        branch: Option<Branch>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Args, Debug)]
struct SelectionArgs {
    /// Orders n1,n2,n3.
    #[arg(long)]
    signature: Option<String>,
    /// Rotation numbers l1,l2,l3.
    #[arg(long)]
    selection: Option<String>,
    #[arg(long)]
    case: Option<Case>,
    /// Cube-root lift of I3 (0, 1 or 2).
    #[arg(long)]
    lift: Option<u8>,
}

#[derive(Args, Debug)]
struct GridArgs {
    /// min:max:n; defaults to 0:4:200.
    #[arg(long)]
    s_range: Option<AxisRange>,
    #[arg(long)]
    t_range: Option<AxisRange>,
}

enum Failure {
    Usage(String),
    Infeasible(String),
    Output(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Infeasible(_) | Failure::Output(_) => 1,
        }
    }
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        match e {
            ConfigError::Io { .. } => Failure::Output(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<CensusError> for Failure {
    fn from(e: CensusError) -> Self {
        match e {
            CensusError::BadGrid(_) => Failure::Usage(e.to_string()),
            CensusError::CharVar(c) => charvar_failure(c),
            _ => Failure::Output(e.to_string()),
        }
    }
}

fn charvar_failure(e: CharVarError) -> Failure {
    match e {
        CharVarError::BadSignature(..)
        | CharVarError::BadSelection { .. }
        | CharVarError::WrongCase { .. }
        | CharVarError::NonGenericBoundary { .. } => Failure::Usage(e.to_string()),
        _ => Failure::Infeasible(e.to_string()),
    }
}

fn io_failure(path: &Path) -> impl Fn(io::Error) -> Failure + '_ {
    move |e| Failure::Output(format!("{}: {e}", path.display()))
}

fn required<T>(v: Option<T>, key: &str) -> Result<T, Failure> {
    v.ok_or_else(|| Failure::Usage(format!("missing --{key} (flag or config key `{key}`)")))
}

fn selection(args: SelectionArgs, cfg: &RunConfig) -> Result<EigenvalueSelection, Failure> {
    let sig: String = required(cfg.pick("signature", args.signature)?, "signature")?;
    let l: String = required(cfg.pick("selection", args.selection)?, "selection")?;
    let case = cfg.pick("case", args.case)?.unwrap_or(Case::Regular);
    let lift = cfg.pick("lift", args.lift)?.unwrap_or(0);
    let n = parse_triple(&sig).map_err(|e| Failure::Usage(format!("--signature: {e}")))?;
    let l = parse_triple(&l).map_err(|e| Failure::Usage(format!("--selection: {e}")))?;
    let sig = TurnoverSignature::new(n[0], n[1], n[2]).map_err(charvar_failure)?;
    EigenvalueSelection::new(sig, case, l, lift).map_err(charvar_failure)
}

fn grid(args: GridArgs, cfg: &RunConfig) -> Result<GridSpec, Failure> {
    let d = GridSpec::default_square();
    let s = cfg.pick("s-range", args.s_range)?.unwrap_or(AxisRange { min: d.s_min, max: d.s_max, n: d.ns });
    let t = cfg.pick("t-range", args.t_range)?.unwrap_or(AxisRange { min: d.t_min, max: d.t_max, n: d.nt });
    Ok(GridSpec::from_ranges(&s, &t)?)
}

fn regular_only(sel: &EigenvalueSelection, command: &str) -> Result<(), Failure> {
    if sel.case == Case::Regular {
        Ok(())
    } else {
        Err(Failure::Usage(format!("`{command}` scans the regular case only; {} is rigid", sel.case)))
    }
}

fn create(path: &Path) -> Result<BufWriter<File>, Failure> {
    File::create(path).map(BufWriter::new).map_err(io_failure(path))
}

fn invariants(sel: EigenvalueSelection, s: Option<f64>, t: Option<f64>, branch: Branch) -> Result<(), Failure> {
    let pt = if sel.case == Case::Regular {
        CharVarPoint { s: required(s, "s")?, t: required(t, "t")?, branch }
    } else {
        CharVarPoint { s: 0.0, t: 0.0, branch }
    };
    let rep = charvar::solve(&sel, pt).map_err(charvar_failure)?;
    let qd = build_quadrangle(&rep).map_err(|e| Failure::Infeasible(e.to_string()))?;
    let qr = check_quadrangle(&qd, &sel);
    if !qr.pass {
        let which = qr.first_failure().map(|c| format!("{c:?}")).unwrap_or_else(|| "unknown".into());
        return Err(Failure::Infeasible(format!(
            "quadrangle conditions fail: first failure {which}, min margin {}",
            turnover::output::fmt_f64(qr.min_margin)
        )));
    }
    let report = invariant_report(&sel, &qd, &rep).map_err(|e| Failure::Infeasible(e.to_string()))?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| Failure::Output(e.to_string()))?;
    println!("{json}");
    Ok(())
}

fn print_counts(counts: &StageCounts) -> Result<(), Failure> {
    let json = serde_json::to_string(counts).map_err(|e| Failure::Output(e.to_string()))?;
    println!("{json}");
    Ok(())
}

fn run(cli: Cli) -> Result<(), Failure> {
    let cfg = match &cli.config {
        Some(p) => RunConfig::load(p)?,
        None => RunConfig::default(),
    };
    let workers = resolve_workers(cli.workers, &cfg)?;
    match cli.command {
        Command::Invariants { sel, s, t, branch } => {
            let sel = selection(sel, &cfg)?;
            let s = cfg.pick("s", s)?;
            let t = cfg.pick("t", t)?;
            let branch = cfg.pick("branch", branch)?.unwrap_or(Branch::Plus);
            invariants(sel, s, t, branch)
        }
        Command::Scan { sel, grid: g, branch, out, csv, jsonl } => {
            let sel = selection(sel, &cfg)?;
            regular_only(&sel, "scan")?;
            let spec = grid(g, &cfg)?;
            let branch = cfg.pick("branch", branch)?.unwrap_or(Branch::Plus);
            let out: PathBuf = required(cfg.pick("out", out)?, "out")?;
            let csv: Option<PathBuf> = cfg.pick("csv", csv)?;
            let jsonl: Option<PathBuf> = cfg.pick("jsonl", jsonl)?;
            let cells = with_workers(workers, || census::scan_grid(&sel, branch, &spec));
            census::write_stage_pgm(create(&out)?, &spec, &cells).map_err(io_failure(&out))?;
            if let Some(p) = &csv {
                census::write_cells_csv(create(p)?, &cells).map_err(io_failure(p))?;
            }
            if let Some(p) = &jsonl {
                census::write_jsonl(create(p)?, &cells).map_err(io_failure(p))?;
            }
            print_counts(&StageCounts::of(&cells))
        }
        Command::Census { case, n_max, branches, max_seconds, out, jsonl } => {
            let case = cfg.pick("case", case)?.unwrap_or(Case::Regular);
            let n_max = required(cfg.pick("n-max", n_max)?, "n-max")?;
            let out: PathBuf = required(cfg.pick("out", out)?, "out")?;
            let jsonl: Option<PathBuf> = cfg.pick("jsonl", jsonl)?;
            let mut opts = CensusOptions::new(case, n_max);
            opts.branches = cfg.pick("branches", branches)?.unwrap_or_default();
            opts.max_seconds = cfg.pick("max-seconds", max_seconds)?;
            let records = with_workers(workers, || census::run_census(&opts))?;
            census::write_census_csv(create(&out)?, &records).map_err(io_failure(&out))?;
            if let Some(p) = &jsonl {
                census::write_jsonl(create(p)?, &records).map_err(io_failure(p))?;
            }
            let json = serde_json::to_string(&census::summarize(&records)).map_err(|e| Failure::Output(e.to_string()))?;
            println!("{json}");
            Ok(())
        }
        Command::Goldman { sel, grid: g, branch, out } => {
            let sel = selection(sel, &cfg)?;
            regular_only(&sel, "goldman")?;
            let spec = grid(g, &cfg)?;
            let branch = cfg.pick("branch", branch)?.unwrap_or(Branch::Plus);
            let out: PathBuf = required(cfg.pick("out", out)?, "out")?;
            let cells = with_workers(workers, || census::scan_grid(&sel, branch, &spec));
            census::write_goldman_pgm(create(&out)?, &spec, &cells).map_err(io_failure(&out))?;
            print_counts(&StageCounts::of(&cells))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (Failure::Usage(m) | Failure::Infeasible(m) | Failure::Output(m)) = &f;
            let _ = writeln!(io::stderr(), "error: {m}");
            ExitCode::from(f.code())
        }
    }
}
