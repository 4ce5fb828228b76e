//! Command-line front end: certificate runs, lattice inspection, sweeps and JSON reports.

pub mod lattice_json;
pub mod report;

use std::io::Write;
use std::path::Path;

use clap::{Args, Parser, Subcommand};
use quadlat::checks::{self, Check};
use quadlat::geometry::enumerate_planes;
use quadlat::hassett::{admissible_discriminants, labeling_for_d};
use quadlat::report::Detail;
use quadlat::shortvec::enumerate_by_norm;
use quadlat::{catalog, delpezzo, IntegralLattice, Parity};
use rayon::prelude::*;
use serde_json::json;

use crate::report::{details_to_json, CheckReport};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Largest discriminant group whose quadratic values are tabulated by `--disc`.
const DISC_TABLE_LIMIT: u128 = 1 << 16;

#[derive(Parser, Debug)]
#[command(name = "quadlat", version, about = "Exact integral lattice toolkit and certificate runner")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// List or run certificate checks
    #[command(subcommand)]
    Checks(ChecksCommand),
    /// Inspect or export a lattice
    #[command(subcommand)]
    Lat(LatCommand),
    /// Discriminant sweeps over the plane lattice N
    #[command(subcommand)]
    Hassett(HassettCommand),
    /// Cubic surface line and sixer combinatorics
    #[command(subcommand)]
    Delpezzo(DelpezzoCommand),
}

#[derive(Subcommand, Debug)]
pub enum ChecksCommand {
    /// Print every check id with the claim it verifies
    List,
    /// Run checks; exit 0 iff all pass
    Run(RunArgs),
}

#[derive(Args, Debug)]
pub struct RunArgs {
    /// Run every registered check
    #[arg(long, conflicts_with = "name")]
    pub all: bool,
    /// Check id to run (repeatable)
    #[arg(long, required_unless_present = "all")]
    pub name: Vec<String>,
    /// Emit one JSON report per line
    #[arg(long)]
    pub json: bool,
    /// Worker thread cap (default: available parallelism)
    #[arg(long)]
    pub threads: Option<usize>,
}

#[derive(Subcommand, Debug)]
pub enum LatCommand {
    /// Show a catalog lattice (e.g. `M`, `E8(2)`, `U+A1(-1)`) or a JSON lattice file
    Show(ShowArgs),
    /// Write a lattice in the JSON lattice format
    Export {
        target: String,
    },
}

#[derive(Args, Debug)]
pub struct ShowArgs {
    pub target: String,
    /// Determinant, signature and parity
    #[arg(long)]
    pub invariants: bool,
    /// Discriminant group and form
    #[arg(long)]
    pub disc: bool,
    /// Count vectors of this norm (definite lattices)
    #[arg(long, value_name = "NORM")]
    pub roots: Option<i64>,
    /// With --roots, list the vectors
    #[arg(long, requires = "roots")]
    pub vectors: bool,
    /// Classes with v.v = 3 and v.eta = 1
    #[arg(long)]
    pub planes: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum HassettCommand {
    /// Label every admissible d up to the bound
    Sweep {
        #[arg(long)]
        dmax: i64,
        #[arg(long)]
        json: bool,
    },
}

#[derive(Subcommand, Debug)]
pub enum DelpezzoCommand {
    /// Lines, sixers, double sixes and the cubic-class table
    Verify {
        #[arg(long)]
        json: bool,
    },
}

/// Runs a parsed command, writing reports to `out` and diagnostics to `err`. Returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match cli.command {
        Command::Checks(ChecksCommand::List) => list_checks(out),
        Command::Checks(ChecksCommand::Run(args)) => run_checks(&args, out, err),
        Command::Lat(LatCommand::Show(args)) => show(&args, out, err),
        Command::Lat(LatCommand::Export { target }) => export(&target, out, err),
        Command::Hassett(HassettCommand::Sweep { dmax, json }) => sweep(dmax, json, out),
        Command::Delpezzo(DelpezzoCommand::Verify { json }) => delpezzo_verify(json, out),
    };
    match result {
        Ok(code) => code,
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => EXIT_PASS,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            EXIT_FAIL
        }
    }
}

type IoResult = std::io::Result<i32>;

fn list_checks(out: &mut dyn Write) -> IoResult {
    for c in checks::registry() {
        writeln!(out, "{:<30} {}", c.id, c.reference)?;
    }
    Ok(EXIT_PASS)
}

/// Selected checks in id order, or the unknown ids.
pub fn select(args: &RunArgs) -> Result<Vec<&'static Check>, Vec<String>> {
    if args.all {
        return Ok(checks::registry().iter().collect());
    }
    let unknown: Vec<String> = args.name.iter().filter(|n| checks::find(n).is_none()).cloned().collect();
    if !unknown.is_empty() {
        return Err(unknown);
    }
    let mut selected: Vec<&Check> = args.name.iter().filter_map(|n| checks::find(n)).collect();
    selected.sort_by_key(|c| c.id);
    selected.dedup_by_key(|c| c.id);
    Ok(selected)
}

/// Runs checks on at most `threads` workers; reports come back in input order.
pub fn execute(selected: &[&'static Check], threads: Option<usize>) -> Vec<CheckReport> {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = threads {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().expect("thread pool");
    pool.install(|| selected.par_iter().map(|c| CheckReport::run(c)).collect())
}

fn run_checks(args: &RunArgs, out: &mut dyn Write, err: &mut dyn Write) -> IoResult {
    let selected = match select(args) {
        Ok(s) => s,
        Err(unknown) => {
            writeln!(err, "error: unknown check id(s): {}", unknown.join(", "))?;
            writeln!(err, "valid ids:")?;
            for c in checks::registry() {
                writeln!(err, "  {}", c.id)?;
            }
            return Ok(EXIT_USAGE);
        }
    };
    let reports = execute(&selected, args.threads);
    for r in &reports {
        if args.json {
            writeln!(out, "{}", serde_json::to_string(r).expect("serializable report"))?;
        } else {
            writeln!(out, "{}", r.text())?;
        }
    }
    let failed = reports.iter().filter(|r| !r.passed()).count();
    if !args.json {
        writeln!(out, "{} passed, {} failed", reports.len() - failed, failed)?;
    }
    Ok(if failed == 0 { EXIT_PASS } else { EXIT_FAIL })
}

/// A file path if one exists with that name, otherwise a catalog name.
pub fn resolve(target: &str) -> Result<IntegralLattice, String> {
    let path = Path::new(target);
    if path.is_file() || target.ends_with(".json") {
        lattice_json::load(path).map_err(|e| format!("{target}: {e}"))
    } else {
        catalog::lookup(target).map_err(|e| {
            format!("{e}; catalog names: {}", catalog::NAMES.join(", "))
        })
    }
}

/// Requested sections in canonical order; no flags selects the Gram matrix, invariants and symbols.
pub fn inspect(lattice: &IntegralLattice, args: &ShowArgs) -> Result<Vec<(String, Detail)>, String> {
    let mut d: Vec<(String, Detail)> = Vec::new();
    let default = !(args.invariants || args.disc || args.roots.is_some() || args.planes);
    d.push(("name".into(), lattice.name().unwrap_or("lattice").into()));
    d.push(("rank".into(), lattice.rank().into()));
    if default {
        d.push(("labels".into(), lattice.labels().to_vec().into()));
        d.push(("gram".into(), lattice.gram().row_vecs().into()));
        let symbols = catalog::symbols(lattice.name().unwrap_or(""));
        if !symbols.is_empty() {
            d.push(("symbols".into(), Detail::map(symbols)));
        }
    }
    if default || args.invariants {
        d.push(("determinant".into(), lattice.determinant().into()));
        d.push(("signature".into(), format!("{}", lattice.signature()).into()));
        d.push(("parity".into(), format!("{}", lattice.parity()).into()));
    }
    if args.disc {
        let group = lattice.discriminant_group();
        d.push(("invariant_factors".into(), group.invariant_factors().to_vec().into()));
        d.push(("order".into(), group.order().into()));
        if lattice.parity() == Parity::Even && group.order() <= DISC_TABLE_LIMIT {
            let form = lattice.discriminant_quadratic_form().map_err(|e| e.to_string())?;
            let table = form.value_multiset().map_err(|e| e.to_string())?;
            d.push(("q_values".into(), quadlat::report::multiset_detail(&table)));
        } else {
            let b = lattice.discriminant_bilinear_form();
            d.push(("b_on_generators".into(), b.matrix().into()));
        }
    }
    if let Some(norm) = args.roots {
        let en = enumerate_by_norm(lattice, norm.abs()).map_err(|e| e.to_string())?;
        let mut vectors: Vec<Vec<i64>> = en.slices.iter().find(|s| s.norm == norm.abs()).map(|s| s.vectors.clone()).unwrap_or_default();
        vectors.sort();
        d.push(("norm".into(), norm.into()));
        d.push(("count".into(), vectors.len().into()));
        if args.vectors {
            d.push(("vectors".into(), vectors.into()));
        }
    }
    if args.planes {
        let eta_index = lattice.label_index("eta").ok_or("--planes needs a basis vector labelled `eta`")?;
        let planes = enumerate_planes(lattice, &lattice.basis_vector(eta_index)).map_err(|e| e.to_string())?;
        d.push(("plane_count".into(), planes.len().into()));
        d.push(("planes".into(), planes.into()));
    }
    Ok(d)
}

fn show(args: &ShowArgs, out: &mut dyn Write, err: &mut dyn Write) -> IoResult {
    let lattice = match resolve(&args.target) {
        Ok(l) => l,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let details = match inspect(&lattice, args) {
        Ok(d) => d,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    if args.json {
        writeln!(out, "{}", serde_json::to_string(&details_to_json(&details)).expect("serializable"))?;
    } else {
        for (k, v) in &details {
            match (k.as_str(), v) {
                ("gram" | "vectors" | "planes", Detail::List(rows)) => {
                    writeln!(out, "{k}:")?;
                    for r in rows {
                        writeln!(out, "  {r}")?;
                    }
                }
                _ => writeln!(out, "{k}: {v}")?,
            }
        }
    }
    Ok(EXIT_PASS)
}

fn export(target: &str, out: &mut dyn Write, err: &mut dyn Write) -> IoResult {
    match resolve(target) {
        Ok(l) => {
            let text = serde_json::to_string_pretty(&lattice_json::to_file(&l)).expect("serializable");
            writeln!(out, "{text}")?;
            Ok(EXIT_PASS)
        }
        Err(e) => {
            writeln!(err, "error: {e}")?;
            Ok(EXIT_USAGE)
        }
    }
}

fn sweep(dmax: i64, as_json: bool, out: &mut dyn Write) -> IoResult {
    let mut failed = 0usize;
    let ds = admissible_discriminants(dmax);
    for &d in &ds {
        let row = match labeling_for_d(d) {
            Ok(l) => {
                let ok = l.verified();
                failed += usize::from(!ok);
                json!({
                    "d": d,
                    "witness": report::detail_to_json(&Detail::from(l.witness)),
                    "v_coords": l.v,
                    "disc_check": ok,
                })
            }
            Err(e) => {
                failed += 1;
                json!({ "d": d, "error": e.to_string(), "disc_check": false })
            }
        };
        if as_json {
            writeln!(out, "{row}")?;
        } else {
            let status = if row["disc_check"] == true { "ok" } else { "FAIL" };
            writeln!(out, "d={:<6} {status:<4} v={} witness={}", d, row["v_coords"], row["witness"])?;
        }
    }
    if !as_json {
        writeln!(out, "{} admissible, {} labeled, {} failed", ds.len(), ds.len() - failed, failed)?;
    }
    Ok(if failed == 0 { EXIT_PASS } else { EXIT_FAIL })
}

fn delpezzo_verify(as_json: bool, out: &mut dyn Write) -> IoResult {
    let start = std::time::Instant::now();
    let outcome = delpezzo::verify();
    let check = checks::find("delpezzo.verify").expect("registered");
    let report = CheckReport::from_outcome(check.id, check.reference, &outcome, start.elapsed().as_millis() as u64);
    if as_json {
        writeln!(out, "{}", serde_json::to_string(&report).expect("serializable"))?;
    } else {
        writeln!(out, "{}", report.text())?;
        for (k, v) in &outcome.details {
            writeln!(out, "  {k}: {v}")?;
        }
    }
    Ok(if report.passed() { EXIT_PASS } else { EXIT_FAIL })
}
