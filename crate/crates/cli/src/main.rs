//! `surgery`: homology, manifold checks, duality obstructions and L-group
//! tables for finite simplicial complexes, with JSON reports.

mod mapfile;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use surgery_core::duality::{intersection_form, Orientation};
use surgery_core::linv::{l_group_table, signature, LFlavor};
use surgery_core::obstruction::{homology_manifold_check, obstruction_complex, structure_defect};
use surgery_core::{fixtures, SimplicialComplex, SimplicialMap};
use thiserror::Error;

const SCHEMA: u32 = 1;

const CERTIFICATE_NOTE: &str = "chain-level certificate only: local acyclicity holds exactly for homology manifolds; \
global acyclicity certifies a vanishing obstruction only for simply connected inputs, and nonzero homology of this \
representative does not by itself show the obstruction class is nonzero";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {message}")]
    Read { path: String, message: String },
    #[error("cannot write {path}: {message}")]
    Write { path: String, message: String },
    #[error("map file line {line}: {message}")]
    MapFile { line: usize, message: String },
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    #[error("bad range `{0}`, expected `lo..hi` or `n`")]
    Range(String),
    #[error(transparent)]
    Core(#[from] surgery_core::Error),
}

impl CliError {
    fn kind(&self) -> &'static str {
        match self {
            Self::Read { .. } => "unreadable_input",
            Self::Write { .. } => "unwritable_output",
            Self::MapFile { .. } => "malformed_map_file",
            Self::Dimension(_) => "dimension_mismatch",
            Self::Range(_) => "bad_range",
            Self::Core(_) => "domain_error",
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "surgery", version, about = "Chain-level surgery invariants of simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Betti numbers and torsion.
    Homology(Common),
    /// Whether every link is a homology sphere of the right dimension.
    CheckManifold(Common),
    /// Dual cells and their boundaries with f-vectors.
    DualCells(Common),
    /// Cone of the duality map: global and per-simplex homology.
    Obstruction(Common),
    /// Intersection form and signature in dimensions divisible by four.
    Signature(Common),
    /// Point-inverse defects of a simplicial map into a subdivision.
    StructureDefect(StructureArgs),
    /// Homotopy groups of the L-spectra of the integers.
    LTable(TableArgs),
}

#[derive(Args, Debug, Clone)]
struct Output {
    /// Emit the JSON report instead of a text summary.
    #[arg(long)]
    json: bool,
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// Facet-list or JSON complex.
    #[arg(long)]
    input: PathBuf,
    /// Dimension; inferred when every facet has the same dimension.
    #[arg(long)]
    dim: Option<usize>,
    #[command(flatten)]
    out: Output,
    /// Include the underlying chain complex in the report.
    #[arg(long)]
    dump_chain: bool,
    /// Treat the input as simply connected.
    #[arg(long)]
    assume_simply_connected: bool,
    #[arg(long, value_enum, default_value_t = OrientationArg::Auto)]
    orientation: OrientationArg,
}

#[derive(Args, Debug, Clone)]
struct StructureArgs {
    /// The complex `N`.
    #[arg(long)]
    input: PathBuf,
    /// The base complex `K`; the map lands in its barycentric subdivision.
    #[arg(long)]
    base: PathBuf,
    /// Vertex assignments `v -> a b c`.
    #[arg(long)]
    map: PathBuf,
    #[command(flatten)]
    out: Output,
}

#[derive(Args, Debug, Clone)]
struct TableArgs {
    #[arg(value_enum)]
    flavor: FlavorArg,
    /// Inclusive range `lo..hi`, or a single `n`.
    range: String,
    #[command(flatten)]
    out: Output,
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum OrientationArg {
    Auto,
    Reverse,
}

impl From<OrientationArg> for Orientation {
    fn from(o: OrientationArg) -> Self {
        match o {
            OrientationArg::Auto => Orientation::Auto,
            OrientationArg::Reverse => Orientation::Reverse,
        }
    }
}

#[derive(ValueEnum, Debug, Clone, Copy)]
enum FlavorArg {
    Quadratic,
    Symmetric,
    Hyperquadratic,
}

impl From<FlavorArg> for LFlavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Quadratic => LFlavor::Quadratic,
            FlavorArg::Symmetric => LFlavor::Symmetric,
            FlavorArg::Hyperquadratic => LFlavor::Hyperquadratic,
        }
    }
}

/// A finished command: the report and whether the verdict was negative.
struct Report {
    body: Value,
    text: String,
    negative: bool,
}

struct Loaded {
    complex: Arc<SimplicialComplex>,
    n: usize,
    simply_connected: bool,
    warnings: Vec<String>,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path)
        .map_err(|e| CliError::Read { path: path.display().to_string(), message: e.to_string() })
}

fn parse_complex(path: &Path) -> Result<SimplicialComplex, CliError> {
    let text = read(path)?;
    let name = path.file_stem().map_or("input".into(), |s| s.to_string_lossy().into_owned());
    let complex = if text.trim_start().starts_with('{') {
        SimplicialComplex::from_json(&text).map_err(surgery_core::Error::from)?
    } else {
        SimplicialComplex::parse_facet_list(name, &text).map_err(surgery_core::Error::from)?
    };
    Ok(complex)
}

fn load(args: &Common) -> Result<Loaded, CliError> {
    let complex = parse_complex(&args.input)?;
    let dims: Vec<usize> = complex.facets().iter().map(|f| f.dim()).collect();
    let uniform = dims.first().copied().filter(|d| dims.iter().all(|e| e == d));
    let n = match (args.dim, uniform) {
        (Some(n), Some(d)) if n != d => {
            return Err(CliError::Dimension(format!("--dim {n} but every facet has dimension {d}")))
        }
        (Some(n), _) => n,
        (None, Some(d)) => d,
        (None, None) => {
            return Err(CliError::Dimension("facets of mixed dimension; pass --dim".into()));
        }
    };
    // Bundled fixtures carry a simple-connectivity flag; anything else must assert it.
    let known = fixtures::by_name(complex.name()).filter(|fx| fx.complex() == complex);
    let simply_connected = args.assume_simply_connected || known.is_some_and(|fx| fx.simply_connected);
    let mut warnings = Vec::new();
    if !simply_connected {
        warnings.push(
            "input not known to be simply connected; global results erase labels over Z and ignore the fundamental group"
                .to_string(),
        );
    }
    Ok(Loaded { complex: Arc::new(complex), n, simply_connected, warnings })
}

fn input_json(l: &Loaded) -> Value {
    json!({
        "name": l.complex.name(),
        "dim": l.n,
        "f_vector": l.complex.f_vector(),
        "simply_connected": l.simply_connected,
    })
}

fn envelope(command: &str, input: Value, result: Value, warnings: &[String], notes: &[&str]) -> Value {
    json!({
        "schema": SCHEMA,
        "command": command,
        "input": input,
        "result": result,
        "warnings": warnings,
        "notes": notes,
    })
}

fn homology(args: &Common) -> Result<Report, CliError> {
    let l = load(args)?;
    let c = l.complex.chain_complex();
    let h = c.homology().map_err(surgery_core::Error::from)?;
    let mut result = json!({ "homology": h.to_json_range(0..=l.n as i64), "euler_characteristic": c.euler_characteristic() });
    if args.dump_chain {
        result["chain"] = c.to_json();
    }
    let text = (0..=l.n as i64)
        .map(|r| {
            let g = h.group(r);
            let torsion: Vec<String> = g.torsion.iter().map(|t| format!(" + Z/{t}")).collect();
            format!("H_{r} = Z^{}{}", g.betti, torsion.concat())
        })
        .collect::<Vec<_>>()
        .join("\n");
    Ok(Report { body: envelope("homology", input_json(&l), result, &[], &[]), text, negative: false })
}

fn check_manifold(args: &Common) -> Result<Report, CliError> {
    let l = load(args)?;
    let v = homology_manifold_check(&l.complex, l.n).map_err(surgery_core::Error::from)?;
    let text = if v.is_manifold() {
        format!("{}: homology {}-manifold", l.complex.name(), l.n)
    } else {
        let at: Vec<String> = v.defects.keys().map(ToString::to_string).collect();
        format!("{}: not a homology {}-manifold; bad links at {}", l.complex.name(), l.n, at.join(", "))
    };
    Ok(Report {
        body: envelope("check-manifold", input_json(&l), v.to_json(), &[], &[]),
        text,
        negative: !v.is_manifold(),
    })
}

fn dual_cells(args: &Common) -> Result<Report, CliError> {
    let l = load(args)?;
    let sd = l.complex.barycentric_subdivision();
    let mut cells = Vec::new();
    let mut lines = Vec::new();
    for s in l.complex.all_simplices() {
        let d = sd.dual_cell(s).map_err(surgery_core::Error::from)?;
        cells.push(json!({
            "simplex": s.vertices(),
            "cell_f_vector": d.cell.f_vector(),
            "boundary_f_vector": d.boundary.f_vector(),
        }));
        lines.push(format!("D({s}): f = {:?}, boundary f = {:?}", d.cell.f_vector(), d.boundary.f_vector()));
    }
    let result = json!({ "derived_f_vector": sd.derived().f_vector(), "cells": cells });
    Ok(Report { body: envelope("dual-cells", input_json(&l), result, &[], &[]), text: lines.join("\n"), negative: false })
}

fn obstruction(args: &Common) -> Result<Report, CliError> {
    let l = load(args)?;
    let (cone, report) = obstruction_complex(&l.complex, l.n, args.orientation.into()).map_err(surgery_core::Error::from)?;
    let mut result = report.to_json();
    result["orientation"] = json!(match args.orientation {
        OrientationArg::Auto => "auto",
        OrientationArg::Reverse => "reverse",
    });
    if args.dump_chain {
        result["chain"] = cone.to_json();
    }
    let at: Vec<String> = report.local_defects.keys().map(ToString::to_string).collect();
    let text = format!(
        "{}: globally acyclic {}, locally acyclic {}{}",
        l.complex.name(),
        report.globally_acyclic,
        report.locally_acyclic,
        if at.is_empty() { String::new() } else { format!("; defects at {}", at.join(", ")) }
    );
    let negative = !(report.globally_acyclic && report.locally_acyclic);
    Ok(Report {
        body: envelope("obstruction", input_json(&l), result, &l.warnings, &[CERTIFICATE_NOTE]),
        text,
        negative,
    })
}

fn signature_cmd(args: &Common) -> Result<Report, CliError> {
    let l = load(args)?;
    let q = intersection_form(&l.complex, l.n, args.orientation.into()).map_err(surgery_core::Error::from)?;
    let sig = signature(&q);
    let result = json!({ "form": q.to_json(), "signature": sig });
    let text = format!("{}: rank {}, signature {sig}", l.complex.name(), q.rank());
    Ok(Report { body: envelope("signature", input_json(&l), result, &[], &[]), text, negative: false })
}

fn structure(args: &StructureArgs) -> Result<Report, CliError> {
    let n = Arc::new(parse_complex(&args.input)?);
    let k = Arc::new(parse_complex(&args.base)?);
    let sd = k.barycentric_subdivision();
    let vertex_map = mapfile::parse(&read(&args.map)?, &sd)?;
    let h = SimplicialMap::new(n.clone(), sd.derived().clone(), vertex_map).map_err(surgery_core::Error::from)?;
    let report = structure_defect(&h, &k).map_err(surgery_core::Error::from)?;
    let at: Vec<String> = report.defects().map(|(s, _)| s.to_string()).collect();
    let text = if at.is_empty() {
        format!("{} over {}: no defects", n.name(), k.name())
    } else {
        format!("{} over {}: defects at {}", n.name(), k.name(), at.join(", "))
    };
    let input = json!({
        "name": n.name(),
        "f_vector": n.f_vector(),
        "base": { "name": k.name(), "f_vector": k.f_vector() },
    });
    Ok(Report {
        body: envelope("structure-defect", input, report.to_json(), &[], &[CERTIFICATE_NOTE]),
        text,
        negative: !report.is_defect_free(),
    })
}

fn parse_range(s: &str) -> Result<(u32, u32), CliError> {
    let bad = || CliError::Range(s.to_string());
    let num = |t: &str| t.trim().parse::<u32>().map_err(|_| bad());
    let (lo, hi) = match s.split_once("..") {
        Some((a, b)) => (num(a)?, num(b.strip_prefix('=').unwrap_or(b))?),
        None => (num(s)?, num(s)?),
    };
    if lo > hi {
        return Err(bad());
    }
    Ok((lo, hi))
}

fn l_table(args: &TableArgs) -> Result<Report, CliError> {
    let (lo, hi) = parse_range(&args.range)?;
    let flavor: LFlavor = args.flavor.into();
    let rows: Vec<_> = (lo..=hi).map(|n| l_group_table(flavor, n)).collect();
    let text = rows
        .iter()
        .map(|d| match d.generator_invariant {
            Some(g) => format!("{:>3}  {}  ({g})", d.n, d.group),
            None => format!("{:>3}  {}", d.n, d.group),
        })
        .collect::<Vec<_>>()
        .join("\n");
    let result = json!({ "flavor": flavor.name(), "entries": rows.iter().map(|d| d.to_json()).collect::<Vec<_>>() });
    Ok(Report { body: envelope("l-table", Value::Null, result, &[], &[]), text, negative: false })
}

fn emit(out: &Output, rendered: &str) -> Result<(), CliError> {
    match &out.output {
        Some(path) => fs::write(path, rendered)
            .map_err(|e| CliError::Write { path: path.display().to_string(), message: e.to_string() }),
        None => {
            print!("{rendered}");
            Ok(())
        }
    }
}

fn render(out: &Output, report: &Report) -> String {
    if out.json {
        let mut s = serde_json::to_string_pretty(&report.body).expect("reports serialize");
        s.push('\n');
        s
    } else {
        let mut s = report.text.clone();
        s.push('\n');
        s
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (out, result) = match &cli.command {
        Command::Homology(a) => (&a.out, homology(a)),
        Command::CheckManifold(a) => (&a.out, check_manifold(a)),
        Command::DualCells(a) => (&a.out, dual_cells(a)),
        Command::Obstruction(a) => (&a.out, obstruction(a)),
        Command::Signature(a) => (&a.out, signature_cmd(a)),
        Command::StructureDefect(a) => (&a.out, structure(a)),
        Command::LTable(a) => (&a.out, l_table(a)),
    };
    let outcome = result.and_then(|report| emit(out, &render(out, &report)).map(|()| report.negative));
    match outcome {
        Ok(false) => ExitCode::SUCCESS,
        Ok(true) => ExitCode::from(2),
        Err(e) => {
            let doc = json!({ "schema": SCHEMA, "error": { "kind": e.kind(), "message": e.to_string() } });
            if out.json {
                println!("{}", serde_json::to_string_pretty(&doc).expect("errors serialize"));
            } else {
                eprintln!("error: {e}");
            }
            ExitCode::from(1)
        }
    }
}
