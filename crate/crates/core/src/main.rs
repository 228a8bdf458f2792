use std::fs;
use std::fmt::Write as _;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use fourcalc::audit::{audit, Status};
use fourcalc::construction::{catalog_entries, run_named_pipeline, PIPELINES};
use fourcalc::dsl::run_text;
use fourcalc::geography::{lattice_scan, write_csv, LatticePoint, Window};
use fourcalc::group::{abelianize, parse_presentation, tietze_simplify};
use fourcalc::invariants::ChiH;

const USAGE: u8 = 2;
const INTERNAL: u8 = 3;

#[derive(Parser)]
#[command(name = "fourcalc", version, about = "Invariant calculus for closed 4-manifold constructions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a construction script.
    Run { file: PathBuf },
    /// Compare every stated value against the computed one.
    Audit {
        #[arg(long)]
        json: bool,
    },
    /// Write the geography CSV for a window of (chi_h, c1^2).
    Scan {
        #[arg(long, allow_negative_numbers = true)]
        chi_min: i64,
        #[arg(long, allow_negative_numbers = true)]
        chi_max: i64,
        /// Defaults to 0.
        #[arg(long, allow_negative_numbers = true)]
        c_min: Option<i64>,
        /// Defaults to 9 * chi_max.
        #[arg(long, allow_negative_numbers = true)]
        c_max: Option<i64>,
        /// Pipeline whose (chi_h, c1^2) is a realized base point (repeatable).
        #[arg(long = "base")]
        bases: Vec<String>,
        #[arg(long)]
        out: PathBuf,
    },
    /// List catalog blocks and pipelines.
    Catalog,
    /// Inspect a presentation file (`gens: ...` / `rels: ...`).
    Pi1 {
        file: PathBuf,
        #[arg(long, conflicts_with = "simplify")]
        abelianize: bool,
        #[arg(long)]
        simplify: bool,
        #[arg(long, requires = "simplify", default_value_t = 10_000)]
        budget: usize,
    },
}

/// Failure carrying its exit code.
struct Fail(u8, String);

fn usage(msg: impl Into<String>) -> Fail {
    Fail(USAGE, msg.into())
}

fn internal(msg: impl ToString) -> Fail {
    Fail(INTERNAL, msg.to_string())
}

fn read(path: &PathBuf) -> Result<String, Fail> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn cmd_run(file: &PathBuf, out: &mut String) -> Result<u8, Fail> {
    let t = run_text(&read(file)?);
    for l in &t.lines {
        writeln!(out, "{l}").map_err(internal)?;
    }
    let full = t.text();
    let tail = &full[out.len()..];
    if !tail.is_empty() {
        eprint!("{tail}");
    }
    Ok(t.exit_code() as u8)
}

fn cmd_audit(json: bool, out: &mut String) -> Result<u8, Fail> {
    let rows = audit().map_err(internal)?;
    if json {
        let text = serde_json::to_string_pretty(&rows).map_err(internal)?;
        writeln!(out, "{text}").map_err(internal)?;
    } else {
        writeln!(out, "{:<22} {:>6} {:>6}  {:<8} citation", "claim", "stated", "computed", "status").map_err(internal)?;
        for r in &rows {
            writeln!(out, "{r}").map_err(internal)?;
        }
        let bad = rows.iter().filter(|r| r.status == Status::Mismatch).count();
        writeln!(out, "{} claims, {} mismatches", rows.len(), bad).map_err(internal)?;
    }
    Ok(0)
}

fn base_point(name: &str) -> Result<LatticePoint, Fail> {
    let run = run_named_pipeline(name).map_err(|e| usage(e.to_string()))?;
    let v = run.state.invariants;
    match v.chi_h() {
        ChiH::Integral(chi) => Ok(LatticePoint::new(chi, v.c1_sq(), name)),
        ChiH::NonIntegral { .. } => Err(internal(format!("{name} has non-integral chi_h"))),
    }
}

fn cmd_scan(window: Window, bases: &[String], path: &PathBuf, out: &mut String) -> Result<u8, Fail> {
    let points = bases.iter().map(|b| base_point(b)).collect::<Result<Vec<_>, _>>()?;
    let rows = lattice_scan(window, &points).map_err(|e| usage(e.to_string()))?;
    let file = fs::File::create(path).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))?;
    write_csv(&rows, io::BufWriter::new(file)).map_err(internal)?;
    writeln!(out, "{} rows written to {}", rows.len(), path.display()).map_err(internal)?;
    Ok(0)
}

fn cmd_catalog(out: &mut String) -> Result<u8, Fail> {
    writeln!(out, "blocks:").map_err(internal)?;
    for e in catalog_entries() {
        let params = if e.params.is_empty() { String::new() } else { format!(" [{}]", e.params) };
        writeln!(out, "  {}{params}: {}", e.name, e.summary).map_err(internal)?;
    }
    writeln!(out, "pipelines:").map_err(internal)?;
    for p in PIPELINES {
        writeln!(out, "  {p}").map_err(internal)?;
    }
    Ok(0)
}

fn cmd_pi1(file: &PathBuf, abelian: bool, simplify: bool, budget: usize, out: &mut String) -> Result<u8, Fail> {
    let p = parse_presentation(&read(file)?).map_err(|e| usage(e.to_string()))?;
    if simplify {
        let (q, transcript) = tietze_simplify(&p, budget);
        for (i, step) in transcript.steps.iter().enumerate() {
            writeln!(out, "{:>4} {:?}", i + 1, step.mv).map_err(internal)?;
        }
        if transcript.budget_exhausted {
            writeln!(out, "budget exhausted").map_err(internal)?;
        }
        writeln!(out, "{q}").map_err(internal)?;
        if q.is_literally_trivial() {
            writeln!(out, "trivial").map_err(internal)?;
        }
    } else if abelian {
        writeln!(out, "{}", abelianize(&p)).map_err(internal)?;
    } else {
        writeln!(out, "{p}").map_err(internal)?;
        writeln!(out, "H1 = {}", abelianize(&p)).map_err(internal)?;
    }
    Ok(0)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut buf = String::new();
    let result = match &cli.command {
        Command::Run { file } => cmd_run(file, &mut buf),
        Command::Audit { json } => cmd_audit(*json, &mut buf),
        Command::Scan {
            chi_min,
            chi_max,
            c_min,
            c_max,
            bases,
            out,
        } => {
            let window = Window {
                chi_min: *chi_min,
                chi_max: *chi_max,
                c_min: c_min.unwrap_or(0),
                c_max: c_max.unwrap_or_else(|| chi_max.saturating_mul(9)),
            };
            cmd_scan(window, bases, out, &mut buf)
        }
        Command::Catalog => cmd_catalog(&mut buf),
        Command::Pi1 {
            file,
            abelianize,
            simplify,
            budget,
        } => cmd_pi1(file, *abelianize, *simplify, *budget, &mut buf),
    };
    // A closed pipe on stdout is not an error worth reporting.
    let _ = io::stdout().lock().write_all(buf.as_bytes());
    match result {
        Ok(code) => ExitCode::from(code),
        Err(Fail(code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
