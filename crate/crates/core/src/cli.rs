//! Command-line front end.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::error::ErrorKind;
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::analysis::as_set;
use crate::catalog::{self, catalog_entries, Status};
use crate::codec::{parse_gauss, parse_pd, render_polynomial, Report};
use crate::diagram::Diagram;
use crate::moves::random_equivalent;
use crate::ring::substitute_flat;
use crate::state::{oracle_check, DEFAULT_MAX_CROSSINGS};
use crate::{compute, Invariants};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "arrowpoly",
    version,
    about = "Arrow polynomial of virtual knots and links"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Compute the invariants of one diagram.
    Compute(ComputeArgs),
    /// Inspect or check the built-in examples.
    Catalog {
        #[command(subcommand)]
        action: CatalogAction,
    },
    /// Check that random equivalent diagrams give the same polynomial.
    Fuzz(FuzzArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum InputFormat {
    Pd,
    Gauss,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputFormat {
    Text,
    Json,
}

#[derive(Debug, Args)]
struct InputArgs {
    /// Diagram file, or `-` for standard input.
    file: PathBuf,
    #[arg(long, value_enum, default_value_t = InputFormat::Pd)]
    format: InputFormat,
    #[arg(long, default_value_t = DEFAULT_MAX_CROSSINGS)]
    max_crossings: usize,
}

#[derive(Debug, Args)]
struct ComputeArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
    output: OutputFormat,
    /// Also print the unnormalized polynomial at A = 1.
    #[arg(long)]
    flat: bool,
    /// Cross-check cusp reduction against labeled arrow numbers on every state.
    #[arg(long)]
    oracle: bool,
    /// Include wall-clock time in the report.
    #[arg(long)]
    timing: bool,
}

#[derive(Debug, Subcommand)]
enum CatalogAction {
    /// Verify one entry, or all of them.
    Verify {
        name: Option<String>,
        #[arg(long, conflicts_with = "name")]
        all: bool,
        /// Verify only the entries marked required.
        #[arg(long, conflicts_with = "name")]
        required: bool,
    },
    /// List entry names, status and PD text.
    List,
    /// Write `<name>.pd` and `<name>.expected` files.
    Export { dir: PathBuf },
}

#[derive(Debug, Args)]
struct FuzzArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    moves: usize,
    #[arg(long)]
    seed: u64,
    /// Number of consecutive seeds to try, starting at `--seed`.
    #[arg(long, default_value_t = 1)]
    runs: u64,
}

/// Exit code and the text destined for stdout and stderr.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn failed(stdout: String) -> Self {
        Outcome {
            code: EXIT_FAILURE,
            stdout,
            stderr: String::new(),
        }
    }

    fn input_error(msg: impl std::fmt::Display) -> Self {
        Outcome {
            code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {msg}\n"),
        }
    }
}

/// Parses `argv` (including the program name) and runs the command.
pub fn run<I, T>(argv: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome::ok(text),
                _ => Outcome {
                    code: EXIT_INPUT,
                    stdout: String::new(),
                    stderr: text,
                },
            };
        }
    };
    match cli.command {
        Command::Compute(args) => run_compute(&args),
        Command::Catalog { action } => run_catalog(action),
        Command::Fuzz(args) => run_fuzz(&args),
    }
}

fn read_input(path: &Path) -> Result<String, String> {
    if path == Path::new("-") {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| format!("cannot read standard input: {e}"))?;
        Ok(text)
    } else {
        fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display()))
    }
}

fn load(input: &InputArgs) -> Result<Diagram, String> {
    let text = read_input(&input.file)?;
    let parsed = match input.format {
        InputFormat::Pd => parse_pd(&text),
        InputFormat::Gauss => parse_gauss(&text),
    };
    parsed.map_err(|e| format!("{}: {e}", input.file.display()))
}

fn invariants(d: &Diagram, input: &InputArgs) -> Result<Invariants, String> {
    compute(d, input.max_crossings).map_err(|e| format!("{e} (raise it with --max-crossings)"))
}

fn run_compute(args: &ComputeArgs) -> Outcome {
    let d = match load(&args.input) {
        Ok(d) => d,
        Err(e) => return Outcome::input_error(e),
    };
    let start = Instant::now();
    let inv = match invariants(&d, &args.input) {
        Ok(inv) => inv,
        Err(e) => return Outcome::input_error(e),
    };
    let oracle = args.oracle.then(|| oracle_check(&d));
    let mut report = Report::new(&args.input.file.display().to_string(), &inv);
    if args.timing {
        report.elapsed_ms = Some(start.elapsed().as_secs_f64() * 1e3);
    }
    let flat = args
        .flat
        .then(|| render_polynomial(&substitute_flat(&inv.unnormalized)));

    let stdout = match args.output {
        OutputFormat::Text => {
            let mut out = report.to_text();
            if let Some(f) = &flat {
                writeln!(out, "flat: {f}").unwrap();
            }
            if let Some(t) = &oracle {
                let verdict = if t.agrees() { "agree" } else { "DISAGREE" };
                writeln!(
                    out,
                    "oracle: {verdict} (states {}, loops {}, labelings {}, reduce mismatches {}, c-pair mismatches {})",
                    t.states, t.loops, t.labelings, t.reduce_mismatches, t.cpair_mismatches
                )
                .unwrap();
            }
            out
        }
        OutputFormat::Json => {
            let mut v = serde_json::to_value(&report).expect("report serializes");
            if let Value::Object(map) = &mut v {
                if let Some(f) = &flat {
                    map.insert("flat".into(), json!(f));
                }
                if let Some(t) = &oracle {
                    map.insert(
                        "oracle".into(),
                        serde_json::to_value(t).expect("tally serializes"),
                    );
                }
            }
            format!("{v}\n")
        }
    };
    match oracle {
        Some(t) if !t.agrees() => Outcome::failed(stdout),
        _ => Outcome::ok(stdout),
    }
}

fn run_catalog(action: CatalogAction) -> Outcome {
    match action {
        CatalogAction::List => {
            let mut out = String::new();
            for e in catalog_entries() {
                writeln!(
                    out,
                    "{:<20} {:<12} {}",
                    e.name,
                    e.status.to_string(),
                    e.pd_text
                )
                .unwrap();
            }
            Outcome::ok(out)
        }
        CatalogAction::Export { dir } => match catalog::export(&dir) {
            Ok(files) => Outcome::ok(format!(
                "wrote {} files to {}\n",
                files.len(),
                dir.display()
            )),
            Err(e) => Outcome::input_error(format!("cannot write {}: {e}", dir.display())),
        },
        CatalogAction::Verify {
            name,
            all,
            required,
        } => {
            let names: Vec<String> = match name {
                Some(n) => vec![n],
                None if all || required => catalog_entries()
                    .into_iter()
                    .filter(|e| all || e.status == Status::Required)
                    .map(|e| e.name.to_string())
                    .collect(),
                None => return Outcome::input_error("give an entry name, --all or --required"),
            };
            let results: Vec<_> = names.par_iter().map(|n| catalog::verify_entry(n)).collect();
            let mut out = String::new();
            let mut failed = 0;
            for r in results {
                match r {
                    Ok(v) => {
                        if !v.passed() {
                            failed += 1;
                        }
                        out += &v.to_string();
                    }
                    Err(e) => return Outcome::input_error(e),
                }
            }
            if names.len() > 1 {
                writeln!(out, "{} passed, {failed} failed", names.len() - failed).unwrap();
            }
            if failed == 0 {
                Outcome::ok(out)
            } else {
                Outcome::failed(out)
            }
        }
    }
}

fn run_fuzz(args: &FuzzArgs) -> Outcome {
    let d = match load(&args.input) {
        Ok(d) => d,
        Err(e) => return Outcome::input_error(e),
    };
    let base = match invariants(&d, &args.input) {
        Ok(inv) => inv,
        Err(e) => return Outcome::input_error(e),
    };
    let seeds: Vec<u64> = (0..args.runs).map(|r| args.seed.wrapping_add(r)).collect();
    let lines: Vec<Result<String, String>> = seeds
        .par_iter()
        .map(|&seed| {
            let moved = random_equivalent(&d, args.moves, seed);
            let inv = invariants(&moved, &args.input)?;
            let shape = format!(
                "{} classical, {} virtual",
                moved.classical_count(),
                moved.virtual_count()
            );
            if inv.normalized == base.normalized && as_set(&inv.normalized) == base.profile.as_set {
                Ok(format!("seed {seed}: ok ({shape})\n"))
            } else {
                Ok(format!(
                    "seed {seed}: MISMATCH ({shape})\n  expected {}\n  actual   {}\n",
                    render_polynomial(&base.normalized),
                    render_polynomial(&inv.normalized)
                ))
            }
        })
        .collect();
    let mut out = String::new();
    let mut mismatches = 0;
    for line in lines {
        match line {
            Ok(l) => {
                if l.contains("MISMATCH") {
                    mismatches += 1;
                }
                out += &l;
            }
            Err(e) => return Outcome::input_error(e),
        }
    }
    writeln!(out, "normalized: {}", render_polynomial(&base.normalized)).unwrap();
    writeln!(out, "{} runs, {mismatches} mismatches", seeds.len()).unwrap();
    if mismatches == 0 {
        Outcome::ok(out)
    } else {
        Outcome::failed(out)
    }
}
