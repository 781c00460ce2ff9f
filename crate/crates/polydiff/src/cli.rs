// SPDX-License-Identifier: MIT OR Apache-2.0
//! Command-line surface.

use std::ffi::OsString;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use polydiff_core::def::ComplexId;
use polydiff_core::poly::OLie;
use serde::{Deserialize, Serialize};

use crate::checks::{select, Suite};
use crate::error::{Error, Result};
use crate::formats::{from_versioned, to_versioned, GraJson, OJson};
use crate::report;
use crate::tables::{parse_slice, table, Range};

#[derive(Debug, Parser)]
#[command(name = "polydiff", version, about = "Exact computations in graph operads and their deformation complexes")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    Operads,
    Complexes,
    Gutt,
    All,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ComplexArg {
    Fcgc,
    Gc,
    DefLieLie,
    DefLieOc,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OperadArg {
    Gra,
    Olie,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Runs a verification suite and writes JSON and text reports.
    Verify {
        suite: SuiteArg,
        /// Directory receiving verify-<suite>.json and verify-<suite>.txt.
        #[arg(long, default_value = "reports")]
        out: PathBuf,
    },
    /// Computes a cohomology table over a range of slices.
    Cohomology {
        #[arg(long, value_enum)]
        complex: ComplexArg,
        #[arg(long, default_value_t = 1)]
        d: i64,
        /// Graph complexes: largest vertex count (default 4).
        #[arg(long)]
        max_vertices: Option<usize>,
        /// Graph complexes: largest edge count (default 6).
        #[arg(long)]
        max_edges: Option<usize>,
        /// Def complexes: largest arity (default 3, or 5 for def-lie-lie).
        #[arg(long)]
        arity: Option<usize>,
        /// def-lie-oc: largest internal vertex count (default 3).
        #[arg(long)]
        internal: Option<usize>,
        /// A single slice, e.g. 4,6; overrides the range flags.
        #[arg(long)]
        slice: Option<String>,
        /// Output file; standard output if absent. CSV output also writes
        /// the JSON mirror next to it.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "csv")]
        format: FormatArg,
    },
    /// Composes `left ∘_i right` from a JSON file with fields left and right.
    Compose {
        #[arg(value_enum)]
        operad: OperadArg,
        file: PathBuf,
        #[arg(short = 'i', long = "index")]
        i: usize,
        /// Output file; standard output if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Operands of `compose`.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComposeInput<T> {
    pub left: T,
    pub right: T,
}

fn suites(s: SuiteArg) -> Vec<Suite> {
    match s {
        SuiteArg::Operads => vec![Suite::Operads],
        SuiteArg::Complexes => vec![Suite::Complexes],
        SuiteArg::Gutt => vec![Suite::Gutt],
        SuiteArg::All => vec![Suite::Operads, Suite::Complexes, Suite::Gutt],
    }
}

fn suite_name(s: SuiteArg) -> &'static str {
    match s {
        SuiteArg::Operads => "operads",
        SuiteArg::Complexes => "complexes",
        SuiteArg::Gutt => "gutt",
        SuiteArg::All => "all",
    }
}

fn complex_id(c: ComplexArg, d: i64) -> ComplexId {
    match c {
        ComplexArg::Fcgc => ComplexId::FcGc(d),
        ComplexArg::Gc => ComplexId::Gc(d),
        ComplexArg::DefLieLie => ComplexId::DefLie(d),
        ComplexArg::DefLieOc => ComplexId::DefOc(d),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<()> {
    match out {
        Some(p) => {
            if let Some(dir) = p.parent().filter(|d| !d.as_os_str().is_empty()) {
                std::fs::create_dir_all(dir)?;
            }
            std::fs::write(p, text)?;
        }
        None => print!("{text}"),
    }
    Ok(())
}

fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::Usage(format!("cannot read {}: {e}", path.display())))
}

/// Canonical composition of the operands in `text`, as a versioned document.
pub fn compose_text(operad: OperadArg, text: &str, i: usize) -> Result<String> {
    match operad {
        OperadArg::Gra => {
            let input: ComposeInput<GraJson> = from_versioned(text)?;
            let (a, b) = (input.left.to_element()?, input.right.to_element()?);
            if a.d() != b.d() {
                return Err(Error::Format(format!("operands have d = {} and d = {}", a.d(), b.d())));
            }
            Ok(to_versioned(&GraJson::from_element(&a.compose(i, &b)?))? + "\n")
        }
        OperadArg::Olie => {
            let input: ComposeInput<OJson> = from_versioned(text)?;
            if input.left.d != input.right.d {
                return Err(Error::Format(format!("operands have d = {} and d = {}", input.left.d, input.right.d)));
            }
            let o = OLie::lie(input.left.d);
            let (a, b) = (input.left.to_element(&o)?, input.right.to_element(&o)?);
            Ok(to_versioned(&OJson::from_element(&o, &o.compose(&a, i, &b)?))? + "\n")
        }
    }
}

/// Executes a parsed command; returns the process exit code.
pub fn execute(cli: Cli) -> Result<i32> {
    match cli.command {
        Command::Verify { suite, out } => {
            let ss = suites(suite);
            let r = report::run(&ss, select(&ss));
            r.write(&out, &format!("verify-{}", suite_name(suite)))?;
            print!("{}", r.to_text());
            Ok(if r.passed() { 0 } else { 1 })
        }
        Command::Cohomology { complex, d, max_vertices, max_edges, arity, internal, slice, out, format } => {
            let id = complex_id(complex, d);
            let range = match slice {
                Some(s) => Range::Single(parse_slice(&s)?),
                None => match complex {
                    ComplexArg::Fcgc | ComplexArg::Gc => Range::UpTo(max_vertices.unwrap_or(4), max_edges.unwrap_or(6)),
                    ComplexArg::DefLieOc => Range::UpTo(arity.unwrap_or(3), internal.unwrap_or(3)),
                    ComplexArg::DefLieLie => {
                        let n = arity.unwrap_or(5);
                        Range::UpTo(n, n.saturating_sub(1))
                    }
                },
            };
            let t = table(id, range)?;
            match format {
                FormatArg::Csv => {
                    emit(&out, &t.to_csv()?)?;
                    if let Some(p) = &out {
                        std::fs::write(p.with_extension("json"), t.to_json()?)?;
                    }
                }
                FormatArg::Json => emit(&out, &t.to_json()?)?,
                FormatArg::Text => emit(&out, &t.to_text())?,
            }
            Ok(0)
        }
        Command::Compose { operad, file, i, out } => {
            let text = read(&file)?;
            emit(&out, &compose_text(operad, &text, i)?)?;
            Ok(0)
        }
    }
}

/// Parses arguments and runs; usage errors exit with 2, failures with 1.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    match execute(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            if matches!(e, Error::Usage(_)) {
                2
            } else {
                1
            }
        }
    }
}
