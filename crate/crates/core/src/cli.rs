//! Command-line front end. Exit codes: 0 success, 1 validation or
//! computation failure, 2 usage error.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use thiserror::Error;

use crate::axgroup::{axial_group_basis, SolveMethod};
use crate::axial::{infer_connection, validate_axial, Gkm, SpanMode};
use crate::dot::{emit_dot, Annotate};
use crate::extension::{extend_axial, project_axial, verify_extension_parts};
use crate::families;
use crate::io::{emit_gkm, parse_gkm, GkmDocument, IoError};
use crate::linalg::{join, IntegerMatrix};

#[derive(Debug, Parser)]
#[command(name = "gkm", version, about = "GKM graphs, their group of axial functions, and maximal extensions")]
struct Cli {
    /// Read axiom 4 as a rational span condition instead of an integer one.
    #[arg(long, global = true)]
    rational_span: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Check the four axioms and report a witness for each failure.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
    },
    /// Print the connection, inferring it from the weights if absent.
    Connection { file: PathBuf },
    /// Print the congruence vector of every dart.
    Invariant { file: PathBuf },
    /// Rank of the group of axial functions.
    Rank {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, value_enum, default_value_t = Method::Propagate)]
        method: Method,
        /// Also print a lattice basis.
        #[arg(long)]
        basis: bool,
    },
    /// Extend the axial function to a torus of the given rank.
    Extend {
        file: PathBuf,
        #[arg(long)]
        target: usize,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Compose the axial function with an integer surjection.
    Project {
        file: PathBuf,
        /// Rows separated by `;`, entries by `,`, e.g. "1,0,1;0,1,1".
        #[arg(long, allow_hyphen_values = true)]
        matrix: String,
        #[arg(short = 'o', long = "output")]
        output: Option<PathBuf>,
    },
    /// Decide whether the candidate is an extension of the base.
    CheckExtension { base: PathBuf, candidate: PathBuf },
    /// Write a builtin family member.
    Gen {
        #[command(subcommand)]
        family: Family,
        #[arg(short = 'o', long = "output", global = true)]
        output: Option<PathBuf>,
    },
    /// Graphviz rendering.
    Dot {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Annotate::None)]
        annotate: Annotate,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Propagate,
    Full,
}

#[derive(Debug, Subcommand)]
enum Family {
    /// Complete graph on m+1 vertices with projective weights.
    Projective {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        m: u64,
    },
    /// Three parallel edges between two vertices.
    S6,
    /// Johnson graph J(n+2, 2) with Grassmannian weights.
    Grassmannian {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{path}: {source}")]
    Read { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Write { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Document { path: String, source: IoError },
    #[error("{0}")]
    Failed(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            _ => 1,
        }
    }
}

type Outcome = Result<i32, CliError>;

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{text}");
                2
            } else {
                let _ = write!(out, "{text}");
                0
            };
        }
    };
    let mode = if cli.rational_span { SpanMode::Rational } else { SpanMode::Integer };
    match execute(cli.command, mode, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.code()
        }
    }
}

fn read_document(path: &Path) -> Result<GkmDocument, CliError> {
    let name = path.display().to_string();
    let text = fs::read_to_string(path).map_err(|source| CliError::Read { path: name.clone(), source })?;
    parse_gkm(&text).map_err(|source| CliError::Document { path: name, source })
}

fn load(path: &Path, mode: SpanMode) -> Result<Gkm, CliError> {
    read_document(path)?
        .to_gkm(mode)
        .map_err(|source| CliError::Document { path: path.display().to_string(), source })
}

fn write_document(doc: &GkmDocument, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    let text = emit_gkm(doc);
    match output {
        Some(p) => fs::write(p, text).map_err(|source| CliError::Write { path: p.display().to_string(), source }),
        None => out.write_all(text.as_bytes()).map_err(|source| CliError::Write { path: "stdout".into(), source }),
    }
}

fn to_document(gkm: &Gkm) -> Result<GkmDocument, CliError> {
    GkmDocument::from_gkm(gkm).map_err(|source| CliError::Document { path: "output".into(), source })
}

fn tuple(v: &[BigInt]) -> String {
    format!("({})", join(v))
}

fn parse_matrix(text: &str) -> Result<IntegerMatrix, CliError> {
    let rows = text
        .split(';')
        .map(|r| {
            r.split(',')
                .map(|x| BigInt::from_str(x.trim()).map_err(|_| CliError::Usage(format!("bad matrix entry `{}`", x.trim()))))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let cols = rows.first().map_or(0, Vec::len);
    if cols == 0 || rows.iter().any(|r| r.len() != cols) {
        return Err(CliError::Usage("matrix rows must be non-empty and of equal length".into()));
    }
    Ok(IntegerMatrix::from_rows(rows, cols))
}

macro_rules! say {
    ($out:expr, $($arg:tt)*) => {
        writeln!($out, $($arg)*).map_err(|source| CliError::Write { path: "stdout".into(), source })?
    };
}

fn execute(command: Command, mode: SpanMode, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Validate { files } => {
            let mut code = 0;
            let many = files.len() > 1;
            for file in &files {
                if many {
                    say!(out, "== {} ==", file.display());
                }
                code = code.max(validate_file(file, mode, out)?);
            }
            Ok(code)
        }
        Command::Connection { file } => {
            let (g, alpha, conn) = parts(&file)?;
            let conn = match conn {
                Some(c) => c,
                None => infer_connection(&g, &alpha).map_err(|e| CliError::Failed(e.to_string()))?,
            };
            for e in 0..g.dart_count() {
                let pairs: Vec<String> = conn
                    .pairs(e)
                    .iter()
                    .map(|&(a, b)| format!("{} -> {}", g.dart_id(a), g.dart_id(b)))
                    .collect();
                say!(out, "{}: {}", g.dart_id(e), pairs.join(", "));
            }
            Ok(0)
        }
        Command::Invariant { file } => {
            let gkm = load(&file, mode)?;
            let g = gkm.graph();
            for e in 0..g.dart_count() {
                say!(out, "{}: {}", g.dart_id(e), tuple(gkm.invariant().vector(e)));
            }
            Ok(0)
        }
        Command::Rank { files, method, basis } => {
            let method = match method {
                Method::Propagate => SolveMethod::Propagate,
                Method::Full => SolveMethod::FullSystem,
            };
            let many = files.len() > 1;
            for file in &files {
                if many {
                    say!(out, "== {} ==", file.display());
                }
                let gkm = load(file, mode)?;
                let b = axial_group_basis(&gkm, method);
                say!(out, "type: ({}, {})", gkm.valence(), gkm.torus_rank());
                say!(out, "rank: {}", b.rank);
                say!(
                    out,
                    "no effective torus of dimension > {} extends this axial function; dimension {} is attained",
                    b.rank,
                    b.rank
                );
                if basis {
                    let g = gkm.graph();
                    for (i, f) in b.elements.iter().enumerate() {
                        let cells: Vec<String> = (0..g.vertex_count())
                            .map(|v| format!("{}={}", g.vertex_id(v), tuple(f.at(v))))
                            .collect();
                        say!(out, "f{}: {}", i + 1, cells.join(" "));
                    }
                }
            }
            Ok(0)
        }
        Command::Extend { file, target, output } => {
            let gkm = load(&file, mode)?;
            let ext = extend_axial(&gkm, target).map_err(|e| CliError::Failed(e.to_string()))?;
            write_document(&to_document(&ext.gkm)?, output.as_deref(), out)?;
            if output.is_some() {
                say!(out, "extended to ({}, {})-type", gkm.valence(), target);
            }
            Ok(0)
        }
        Command::Project { file, matrix, output } => {
            let pi = parse_matrix(&matrix)?;
            let gkm = load(&file, mode)?;
            let projected = project_axial(&gkm, &pi).map_err(|e| CliError::Failed(e.to_string()))?;
            write_document(&to_document(&projected)?, output.as_deref(), out)?;
            Ok(0)
        }
        Command::CheckExtension { base, candidate } => {
            let base = load(&base, mode)?;
            let (g, alpha, conn) = parts(&candidate)?;
            let conn = match conn {
                Some(c) => c,
                None => match infer_connection(&g, &alpha) {
                    Ok(c) => c,
                    Err(e) => {
                        say!(out, "not an extension: {e}");
                        return Ok(1);
                    }
                },
            };
            let check = verify_extension_parts(&base, &g, &alpha, &conn).map_err(|e| CliError::Failed(e.to_string()))?;
            if check.is_extension {
                say!(out, "extension: yes");
                if let Some(pi) = check.projection {
                    for r in 0..pi.rows() {
                        say!(out, "  {}", tuple(pi.row(r)));
                    }
                }
                Ok(0)
            } else {
                say!(out, "not an extension: {}", check.reason.unwrap_or_default());
                Ok(1)
            }
        }
        Command::Gen { family, output } => {
            let gkm = match family {
                Family::Projective { m } => families::gen_projective(m as usize),
                Family::S6 => families::gen_s6(),
                Family::Grassmannian { n } => families::gen_grassmannian(n as usize),
            };
            write_document(&to_document(&gkm)?, output.as_deref(), out)?;
            Ok(0)
        }
        Command::Dot { file, annotate } => {
            let gkm = load(&file, mode)?;
            out.write_all(emit_dot(&gkm, annotate).as_bytes())
                .map_err(|source| CliError::Write { path: "stdout".into(), source })?;
            Ok(0)
        }
    }
}

fn parts(
    path: &Path,
) -> Result<(crate::graph::OrientedGraph, crate::axial::AxialFunction, Option<crate::axial::Connection>), CliError> {
    read_document(path)?
        .to_parts()
        .map_err(|source| CliError::Document { path: path.display().to_string(), source })
}

fn validate_file(file: &Path, mode: SpanMode, out: &mut dyn Write) -> Outcome {
    let (g, alpha, conn) = parts(file)?;
    let (conn, note) = match conn {
        Some(c) => (Some(c), None),
        None => match infer_connection(&g, &alpha) {
            Ok(c) => (Some(c), None),
            Err(e) => (None, Some(e.to_string())),
        },
    };
    let report = validate_axial(&g, &alpha, conn.as_ref(), mode);
    say!(out, "{report}");
    if let Some(n) = &note {
        say!(out, "connection: {n}");
    }
    let ok = report.is_valid() && note.is_none();
    say!(out, "{}", if ok { "valid" } else { "invalid" });
    Ok(if ok { 0 } else { 1 })
}
