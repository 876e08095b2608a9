//! Command-line interface and the matroid file format; the only I/O
//! boundary of the crate.
//!
//! Exit status contract: 0 success (and passing checks/scans), 1 usage or
//! input errors, 2 failed checks or scans with theorem failures.

use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::analysis::{self, CheckName, CheckStatus};
use crate::builders::{self, BuildError};
use crate::kls;
use crate::matroid::Matroid;
use crate::report::{self, Format};
use crate::IntPoly2;

/// On-disk matroid: a name, the ground-set size, and the basis family as
/// 0-indexed element lists. Unknown fields are rejected.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(deny_unknown_fields)]
pub struct MatroidFile {
    pub name: String,
    pub n: usize,
    pub bases: Vec<Vec<usize>>,
}

impl MatroidFile {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidFile {
            name: m.label().unwrap_or("unnamed").to_string(),
            n: m.n(),
            bases: m.bases().iter().map(|b| b.to_vec()).collect(),
        }
    }

    pub fn to_matroid(&self) -> Result<Matroid, SourceError> {
        Matroid::from_basis_lists(self.n, &self.bases)
            .map(|m| m.with_label(self.name.clone()))
            .map_err(|e| SourceError::InvalidMatroid {
                name: self.name.clone(),
                detail: e.to_string(),
            })
    }

    /// Canonical serialization; emitting, parsing and emitting again is
    /// byte-identical.
    pub fn to_canonical_json(&self) -> String {
        let mut out = serde_json::to_string_pretty(self).expect("serializable");
        out.push('\n');
        out
    }
}

#[derive(Debug, Error)]
pub enum SourceError {
    #[error("file not found: {0}")]
    FileNotFound(PathBuf),
    #[error("malformed matroid file {path}: {detail}")]
    MalformedFile { path: PathBuf, detail: String },
    #[error("invalid matroid '{name}': {detail}")]
    InvalidMatroid { name: String, detail: String },
    #[error(transparent)]
    Build(#[from] BuildError),
}

/// Builds a matroid from a named spec, or from a file path when the
/// argument does not look like the grammar.
pub fn parse_matroid_source(arg: &str) -> Result<Matroid, SourceError> {
    if builders::looks_like_named_spec(arg) {
        return Ok(builders::build_named(arg)?);
    }
    load_matroid_file(Path::new(arg))
}

pub fn load_matroid_file(path: &Path) -> Result<Matroid, SourceError> {
    let text = std::fs::read_to_string(path)
        .map_err(|_| SourceError::FileNotFound(path.to_path_buf()))?;
    let file: MatroidFile =
        serde_json::from_str(&text).map_err(|e| SourceError::MalformedFile {
            path: path.to_path_buf(),
            detail: e.to_string(), // carries line and column
        })?;
    file.to_matroid()
}

#[derive(Debug, Parser)]
#[command(
    name = "matkls",
    about = "Exact Kazhdan-Lusztig polynomials and lattice invariants of matroids",
    version
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Classify a matroid and run every check on it.
    Info {
        /// Named spec (e.g. uniform:3,4, fano, graphic:0-1,1-2,0-2) or a file path.
        source: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Compute one polynomial of a matroid.
    Compute {
        /// Which polynomial: the characteristic polynomial, the Tutte
        /// polynomial, or the (inverse) Kazhdan-Lusztig polynomial.
        #[arg(long, value_enum)]
        poly: PolyKind,
        source: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Run one named theorem check; exits 2 when the check fails.
    Check {
        #[arg(long)]
        theorem: String,
        source: String,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
    /// Scan a corpus (built-in by default) with all or selected checks.
    Scan {
        /// Directory of matroid files to scan instead of the built-in corpus.
        #[arg(long)]
        dir: Option<PathBuf>,
        /// Comma-separated check names (default: all).
        #[arg(long)]
        checks: Option<String>,
        #[arg(long, value_enum, default_value = "human")]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum PolyKind {
    Char,
    Tutte,
    Kl,
    Invkl,
}

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_CHECK_FAILED: i32 = 2;

/// Dispatches a parsed command; returns the process exit status.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    match execute(cli, out) {
        Ok(code) => code,
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            EXIT_USAGE
        }
    }
}

fn execute(cli: Cli, out: &mut dyn Write) -> Result<i32, String> {
    match cli.command {
        Command::Info { source, format } => {
            let m = parse_matroid_source(&source).map_err(|e| e.to_string())?;
            let report = analysis::classify(&m).map_err(|e| e.to_string())?;
            match format {
                Format::Json => emit_json(out, &report::matroid_report_json(&report)),
                Format::Human => emit(out, &report::matroid_report_human(&report)),
            }
            Ok(EXIT_OK)
        }
        Command::Compute { poly, source, format } => {
            let m = parse_matroid_source(&source).map_err(|e| e.to_string())?;
            match poly {
                PolyKind::Tutte => {
                    let t: IntPoly2 =
                        kls::tutte_polynomial(&m).map_err(|e| e.to_string())?;
                    match format {
                        Format::Json => emit_json(out, &report::poly2_json(&t)),
                        Format::Human => emit(out, &t.to_string()),
                    }
                }
                univariate => {
                    let mut ws = analysis::Workspace::new(&m);
                    let p = match univariate {
                        PolyKind::Char => {
                            if m.loops().is_empty() {
                                ws.memo.mobius().characteristic(
                                    &ws.lattice,
                                    ws.lattice.bottom(),
                                    ws.lattice.top(),
                                )
                            } else {
                                crate::IntPoly::zero()
                            }
                        }
                        PolyKind::Kl => ws.kl_top(),
                        PolyKind::Invkl => ws.inverse_kl_top(),
                        PolyKind::Tutte => unreachable!(),
                    };
                    match format {
                        Format::Json => emit_json(out, &report::poly_json(&p)),
                        Format::Human => emit(out, &report::poly_human(&p)),
                    }
                }
            }
            Ok(EXIT_OK)
        }
        Command::Check { theorem, source, format } => {
            let check: CheckName = theorem.parse().map_err(|e: analysis::AnalysisError| e.to_string())?;
            let m = parse_matroid_source(&source).map_err(|e| e.to_string())?;
            let result = analysis::check_theorem(&m, check).map_err(|e| e.to_string())?;
            match format {
                Format::Json => emit_json(
                    out,
                    &serde_json::json!({
                        "check": result.name,
                        "status": result.status.to_string(),
                        "details": result.details,
                    }),
                ),
                Format::Human => emit(
                    out,
                    &format!("{}: {} ({})", result.name, result.status, result.details),
                ),
            }
            Ok(exit_for(result.status))
        }
        Command::Scan { dir, checks, format } => {
            let corpus = match dir {
                Some(dir) => load_corpus_dir(&dir).map_err(|e| e.to_string())?,
                None => analysis::builtin_corpus(),
            };
            if corpus.is_empty() {
                return Err("scan corpus is empty".into());
            }
            let checks = parse_check_list(checks.as_deref())?;
            let report = analysis::scan(&corpus, &checks);
            match format {
                Format::Json => emit_json(out, &report::scan_report_json(&report)),
                Format::Human => emit(out, &report::scan_report_human(&report)),
            }
            Ok(if report.has_failures() { EXIT_CHECK_FAILED } else { EXIT_OK })
        }
    }
}

/// A failed check exits 2; findings do not affect the status.
fn exit_for(status: CheckStatus) -> i32 {
    match status {
        CheckStatus::Fail => EXIT_CHECK_FAILED,
        CheckStatus::Pass | CheckStatus::Finding => EXIT_OK,
    }
}

fn parse_check_list(arg: Option<&str>) -> Result<Vec<CheckName>, String> {
    match arg {
        None => Ok(CheckName::ALL.to_vec()),
        Some(list) => list
            .split(',')
            .map(|name| name.trim().parse().map_err(|e: analysis::AnalysisError| e.to_string()))
            .collect(),
    }
}

/// Loads every `.json` file of a directory, in file-name order.
fn load_corpus_dir(dir: &Path) -> Result<Vec<Matroid>, SourceError> {
    let entries = std::fs::read_dir(dir)
        .map_err(|_| SourceError::FileNotFound(dir.to_path_buf()))?;
    let mut paths: Vec<PathBuf> = entries
        .filter_map(Result::ok)
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|ext| ext == "json"))
        .collect();
    paths.sort();
    paths.iter().map(|p| load_matroid_file(p)).collect()
}

fn emit(out: &mut dyn Write, text: &str) {
    let _ = writeln!(out, "{}", text.trim_end());
}

fn emit_json(out: &mut dyn Write, value: &serde_json::Value) {
    let _ = writeln!(out, "{}", serde_json::to_string_pretty(value).expect("serializable"));
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn source_parsing_prefers_grammar() {
        assert!(parse_matroid_source("uniform:3,4").is_ok());
        assert!(matches!(
            parse_matroid_source("no/such/file.json"),
            Err(SourceError::FileNotFound(_))
        ));
    }

    #[test]
    fn file_round_trip_is_canonical() {
        let m = builders::build_named("uniform:2,3").unwrap();
        let file = MatroidFile::from_matroid(&m);
        let text = file.to_canonical_json();
        let parsed: MatroidFile = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_canonical_json(), text);
        let back = parsed.to_matroid().unwrap();
        assert_eq!(back.bases(), m.bases());
    }

    #[test]
    fn unknown_fields_rejected() {
        let text = r#"{"name":"x","n":2,"bases":[[0],[1]],"extra":1}"#;
        assert!(serde_json::from_str::<MatroidFile>(text).is_err());
    }

    #[test]
    fn invalid_bases_surface_with_context() {
        let file = MatroidFile {
            name: "bad".into(),
            n: 4,
            bases: vec![vec![0, 1], vec![2, 3]],
        };
        let err = file.to_matroid().unwrap_err();
        assert!(err.to_string().contains("exchange axiom"), "{err}");
    }

    #[test]
    fn check_list_parsing() {
        assert_eq!(parse_check_list(None).unwrap().len(), 9);
        assert_eq!(
            parse_check_list(Some("t0, oddrank")).unwrap(),
            vec![CheckName::T0, CheckName::OddRank]
        );
        assert!(parse_check_list(Some("bogus")).is_err());
    }

    #[test]
    fn exit_codes_for_check_statuses() {
        assert_eq!(exit_for(CheckStatus::Pass), EXIT_OK);
        assert_eq!(exit_for(CheckStatus::Finding), EXIT_OK);
        assert_eq!(exit_for(CheckStatus::Fail), EXIT_CHECK_FAILED);
    }
}
