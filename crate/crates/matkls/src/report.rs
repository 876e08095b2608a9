//! Report serialization. Two formats: `json` (stable structured text,
//! alphabetically ordered keys, big integers as decimal strings) and
//! `human` (aligned key/value table). Polynomials always serialize as
//! ascending coefficient lists, constant term first.

use std::fmt::Write as _;

use serde_json::{json, Value};

use crate::analysis::{CheckResult, MatroidReport, ScanReport};
use crate::poly::Coeff;
use crate::{Int, IntPoly, IntPoly2};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Human,
    Json,
}

pub fn poly_json(p: &IntPoly) -> Value {
    Value::Array(p.coefficients().iter().map(|c| json!(c.to_string())).collect())
}

pub fn poly2_json(p: &IntPoly2) -> Value {
    Value::Array(
        p.rows()
            .iter()
            .map(|row| Value::Array(row.iter().map(|c| json!(c.to_string())).collect()))
            .collect(),
    )
}

pub fn ints_json(values: &[Int]) -> Value {
    Value::Array(values.iter().map(|c| json!(c.to_string())).collect())
}

/// `[-8, 14, -7, 1]`; the Display impl already prints ascending lists.
pub fn poly_human<T: Coeff>(p: &crate::poly::Poly<T>) -> String {
    p.to_string()
}

fn checks_json(checks: &[CheckResult]) -> Value {
    Value::Array(
        checks
            .iter()
            .map(|c| {
                json!({
                    "name": c.name,
                    "status": c.status.to_string(),
                    "details": c.details,
                })
            })
            .collect(),
    )
}

pub fn matroid_report_json(r: &MatroidReport) -> Value {
    json!({
        "label": r.label,
        "n": r.n,
        "rank": r.rank,
        "simple": r.simple,
        "connected": r.connected,
        "modular": r.modular,
        "projective_geometry": r.projective_geometry,
        "regular": r.regular,
        "degenerate": r.degenerate,
        "char": poly_json(&r.char_poly),
        "kl": poly_json(&r.kl),
        "invkl": poly_json(&r.inverse_kl),
        "whitney_first": ints_json(&r.whitney_first),
        "whitney_second": ints_json(&r.whitney_second),
        "checks": checks_json(&r.checks),
    })
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn matroid_report_human(r: &MatroidReport) -> String {
    let mut out = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(out, "{k:<20} {v}");
    };
    line("label", r.label.clone());
    line("n", r.n.to_string());
    line("rank", r.rank.to_string());
    line("simple", yes_no(r.simple).into());
    line("connected", yes_no(r.connected).into());
    line("modular", yes_no(r.modular).into());
    line("projective_geometry", yes_no(r.projective_geometry).into());
    line("regular", yes_no(r.regular).into());
    line("degenerate", yes_no(r.degenerate).into());
    line("char", r.char_poly.to_string());
    line("kl", r.kl.to_string());
    line("invkl", r.inverse_kl.to_string());
    line(
        "whitney_first",
        format!("[{}]", r.whitney_first.iter().map(Int::to_string).collect::<Vec<_>>().join(", ")),
    );
    line(
        "whitney_second",
        format!("[{}]", r.whitney_second.iter().map(Int::to_string).collect::<Vec<_>>().join(", ")),
    );
    for c in &r.checks {
        line(&format!("check:{}", c.name), format!("{} ({})", c.status, c.details));
    }
    out
}

pub fn scan_report_json(r: &ScanReport) -> Value {
    json!({
        "corpus_size": r.corpus_size,
        "elapsed_ms": r.elapsed_ms as u64,
        "matroids": Value::Array(r.reports.iter().map(matroid_report_json).collect()),
        "counterexamples": Value::Array(
            r.counterexamples
                .iter()
                .map(|c| json!({
                    "label": c.label,
                    "check": c.check,
                    "status": c.status.to_string(),
                    "details": c.details,
                }))
                .collect()
        ),
    })
}

pub fn scan_report_human(r: &ScanReport) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<28} {:>3} {:>3}  {:<6} {:<6} {:<8} {:<8} {:<11} checks",
        "label", "n", "r", "conn", "mod", "regular", "degen", "deg(P)/(Q)"
    );
    for m in &r.reports {
        let failed: Vec<&str> = m
            .checks
            .iter()
            .filter(|c| c.status != crate::analysis::CheckStatus::Pass)
            .map(|c| c.name.as_str())
            .collect();
        let degrees = format!(
            "{}/{}",
            m.kl.degree().map_or(0, |d| d),
            m.inverse_kl.degree().map_or(0, |d| d)
        );
        let _ = writeln!(
            out,
            "{:<28} {:>3} {:>3}  {:<6} {:<6} {:<8} {:<8} {:<11} {}",
            m.label,
            m.n,
            m.rank,
            yes_no(m.connected),
            yes_no(m.modular),
            yes_no(m.regular),
            yes_no(m.degenerate),
            degrees,
            if failed.is_empty() { "all pass".to_string() } else { failed.join(",") },
        );
    }
    let _ = writeln!(out, "---");
    let _ = writeln!(
        out,
        "{} matroids scanned in {} ms; {} failures, {} findings",
        r.corpus_size,
        r.elapsed_ms,
        r.counterexamples
            .iter()
            .filter(|c| c.status == crate::analysis::CheckStatus::Fail)
            .count(),
        r.counterexamples
            .iter()
            .filter(|c| c.status == crate::analysis::CheckStatus::Finding)
            .count(),
    );
    for c in &r.counterexamples {
        let _ = writeln!(out, "{}: {} [{}] {}", c.status, c.label, c.check, c.details);
    }
    out
}
