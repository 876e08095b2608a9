//! Degeneracy classification, executable theorem checks, and the
//! conjecture-scanning harness over a curated matroid corpus.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::{Signed, Zero};
use rayon::prelude::*;
use thiserror::Error;

use crate::builders;
use crate::iso;
use crate::kls::{q_constant_term, q_linear_coefficient, KlsError, KlsMemo};
use crate::lattice::{FlatLattice, LatticeError};
use crate::matroid::{Matroid, MatroidError};
use crate::whitney::WhitneyTable;
use crate::{Int, IntPoly};

#[derive(Debug, Error)]
pub enum AnalysisError {
    #[error("matroid has rank zero")]
    RankZero,
    #[error("unknown check name '{0}'")]
    UnknownCheck(String),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Kls(#[from] KlsError),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// The theorem and identity checks runnable on a single matroid.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckName {
    /// `[t^0] Q = |mu|`.
    T0,
    /// `[t^1] Q = |w_{1,r}| - |w_{0,r-1}|` (after simplification).
    Tq,
    /// Odd rank: top admissible coefficients of P and Q agree.
    OddRank,
    /// Even rank `2k`: `[t^{k-1}](P+Q)` equals the odd-rank-flat sum.
    EvenRank,
    /// Four-way equivalence: modular <=> P = 1 <=> [t]P = 0 <=> deg Q = 0.
    Modularity,
    /// Both convolution zero-identities vanish.
    Convolution,
    /// Modular lattices have symmetric Whitney numbers of the second kind.
    TopHeavy,
    /// Simple connected matroids admit a connectivity-preserving contraction.
    LemmaMi,
    /// Connected modular matroids of rank >= 3 are not regular.
    ModRegular,
}

impl CheckName {
    pub const ALL: [CheckName; 9] = [
        CheckName::T0,
        CheckName::Tq,
        CheckName::OddRank,
        CheckName::EvenRank,
        CheckName::Modularity,
        CheckName::Convolution,
        CheckName::TopHeavy,
        CheckName::LemmaMi,
        CheckName::ModRegular,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            CheckName::T0 => "t0",
            CheckName::Tq => "tq",
            CheckName::OddRank => "oddrank",
            CheckName::EvenRank => "evenrank",
            CheckName::Modularity => "modularity",
            CheckName::Convolution => "convolution",
            CheckName::TopHeavy => "topheavy",
            CheckName::LemmaMi => "lemma_mi",
            CheckName::ModRegular => "modregular",
        }
    }
}

impl fmt::Display for CheckName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CheckName {
    type Err = AnalysisError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CheckName::ALL
            .into_iter()
            .find(|c| c.as_str() == s)
            .ok_or_else(|| AnalysisError::UnknownCheck(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// A violated conjecture-level claim: reported, never a failure.
    Finding,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "pass",
            CheckStatus::Fail => "fail",
            CheckStatus::Finding => "finding",
        })
    }
}

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub status: CheckStatus,
    pub details: String,
}

impl CheckResult {
    fn verdict(name: impl Into<String>, pass: bool, details: impl Into<String>) -> Self {
        CheckResult {
            name: name.into(),
            status: if pass { CheckStatus::Pass } else { CheckStatus::Fail },
            details: details.into(),
        }
    }
}

/// Everything the scanner records about one matroid.
#[derive(Debug, Clone)]
pub struct MatroidReport {
    pub label: String,
    pub n: usize,
    pub rank: usize,
    pub simple: bool,
    pub connected: bool,
    pub modular: bool,
    pub projective_geometry: bool,
    pub regular: bool,
    pub degenerate: bool,
    /// Characteristic polynomial of the matroid (zero if it has a loop).
    pub char_poly: IntPoly,
    pub kl: IntPoly,
    pub inverse_kl: IntPoly,
    pub whitney_first: Vec<Int>,
    pub whitney_second: Vec<Int>,
    pub checks: Vec<CheckResult>,
}

#[derive(Debug, Clone)]
pub struct Counterexample {
    pub label: String,
    pub check: String,
    pub status: CheckStatus,
    pub details: String,
}

#[derive(Debug)]
pub struct ScanReport {
    pub corpus_size: usize,
    pub reports: Vec<MatroidReport>,
    /// Failed theorem checks (bugs) and conjecture-level findings.
    pub counterexamples: Vec<Counterexample>,
    pub elapsed_ms: u128,
}

impl ScanReport {
    pub fn has_failures(&self) -> bool {
        self.counterexamples
            .iter()
            .any(|c| c.status == CheckStatus::Fail)
    }
}

/// Shared per-matroid state: the lattice and the interval caches.
pub struct Workspace {
    pub matroid: Matroid,
    pub lattice: FlatLattice,
    pub memo: KlsMemo<Int>,
}

impl Workspace {
    pub fn new(m: &Matroid) -> Self {
        let lattice = FlatLattice::of_matroid(m);
        let memo = KlsMemo::new(&lattice);
        Workspace { matroid: m.clone(), lattice, memo }
    }

    pub fn kl_top(&mut self) -> IntPoly {
        self.memo
            .kl(&self.lattice, self.lattice.bottom(), self.lattice.top())
            .expect("bottom <= top")
    }

    pub fn inverse_kl_top(&mut self) -> IntPoly {
        self.memo
            .inverse_kl(&self.lattice, self.lattice.bottom(), self.lattice.top())
            .expect("bottom <= top")
    }

    pub fn whitney(&self) -> WhitneyTable<Int> {
        WhitneyTable::new(&self.lattice, self.memo.mobius())
    }
}

/// Degenerate: `deg P` strictly below `floor((r-1)/2)`.
pub fn is_degenerate(m: &Matroid) -> Result<bool, AnalysisError> {
    if m.rank() == 0 {
        return Err(AnalysisError::RankZero);
    }
    let mut ws = Workspace::new(m);
    Ok(degenerate_in(&mut ws))
}

fn degenerate_in(ws: &mut Workspace) -> bool {
    let r = ws.matroid.rank();
    if r == 0 {
        return false;
    }
    let deg = ws.kl_top().degree().unwrap_or(0);
    deg < (r - 1) / 2
}

pub fn classify(m: &Matroid) -> Result<MatroidReport, AnalysisError> {
    classify_with_checks(m, &CheckName::ALL)
}

pub fn classify_with_checks(
    m: &Matroid,
    checks: &[CheckName],
) -> Result<MatroidReport, AnalysisError> {
    let mut ws = Workspace::new(m);
    let label = m
        .label()
        .map(str::to_owned)
        .unwrap_or_else(|| format!("matroid(n={}, r={})", m.n(), m.rank()));
    let modular = ws.lattice.is_modular()?;
    let whitney = ws.whitney();
    let char_poly = if m.loops().is_empty() {
        ws.memo
            .mobius()
            .characteristic(&ws.lattice, ws.lattice.bottom(), ws.lattice.top())
    } else {
        IntPoly::zero()
    };
    let mut report = MatroidReport {
        label,
        n: m.n(),
        rank: m.rank(),
        simple: m.is_simple(),
        connected: m.is_connected(),
        modular,
        projective_geometry: ws.lattice.is_projective_geometry(),
        regular: iso::is_regular(m),
        degenerate: degenerate_in(&mut ws),
        char_poly,
        kl: ws.kl_top(),
        inverse_kl: ws.inverse_kl_top(),
        whitney_first: whitney.first_kind_row(),
        whitney_second: whitney.second_kind_row(),
        checks: Vec::new(),
    };
    for check in checks {
        let result = run_check(&mut ws, &report, *check)?;
        report.checks.push(result);
    }
    Ok(report)
}

/// Runs one named check against a matroid.
pub fn check_theorem(m: &Matroid, which: CheckName) -> Result<CheckResult, AnalysisError> {
    // the report carries the classification bits some checks consume
    let report = classify_with_checks(m, &[which])?;
    Ok(report.checks.into_iter().next().expect("one check requested"))
}

fn vacuous(name: CheckName, why: &str) -> CheckResult {
    CheckResult {
        name: name.to_string(),
        status: CheckStatus::Pass,
        details: format!("not applicable: {why}"),
    }
}

fn run_check(
    ws: &mut Workspace,
    report: &MatroidReport,
    which: CheckName,
) -> Result<CheckResult, AnalysisError> {
    let r = ws.matroid.rank();
    let name = which.to_string();
    let result = match which {
        CheckName::T0 => {
            let q0 = ws.inverse_kl_top().coefficient(0);
            let mu = q_constant_term(&ws.lattice, ws.memo.mobius());
            CheckResult::verdict(name, q0 == mu, format!("[t^0]Q = {q0}, |mu| = {mu}"))
        }
        CheckName::Tq => {
            // the formula is proved for simple matroids; simplify first
            let (simple, _) = ws.matroid.simplify();
            let mut sw = if ws.matroid.is_simple() {
                None
            } else {
                Some(Workspace::new(&simple))
            };
            let sw = sw.as_mut().unwrap_or(ws);
            let from_recursion = sw.inverse_kl_top().coefficient(1);
            let from_formula = q_linear_coefficient(&sw.whitney());
            CheckResult::verdict(
                name,
                from_recursion == from_formula,
                format!("recursion {from_recursion}, whitney formula {from_formula}"),
            )
        }
        CheckName::OddRank => {
            if r.is_multiple_of(2) {
                vacuous(which, "even rank")
            } else {
                let k = (r - 1) / 2;
                let p_top = ws.kl_top().coefficient(k);
                let q_top = ws.inverse_kl_top().coefficient(k);
                CheckResult::verdict(
                    name,
                    p_top == q_top,
                    format!("[t^{k}]P = {p_top}, [t^{k}]Q = {q_top}"),
                )
            }
        }
        CheckName::EvenRank => {
            if r == 0 || r % 2 == 1 {
                vacuous(which, "odd or zero rank")
            } else {
                let k = r / 2;
                let p = ws.kl_top();
                let q = ws.inverse_kl_top();
                let lhs = p.coefficient(k - 1) + q.coefficient(k - 1);
                let mut rhs = Int::from(0);
                for f in 0..ws.lattice.num_flats() {
                    if ws.lattice.rank_of(f).is_multiple_of(2) {
                        continue;
                    }
                    let p_contraction = ws
                        .memo
                        .kl(&ws.lattice, f, ws.lattice.top())
                        .expect("comparable");
                    let q_restriction = ws
                        .memo
                        .inverse_kl(&ws.lattice, ws.lattice.bottom(), f)
                        .expect("comparable");
                    rhs += (&p_contraction * &q_restriction).coefficient(k - 1);
                }
                let gap = q.coefficient(k - 1) - p.coefficient(k - 1);
                CheckResult::verdict(
                    name,
                    lhs == rhs,
                    format!(
                        "[t^{}](P+Q) = {lhs}, odd-flat sum = {rhs}, sign(Q-P at t^{}) = {}",
                        k - 1,
                        k - 1,
                        gap.signum()
                    ),
                )
            }
        }
        CheckName::Modularity => {
            let p = ws.kl_top();
            let q = ws.inverse_kl_top();
            let conditions = [
                report.modular,
                p.is_one(),
                p.coefficient(1).is_zero(),
                q.degree() == Some(0),
            ];
            let pass = conditions.iter().all(|&c| c == conditions[0]);
            CheckResult::verdict(
                name,
                pass,
                format!(
                    "modular = {}, P = 1: {}, [t]P = 0: {}, deg Q = 0: {}",
                    conditions[0], conditions[1], conditions[2], conditions[3]
                ),
            )
        }
        CheckName::Convolution => {
            if r == 0 {
                vacuous(which, "rank zero (the convolution reduces to the identity)")
            } else {
                let (left, right) = ws.memo.convolution_residuals(&ws.lattice);
                CheckResult::verdict(
                    name,
                    left.is_zero() && right.is_zero(),
                    format!("residuals {left} and {right}"),
                )
            }
        }
        CheckName::TopHeavy => {
            if !report.modular {
                vacuous(which, "not modular")
            } else {
                let counts: Vec<usize> =
                    (0..=r).map(|k| ws.lattice.count_of_rank(k)).collect();
                let symmetric = (0..=r).all(|k| counts[k] == counts[r - k]);
                CheckResult::verdict(name, symmetric, format!("W = {counts:?}"))
            }
        }
        CheckName::LemmaMi => {
            if !(report.simple && report.connected && r >= 1) {
                vacuous(which, "requires a simple connected matroid of rank >= 1")
            } else {
                match ws.matroid.find_connected_contraction_element() {
                    Ok(e) => CheckResult::verdict(
                        name,
                        true,
                        format!("contraction by element {e} stays connected"),
                    ),
                    Err(e) => CheckResult::verdict(name, false, e.to_string()),
                }
            }
        }
        CheckName::ModRegular => {
            if !(report.connected && report.modular && r >= 3) {
                vacuous(which, "requires a connected modular matroid of rank >= 3")
            } else {
                CheckResult::verdict(
                    name,
                    !report.regular,
                    format!("regular = {}", report.regular),
                )
            }
        }
    };
    Ok(result)
}

/// Log-concave with no internal zeros, the shape conjectured for the
/// coefficient sequences of P and Q.
fn log_concave_no_internal_zeros(p: &IntPoly) -> bool {
    let coeffs = p.coefficients();
    if coeffs.len() <= 1 {
        return true;
    }
    coeffs.iter().all(|c| !c.is_zero())
        && (1..coeffs.len() - 1)
            .all(|i| &coeffs[i] * &coeffs[i] >= &coeffs[i - 1] * &coeffs[i + 1])
}

/// Conjecture- and positivity-level results appended by the scanner.
fn scan_extras(report: &MatroidReport) -> Vec<CheckResult> {
    let mut extras = Vec::new();

    let conjecture_violated = report.connected && report.regular && report.degenerate;
    extras.push(CheckResult {
        name: "conjecture".into(),
        status: if conjecture_violated { CheckStatus::Finding } else { CheckStatus::Pass },
        details: if conjecture_violated {
            "connected regular degenerate matroid".into()
        } else {
            format!(
                "connected = {}, regular = {}, degenerate = {}",
                report.connected, report.regular, report.degenerate
            )
        },
    });

    let nonnegative = [&report.kl, &report.inverse_kl]
        .iter()
        .all(|p| p.coefficients().iter().all(|c| !c.is_negative()));
    extras.push(CheckResult::verdict(
        "positivity",
        nonnegative,
        format!("P = {}, Q = {}", report.kl, report.inverse_kl),
    ));

    let log_concave = log_concave_no_internal_zeros(&report.kl)
        && log_concave_no_internal_zeros(&report.inverse_kl);
    extras.push(CheckResult {
        name: "log-concavity".into(),
        status: if log_concave { CheckStatus::Pass } else { CheckStatus::Finding },
        details: format!("P = {}, Q = {}", report.kl, report.inverse_kl),
    });

    extras
}

/// Compares the two rank-3 characteristic-polynomial expressions
/// `(t-1)(t-2)(t-n+3)` and
/// `t^3 - n t^2 + n(n-3)/2 t - (n^2-5n+2)/2`
/// coefficientwise; they agree exactly at n = 7.
pub fn rank3_modular_charpoly_identity(n: u64) -> bool {
    let n = Int::from(n);
    let linear = |c: Int| IntPoly::new(vec![-c, Int::from(1)]);
    let product = &(&linear(Int::from(1)) * &linear(Int::from(2)))
        * &linear(&n - Int::from(3));
    let tutte_form = IntPoly::new(vec![
        -(&n * &n - Int::from(5) * &n + Int::from(2)) / Int::from(2),
        &n * (&n - Int::from(3)) / Int::from(2),
        -n,
        Int::from(1),
    ]);
    product == tutte_form
}

/// The curated corpus: uniform matroids through n = 8, small Booleans,
/// the Fano pair, PG(2,3), standard small graphs, and a few modular
/// direct sums.
pub fn builtin_corpus() -> Vec<Matroid> {
    let mut corpus = Vec::new();
    for n in 1..=8 {
        for k in 1..=n {
            corpus.push(builders::uniform(k, n).expect("uniform corpus member"));
        }
    }
    for n in 1..=6 {
        corpus.push(builders::boolean(n).expect("boolean corpus member"));
    }
    corpus.push(builders::fano());
    corpus.push(builders::fano_dual());
    corpus.push(builders::projective_geometry(2, 3).expect("pg(2,3)"));

    let named_graphs: [(&str, Vec<(usize, usize)>); 4] = [
        ("graphic:k4", complete_graph(4)),
        ("graphic:k5", complete_graph(5)),
        ("graphic:k33", (0..3).flat_map(|u| (3..6).map(move |v| (u, v))).collect()),
        (
            "graphic:prism",
            vec![(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (0, 3), (1, 4), (2, 5)],
        ),
    ];
    for (label, edges) in named_graphs {
        corpus.push(builders::graphic(&edges).expect("graphic corpus member").with_label(label));
    }
    // all cycles and wheels on up to 6 vertices
    for v in 3..=6 {
        let edges: Vec<(usize, usize)> = (0..v).map(|i| (i, (i + 1) % v)).collect();
        corpus.push(
            builders::graphic(&edges)
                .expect("cycle corpus member")
                .with_label(format!("graphic:c{v}")),
        );
    }
    for rim in 3..=5 {
        corpus.push(
            builders::graphic(&wheel(rim))
                .expect("wheel corpus member")
                .with_label(format!("graphic:w{rim}")),
        );
    }
    for k in 3..=5 {
        let spec = format!("sum:boolean:1+uniform:2,{k}");
        corpus.push(builders::build_named(&spec).expect("sum corpus member"));
    }
    corpus
}

fn complete_graph(v: usize) -> Vec<(usize, usize)> {
    (0..v).flat_map(|u| (u + 1..v).map(move |w| (u, w))).collect()
}

/// Wheel with `rim` outer vertices: an outer cycle plus a hub.
fn wheel(rim: usize) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = (0..rim).map(|i| (i, (i + 1) % rim)).collect();
    edges.extend((0..rim).map(|i| (i, rim)));
    edges
}

/// Runs the requested checks over the corpus, in parallel, and gathers
/// failures and findings. Output ordering is deterministic (by label).
/// `MATKLS_THREADS` caps the parallelism when set.
pub fn scan(corpus: &[Matroid], checks: &[CheckName]) -> ScanReport {
    let start = Instant::now();
    let run = || -> Vec<Result<MatroidReport, String>> {
        corpus
            .par_iter()
            .map(|m| {
                classify_with_checks(m, checks)
                    .map(|mut report| {
                        report.checks.extend(scan_extras(&report));
                        report
                    })
                    .map_err(|e| {
                        format!(
                            "{}: {e}",
                            m.label().unwrap_or("unlabeled matroid")
                        )
                    })
            })
            .collect()
    };

    let outcomes = match thread_cap() {
        Some(cap) => match rayon::ThreadPoolBuilder::new().num_threads(cap).build() {
            Ok(pool) => pool.install(run),
            Err(_) => run(),
        },
        None => run(),
    };

    let mut reports = Vec::new();
    let mut counterexamples = Vec::new();
    for outcome in outcomes {
        match outcome {
            Ok(report) => reports.push(report),
            Err(message) => counterexamples.push(Counterexample {
                label: message.clone(),
                check: "classify".into(),
                status: CheckStatus::Fail,
                details: message,
            }),
        }
    }
    reports.sort_by(|a, b| a.label.cmp(&b.label));
    for report in &reports {
        for check in &report.checks {
            if check.status != CheckStatus::Pass {
                counterexamples.push(Counterexample {
                    label: report.label.clone(),
                    check: check.name.clone(),
                    status: check.status,
                    details: check.details.clone(),
                });
            }
        }
    }

    ScanReport {
        corpus_size: corpus.len(),
        reports,
        counterexamples,
        elapsed_ms: start.elapsed().as_millis(),
    }
}

fn thread_cap() -> Option<usize> {
    std::env::var("MATKLS_THREADS").ok()?.parse().ok().filter(|&n| n > 0)
}
