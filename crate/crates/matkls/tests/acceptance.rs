//! Acceptance suite: every release criterion, one pass/fail line each.
//! Run with `cargo test --test acceptance -- --nocapture` to see the
//! lines; each criterion also asserts, so plain `cargo test` gates on
//! them too. All comparisons are exact integer equalities.

use std::sync::LazyLock;

use matkls::analysis::{builtin_corpus, scan, CheckName, CheckStatus, ScanReport};
use matkls::kls::{char_from_tutte, KlsMemo};
use matkls::lattice::FlatLattice;
use matkls::matroid::Matroid;
use matkls::{builders, Int, IntPoly};

static CORPUS: LazyLock<Vec<Matroid>> = LazyLock::new(builtin_corpus);
static SCAN: LazyLock<ScanReport> = LazyLock::new(|| scan(&CORPUS, &CheckName::ALL));

fn criterion(id: usize, description: &str, pass: bool, details: &str) {
    println!(
        "ACCEPT {id:>2} [{}] {description}",
        if pass { "PASS" } else { "FAIL" }
    );
    assert!(pass, "criterion {id} ({description}): {details}");
}

/// Every result of one named check across the scanned corpus.
fn check_outcomes(name: &str) -> Vec<(&'static str, bool, String)> {
    SCAN.reports
        .iter()
        .flat_map(|r| {
            r.checks.iter().filter(|c| c.name == name).map(|c| {
                let label: &'static str = Box::leak(r.label.clone().into_boxed_str());
                (label, c.status == CheckStatus::Pass, c.details.clone())
            })
        })
        .collect()
}

fn all_pass(name: &str) -> (bool, String) {
    let outcomes = check_outcomes(name);
    let failures: Vec<String> = outcomes
        .iter()
        .filter(|(_, ok, _)| !ok)
        .map(|(label, _, details)| format!("{label}: {details}"))
        .collect();
    (failures.is_empty() && !outcomes.is_empty(), failures.join("; "))
}

fn report_of(label: &str) -> &matkls::analysis::MatroidReport {
    SCAN.reports
        .iter()
        .find(|r| r.label == label)
        .unwrap_or_else(|| panic!("{label} missing from scan"))
}

fn int_poly(coeffs: &[i64]) -> IntPoly {
    IntPoly::new(coeffs.iter().map(|&c| Int::from(c)).collect())
}

#[test]
fn accept_01_uniform_6_7_coefficients() {
    let r = report_of("uniform:6,7");
    let pass = r.kl.coefficient(2) == Int::from(21) && r.inverse_kl.coefficient(2) == Int::from(14);
    criterion(
        1,
        "U_{6,7}: [t^2]P = 21 and [t^2]Q = 14",
        pass,
        &format!("P = {}, Q = {}", r.kl, r.inverse_kl),
    );
}

#[test]
fn accept_02_fano_profile() {
    let fano = builders::fano();
    let expected_chi = int_poly(&[-8, 14, -7, 1]);
    let lattice = FlatLattice::of_matroid(&fano);
    let memo: KlsMemo<Int> = KlsMemo::new(&lattice);
    let via_mobius = memo
        .mobius()
        .characteristic(&lattice, lattice.bottom(), lattice.top());
    let via_tutte = char_from_tutte::<Int>(&fano).unwrap();
    let r = report_of("fano");
    let mu_abs = report_of("fano").inverse_kl.coefficient(0);
    let pass = via_mobius == expected_chi
        && via_tutte == expected_chi
        && mu_abs == Int::from(8)
        && r.inverse_kl == int_poly(&[8])
        && r.kl.is_one()
        && r.degenerate
        && !r.regular;
    criterion(
        2,
        "Fano: chi both routes, |mu| = 8, Q = 8, P = 1, degenerate, not regular",
        pass,
        &format!(
            "chi_mobius = {via_mobius}, chi_tutte = {via_tutte}, Q = {}, P = {}, degenerate = {}, regular = {}",
            r.inverse_kl, r.kl, r.degenerate, r.regular
        ),
    );
}

#[test]
fn accept_03_q_constant_term_everywhere() {
    let (pass, details) = all_pass("t0");
    criterion(3, "[t^0]Q = |mu(M)| on every corpus matroid", pass, &details);
}

#[test]
fn accept_04_q_linear_coefficient_everywhere() {
    let (pass, details) = all_pass("tq");
    let u34 = report_of("uniform:3,4");
    let pass = pass && u34.inverse_kl.coefficient(1) == Int::from(2);
    criterion(
        4,
        "[t]Q = |w_{1,r}| - |w_{0,r-1}| on every simple corpus matroid; U_{3,4} gives 2",
        pass,
        &format!("{details}; U_{{3,4}} Q = {}", u34.inverse_kl),
    );
}

#[test]
fn accept_05_odd_rank_theorem_and_rank2_family() {
    let (odd_pass, details) = all_pass("oddrank");
    let mut family_pass = true;
    let mut family_details = String::new();
    for n in 2..=8usize {
        let label = format!("uniform:2,{n}");
        let r = report_of(&label);
        let p0 = r.kl.coefficient(0);
        let q0 = r.inverse_kl.coefficient(0);
        let expected_equal = n == 2;
        if (p0 == q0) != expected_equal || p0 != Int::from(1) || q0 != Int::from(n as i64 - 1) {
            family_pass = false;
            family_details = format!("U_{{2,{n}}}: [t^0]P = {p0}, [t^0]Q = {q0}");
            break;
        }
    }
    criterion(
        5,
        "odd rank: top coefficients of P and Q agree; rank-2 equality only for B_2",
        odd_pass && family_pass,
        &format!("{details} {family_details}"),
    );
}

#[test]
fn accept_06_even_rank_identity() {
    let (pass, details) = all_pass("evenrank");
    criterion(
        6,
        "even rank 2k: [t^{k-1}](P+Q) equals the odd-rank-flat sum",
        pass,
        &details,
    );
}

#[test]
fn accept_07_modularity_four_way() {
    let (pass, details) = all_pass("modularity");
    criterion(
        7,
        "modular <=> P = 1 <=> [t]P = 0 <=> deg Q = 0 on every corpus matroid",
        pass,
        &details,
    );
}

#[test]
fn accept_08_convolution_identities() {
    let (pass, details) = all_pass("convolution");
    criterion(
        8,
        "both convolution zero-identities vanish on every corpus matroid",
        pass,
        &details,
    );
}

#[test]
fn accept_09_degree_bounds_on_all_intervals() {
    let mut pass = true;
    let mut details = String::new();
    'outer: for m in CORPUS.iter() {
        let lattice = FlatLattice::of_matroid(m);
        let mut memo: KlsMemo<Int> = KlsMemo::new(&lattice);
        for f in 0..lattice.num_flats() {
            for g in f..lattice.num_flats() {
                if !lattice.leq(f, g) {
                    continue;
                }
                let rho = lattice.rank_of(g) - lattice.rank_of(f);
                let p = memo.kl(&lattice, f, g).unwrap();
                let q = memo.inverse_kl(&lattice, f, g).unwrap();
                let bound_ok = |poly: &IntPoly| match poly.degree() {
                    None => false, // P and Q are never zero
                    Some(d) => rho == 0 || 2 * d < rho,
                };
                if !bound_ok(&p) || !bound_ok(&q) {
                    pass = false;
                    details = format!("{m:?} interval [{f},{g}]: P = {p}, Q = {q}, rho = {rho}");
                    break 'outer;
                }
            }
        }
    }
    criterion(
        9,
        "deg P, deg Q < rho/2 on every interval of every corpus lattice",
        pass,
        &details,
    );
}

#[test]
fn accept_10_rank3_charpoly_identity_only_at_seven() {
    let pass = (3..=40).all(|n| matkls::analysis::rank3_modular_charpoly_identity(n) == (n == 7));
    criterion(
        10,
        "rank-3 characteristic-polynomial identity holds exactly at n = 7 on [3,40]",
        pass,
        "",
    );
}

#[test]
fn accept_11_connected_contraction_element() {
    let (pass, details) = all_pass("lemma_mi");
    criterion(
        11,
        "every simple connected corpus matroid has a connectivity-preserving contraction",
        pass,
        &details,
    );
}

#[test]
fn accept_12_modular_implies_not_regular() {
    let (pass, details) = all_pass("modregular");
    // the corpus must actually exercise the theorem
    let exercised = SCAN
        .reports
        .iter()
        .any(|r| r.connected && r.modular && r.rank >= 3);
    criterion(
        12,
        "every connected modular corpus matroid of rank >= 3 is non-regular",
        pass && exercised,
        &details,
    );
}

#[test]
fn accept_13_conjecture_scan() {
    let violations: Vec<&str> = SCAN
        .counterexamples
        .iter()
        .filter(|c| c.check == "conjecture")
        .map(|c| c.label.as_str())
        .collect();
    criterion(
        13,
        "no connected regular degenerate matroid in the curated corpus",
        violations.is_empty(),
        &violations.join(", "),
    );
}

#[test]
fn accept_14_positivity_and_log_concavity() {
    let (positive, details) = all_pass("positivity");
    let lc_findings: Vec<String> = SCAN
        .counterexamples
        .iter()
        .filter(|c| c.check == "log-concavity")
        .map(|c| format!("{}: {}", c.label, c.details))
        .collect();
    println!(
        "        log-concavity findings on the corpus: {}",
        if lc_findings.is_empty() { "none".to_string() } else { lc_findings.join("; ") }
    );
    criterion(
        14,
        "P and Q coefficients non-negative; log-concavity reported as findings",
        positive,
        &details,
    );
}

#[test]
fn accept_15_convolution_route_equals_recursion() {
    let mut pass = true;
    let mut details = String::new();
    for m in CORPUS.iter() {
        let lattice = FlatLattice::of_matroid(m);
        let mut memo: KlsMemo<Int> = KlsMemo::new(&lattice);
        let recursion = memo
            .inverse_kl(&lattice, lattice.bottom(), lattice.top())
            .unwrap();
        let convolution = memo.inverse_kl_via_convolution(&lattice);
        if recursion != convolution {
            pass = false;
            details = format!("{m:?}: recursion {recursion}, convolution {convolution}");
            break;
        }
    }
    criterion(
        15,
        "inverse KL via recursion and via convolution agree coefficientwise",
        pass,
        &details,
    );
}
