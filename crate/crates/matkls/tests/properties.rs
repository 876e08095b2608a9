//! Structural invariants: exhaustive checks on small matroids and
//! property tests under random relabeling.

use std::sync::LazyLock;

use proptest::prelude::*;

use matkls::analysis::builtin_corpus;
use matkls::cli::MatroidFile;
use matkls::iso::are_isomorphic;
use matkls::kls::{tutte_polynomial, KlsMemo};
use matkls::lattice::FlatLattice;
use matkls::matroid::Matroid;
use matkls::poly::Poly;
use matkls::{builders, ElementSet, Int};

static SMALL_POOL: LazyLock<Vec<Matroid>> = LazyLock::new(|| {
    builtin_corpus().into_iter().filter(|m| m.n() <= 7).collect()
});

#[test]
fn rank_is_submodular_exhaustively() {
    for m in SMALL_POOL.iter() {
        let n = m.n();
        for s_bits in 0..(1u32 << n) {
            for t_bits in 0..(1u32 << n) {
                let s = ElementSet::from_bits(s_bits, n);
                let t = ElementSet::from_bits(t_bits, n);
                assert!(
                    m.rank_of(&s) + m.rank_of(&t)
                        >= m.rank_of(&s.union(&t)) + m.rank_of(&s.intersection(&t)),
                    "{m:?}: S={s}, T={t}"
                );
            }
        }
    }
}

#[test]
fn closure_is_idempotent_and_extensive() {
    for m in SMALL_POOL.iter() {
        let n = m.n();
        for s_bits in 0..(1u32 << n) {
            let s = ElementSet::from_bits(s_bits, n);
            let closed = m.closure(&s);
            assert!(s.is_subset(&closed), "{m:?}: S={s}");
            assert_eq!(m.closure(&closed), closed, "{m:?}: S={s}");
            assert_eq!(m.rank_of(&closed), m.rank_of(&s), "{m:?}: S={s}");
        }
    }
}

#[test]
fn delete_contract_duality_on_uniform() {
    for n in 2..=6 {
        for k in 1..n {
            let m = builders::uniform(k, n).unwrap();
            let one = ElementSet::singleton(0, n);
            let (deleted, _) = m.delete(&one).unwrap();
            assert!(
                are_isomorphic(&deleted, &builders::uniform(k, n - 1).unwrap()),
                "delete U_{{{k},{n}}}"
            );
            // U_{k,n}/e = U_{k-1,n-1}, which simplifies to a point when
            // k = 2 and to the empty matroid when k = 1
            let (contracted, _) = m.contract(&one).unwrap();
            let (simple, _) = contracted.simplify();
            let expected = match k {
                1 => builders::uniform(0, 0).unwrap(),
                2 => builders::uniform(1, 1).unwrap(),
                _ => builders::uniform(k - 1, n - 1).unwrap(),
            };
            assert!(
                are_isomorphic(&simple, &expected),
                "contract U_{{{k},{n}}}"
            );
        }
    }
}

#[test]
fn connectivity_matches_separator_scan() {
    for m in SMALL_POOL.iter() {
        let n = m.n();
        if n == 0 {
            continue;
        }
        let r = m.rank();
        let mut has_separator = false;
        for s_bits in 1..(1u32 << n) - 1 {
            let s = ElementSet::from_bits(s_bits, n);
            if m.rank_of(&s) + m.rank_of(&s.complement()) == r {
                has_separator = true;
                break;
            }
        }
        let connected = n == 1 || !has_separator;
        assert_eq!(m.is_connected(), connected, "{m:?}");
    }
}

#[test]
fn direct_sums_are_disconnected() {
    let parts = ["boolean:1", "uniform:1,2", "uniform:2,3", "uniform:2,4"];
    for a in parts {
        for b in parts {
            let m1 = builders::build_named(a).unwrap();
            let m2 = builders::build_named(b).unwrap();
            let sum = m1.direct_sum(&m2).unwrap();
            assert!(!sum.is_connected(), "{a} + {b}");
            assert_eq!(sum.rank(), m1.rank() + m2.rank());
        }
    }
}

#[test]
fn connected_contraction_element_exists_on_corpus() {
    for m in builtin_corpus() {
        if m.is_simple() && m.is_connected() && m.rank() >= 1 {
            let e = m.find_connected_contraction_element().unwrap();
            assert!(e < m.n(), "{m:?}");
        }
    }
}

/// Adding a parallel copy of an element must not change the lattice.
#[test]
fn lattice_is_simplification_invariant() {
    for m in SMALL_POOL.iter().filter(|m| m.rank() >= 1 && m.n() <= 6) {
        let n = m.n();
        let mut bases: Vec<Vec<usize>> = m.bases().iter().map(|b| b.to_vec()).collect();
        let with_parallel: Vec<Vec<usize>> = m
            .bases()
            .iter()
            .filter(|b| b.contains(0))
            .map(|b| {
                let mut extended = b.remove(0).to_vec();
                extended.push(n);
                extended
            })
            .collect();
        bases.extend(with_parallel);
        let extended = Matroid::from_basis_lists(n + 1, &bases).expect("parallel extension");
        assert!(!extended.is_simple());

        let original = FlatLattice::of_matroid(m);
        let fattened = FlatLattice::of_matroid(&extended);
        let counts = |l: &FlatLattice| -> Vec<usize> {
            (0..=l.rank()).map(|k| l.count_of_rank(k)).collect()
        };
        assert_eq!(counts(&original), counts(&fattened), "{m:?}");
        let cover_profile = |l: &FlatLattice| -> Vec<usize> {
            let mut profile: Vec<usize> =
                (0..l.num_flats()).map(|f| l.upper_covers(f).len()).collect();
            profile.sort();
            profile
        };
        assert_eq!(cover_profile(&original), cover_profile(&fattened), "{m:?}");
    }
}

#[test]
fn tutte_specializations_count() {
    for m in SMALL_POOL.iter().filter(|m| m.n() <= 6) {
        let t = tutte_polynomial::<Int>(m).unwrap();
        assert_eq!(t.eval(&Int::from(1), &Int::from(1)), Int::from(m.bases().len()));
        assert_eq!(t.eval(&Int::from(2), &Int::from(2)), Int::from(1u64 << m.n()));
        let independent = (0..(1u32 << m.n()))
            .filter(|&s| {
                let s = ElementSet::from_bits(s, m.n());
                m.rank_of(&s) == s.len()
            })
            .count();
        assert_eq!(t.eval(&Int::from(2), &Int::from(1)), Int::from(independent));
        let spanning = (0..(1u32 << m.n()))
            .filter(|&s| m.rank_of(&ElementSet::from_bits(s, m.n())) == m.rank())
            .count();
        assert_eq!(t.eval(&Int::from(1), &Int::from(2)), Int::from(spanning));
    }
}

/// Both defining functional equations, replayed with the computed
/// polynomials over the full lattice.
#[test]
fn defining_equations_hold_on_corpus() {
    for m in builtin_corpus() {
        let lattice = FlatLattice::of_matroid(&m);
        let mut memo: KlsMemo<Int> = KlsMemo::new(&lattice);
        let (bottom, top) = (lattice.bottom(), lattice.top());
        let r = lattice.rank();

        let p = memo.kl(&lattice, bottom, top).unwrap();
        let mut rhs = Poly::zero();
        for f in 0..lattice.num_flats() {
            let chi = memo.chi(&lattice, bottom, f);
            let p_upper = memo.kl(&lattice, f, top).unwrap();
            rhs = &rhs + &(&chi * &p_upper);
        }
        assert_eq!(p.reverse(r).unwrap(), rhs, "{m:?}: KL functional equation");

        let q = memo.inverse_kl(&lattice, bottom, top).unwrap();
        let mut rhs = Poly::zero();
        for f in 0..lattice.num_flats() {
            let rho_f = lattice.rank_of(f);
            let q_lower = memo.inverse_kl(&lattice, bottom, f).unwrap();
            let chi_reversed = memo
                .chi(&lattice, f, top)
                .reverse(r - rho_f)
                .expect("chi degree equals interval rank");
            let term = &q_lower * &chi_reversed;
            rhs = if rho_f % 2 == 1 { &rhs - &term } else { &rhs + &term };
        }
        let mut lhs = q.reverse(r).unwrap();
        if r % 2 == 1 {
            lhs = -&lhs;
        }
        assert_eq!(lhs, rhs, "{m:?}: inverse KL functional equation");
    }
}

#[test]
fn matroid_files_round_trip_over_corpus() {
    for m in builtin_corpus() {
        let file = MatroidFile::from_matroid(&m);
        let text = file.to_canonical_json();
        let parsed: MatroidFile = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed.to_canonical_json(), text, "{m:?}");
        let rebuilt = parsed.to_matroid().unwrap();
        assert_eq!(rebuilt.bases(), m.bases(), "{m:?}");
        assert_eq!(rebuilt.n(), m.n());
    }
}

fn relabel(m: &Matroid, perm: &[usize]) -> Matroid {
    let lists: Vec<Vec<usize>> = m
        .bases()
        .iter()
        .map(|b| b.iter().map(|e| perm[e]).collect())
        .collect();
    Matroid::from_basis_lists(m.n(), &lists).expect("relabeling preserves the axioms")
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn isomorphism_invariant_under_relabeling(
        index in 0usize..24,
        seed in proptest::collection::vec(any::<u64>(), 8),
    ) {
        let pool = &*SMALL_POOL;
        let m = &pool[index % pool.len()];
        // permutation of 0..n from the random seed
        let mut perm: Vec<usize> = (0..m.n()).collect();
        for (i, s) in seed.iter().enumerate().take(perm.len().saturating_sub(1)) {
            let j = i + (*s as usize) % (perm.len() - i);
            perm.swap(i, j);
        }
        let relabeled = relabel(m, &perm);
        prop_assert!(are_isomorphic(m, &relabeled));
        prop_assert!(are_isomorphic(&relabeled, m));
        prop_assert!(are_isomorphic(m, m));
    }

    #[test]
    fn reverse_is_an_involution(
        coeffs in proptest::collection::vec(-100i64..100, 0..6),
        extra in 0usize..4,
    ) {
        let p = Poly::new(coeffs);
        let r = p.degree().unwrap_or(0) + extra;
        let twice = p.reverse(r).unwrap().reverse(r).unwrap();
        prop_assert_eq!(twice, p);
    }
}
