//! Matroid isomorphism, minor containment, and regularity testing via
//! the excluded minors U_{2,4}, F_7 and F_7*.

use std::sync::OnceLock;

use crate::builders;
use crate::lattice::FlatLattice;
use crate::matroid::Matroid;
use crate::set::ElementSet;

/// Cheap per-element signature used to restrict candidate images.
fn element_signatures(m: &Matroid) -> Vec<(usize, bool, usize)> {
    let loops = m.loops();
    let classes = m.parallel_classes();
    (0..m.n())
        .map(|e| {
            let degree = m.bases().iter().filter(|b| b.contains(e)).count();
            let class_size = classes
                .iter()
                .find(|c| c.contains(e))
                .map_or(0, ElementSet::len);
            (degree, loops.contains(e), class_size)
        })
        .collect()
}

/// Matroid-level invariant vector: agreement is necessary for
/// isomorphism and prunes the backtracking search.
fn profile(m: &Matroid) -> (usize, usize, usize, Vec<usize>, Vec<(usize, bool, usize)>) {
    let lattice = FlatLattice::of_matroid(m);
    let flat_counts = (0..=lattice.rank()).map(|k| lattice.count_of_rank(k)).collect();
    let mut signatures = element_signatures(m);
    signatures.sort();
    (m.n(), m.rank(), m.bases().len(), flat_counts, signatures)
}

/// Searches for a ground-set bijection mapping bases onto bases, and
/// returns one as `image[element of a] = element of b`.
pub fn isomorphism(a: &Matroid, b: &Matroid) -> Option<Vec<usize>> {
    if profile(a) != profile(b) {
        return None;
    }
    let n = a.n();
    let sig_a = element_signatures(a);
    let sig_b = element_signatures(b);

    struct Search<'m> {
        a: &'m Matroid,
        b: &'m Matroid,
        sig_a: Vec<(usize, bool, usize)>,
        sig_b: Vec<(usize, bool, usize)>,
        image: Vec<usize>,
        used: u32,
        prefix_a: ElementSet,
        prefix_b: ElementSet,
    }

    impl Search<'_> {
        fn extend(&mut self, e: usize) -> bool {
            let n = self.a.n();
            if e == n {
                return self.a.bases().iter().all(|basis| {
                    let mapped =
                        ElementSet::from_elements(basis.iter().map(|x| self.image[x]), n);
                    self.b.is_basis(&mapped)
                });
            }
            for j in 0..n {
                if self.used & (1 << j) != 0 || self.sig_b[j] != self.sig_a[e] {
                    continue;
                }
                let next_a = self.prefix_a.insert(e);
                let next_b = self.prefix_b.insert(j);
                if self.a.rank_of(&next_a) != self.b.rank_of(&next_b) {
                    continue;
                }
                // pairwise ranks with earlier elements catch parallel and
                // series structure early
                let pairs_ok = (0..e).all(|i| {
                    let pa = ElementSet::from_elements([i, e], n);
                    let pb = ElementSet::from_elements([self.image[i], j], n);
                    self.a.rank_of(&pa) == self.b.rank_of(&pb)
                });
                if !pairs_ok {
                    continue;
                }
                self.image[e] = j;
                self.used |= 1 << j;
                let (old_a, old_b) = (self.prefix_a, self.prefix_b);
                self.prefix_a = next_a;
                self.prefix_b = next_b;
                if self.extend(e + 1) {
                    return true;
                }
                self.prefix_a = old_a;
                self.prefix_b = old_b;
                self.used &= !(1 << j);
            }
            false
        }
    }

    let mut search = Search {
        a,
        b,
        sig_a,
        sig_b,
        image: vec![0; n],
        used: 0,
        prefix_a: ElementSet::empty(n),
        prefix_b: ElementSet::empty(n),
    };
    search.extend(0).then_some(search.image)
}

pub fn are_isomorphic(a: &Matroid, b: &Matroid) -> bool {
    isomorphism(a, b).is_some()
}

/// True iff some sequence of deletions and contractions of `m` yields a
/// matroid isomorphic to `target`. The contraction set can be taken
/// independent with size fixed to the rank difference, which prunes the
/// dominant search factor; the kept set must span the contraction.
pub fn has_minor(m: &Matroid, target: &Matroid) -> bool {
    let (r, rt) = (m.rank(), target.rank());
    if rt > r || target.n() > m.n() || target.n() - rt > m.n() - r {
        return false;
    }
    let contract_size = r - rt;
    let full = m.ground_set();
    for contract in full.k_subsets(contract_size) {
        if m.rank_of(&contract) != contract_size {
            continue;
        }
        for kept in contract.complement().k_subsets(target.n()) {
            if m.rank_of(&kept.union(&contract)) != r {
                continue;
            }
            let minor_bases: Vec<ElementSet> = m
                .bases()
                .iter()
                .filter(|b| contract.is_subset(b) && b.difference(&contract).is_subset(&kept))
                .map(|b| {
                    ElementSet::from_elements(
                        b.difference(&contract)
                            .iter()
                            .map(|e| kept.iter().position(|k| k == e).unwrap()),
                        target.n(),
                    )
                })
                .collect();
            if minor_bases.len() != target.bases().len() {
                continue;
            }
            let minor = Matroid::from_valid_bases(target.n(), minor_bases);
            if are_isomorphic(&minor, target) {
                return true;
            }
        }
    }
    false
}

fn excluded_minors() -> &'static [Matroid; 3] {
    static MINORS: OnceLock<[Matroid; 3]> = OnceLock::new();
    MINORS.get_or_init(|| {
        [
            builders::uniform(2, 4).expect("U_{2,4}"),
            builders::fano(),
            builders::fano_dual(),
        ]
    })
}

/// Regularity via the excluded-minor characterization: no minor
/// isomorphic to U_{2,4}, F_7, or F_7*.
pub fn is_regular(m: &Matroid) -> bool {
    excluded_minors().iter().all(|excluded| !has_minor(m, excluded))
}
