//! The lattice of flats of a matroid, and order-theoretic predicates on
//! it: modularity, the projective-geometry conditions, and the geometric
//! (atomic + semimodular) validation used on hand-built lattices.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::matroid::Matroid;
use crate::set::ElementSet;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("flat family has no unique bottom element")]
    NoBottom,
    #[error("flat family has no unique top element")]
    NoTop,
    #[error(
        "modularity checks disagree: pairwise rank equality says {pairwise}, \
         hyperplane count says {hyperplane_count}"
    )]
    InconsistentModularityChecks { pairwise: bool, hyperplane_count: bool },
}

/// A violation reported by [`FlatLattice::check_geometric`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GeometryViolation {
    /// No unique least upper bound for the pair of flat indices.
    JoinNotUnique(usize, usize),
    /// No unique greatest lower bound for the pair of flat indices.
    MeetNotUnique(usize, usize),
    /// The flat is not the join of the atoms below it.
    NotAtomic(usize),
    /// rank(F) + rank(G) < rank(F v G) + rank(F ^ G).
    NotSemimodular(usize, usize),
}

impl fmt::Display for GeometryViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GeometryViolation::JoinNotUnique(a, b) => write!(f, "join of flats {a} and {b} is not unique"),
            GeometryViolation::MeetNotUnique(a, b) => write!(f, "meet of flats {a} and {b} is not unique"),
            GeometryViolation::NotAtomic(a) => write!(f, "flat {a} is not a join of atoms"),
            GeometryViolation::NotSemimodular(a, b) => {
                write!(f, "flats {a} and {b} violate semimodularity")
            }
        }
    }
}

/// Flats stratified by rank, ordered by (rank, bitmask). Order relation
/// is set inclusion; for lattices built from a matroid, joins and meets
/// are total.
///
/// Flats are stored as closed subsets of the *original* ground set even
/// for non-simple matroids, so intervals directly model restrictions and
/// contractions.
pub struct FlatLattice {
    flats: Vec<ElementSet>,
    rank_of: Vec<usize>,
    by_rank: Vec<Vec<usize>>,
    covers_up: Vec<Vec<usize>>,
    index: HashMap<u32, usize>,
    rank: usize,
}

impl FlatLattice {
    /// Builds the lattice of flats rank by rank: the flats of rank `k+1`
    /// are the closures `cl(F + e)` over rank-`k` flats `F` and elements
    /// `e` outside `F`.
    pub fn of_matroid(m: &Matroid) -> Self {
        let n = m.n();
        let top_set = m.closure(&ElementSet::full(n));
        debug_assert_eq!(top_set, ElementSet::full(n));
        let bottom = m.closure(&ElementSet::empty(n));

        let mut levels: Vec<Vec<ElementSet>> = vec![vec![bottom]];
        while levels.last().unwrap()[0] != top_set {
            let mut next: Vec<ElementSet> = Vec::new();
            for flat in levels.last().unwrap() {
                for e in flat.complement().iter() {
                    next.push(m.closure(&flat.insert(e)));
                }
            }
            next.sort();
            next.dedup();
            levels.push(next);
        }

        let rank = levels.len() - 1;
        let mut flats: Vec<ElementSet> = Vec::new();
        let mut rank_of: Vec<usize> = Vec::new();
        let mut by_rank: Vec<Vec<usize>> = Vec::new();
        for (k, level) in levels.iter().enumerate() {
            let start = flats.len();
            flats.extend(level.iter().copied());
            rank_of.extend(std::iter::repeat_n(k, level.len()));
            by_rank.push((start..flats.len()).collect());
        }
        let index: HashMap<u32, usize> =
            flats.iter().enumerate().map(|(i, f)| (f.bits(), i)).collect();

        // covers: in a graded lattice these are exactly the containments
        // with rank difference one
        let mut covers_up = vec![Vec::new(); flats.len()];
        for k in 0..rank {
            for &f in &by_rank[k] {
                for &g in &by_rank[k + 1] {
                    if flats[f].is_subset(&flats[g]) {
                        covers_up[f].push(g);
                    }
                }
            }
        }

        FlatLattice { flats, rank_of, by_rank, covers_up, index, rank }
    }

    /// Assembles a lattice from explicit flats and ranks (for validating
    /// hand-built examples). The family must have a unique bottom and top
    /// under inclusion; everything else is left to `check_geometric`.
    pub fn from_parts(
        mut members: Vec<(ElementSet, usize)>,
    ) -> Result<Self, LatticeError> {
        members.sort_by_key(|&(f, r)| (r, f));
        let flats: Vec<ElementSet> = members.iter().map(|&(f, _)| f).collect();
        let rank_of: Vec<usize> = members.iter().map(|&(_, r)| r).collect();
        if !flats.iter().all(|f| flats[0].is_subset(f)) {
            return Err(LatticeError::NoBottom);
        }
        let top = *flats.last().unwrap();
        if !flats.iter().all(|f| f.is_subset(&top)) {
            return Err(LatticeError::NoTop);
        }
        let rank = *rank_of.last().unwrap();
        let mut by_rank = vec![Vec::new(); rank + 1];
        for (i, &r) in rank_of.iter().enumerate() {
            by_rank[r].push(i);
        }
        let index = flats.iter().enumerate().map(|(i, f)| (f.bits(), i)).collect();
        let mut covers_up = vec![Vec::new(); flats.len()];
        for f in 0..flats.len() {
            for g in 0..flats.len() {
                let strict = f != g && flats[f].is_subset(&flats[g]);
                if strict
                    && !(0..flats.len()).any(|h| {
                        h != f
                            && h != g
                            && flats[f].is_subset(&flats[h])
                            && flats[h].is_subset(&flats[g])
                    })
                {
                    covers_up[f].push(g);
                }
            }
        }
        Ok(FlatLattice { flats, rank_of, by_rank, covers_up, index, rank })
    }

    pub fn num_flats(&self) -> usize {
        self.flats.len()
    }

    pub fn flat(&self, i: usize) -> ElementSet {
        self.flats[i]
    }

    pub fn rank_of(&self, i: usize) -> usize {
        self.rank_of[i]
    }

    /// Rank of the whole lattice (the rank of the top flat).
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.flats.len() - 1
    }

    /// Indices of the rank-`k` flats, ascending.
    pub fn flats_of_rank(&self, k: usize) -> &[usize] {
        self.by_rank.get(k).map_or(&[], Vec::as_slice)
    }

    /// Number of rank-`k` flats (the Whitney number of the second kind).
    pub fn count_of_rank(&self, k: usize) -> usize {
        self.flats_of_rank(k).len()
    }

    pub fn atoms(&self) -> &[usize] {
        self.flats_of_rank(1)
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.covers_up[i]
    }

    pub fn index_of(&self, flat: &ElementSet) -> Option<usize> {
        self.index.get(&flat.bits()).copied()
    }

    pub fn leq(&self, f: usize, g: usize) -> bool {
        self.flats[f].is_subset(&self.flats[g])
    }

    /// Least upper bound; the first (lowest-rank) flat containing the
    /// union, which is unique on genuine lattices of flats.
    pub fn join(&self, f: usize, g: usize) -> Option<usize> {
        let union = self.flats[f].union(&self.flats[g]);
        if let Some(&i) = self.index.get(&union.bits()) {
            return Some(i);
        }
        self.flats.iter().position(|h| union.is_subset(h))
    }

    /// Greatest lower bound; the intersection when it is a flat (always,
    /// for matroid lattices), otherwise the last flat inside it.
    pub fn meet(&self, f: usize, g: usize) -> Option<usize> {
        let inter = self.flats[f].intersection(&self.flats[g]);
        if let Some(&i) = self.index.get(&inter.bits()) {
            return Some(i);
        }
        self.flats.iter().rposition(|h| h.is_subset(&inter))
    }

    /// Indices of the flats in the interval `[f, g]`, ascending. Relies
    /// on the (rank, bitmask) storage order: every member lies between
    /// `f` and `g`.
    pub fn interval(&self, f: usize, g: usize) -> Vec<usize> {
        (f..=g)
            .filter(|&h| self.leq(f, h) && self.leq(h, g))
            .collect()
    }

    /// Modularity via the pairwise rank equality
    /// `rank(F) + rank(G) = rank(F v G) + rank(F ^ G)`, cross-checked
    /// against the hyperplane-count criterion `W_1 = W_{r-1}`. The two
    /// must agree on geometric lattices; a disagreement signals a bug.
    pub fn is_modular(&self) -> Result<bool, LatticeError> {
        let n = self.flats.len();
        let mut pairwise = true;
        'outer: for f in 0..n {
            for g in f + 1..n {
                let join = self.join(f, g);
                let meet = self.meet(f, g);
                let equal = match (join, meet) {
                    (Some(j), Some(m)) => {
                        self.rank_of[f] + self.rank_of[g]
                            == self.rank_of[j] + self.rank_of[m]
                    }
                    _ => false,
                };
                if !equal {
                    pairwise = false;
                    break 'outer;
                }
            }
        }
        let hyperplane_count = if self.rank < 1 {
            true
        } else {
            self.count_of_rank(1) == self.count_of_rank(self.rank - 1)
        };
        if pairwise != hyperplane_count {
            return Err(LatticeError::InconsistentModularityChecks {
                pairwise,
                hyperplane_count,
            });
        }
        Ok(pairwise)
    }

    /// The two projective-geometry conditions: every rank-2 flat contains
    /// at least three atoms, and every hyperplane meets every rank-2 flat
    /// above the bottom.
    pub fn is_projective_geometry(&self) -> bool {
        let lines = self.flats_of_rank(2);
        let three_atoms_per_line = lines.iter().all(|&line| {
            self.atoms().iter().filter(|&&a| self.leq(a, line)).count() >= 3
        });
        if !three_atoms_per_line {
            return false;
        }
        if self.rank < 1 {
            return true;
        }
        let hyperplanes = self.flats_of_rank(self.rank - 1);
        hyperplanes.iter().all(|&h| {
            lines.iter().all(|&line| {
                self.meet(h, line)
                    .is_some_and(|m| self.rank_of[m] >= 1)
            })
        })
    }

    /// Exhaustively verifies lattice structure, atomicity and
    /// semimodularity; returns every violation found.
    pub fn check_geometric(&self) -> Vec<GeometryViolation> {
        let n = self.flats.len();
        let mut violations = Vec::new();

        for f in 0..n {
            for g in f + 1..n {
                let union = self.flats[f].union(&self.flats[g]);
                let uppers: Vec<usize> =
                    (0..n).filter(|&h| union.is_subset(&self.flats[h])).collect();
                let minimal: Vec<usize> = uppers
                    .iter()
                    .copied()
                    .filter(|&h| {
                        !uppers.iter().any(|&k| k != h && self.leq(k, h))
                    })
                    .collect();
                if minimal.len() != 1 {
                    violations.push(GeometryViolation::JoinNotUnique(f, g));
                }
                let inter = self.flats[f].intersection(&self.flats[g]);
                let lowers: Vec<usize> =
                    (0..n).filter(|&h| self.flats[h].is_subset(&inter)).collect();
                let maximal: Vec<usize> = lowers
                    .iter()
                    .copied()
                    .filter(|&h| {
                        !lowers.iter().any(|&k| k != h && self.leq(h, k))
                    })
                    .collect();
                if maximal.len() != 1 {
                    violations.push(GeometryViolation::MeetNotUnique(f, g));
                }
                if let (Some(&j), Some(&m)) = (minimal.first(), maximal.first()) {
                    if self.rank_of[f] + self.rank_of[g]
                        < self.rank_of[j] + self.rank_of[m]
                    {
                        violations.push(GeometryViolation::NotSemimodular(f, g));
                    }
                }
            }
        }

        for f in 0..n {
            if self.rank_of[f] < 1 {
                continue;
            }
            let mut union = self.flats[self.bottom()];
            for &a in self.atoms() {
                if self.leq(a, f) {
                    union = union.union(&self.flats[a]);
                }
            }
            let joined = self.flats.iter().position(|h| union.is_subset(h));
            if joined != Some(f) {
                violations.push(GeometryViolation::NotAtomic(f));
            }
        }

        violations
    }
}

impl fmt::Debug for FlatLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "FlatLattice(rank={}, counts={:?})",
            self.rank,
            self.by_rank.iter().map(Vec::len).collect::<Vec<_>>()
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::builders;

    #[test]
    fn boolean_lattice_is_the_power_set() {
        let lat = FlatLattice::of_matroid(&builders::boolean(3).unwrap());
        assert_eq!(lat.num_flats(), 8);
        let counts: Vec<usize> = (0..=3).map(|k| lat.count_of_rank(k)).collect();
        assert_eq!(counts, vec![1, 3, 3, 1]);
        assert!(lat.is_modular().unwrap());
        assert!(!lat.is_projective_geometry());
        assert!(lat.check_geometric().is_empty());
    }

    #[test]
    fn fano_lattice_counts() {
        let lat = FlatLattice::of_matroid(&builders::fano());
        let counts: Vec<usize> = (0..=3).map(|k| lat.count_of_rank(k)).collect();
        assert_eq!(counts, vec![1, 7, 7, 1]);
        assert!(lat.is_modular().unwrap());
        assert!(lat.is_projective_geometry());
        // any two lines of the Fano plane meet in a point
        for &l1 in lat.flats_of_rank(2) {
            for &l2 in lat.flats_of_rank(2) {
                if l1 != l2 {
                    let m = lat.meet(l1, l2).unwrap();
                    assert_eq!(lat.rank_of(m), 1);
                }
            }
        }
    }

    #[test]
    fn uniform_3_4_lattice() {
        let lat = FlatLattice::of_matroid(&builders::uniform(3, 4).unwrap());
        let counts: Vec<usize> = (0..=3).map(|k| lat.count_of_rank(k)).collect();
        assert_eq!(counts, vec![1, 4, 6, 1]);
        assert!(!lat.is_modular().unwrap());
        // join of two points is their pair flat
        let a = lat.atoms()[0];
        let b = lat.atoms()[1];
        let j = lat.join(a, b).unwrap();
        assert_eq!(lat.rank_of(j), 2);
        assert_eq!(lat.join(a, lat.bottom()), Some(a));
    }

    #[test]
    fn loops_and_parallels_land_in_flats() {
        // contract U_{2,4} by one point: three parallel elements
        let (m, _) = builders::uniform(2, 4)
            .unwrap()
            .contract(&ElementSet::singleton(0, 4))
            .unwrap();
        let lat = FlatLattice::of_matroid(&m);
        assert_eq!(lat.num_flats(), 2);
        assert_eq!(lat.rank(), 1);
    }

    #[test]
    fn projective_geometry_examples() {
        let u23 = FlatLattice::of_matroid(&builders::uniform(2, 3).unwrap());
        assert!(u23.is_projective_geometry());
        let b1 = FlatLattice::of_matroid(&builders::boolean(1).unwrap());
        assert!(b1.check_geometric().is_empty());
    }

    #[test]
    fn pentagon_fails_geometricity() {
        // N5: bottom < a < b < top, bottom < c < top, ranks by height
        let n5 = FlatLattice::from_parts(vec![
            (ElementSet::empty(3), 0),
            (ElementSet::from_elements([0], 3), 1),
            (ElementSet::from_elements([0, 1], 3), 2),
            (ElementSet::from_elements([2], 3), 1),
            (ElementSet::full(3), 3),
        ])
        .unwrap();
        let violations = n5.check_geometric();
        assert!(violations
            .iter()
            .any(|v| matches!(v, GeometryViolation::NotSemimodular(..))));
        assert!(violations
            .iter()
            .any(|v| matches!(v, GeometryViolation::NotAtomic(..))));
    }

    #[test]
    fn modularity_shortcut_agrees_on_corpus_samples() {
        for spec in ["uniform:2,4", "uniform:3,5", "boolean:4", "fano"] {
            let lat = FlatLattice::of_matroid(&builders::build_named(spec).unwrap());
            lat.is_modular().unwrap();
        }
    }
}
