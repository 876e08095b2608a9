//! Möbius function, characteristic polynomials of intervals, and the
//! singly- and doubly-indexed Whitney numbers of a lattice of flats.

use crate::lattice::FlatLattice;
use crate::poly::{Coeff, Poly};

/// Dense table of Möbius values over all flat pairs; `mu(f, g)` is zero
/// unless `f <= g`.
pub struct MobiusTable<T> {
    size: usize,
    mu: Vec<T>,
}

impl<T: Coeff> MobiusTable<T> {
    /// Computes the whole table by the defining recursion
    /// `mu(F, F) = 1`, `mu(F, G) = -sum_{F <= H < G} mu(F, H)`.
    pub fn new(lattice: &FlatLattice) -> Self {
        let n = lattice.num_flats();
        let mut mu = vec![T::zero(); n * n];
        for f in 0..n {
            mu[f * n + f] = T::one();
            for g in f + 1..n {
                if !lattice.leq(f, g) {
                    continue;
                }
                let mut sum = T::zero();
                for h in f..g {
                    if lattice.leq(f, h) && lattice.leq(h, g) {
                        sum = sum + mu[f * n + h].clone();
                    }
                }
                mu[f * n + g] = T::zero() - sum;
            }
        }
        MobiusTable { size: n, mu }
    }

    pub fn mu(&self, f: usize, g: usize) -> &T {
        &self.mu[f * self.size + g]
    }

    /// Möbius value of the whole lattice, `mu(bottom, top)`.
    pub fn mu_total(&self, lattice: &FlatLattice) -> &T {
        self.mu(lattice.bottom(), lattice.top())
    }

    /// Characteristic polynomial of the interval `[f, g]`:
    /// `sum_{f <= h <= g} mu(f, h) t^{rank(g) - rank(h)}`. Monic of
    /// degree `rank(g) - rank(f)`, and vanishes at 1 on proper intervals.
    pub fn characteristic(&self, lattice: &FlatLattice, f: usize, g: usize) -> Poly<T> {
        let top_rank = lattice.rank_of(g);
        let mut coeffs = vec![T::zero(); top_rank - lattice.rank_of(f) + 1];
        for h in lattice.interval(f, g) {
            let deg = top_rank - lattice.rank_of(h);
            coeffs[deg] = coeffs[deg].clone() + self.mu(f, h).clone();
        }
        Poly::new(coeffs)
    }
}

/// Doubly-indexed Whitney numbers: `first[i][j]` sums `mu(F, G)` and
/// `second[i][j]` counts pairs `F <= G` over flats of ranks `i` and `j`.
/// Row 0 recovers the ordinary Whitney numbers of both kinds.
pub struct WhitneyTable<T> {
    rank: usize,
    first: Vec<Vec<T>>,
    second: Vec<Vec<T>>,
}

impl<T: Coeff> WhitneyTable<T> {
    pub fn new(lattice: &FlatLattice, mobius: &MobiusTable<T>) -> Self {
        let r = lattice.rank();
        let mut first = vec![vec![T::zero(); r + 1]; r + 1];
        let mut second = vec![vec![T::zero(); r + 1]; r + 1];
        let n = lattice.num_flats();
        for f in 0..n {
            for g in f..n {
                if !lattice.leq(f, g) {
                    continue;
                }
                let (i, j) = (lattice.rank_of(f), lattice.rank_of(g));
                first[i][j] = first[i][j].clone() + mobius.mu(f, g).clone();
                second[i][j] = second[i][j].clone() + T::one();
            }
        }
        WhitneyTable { rank: r, first, second }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// `w_{i,j}`, zero outside the table.
    pub fn first_kind(&self, i: usize, j: usize) -> T {
        self.first
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// `W_{i,j}`, zero outside the table.
    pub fn second_kind(&self, i: usize, j: usize) -> T {
        self.second
            .get(i)
            .and_then(|row| row.get(j))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Whitney numbers of the first kind `w_k = w_{0,k}` (signed).
    pub fn first_kind_row(&self) -> Vec<T> {
        self.first[0].clone()
    }

    /// Whitney numbers of the second kind `W_k` (flat counts).
    pub fn second_kind_row(&self) -> Vec<T> {
        self.second[0].clone()
    }
}

#[cfg(test)]
mod tests {
    use num_traits::Signed;

    use super::*;
    use crate::builders;
    use crate::lattice::FlatLattice;

    fn table(spec: &str) -> (FlatLattice, MobiusTable<i64>, WhitneyTable<i64>) {
        let lat = FlatLattice::of_matroid(&builders::build_named(spec).unwrap());
        let mob = MobiusTable::new(&lat);
        let whit = WhitneyTable::new(&lat, &mob);
        (lat, mob, whit)
    }

    #[test]
    fn mobius_base_cases() {
        let (lat, mob, _) = table("uniform:2,3");
        assert_eq!(*mob.mu(lat.bottom(), lat.bottom()), 1);
        assert_eq!(*mob.mu_total(&lat), 2);
        assert_eq!(*mob.mu(lat.atoms()[0], lat.bottom()), 0);
    }

    #[test]
    fn fano_mobius_is_minus_eight() {
        let (lat, mob, _) = table("fano");
        assert_eq!(mob.mu_total(&lat).abs(), 8);
    }

    #[test]
    fn mobius_defining_identity_sums_to_zero() {
        let (lat, mob, _) = table("uniform:3,5");
        for g in 1..lat.num_flats() {
            let total: i64 = (0..=g)
                .filter(|&h| lat.leq(lat.bottom(), h) && lat.leq(h, g))
                .map(|h| mob.mu(lat.bottom(), h))
                .sum();
            assert_eq!(total, 0, "flat {g}");
        }
    }

    #[test]
    fn characteristic_polynomials() {
        let (lat, mob, _) = table("fano");
        let chi = mob.characteristic(&lat, lat.bottom(), lat.top());
        assert_eq!(chi.coefficients(), &[-8, 14, -7, 1]);
        assert_eq!(chi.eval(&1), 0);

        let (lat, mob, _) = table("uniform:2,5");
        let chi = mob.characteristic(&lat, lat.bottom(), lat.top());
        assert_eq!(chi.coefficients(), &[4, -5, 1]);

        // a point interval has constant polynomial 1
        let (lat, mob, _) = table("uniform:2,3");
        assert!(mob.characteristic(&lat, lat.top(), lat.top()).is_one());
    }

    #[test]
    fn whitney_numbers_of_uniform_3_4() {
        let (_, _, whit) = table("uniform:3,4");
        assert_eq!(whit.first_kind_row(), vec![1, -4, 6, -3]);
        assert_eq!(whit.second_kind_row(), vec![1, 4, 6, 1]);
        assert_eq!(whit.second_kind(1, 2), 12);
        assert_eq!(whit.first_kind(1, 1), 4);
    }

    #[test]
    fn boolean_is_top_heavy_symmetric() {
        let (_, _, whit) = table("boolean:3");
        assert_eq!(whit.second_kind_row(), vec![1, 3, 3, 1]);
    }

    #[test]
    fn chi_coefficients_match_first_kind_row() {
        for spec in ["uniform:3,5", "fano", "boolean:4"] {
            let (lat, mob, whit) = table(spec);
            let chi = mob.characteristic(&lat, lat.bottom(), lat.top());
            let r = lat.rank();
            for k in 0..=r {
                assert_eq!(chi.coefficient(r - k), whit.first_kind(0, k), "{spec} k={k}");
            }
        }
    }
}
