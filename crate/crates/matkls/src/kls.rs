//! The Kazhdan-Lusztig-Stanley engine: `P` and `Q` polynomials over every
//! interval of a lattice of flats, the convolution cross-check for `Q`,
//! the Tutte polynomial, and the closed-form coefficient formulas.
//!
//! For an interval of rank `rho`, `P` is the unique polynomial with
//! `deg P < rho/2` satisfying
//! `t^rho P(1/t) = sum_H chi_[F,H] * P_[H,G]`, and `Q` the analogue for
//! the inverse Kazhdan-Lusztig-Stanley function, computed from
//! `Q(t) - t^rho Q(1/t) =
//!    (-1)^rho sum_{H<G} (-1)^{d} t^{d} Q_[F,H](1/t) * chi_[H,G](t)`
//! with `d = rank H - rank F`. Both follow from the degree bound: the
//! reversed part occupies degrees strictly above `rho/2`, so the low
//! coefficients can be read off directly.

use thiserror::Error;

use crate::lattice::FlatLattice;
use crate::matroid::Matroid;
use crate::poly::{Coeff, Poly, Poly2};
use crate::whitney::{MobiusTable, WhitneyTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum KlsError {
    #[error("flats {0} and {1} are not comparable")]
    NotComparable(usize, usize),
    #[error("ground set of size {n} is too large for subset expansion (limit {limit})")]
    TooLarge { n: usize, limit: usize },
}

/// Ground-set limit for the 2^n Tutte subset expansion.
pub const TUTTE_LIMIT: usize = 20;

/// Per-lattice cache of interval polynomials, keyed by flat-index pairs.
/// Build one per lattice and pass the same lattice to every call.
pub struct KlsMemo<T> {
    size: usize,
    mobius: MobiusTable<T>,
    chi: Vec<Option<Poly<T>>>,
    p: Vec<Option<Poly<T>>>,
    q: Vec<Option<Poly<T>>>,
}

impl<T: Coeff> KlsMemo<T> {
    pub fn new(lattice: &FlatLattice) -> Self {
        let size = lattice.num_flats();
        KlsMemo {
            size,
            mobius: MobiusTable::new(lattice),
            chi: vec![None; size * size],
            p: vec![None; size * size],
            q: vec![None; size * size],
        }
    }

    pub fn mobius(&self) -> &MobiusTable<T> {
        &self.mobius
    }

    fn key(&self, f: usize, g: usize) -> usize {
        f * self.size + g
    }

    /// Characteristic polynomial of the interval `[f, g]`, cached.
    pub fn chi(&mut self, lattice: &FlatLattice, f: usize, g: usize) -> Poly<T> {
        let key = self.key(f, g);
        if let Some(p) = &self.chi[key] {
            return p.clone();
        }
        let value = self.mobius.characteristic(lattice, f, g);
        self.chi[key] = Some(value.clone());
        value
    }

    /// Kazhdan-Lusztig polynomial of the interval `[f, g]`.
    pub fn kl(&mut self, lattice: &FlatLattice, f: usize, g: usize) -> Result<Poly<T>, KlsError> {
        if !lattice.leq(f, g) {
            return Err(KlsError::NotComparable(f, g));
        }
        Ok(self.kl_inner(lattice, f, g))
    }

    fn kl_inner(&mut self, lattice: &FlatLattice, f: usize, g: usize) -> Poly<T> {
        let key = self.key(f, g);
        if let Some(p) = &self.p[key] {
            return p.clone();
        }
        let rho = lattice.rank_of(g) - lattice.rank_of(f);
        let value = if rho == 0 {
            Poly::one()
        } else {
            // z = sum over f < h <= g of chi_[f,h] * P_[h,g]; then
            // t^rho P(1/t) = P + z and deg P < rho/2 give
            // c_i = [t^{rho-i}] z for the meaningful range of i
            let mut z = Poly::zero();
            for h in lattice.interval(f, g) {
                if h == f {
                    continue;
                }
                let chi = self.chi(lattice, f, h);
                let p_upper = self.kl_inner(lattice, h, g);
                z = &z + &(&chi * &p_upper);
            }
            let coeffs = (0..rho.div_ceil(2)).map(|i| z.coefficient(rho - i)).collect();
            Poly::new(coeffs)
        };
        self.p[key] = Some(value.clone());
        value
    }

    /// Inverse Kazhdan-Lusztig polynomial of the interval `[f, g]`.
    pub fn inverse_kl(
        &mut self,
        lattice: &FlatLattice,
        f: usize,
        g: usize,
    ) -> Result<Poly<T>, KlsError> {
        if !lattice.leq(f, g) {
            return Err(KlsError::NotComparable(f, g));
        }
        Ok(self.inverse_kl_inner(lattice, f, g))
    }

    fn inverse_kl_inner(&mut self, lattice: &FlatLattice, f: usize, g: usize) -> Poly<T> {
        let key = self.key(f, g);
        if let Some(p) = &self.q[key] {
            return p.clone();
        }
        let rho = lattice.rank_of(g) - lattice.rank_of(f);
        let value = if rho == 0 {
            Poly::one()
        } else {
            let mut rhs = Poly::zero();
            for h in lattice.interval(f, g) {
                if h == g {
                    continue;
                }
                let d = lattice.rank_of(h) - lattice.rank_of(f);
                let reversed_q = self
                    .inverse_kl_inner(lattice, f, h)
                    .reverse(d)
                    .expect("deg Q < d/2 <= d");
                let term = &reversed_q * &self.chi(lattice, h, g);
                rhs = if d % 2 == 1 { &rhs - &term } else { &rhs + &term };
            }
            if rho % 2 == 1 {
                rhs = -&rhs;
            }
            let coeffs = (0..rho.div_ceil(2)).map(|i| rhs.coefficient(i)).collect();
            Poly::new(coeffs)
        };
        self.q[key] = Some(value.clone());
        value
    }

    /// Solves the convolution identity
    /// `sum_F P_[bottom,F] (-1)^{r - rank F} Q_[F,top] = 0`
    /// for the top-interval `Q`. An independent route that must agree
    /// with [`KlsMemo::inverse_kl`].
    pub fn inverse_kl_via_convolution(&mut self, lattice: &FlatLattice) -> Poly<T> {
        let (bottom, top) = (lattice.bottom(), lattice.top());
        if lattice.rank() == 0 {
            return Poly::one();
        }
        let mut acc = Poly::zero();
        for f in bottom..=top {
            if f == bottom {
                continue;
            }
            let p_lower = self.kl_inner(lattice, bottom, f);
            let q_upper = self.inverse_kl_inner(lattice, f, top);
            let term = &p_lower * &q_upper;
            acc = if lattice.rank_of(f) % 2 == 1 { &acc - &term } else { &acc + &term };
        }
        -&acc
    }

    /// Both zero-identities of the convolution between `P` and `Q`:
    /// `sum_F P_[bot,F] (-1)^{r-rank F} Q_[F,top]` and the mirrored
    /// `sum_F P_[F,top] (-1)^{rank F} Q_[bot,F]`. Both vanish identically
    /// whenever the lattice has positive rank.
    pub fn convolution_residuals(&mut self, lattice: &FlatLattice) -> (Poly<T>, Poly<T>) {
        let (bottom, top) = (lattice.bottom(), lattice.top());
        let r = lattice.rank();
        let mut left = Poly::zero();
        let mut right = Poly::zero();
        for f in bottom..=top {
            let rho_f = lattice.rank_of(f);
            let p_lower = self.kl_inner(lattice, bottom, f);
            let q_upper = self.inverse_kl_inner(lattice, f, top);
            let term = &p_lower * &q_upper;
            left = if (r - rho_f) % 2 == 1 { &left - &term } else { &left + &term };
            let p_upper = self.kl_inner(lattice, f, top);
            let q_lower = self.inverse_kl_inner(lattice, bottom, f);
            let term = &p_upper * &q_lower;
            right = if rho_f % 2 == 1 { &right - &term } else { &right + &term };
        }
        (left, right)
    }
}

/// `[t^0] Q = |mu(bottom, top)|`.
pub fn q_constant_term<T: Coeff>(lattice: &FlatLattice, mobius: &MobiusTable<T>) -> T {
    mobius.mu_total(lattice).abs()
}

/// `[t^1] Q = |w_{1,r}| - |w_{0,r-1}|` from the doubly-indexed Whitney
/// numbers, for the lattice of a simple matroid of rank >= 1.
pub fn q_linear_coefficient<T: Coeff>(whitney: &WhitneyTable<T>) -> T {
    let r = whitney.rank();
    if r == 0 {
        return T::zero();
    }
    whitney.first_kind(1, r).abs() - whitney.first_kind(0, r - 1).abs()
}

/// Tutte polynomial by exact subset expansion:
/// `T(x, y) = sum_{A subset E} (x-1)^{r - rank A} (y-1)^{|A| - rank A}`.
pub fn tutte_polynomial<T: Coeff>(m: &Matroid) -> Result<Poly2<T>, KlsError> {
    let n = m.n();
    if n > TUTTE_LIMIT {
        return Err(KlsError::TooLarge { n, limit: TUTTE_LIMIT });
    }
    let r = m.rank();

    // bucket subsets by (rank, size), then expand each bucket once
    let mut counts = vec![vec![T::zero(); n + 1]; r + 1];
    for mask in 0..(1u64 << n) {
        let subset = crate::set::ElementSet::from_bits(mask as u32, n);
        let rank = m.rank_of(&subset);
        counts[rank][subset.len()] = counts[rank][subset.len()].clone() + T::one();
    }

    let minus_one = Poly::new(vec![T::zero() - T::one(), T::one()]); // x - 1
    let mut powers: Vec<Poly<T>> = vec![Poly::one()];
    for i in 1..=n.max(r) {
        powers.push(&powers[i - 1] * &minus_one);
    }

    let mut tutte = Poly2::zero();
    for (rank, row) in counts.iter().enumerate() {
        for (size, count) in row.iter().enumerate() {
            if count.is_zero() {
                continue;
            }
            let xs = powers[r - rank].scale(count);
            let ys = &powers[size - rank];
            for (i, a) in xs.coefficients().iter().enumerate() {
                for (j, b) in ys.coefficients().iter().enumerate() {
                    tutte.add_assign_at(i, j, a.clone() * b.clone());
                }
            }
        }
    }
    Ok(tutte.normalize())
}

/// Characteristic polynomial through the Tutte specialization
/// `chi(t) = (-1)^r T(1-t, 0)`; the zero polynomial when the matroid has
/// a loop. Must agree with the Möbius-sum route on loopless matroids.
pub fn char_from_tutte<T: Coeff>(m: &Matroid) -> Result<Poly<T>, KlsError> {
    if !m.loops().is_empty() {
        return Ok(Poly::zero());
    }
    let tutte = tutte_polynomial::<T>(m)?;
    let one_minus_t = Poly::new(vec![T::one(), T::zero() - T::one()]);
    let chi = tutte.compose(&one_minus_t, &Poly::zero());
    Ok(if m.rank() % 2 == 1 { -&chi } else { chi })
}
