//! Dense polynomials with exact coefficient arithmetic.
//!
//! `Poly` and `Poly2` are generic over the coefficient scalar; anything
//! satisfying [`Coeff`] works (`i64` in small tests, `BigInt` in the
//! production aliases at the crate root). Coefficients are stored in
//! ascending degree order and kept in normal form: the highest stored
//! coefficient is nonzero, and the zero polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;
use thiserror::Error;

/// Coefficient scalar: an exact signed ring element.
pub trait Coeff: Signed + Clone + PartialEq + fmt::Debug + fmt::Display {}
impl<T> Coeff for T where T: Signed + Clone + PartialEq + fmt::Debug + fmt::Display {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("polynomial degree {degree} exceeds reversal rank {rank}")]
    DegreeExceedsRank { degree: usize, rank: usize },
}

/// Univariate polynomial, ascending coefficients.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<T> {
    coeffs: Vec<T>,
}

impl<T: Coeff> Poly<T> {
    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Poly { coeffs: vec![T::one()] }
    }

    pub fn constant(c: T) -> Self {
        Self::new(vec![c])
    }

    /// A single term `c * t^degree`.
    pub fn monomial(c: T, degree: usize) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); degree + 1];
        coeffs[degree] = c;
        Poly { coeffs }
    }

    /// Normalizes by trimming trailing zeros.
    pub fn new(mut coeffs: Vec<T>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Coefficient of `t^i` (zero beyond the stored range).
    pub fn coefficient(&self, i: usize) -> T {
        self.coeffs.get(i).cloned().unwrap_or_else(T::zero)
    }

    pub fn coefficients(&self) -> &[T] {
        &self.coeffs
    }

    pub fn leading_coefficient(&self) -> Option<&T> {
        self.coeffs.last()
    }

    /// The involution `t^r * p(1/t)`: coefficient `i` of the result is
    /// coefficient `r - i` of the input. Defined only for `deg p <= r`.
    pub fn reverse(&self, r: usize) -> Result<Self, PolyError> {
        if let Some(d) = self.degree() {
            if d > r {
                return Err(PolyError::DegreeExceedsRank { degree: d, rank: r });
            }
        }
        let coeffs = (0..=r).map(|i| self.coefficient(r - i)).collect();
        Ok(Self::new(coeffs))
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &T) -> T {
        let mut acc = T::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x.clone() + c.clone();
        }
        acc
    }

    pub fn scale(&self, c: &T) -> Self {
        Self::new(self.coeffs.iter().map(|a| a.clone() * c.clone()).collect())
    }

    /// Multiplication by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![T::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        Poly { coeffs }
    }

    /// Substitute another polynomial for the variable.
    pub fn compose(&self, inner: &Poly<T>) -> Poly<T> {
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * inner) + &Poly::constant(c.clone());
        }
        acc
    }
}

impl<T: Coeff> Add for &Poly<T> {
    type Output = Poly<T>;
    fn add(self, rhs: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coefficient(i) + rhs.coefficient(i))
            .collect();
        Poly::new(coeffs)
    }
}

impl<T: Coeff> Sub for &Poly<T> {
    type Output = Poly<T>;
    fn sub(self, rhs: &Poly<T>) -> Poly<T> {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.coefficient(i) - rhs.coefficient(i))
            .collect();
        Poly::new(coeffs)
    }
}

impl<T: Coeff> Neg for &Poly<T> {
    type Output = Poly<T>;
    fn neg(self) -> Poly<T> {
        Poly::new(self.coeffs.iter().map(|c| T::zero() - c.clone()).collect())
    }
}

impl<T: Coeff> Mul for &Poly<T> {
    type Output = Poly<T>;
    fn mul(self, rhs: &Poly<T>) -> Poly<T> {
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero();
        }
        let mut coeffs = vec![T::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] = coeffs[i + j].clone() + a.clone() * b.clone();
            }
        }
        Poly::new(coeffs)
    }
}

impl<T: Coeff> fmt::Debug for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Ascending coefficient list, e.g. `[-8, 14, -7, 1]`; `[]` is zero.
impl<T: Coeff> fmt::Display for Poly<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

/// Bivariate polynomial; `coeffs[i][j]` is the coefficient of `x^i y^j`.
///
/// Normal form: no all-zero trailing row, and every row individually
/// trimmed of trailing zeros (so the zero polynomial is the empty grid).
#[derive(Clone, PartialEq, Eq)]
pub struct Poly2<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Coeff> Poly2<T> {
    pub fn zero() -> Self {
        Poly2 { rows: Vec::new() }
    }

    pub fn new(mut rows: Vec<Vec<T>>) -> Self {
        for row in &mut rows {
            while row.last().is_some_and(|c| c.is_zero()) {
                row.pop();
            }
        }
        while rows.last().is_some_and(|r| r.is_empty()) {
            rows.pop();
        }
        Poly2 { rows }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn coefficient(&self, i: usize, j: usize) -> T {
        self.rows
            .get(i)
            .and_then(|r| r.get(j))
            .cloned()
            .unwrap_or_else(T::zero)
    }

    /// Rows in ascending x-degree; each row ascending in y-degree.
    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn add_assign_at(&mut self, i: usize, j: usize, c: T) {
        if self.rows.len() <= i {
            self.rows.resize(i + 1, Vec::new());
        }
        let row = &mut self.rows[i];
        if row.len() <= j {
            row.resize(j + 1, T::zero());
        }
        row[j] = row[j].clone() + c;
    }

    /// Drops trailing zeros introduced by in-place accumulation.
    pub fn normalize(self) -> Self {
        Self::new(self.rows)
    }

    /// Substitute polynomials for both variables: `sum_ij c_ij xs^i ys^j`.
    pub fn compose(&self, xs: &Poly<T>, ys: &Poly<T>) -> Poly<T> {
        let mut acc = Poly::zero();
        for row in self.rows.iter().rev() {
            let row_poly = Poly::new(row.clone()).compose(ys);
            acc = &(&acc * xs) + &row_poly;
        }
        acc
    }

    pub fn eval(&self, x: &T, y: &T) -> T {
        self.compose(&Poly::constant(x.clone()), &Poly::constant(y.clone()))
            .coefficient(0)
    }
}

impl<T: Coeff> Add for &Poly2<T> {
    type Output = Poly2<T>;
    fn add(self, rhs: &Poly2<T>) -> Poly2<T> {
        let ni = self.rows.len().max(rhs.rows.len());
        let rows = (0..ni)
            .map(|i| {
                let nj = self
                    .rows
                    .get(i)
                    .map_or(0, Vec::len)
                    .max(rhs.rows.get(i).map_or(0, Vec::len));
                (0..nj)
                    .map(|j| self.coefficient(i, j) + rhs.coefficient(i, j))
                    .collect()
            })
            .collect();
        Poly2::new(rows)
    }
}

impl<T: Coeff> Mul for &Poly2<T> {
    type Output = Poly2<T>;
    fn mul(self, rhs: &Poly2<T>) -> Poly2<T> {
        let mut out = Poly2::zero();
        for (i1, r1) in self.rows.iter().enumerate() {
            for (j1, a) in r1.iter().enumerate() {
                if a.is_zero() {
                    continue;
                }
                for (i2, r2) in rhs.rows.iter().enumerate() {
                    for (j2, b) in r2.iter().enumerate() {
                        if !b.is_zero() {
                            out.add_assign_at(i1 + i2, j1 + j2, a.clone() * b.clone());
                        }
                    }
                }
            }
        }
        out.normalize()
    }
}

impl<T: Coeff> fmt::Debug for Poly2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<T: Coeff> fmt::Display for Poly2<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, row) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, c) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{c}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}
