//! Exact-arithmetic engine for Kazhdan-Lusztig polynomials of matroids.
//!
//! The crate builds matroids (from bases, matrices over small prime
//! fields, graphs, or a named grammar), constructs their lattices of
//! flats, and computes the classical lattice invariants — Möbius
//! function, characteristic polynomial, Whitney numbers, Tutte
//! polynomial — together with the Kazhdan-Lusztig polynomial `P_M(t)` and
//! its inverse `Q_M(t)` over every interval. On top of that sits a
//! checker that mechanically verifies a family of identities relating
//! these polynomials on a curated corpus of small matroids.
//!
//! Polynomial arithmetic is generic over the coefficient scalar through
//! [`poly::Coeff`]; the concrete aliases below fix arbitrary-precision
//! integers for all production paths.

pub mod analysis;
pub mod builders;
pub mod cli;
pub mod iso;
pub mod kls;
pub mod lattice;
pub mod matroid;
pub mod poly;
pub mod report;
pub mod set;
pub mod whitney;

/// Exact integer scalar used everywhere outside of tests.
pub type Int = num_bigint::BigInt;
/// Univariate polynomials with [`Int`] coefficients (chi, P, Q).
pub type IntPoly = poly::Poly<Int>;
/// Bivariate polynomials with [`Int`] coefficients (Tutte).
pub type IntPoly2 = poly::Poly2<Int>;

pub use lattice::FlatLattice;
pub use matroid::{Matroid, MinorMap};
pub use set::ElementSet;
