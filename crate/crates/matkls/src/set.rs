//! Bitmask subsets of a ground set of at most 32 elements.

use std::fmt;

/// Hard upper bound on ground-set size; everything fits in a `u32` mask.
pub const MAX_ELEMENTS: usize = 32;

/// A subset of the ground set `{0, .., n-1}`, stored as a bitmask.
///
/// The ground-set size travels with the set so that complements are
/// well-defined. No bit at position `>= n` is ever set.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ElementSet {
    bits: u32,
    n: u8,
}

impl ElementSet {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set larger than {MAX_ELEMENTS}");
        ElementSet { bits: 0, n: n as u8 }
    }

    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ELEMENTS, "ground set larger than {MAX_ELEMENTS}");
        let bits = if n == 32 { u32::MAX } else { (1u32 << n) - 1 };
        ElementSet { bits, n: n as u8 }
    }

    /// Build from a raw mask; panics if a bit at position `>= n` is set.
    pub fn from_bits(bits: u32, n: usize) -> Self {
        let full = Self::full(n);
        assert!(bits & !full.bits == 0, "bit set outside ground set");
        ElementSet { bits, n: n as u8 }
    }

    pub fn from_elements<I: IntoIterator<Item = usize>>(elements: I, n: usize) -> Self {
        let mut s = Self::empty(n);
        for e in elements {
            assert!(e < n, "element {e} outside ground set of size {n}");
            s.bits |= 1 << e;
        }
        s
    }

    pub fn singleton(e: usize, n: usize) -> Self {
        Self::from_elements([e], n)
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn ground_size(&self) -> usize {
        self.n as usize
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn contains(&self, e: usize) -> bool {
        e < self.n as usize && self.bits & (1 << e) != 0
    }

    pub fn insert(&self, e: usize) -> Self {
        assert!(e < self.n as usize);
        ElementSet { bits: self.bits | (1 << e), n: self.n }
    }

    pub fn remove(&self, e: usize) -> Self {
        assert!(e < self.n as usize);
        ElementSet { bits: self.bits & !(1 << e), n: self.n }
    }

    pub fn union(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        ElementSet { bits: self.bits | other.bits, n: self.n }
    }

    pub fn intersection(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        ElementSet { bits: self.bits & other.bits, n: self.n }
    }

    pub fn difference(&self, other: &Self) -> Self {
        debug_assert_eq!(self.n, other.n);
        ElementSet { bits: self.bits & !other.bits, n: self.n }
    }

    /// Complement within the ground set.
    pub fn complement(&self) -> Self {
        ElementSet { bits: Self::full(self.n as usize).bits & !self.bits, n: self.n }
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.bits & !other.bits == 0
    }

    pub fn is_superset(&self, other: &Self) -> bool {
        other.is_subset(self)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        let bits = self.bits;
        (0..self.n as usize).filter(move |e| bits & (1 << e) != 0)
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }

    /// All subsets of `self` with exactly `k` elements, in ascending mask order.
    pub fn k_subsets(&self, k: usize) -> Vec<ElementSet> {
        let positions = self.to_vec();
        let mut out = Vec::new();
        if k > positions.len() {
            return out;
        }
        let mut idx: Vec<usize> = (0..k).collect();
        loop {
            let mut bits = 0u32;
            for &i in &idx {
                bits |= 1 << positions[i];
            }
            out.push(ElementSet { bits, n: self.n });
            // next lexicographic k-combination
            let mut i = k;
            loop {
                if i == 0 {
                    out.sort();
                    return out;
                }
                i -= 1;
                if idx[i] != i + positions.len() - k {
                    break;
                }
            }
            idx[i] += 1;
            for j in i + 1..k {
                idx[j] = idx[j - 1] + 1;
            }
        }
    }

    /// All subsets of `self`, in ascending mask order.
    pub fn subsets(&self) -> Vec<ElementSet> {
        let mut out = Vec::with_capacity(1 << self.len());
        let mask = self.bits;
        let mut sub = 0u32;
        loop {
            out.push(ElementSet { bits: sub, n: self.n });
            if sub == mask {
                break;
            }
            sub = (sub.wrapping_sub(mask)) & mask;
        }
        out.sort();
        out
    }
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}
