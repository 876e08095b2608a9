//! Matroids stored by their basis family, with rank and closure oracles,
//! minors, simplification and connectivity.

use std::fmt;

use thiserror::Error;

use crate::set::{ElementSet, MAX_ELEMENTS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatroidError {
    #[error("basis family is empty")]
    EmptyBases,
    #[error("bases {first} and {second} have different sizes")]
    UnequalBasisSizes { first: ElementSet, second: ElementSet },
    #[error("exchange axiom violated: no f in {other}\\{base} completes {base} minus {element}")]
    ExchangeAxiomViolated {
        base: ElementSet,
        element: usize,
        other: ElementSet,
    },
    #[error("element {element} outside ground set of size {n}")]
    ElementOutOfRange { element: usize, n: usize },
    #[error("ground set of size {n} exceeds capacity {MAX_ELEMENTS}")]
    CapacityExceeded { n: usize },
    #[error("deleting every element is not allowed")]
    DeletesEverything,
    #[error("contracting the whole ground set is not allowed")]
    ContractsEverything,
    #[error("matroid is not simple")]
    NotSimple,
    #[error("matroid is not connected")]
    NotConnected,
}

/// Tracks element identity across delete/contract/simplify: the surviving
/// elements and the order-preserving relabeling onto `0..kept.len()`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinorMap {
    kept: ElementSet,
    new_index: Vec<Option<usize>>,
}

impl MinorMap {
    fn new(kept: ElementSet) -> Self {
        let mut new_index = vec![None; kept.ground_size()];
        for (fresh, old) in kept.iter().enumerate() {
            new_index[old] = Some(fresh);
        }
        MinorMap { kept, new_index }
    }

    pub fn kept(&self) -> ElementSet {
        self.kept
    }

    pub fn new_index(&self, old: usize) -> Option<usize> {
        self.new_index.get(old).copied().flatten()
    }

    pub fn old_index(&self, fresh: usize) -> usize {
        self.kept.iter().nth(fresh).expect("index within minor")
    }

    /// Push a subset of the original ground set down to the minor.
    pub fn map_set(&self, s: &ElementSet) -> ElementSet {
        ElementSet::from_elements(
            s.intersection(&self.kept).iter().map(|e| self.new_index[e].unwrap()),
            self.kept.len(),
        )
    }
}

/// A matroid on `{0, .., n-1}`, represented by its canonically sorted
/// basis family. Not necessarily simple: loops and parallel elements
/// arise from contractions and are kept until [`Matroid::simplify`].
#[derive(Clone)]
pub struct Matroid {
    n: usize,
    rank: usize,
    bases: Vec<ElementSet>,
    label: Option<String>,
}

impl Matroid {
    /// Validated constructor: deduplicates, sorts, and checks the
    /// basis-exchange axiom by brute force.
    pub fn from_bases(
        n: usize,
        bases: impl IntoIterator<Item = ElementSet>,
    ) -> Result<Self, MatroidError> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::CapacityExceeded { n });
        }
        let mut bases: Vec<ElementSet> = bases.into_iter().collect();
        bases.sort();
        bases.dedup();
        if bases.is_empty() {
            return Err(MatroidError::EmptyBases);
        }
        let rank = bases[0].len();
        for pair in bases.windows(2) {
            if pair[1].len() != rank {
                return Err(MatroidError::UnequalBasisSizes {
                    first: pair[0],
                    second: pair[1],
                });
            }
        }
        let m = Matroid { n, rank, bases, label: None };
        m.check_exchange()?;
        Ok(m)
    }

    /// Same as [`Matroid::from_bases`] but taking element lists.
    pub fn from_basis_lists(n: usize, lists: &[Vec<usize>]) -> Result<Self, MatroidError> {
        if n > MAX_ELEMENTS {
            return Err(MatroidError::CapacityExceeded { n });
        }
        let mut sets = Vec::with_capacity(lists.len());
        for list in lists {
            for &e in list {
                if e >= n {
                    return Err(MatroidError::ElementOutOfRange { element: e, n });
                }
            }
            sets.push(ElementSet::from_elements(list.iter().copied(), n));
        }
        Self::from_bases(n, sets)
    }

    /// Constructor for basis families that are valid by construction
    /// (uniform, linear, graphic, duals, minors). Skips the quadratic
    /// exchange check but still normalizes.
    pub(crate) fn from_valid_bases(n: usize, mut bases: Vec<ElementSet>) -> Self {
        debug_assert!(n <= MAX_ELEMENTS);
        bases.sort();
        bases.dedup();
        debug_assert!(!bases.is_empty());
        let rank = bases[0].len();
        debug_assert!(bases.iter().all(|b| b.len() == rank));
        Matroid { n, rank, bases, label: None }
    }

    fn check_exchange(&self) -> Result<(), MatroidError> {
        for b1 in &self.bases {
            for b2 in &self.bases {
                for e in b1.difference(b2).iter() {
                    let stem = b1.remove(e);
                    let found = b2
                        .difference(b1)
                        .iter()
                        .any(|f| self.is_basis(&stem.insert(f)));
                    if !found {
                        return Err(MatroidError::ExchangeAxiomViolated {
                            base: *b1,
                            element: e,
                            other: *b2,
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn label(&self) -> Option<&str> {
        self.label.as_deref()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &[ElementSet] {
        &self.bases
    }

    pub fn ground_set(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    pub fn is_basis(&self, s: &ElementSet) -> bool {
        self.bases.binary_search(s).is_ok()
    }

    /// Rank of a subset: the largest intersection with a basis.
    pub fn rank_of(&self, s: &ElementSet) -> usize {
        self.bases
            .iter()
            .map(|b| b.intersection(s).len())
            .max()
            .expect("basis family is nonempty")
    }

    pub fn is_independent(&self, s: &ElementSet) -> bool {
        self.rank_of(s) == s.len()
    }

    /// The unique maximal superset of `s` with the same rank.
    pub fn closure(&self, s: &ElementSet) -> ElementSet {
        let r = self.rank_of(s);
        let mut out = *s;
        for e in s.complement().iter() {
            if self.rank_of(&s.insert(e)) == r {
                out = out.insert(e);
            }
        }
        out
    }

    pub fn loops(&self) -> ElementSet {
        self.closure(&ElementSet::empty(self.n))
    }

    pub fn coloops(&self) -> ElementSet {
        let full = self.ground_set();
        ElementSet::from_elements(
            full.iter().filter(|&e| self.rank_of(&full.remove(e)) < self.rank),
            self.n,
        )
    }

    /// Parallel classes of non-loop elements, each as a set, ordered by
    /// their smallest member.
    pub fn parallel_classes(&self) -> Vec<ElementSet> {
        let loops = self.loops();
        let mut seen = ElementSet::empty(self.n);
        let mut classes = Vec::new();
        for e in loops.complement().iter() {
            if seen.contains(e) {
                continue;
            }
            let class = self
                .closure(&ElementSet::singleton(e, self.n))
                .difference(&loops);
            seen = seen.union(&class);
            classes.push(class);
        }
        classes
    }

    pub fn is_simple(&self) -> bool {
        self.loops().is_empty() && self.parallel_classes().iter().all(|c| c.len() == 1)
    }

    /// Restriction to `kept`, with bases recomputed as the maximal
    /// independent subsets of `kept`.
    fn restrict(&self, kept: ElementSet) -> (Matroid, MinorMap) {
        let map = MinorMap::new(kept);
        let r = self.rank_of(&kept);
        let mut bases: Vec<ElementSet> = self
            .bases
            .iter()
            .map(|b| b.intersection(&kept))
            .filter(|b| b.len() == r)
            .map(|b| map.map_set(&b))
            .collect();
        if bases.is_empty() {
            // kept is empty or all loops
            bases.push(ElementSet::empty(kept.len()));
        }
        (Matroid::from_valid_bases(kept.len(), bases), map)
    }

    pub fn delete(&self, s: &ElementSet) -> Result<(Matroid, MinorMap), MatroidError> {
        if self.ground_set().is_subset(s) && self.n > 0 {
            return Err(MatroidError::DeletesEverything);
        }
        Ok(self.restrict(s.complement()))
    }

    /// Contraction by `s`: rank of `A` becomes `rank(A | s) - rank(s)`.
    /// Loops and parallel elements in the output are kept.
    pub fn contract(&self, s: &ElementSet) -> Result<(Matroid, MinorMap), MatroidError> {
        if self.ground_set().is_subset(s) && self.n > 0 {
            return Err(MatroidError::ContractsEverything);
        }
        let kept = s.complement();
        let map = MinorMap::new(kept);
        // greedy maximal independent subset of s
        let mut anchor = ElementSet::empty(self.n);
        for e in s.iter() {
            if self.rank_of(&anchor.insert(e)) > anchor.len() {
                anchor = anchor.insert(e);
            }
        }
        let mut bases: Vec<ElementSet> = self
            .bases
            .iter()
            .filter(|b| b.intersection(s) == anchor)
            .map(|b| map.map_set(&b.difference(&anchor)))
            .collect();
        if bases.is_empty() {
            bases.push(ElementSet::empty(kept.len()));
        }
        Ok((Matroid::from_valid_bases(kept.len(), bases), map))
    }

    /// Removes loops and collapses each parallel class onto its
    /// lowest-indexed member. The lattice of flats is unchanged.
    pub fn simplify(&self) -> (Matroid, MinorMap) {
        let kept = ElementSet::from_elements(
            self.parallel_classes().iter().map(|c| c.iter().next().unwrap()),
            self.n,
        );
        self.restrict(kept)
    }

    /// Disjoint union on relabeled ground sets; bases are unions of bases.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid, MatroidError> {
        let n = self.n + other.n;
        if n > MAX_ELEMENTS {
            return Err(MatroidError::CapacityExceeded { n });
        }
        let mut bases = Vec::with_capacity(self.bases.len() * other.bases.len());
        for b1 in &self.bases {
            for b2 in &other.bases {
                let shifted = ElementSet::from_elements(b2.iter().map(|e| e + self.n), n);
                bases.push(ElementSet::from_bits(b1.bits(), n).union(&shifted));
            }
        }
        Ok(Matroid::from_valid_bases(n, bases))
    }

    /// Dual matroid: bases are the complements of bases.
    pub fn dual(&self) -> Matroid {
        let bases = self.bases.iter().map(ElementSet::complement).collect();
        Matroid::from_valid_bases(self.n, bases)
    }

    /// Connectivity via the fundamental-circuit graph of one fixed basis:
    /// the matroid is connected iff that graph is connected, which is
    /// equivalent to the absence of a proper separator.
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let base = self.bases[0];
        let mut dsu: Vec<usize> = (0..self.n).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            if dsu[x] != x {
                let root = find(dsu, dsu[x]);
                dsu[x] = root;
            }
            dsu[x]
        }
        for e in base.complement().iter() {
            for b in base.iter() {
                // b lies in the fundamental circuit of e iff swapping it in
                // gives another basis
                if self.is_basis(&base.remove(b).insert(e)) {
                    let (re, rb) = (find(&mut dsu, e), find(&mut dsu, b));
                    dsu[re] = rb;
                }
            }
        }
        let root = find(&mut dsu, 0);
        (1..self.n).all(|e| find(&mut dsu, e) == root)
    }

    /// Smallest element whose contraction, after simplification, is still
    /// connected. Requires a simple connected matroid of rank >= 1; such
    /// an element always exists.
    pub fn find_connected_contraction_element(&self) -> Result<usize, MatroidError> {
        if !self.is_simple() {
            return Err(MatroidError::NotSimple);
        }
        if !self.is_connected() || self.rank == 0 {
            return Err(MatroidError::NotConnected);
        }
        if self.rank == 1 {
            // the only simple connected rank-1 matroid is a single element;
            // its contraction is the empty matroid, trivially connected
            return Ok(0);
        }
        for e in 0..self.n {
            let (contracted, _) = self.contract(&ElementSet::singleton(e, self.n))?;
            let (simple, _) = contracted.simplify();
            if simple.is_connected() {
                return Ok(e);
            }
        }
        unreachable!("a connecting contraction element always exists")
    }
}

impl fmt::Debug for Matroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Matroid(n={}, r={}, {} bases{})",
            self.n,
            self.rank,
            self.bases.len(),
            self.label.as_deref().map(|l| format!(", {l}")).unwrap_or_default()
        )
    }
}
