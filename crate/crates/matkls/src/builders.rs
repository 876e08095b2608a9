//! Matroid constructors: uniform and Boolean families, linear matroids
//! over small prime fields, projective geometries, graphic matroids, and
//! the named-specification grammar used by the CLI.
//!
//! Grammar: `uniform:k,n | boolean:n | pg:d,q | fano | fano-dual |
//! graphic:<u-v,..> | sum:<spec>+<spec>`.

use thiserror::Error;

use crate::matroid::{Matroid, MatroidError};
use crate::set::{ElementSet, MAX_ELEMENTS};

pub const SUPPORTED_PRIMES: [u64; 4] = [2, 3, 5, 7];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BuildError {
    #[error("cannot parse matroid spec: {0}")]
    Parse(String),
    #[error("{0} is not a supported prime (use one of 2, 3, 5, 7)")]
    NotPrime(u64),
    #[error("field size {0} unsupported (use one of 2, 3, 5, 7)")]
    UnsupportedField(u64),
    #[error("matrix has {0} columns, more than the {MAX_ELEMENTS}-element capacity")]
    TooManyColumns(usize),
    #[error("ground set of size {0} exceeds capacity {MAX_ELEMENTS}")]
    CapacityExceeded(usize),
    #[error(transparent)]
    Matroid(#[from] MatroidError),
}

/// `U_{k,n}`: every `k`-subset is a basis.
pub fn uniform(k: usize, n: usize) -> Result<Matroid, BuildError> {
    if n > MAX_ELEMENTS {
        return Err(BuildError::CapacityExceeded(n));
    }
    if k > n {
        return Err(BuildError::Parse(format!(
            "uniform rank {k} exceeds ground-set size {n}"
        )));
    }
    let bases = ElementSet::full(n).k_subsets(k);
    Ok(Matroid::from_valid_bases(n, bases).with_label(format!("uniform:{k},{n}")))
}

/// `B_n = U_{n,n}`.
pub fn boolean(n: usize) -> Result<Matroid, BuildError> {
    if n > MAX_ELEMENTS {
        return Err(BuildError::CapacityExceeded(n));
    }
    Ok(Matroid::from_valid_bases(n, vec![ElementSet::full(n)]).with_label(format!("boolean:{n}")))
}

/// Incremental Gaussian elimination over GF(p).
struct RowReducer {
    p: u64,
    rows: Vec<Vec<u64>>, // reduced rows, each with a leading pivot
}

impl RowReducer {
    fn new(p: u64) -> Self {
        RowReducer { p, rows: Vec::new() }
    }

    /// Reduces `v` against the current rows; returns the remainder.
    fn reduce(&self, mut v: Vec<u64>) -> Vec<u64> {
        let p = self.p;
        for row in &self.rows {
            let pivot = row.iter().position(|&x| x != 0).unwrap();
            if v[pivot] != 0 {
                // v -= v[pivot] / row[pivot] * row
                let factor = (v[pivot] * mod_inverse(row[pivot], p)) % p;
                for (a, b) in v.iter_mut().zip(row) {
                    *a = (*a + p * p - factor * b % p) % p;
                }
            }
        }
        v
    }

    fn is_independent_with(&self, v: &[u64]) -> bool {
        self.reduce(v.to_vec()).iter().any(|&x| x != 0)
    }

    fn push(&mut self, v: &[u64]) {
        let reduced = self.reduce(v.to_vec());
        debug_assert!(reduced.iter().any(|&x| x != 0));
        self.rows.push(reduced);
    }

    fn pop(&mut self) {
        self.rows.pop();
    }
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    // p is a small prime, so Fermat works
    let mut result = 1u64;
    let mut base = a % p;
    let mut exp = p - 2;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * base % p;
        }
        base = base * base % p;
        exp >>= 1;
    }
    result
}

/// Linear matroid of the columns of an integer matrix over GF(p).
/// Bases are the column subsets of size `rank(matrix)` that are linearly
/// independent.
pub fn from_matrix(p: u64, entries: &[Vec<i64>]) -> Result<Matroid, BuildError> {
    if !SUPPORTED_PRIMES.contains(&p) {
        return Err(BuildError::NotPrime(p));
    }
    let rows = entries.len();
    let cols = entries.first().map_or(0, Vec::len);
    if cols > MAX_ELEMENTS {
        return Err(BuildError::TooManyColumns(cols));
    }
    if entries.iter().any(|row| row.len() != cols) {
        return Err(BuildError::Parse("matrix rows have unequal lengths".into()));
    }
    let column = |j: usize| -> Vec<u64> {
        (0..rows)
            .map(|i| entries[i][j].rem_euclid(p as i64) as u64)
            .collect()
    };
    let columns: Vec<Vec<u64>> = (0..cols).map(column).collect();

    // matrix rank
    let mut reducer = RowReducer::new(p);
    for c in &columns {
        if reducer.is_independent_with(c) {
            reducer.push(c);
        }
    }
    let rank = reducer.rows.len();

    // enumerate independent column subsets of full rank by backtracking
    let mut bases = Vec::new();
    let mut chosen = Vec::new();
    let mut reducer = RowReducer::new(p);
    fn search(
        columns: &[Vec<u64>],
        start: usize,
        rank: usize,
        reducer: &mut RowReducer,
        chosen: &mut Vec<usize>,
        bases: &mut Vec<ElementSet>,
        cols: usize,
    ) {
        if chosen.len() == rank {
            bases.push(ElementSet::from_elements(chosen.iter().copied(), cols));
            return;
        }
        for j in start..columns.len() {
            if columns.len() - j < rank - chosen.len() {
                break;
            }
            if reducer.is_independent_with(&columns[j]) {
                reducer.push(&columns[j]);
                chosen.push(j);
                search(columns, j + 1, rank, reducer, chosen, bases, cols);
                chosen.pop();
                reducer.pop();
            }
        }
    }
    search(&columns, 0, rank, &mut reducer, &mut chosen, &mut bases, cols);
    if bases.is_empty() {
        bases.push(ElementSet::empty(cols));
    }
    Ok(Matroid::from_valid_bases(cols, bases))
}

/// `PG(d, q)`: the projective geometry of rank `d+1` over GF(q), with one
/// element per projective point ((q^{d+1}-1)/(q-1) of them).
pub fn projective_geometry(d: usize, q: u64) -> Result<Matroid, BuildError> {
    if !SUPPORTED_PRIMES.contains(&q) {
        return Err(BuildError::UnsupportedField(q));
    }
    let dim = d + 1;
    let n_points = ((q as usize).pow(dim as u32) - 1) / (q as usize - 1);
    if n_points > MAX_ELEMENTS {
        return Err(BuildError::CapacityExceeded(n_points));
    }
    // representatives: vectors whose first nonzero coordinate is 1,
    // enumerated in lexicographic order
    let mut points: Vec<Vec<i64>> = Vec::with_capacity(n_points);
    let mut v = vec![0u64; dim];
    loop {
        // increment base-q counter
        let mut i = dim;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < q {
                break;
            }
            v[i] = 0;
        }
        if v.iter().all(|&x| x == 0) {
            break;
        }
        if v.iter().find(|&&x| x != 0) == Some(&1) {
            points.push(v.iter().map(|&x| x as i64).collect());
        }
    }
    debug_assert_eq!(points.len(), n_points);
    let entries: Vec<Vec<i64>> = (0..dim)
        .map(|i| points.iter().map(|pt| pt[i]).collect())
        .collect();
    Ok(from_matrix(q, &entries)?.with_label(format!("pg:{d},{q}")))
}

/// The Fano matroid `F_7`: columns are the nonzero vectors of GF(2)^3.
pub fn fano() -> Matroid {
    let entries: Vec<Vec<i64>> = (0..3)
        .map(|i| (1..8i64).map(|v| (v >> (2 - i)) & 1).collect())
        .collect();
    from_matrix(2, &entries).expect("fano matrix is valid").with_label("fano")
}

pub fn fano_dual() -> Matroid {
    fano().dual().with_label("fano-dual")
}

/// Graphic matroid of an edge list: elements are edges in input order,
/// bases are the spanning forests.
pub fn graphic(edges: &[(usize, usize)]) -> Result<Matroid, BuildError> {
    let m = edges.len();
    if m > MAX_ELEMENTS {
        return Err(BuildError::CapacityExceeded(m));
    }
    let n_vertices = edges
        .iter()
        .map(|&(u, v)| u.max(v) + 1)
        .max()
        .unwrap_or(0);

    fn forest_rank(edges: &[(usize, usize)], subset: &ElementSet, n_vertices: usize) -> Option<usize> {
        // None if the subset contains a cycle
        let mut dsu: Vec<usize> = (0..n_vertices).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            if dsu[x] != x {
                let r = find(dsu, dsu[x]);
                dsu[x] = r;
            }
            dsu[x]
        }
        let mut count = 0;
        for e in subset.iter() {
            let (u, v) = edges[e];
            let (ru, rv) = (find(&mut dsu, u), find(&mut dsu, v));
            if ru == rv {
                return None;
            }
            dsu[ru] = rv;
            count += 1;
        }
        Some(count)
    }

    let full = ElementSet::full(m);
    // rank = |V| - number of components = size of any spanning forest
    let rank = {
        let mut dsu: Vec<usize> = (0..n_vertices).collect();
        fn find(dsu: &mut Vec<usize>, x: usize) -> usize {
            if dsu[x] != x {
                let r = find(dsu, dsu[x]);
                dsu[x] = r;
            }
            dsu[x]
        }
        let mut count = 0;
        for &(u, v) in edges {
            let (ru, rv) = (find(&mut dsu, u), find(&mut dsu, v));
            if ru != rv {
                dsu[ru] = rv;
                count += 1;
            }
        }
        count
    };
    let bases: Vec<ElementSet> = full
        .k_subsets(rank)
        .into_iter()
        .filter(|s| forest_rank(edges, s, n_vertices).is_some())
        .collect();
    Ok(Matroid::from_valid_bases(m, bases))
}

/// Parses the named-matroid grammar.
pub fn build_named(spec: &str) -> Result<Matroid, BuildError> {
    let spec = spec.trim();
    let built = match spec.split_once(':') {
        None => match spec {
            "fano" => fano(),
            "fano-dual" => fano_dual(),
            other => return Err(BuildError::Parse(format!("unknown matroid name '{other}'"))),
        },
        Some(("uniform", args)) => {
            let (k, n) = parse_pair(args, "uniform:k,n")?;
            uniform(k, n)?
        }
        Some(("boolean", args)) => {
            let n = args
                .parse()
                .map_err(|_| BuildError::Parse(format!("boolean:n expects an integer, got '{args}'")))?;
            boolean(n)?
        }
        Some(("pg", args)) => {
            let (d, q) = parse_pair(args, "pg:d,q")?;
            projective_geometry(d, q as u64)?
        }
        Some(("graphic", args)) => {
            let edges = parse_edge_list(args)?;
            graphic(&edges)?
        }
        Some(("sum", args)) => {
            let (left, right) = args.split_once('+').ok_or_else(|| {
                BuildError::Parse("sum:<spec>+<spec> expects two summands".into())
            })?;
            let a = build_named(left)?;
            let b = build_named(right)?;
            a.direct_sum(&b)?
        }
        Some((other, _)) => {
            return Err(BuildError::Parse(format!("unknown matroid family '{other}'")))
        }
    };
    Ok(built.with_label(spec))
}

/// True if the string is plausibly a named spec rather than a file path.
pub fn looks_like_named_spec(spec: &str) -> bool {
    matches!(spec, "fano" | "fano-dual")
        || ["uniform:", "boolean:", "pg:", "graphic:", "sum:"]
            .iter()
            .any(|p| spec.starts_with(p))
}

fn parse_pair(args: &str, what: &str) -> Result<(usize, usize), BuildError> {
    let (a, b) = args
        .split_once(',')
        .ok_or_else(|| BuildError::Parse(format!("{what} expects two integers, got '{args}'")))?;
    let a = a
        .trim()
        .parse()
        .map_err(|_| BuildError::Parse(format!("{what}: '{a}' is not an integer")))?;
    let b = b
        .trim()
        .parse()
        .map_err(|_| BuildError::Parse(format!("{what}: '{b}' is not an integer")))?;
    Ok((a, b))
}

fn parse_edge_list(args: &str) -> Result<Vec<(usize, usize)>, BuildError> {
    args.split(',')
        .map(|edge| {
            let (u, v) = edge
                .trim()
                .split_once('-')
                .ok_or_else(|| BuildError::Parse(format!("edge '{edge}' is not of the form u-v")))?;
            let u = u
                .parse()
                .map_err(|_| BuildError::Parse(format!("vertex '{u}' is not an integer")))?;
            let v = v
                .parse()
                .map_err(|_| BuildError::Parse(format!("vertex '{v}' is not an integer")))?;
            Ok((u, v))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn uniform_counts() {
        let m = uniform(2, 3).unwrap();
        assert_eq!((m.n(), m.rank(), m.bases().len()), (3, 2, 3));
        let b = boolean(4).unwrap();
        assert_eq!((b.n(), b.rank(), b.bases().len()), (4, 4, 1));
        assert!(uniform(3, 2).is_err());
        assert!(matches!(uniform(2, 40), Err(BuildError::CapacityExceeded(40))));
    }

    #[test]
    fn fano_has_seven_points_28_bases() {
        let f = fano();
        assert_eq!((f.n(), f.rank()), (7, 3));
        // 35 triples minus 7 lines
        assert_eq!(f.bases().len(), 28);
        assert!(f.is_simple());
        let fd = fano_dual();
        assert_eq!((fd.n(), fd.rank(), fd.bases().len()), (7, 4, 28));
    }

    #[test]
    fn fano_lines_have_rank_two() {
        // rows of GF(2)^3 vectors: {0,1,2} is the line x=0 (vectors 1,2,3)
        let f = fano();
        let line = ElementSet::from_elements([0, 1, 2], 7);
        assert_eq!(f.rank_of(&line), 2);
        assert_eq!(f.closure(&ElementSet::from_elements([0, 1], 7)), line);
    }

    #[test]
    fn identity_matrix_is_boolean() {
        let m = from_matrix(2, &[vec![1, 0], vec![0, 1]]).unwrap();
        assert_eq!((m.n(), m.rank(), m.bases().len()), (2, 2, 1));
    }

    #[test]
    fn gf3_four_points_in_general_position() {
        let m = from_matrix(3, &[vec![1, 0, 1, 1], vec![0, 1, 1, 2]]).unwrap();
        assert_eq!((m.n(), m.rank(), m.bases().len()), (4, 2, 6));
    }

    #[test]
    fn from_matrix_rejects_bad_input() {
        assert_eq!(from_matrix(4, &[vec![1]]).unwrap_err(), BuildError::NotPrime(4));
        let wide = vec![vec![1i64; 33]];
        assert_eq!(from_matrix(2, &wide).unwrap_err(), BuildError::TooManyColumns(33));
    }

    #[test]
    fn pg_point_counts() {
        let pg22 = projective_geometry(2, 2).unwrap();
        assert_eq!((pg22.n(), pg22.rank()), (7, 3));
        let pg23 = projective_geometry(2, 3).unwrap();
        assert_eq!((pg23.n(), pg23.rank()), (13, 3));
        assert_eq!(
            projective_geometry(3, 3).unwrap_err(),
            BuildError::CapacityExceeded(40)
        );
        assert_eq!(
            projective_geometry(2, 4).unwrap_err(),
            BuildError::UnsupportedField(4)
        );
    }

    #[test]
    fn graphic_triangle_is_uniform() {
        let m = graphic(&[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!((m.n(), m.rank(), m.bases().len()), (3, 2, 3));
        // self-loop becomes a matroid loop
        let l = graphic(&[(0, 0), (0, 1)]).unwrap();
        assert_eq!(l.loops().to_vec(), vec![0]);
    }

    #[test]
    fn named_grammar() {
        assert_eq!(build_named("uniform:2,3").unwrap().label(), Some("uniform:2,3"));
        let s = build_named("sum:boolean:1+uniform:2,3").unwrap();
        assert_eq!((s.n(), s.rank()), (4, 3));
        assert!(!s.is_connected());
        assert!(build_named("nonsense").is_err());
        assert!(build_named("uniform:x,3").is_err());
        let g = build_named("graphic:0-1,1-2,0-2").unwrap();
        assert_eq!(g.bases().len(), 3);
    }
}
