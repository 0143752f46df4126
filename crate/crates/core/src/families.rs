//! Deterministic generators for the graph families used throughout the crate.
//!
//! Labelings are fixed so that schemes can address vertices by construction:
//! 2-subsets of `[n]` in lexicographic order, grid cells row-major, and
//! abelian group elements in mixed radix with the first factor most
//! significant.

use std::collections::BTreeSet;

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::bounds::EliminationOrder;
use crate::trigraph::{Trigraph, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("{family} requires {requirement}, got {value}")]
    Parameter {
        family: &'static str,
        requirement: &'static str,
        value: usize,
    },
    #[error("row {row} is not a permutation of 0..{n}")]
    BadRow { row: usize, n: usize },
    #[error("column {column} is not a permutation of 0..{n}")]
    BadColumn { column: usize, n: usize },
    #[error("latin square must be square: row {row} has {len} cells, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("group modulus {0} is below 2")]
    BadModulus(usize),
    #[error("connection set contains the identity")]
    IdentityInConnectionSet,
    #[error("connection set is not inverse-closed: {0} is present but its inverse {1} is not")]
    NotInverseClosed(usize, usize),
    #[error("element {element} outside group of order {order}")]
    ElementOutOfRange { element: usize, order: usize },
}

fn param(family: &'static str, requirement: &'static str, value: usize) -> FamilyError {
    FamilyError::Parameter { family, requirement, value }
}

/// Index of the 2-subset `{i, j}` (`i < j`, 0-based) in the lexicographic
/// listing of all 2-subsets of `0..n`.
pub fn pair_index(n: usize, i: usize, j: usize) -> VertexId {
    debug_assert!(i < j && j < n);
    // pairs starting with a < i: sum of (n - 1 - a)
    i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// All 2-subsets of `0..n` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn two_set_graph(n: usize, adjacent: impl Fn(&(usize, usize), &(usize, usize)) -> bool) -> Trigraph {
    let ps = pairs(n);
    let mut g = Trigraph::empty(ps.len());
    for (a, pa) in ps.iter().enumerate() {
        for (b, pb) in ps.iter().enumerate().skip(a + 1) {
            if adjacent(pa, pb) {
                g.set_edge(a, b, crate::trigraph::EdgeColor::Black);
            }
        }
    }
    g
}

fn meet(a: &(usize, usize), b: &(usize, usize)) -> usize {
    [a.0, a.1].iter().filter(|x| **x == b.0 || **x == b.1).count()
}

/// Johnson graph `J(n, 2)`: 2-subsets adjacent when they share one element.
pub fn johnson(n: usize) -> Result<Trigraph, FamilyError> {
    if n < 2 {
        return Err(param("johnson", "n >= 2", n));
    }
    Ok(two_set_graph(n, |a, b| meet(a, b) == 1))
}

/// Kneser graph `K(n, 2)`: 2-subsets adjacent when disjoint.
pub fn kneser(n: usize) -> Result<Trigraph, FamilyError> {
    if n < 2 {
        return Err(param("kneser", "n >= 2", n));
    }
    Ok(two_set_graph(n, |a, b| meet(a, b) == 0))
}

/// The Petersen graph, as `K(5, 2)`.
pub fn petersen() -> Trigraph {
    kneser(5).expect("n = 5 is valid")
}

pub fn is_prime(p: usize) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Nonzero quadratic residues modulo `p`, sorted.
pub fn quadratic_residues(p: usize) -> Vec<usize> {
    let set: BTreeSet<usize> = (1..p).map(|x| x * x % p).collect();
    set.into_iter().collect()
}

/// Paley graph on a prime `p ≡ 1 (mod 4)`.
pub fn paley(p: usize) -> Result<Trigraph, FamilyError> {
    if !is_prime(p) {
        return Err(param("paley", "a prime order", p));
    }
    if p % 4 != 1 {
        return Err(param("paley", "p ≡ 1 (mod 4)", p));
    }
    let grp = AbelianGroupSpec::cyclic(p)?;
    let conn = ConnectionSet::new(&grp, quadratic_residues(p))?;
    Ok(cayley_abelian(&grp, &conn))
}

/// Rook's graph on the `n × n` grid, cells row-major.
pub fn rook(n: usize) -> Result<Trigraph, FamilyError> {
    if n < 1 {
        return Err(param("rook", "n >= 1", n));
    }
    let mut g = Trigraph::empty(n * n);
    for a in 0..n * n {
        for b in a + 1..n * n {
            if a / n == b / n || a % n == b % n {
                g.set_edge(a, b, crate::trigraph::EdgeColor::Black);
            }
        }
    }
    Ok(g)
}

pub fn cycle(n: usize) -> Trigraph {
    match n {
        0 | 1 => Trigraph::empty(n),
        2 => Trigraph::from_black_edges(2, [(0, 1)]).unwrap(),
        _ => Trigraph::from_black_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap(),
    }
}

pub fn path(n: usize) -> Trigraph {
    Trigraph::from_black_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn complete(n: usize) -> Trigraph {
    Trigraph::from_black_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

/// Finite abelian group `Z_{m_1} × … × Z_{m_k}`, elements encoded in mixed
/// radix with the first factor most significant.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct AbelianGroupSpec {
    moduli: Vec<usize>,
}

impl AbelianGroupSpec {
    pub fn new(moduli: Vec<usize>) -> Result<Self, FamilyError> {
        if let Some(&m) = moduli.iter().find(|&&m| m < 2) {
            return Err(FamilyError::BadModulus(m));
        }
        Ok(AbelianGroupSpec { moduli })
    }

    pub fn cyclic(n: usize) -> Result<Self, FamilyError> {
        Self::new(vec![n])
    }

    pub fn moduli(&self) -> &[usize] {
        &self.moduli
    }

    pub fn order(&self) -> usize {
        self.moduli.iter().product()
    }

    pub fn decode(&self, mut x: usize) -> Vec<usize> {
        let mut out = vec![0; self.moduli.len()];
        for (i, &m) in self.moduli.iter().enumerate().rev() {
            out[i] = x % m;
            x /= m;
        }
        out
    }

    pub fn encode(&self, coords: &[usize]) -> usize {
        self.moduli
            .iter()
            .zip(coords)
            .fold(0, |acc, (&m, &c)| acc * m + c % m)
    }

    pub fn add(&self, a: usize, b: usize) -> usize {
        let (ca, cb) = (self.decode(a), self.decode(b));
        let sum: Vec<usize> = self
            .moduli
            .iter()
            .zip(ca.iter().zip(&cb))
            .map(|(&m, (&x, &y))| (x + y) % m)
            .collect();
        self.encode(&sum)
    }

    pub fn neg(&self, a: usize) -> usize {
        let c: Vec<usize> = self
            .moduli
            .iter()
            .zip(self.decode(a))
            .map(|(&m, x)| (m - x) % m)
            .collect();
        self.encode(&c)
    }

    pub fn sub(&self, a: usize, b: usize) -> usize {
        self.add(a, self.neg(b))
    }

    /// Permutation of the elements given by `x ↦ x + g`.
    pub fn translation(&self, g: usize) -> Vec<VertexId> {
        (0..self.order()).map(|x| self.add(x, g)).collect()
    }
}

/// Inverse-closed set of non-identity group elements.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConnectionSet {
    members: BTreeSet<usize>,
}

impl ConnectionSet {
    pub fn new(grp: &AbelianGroupSpec, members: impl IntoIterator<Item = usize>) -> Result<Self, FamilyError> {
        let members: BTreeSet<usize> = members.into_iter().collect();
        let order = grp.order();
        for &s in &members {
            if s >= order {
                return Err(FamilyError::ElementOutOfRange { element: s, order });
            }
            if s == 0 {
                return Err(FamilyError::IdentityInConnectionSet);
            }
            let inv = grp.neg(s);
            if !members.contains(&inv) {
                return Err(FamilyError::NotInverseClosed(s, inv));
            }
        }
        Ok(ConnectionSet { members })
    }

    /// Closes `generators` under inversion before validating.
    pub fn symmetric(grp: &AbelianGroupSpec, generators: impl IntoIterator<Item = usize>) -> Result<Self, FamilyError> {
        let gens: Vec<usize> = generators.into_iter().collect();
        let all: Vec<usize> = gens.iter().flat_map(|&s| [s, grp.neg(s)]).collect();
        Self::new(grp, all)
    }

    pub fn members(&self) -> &BTreeSet<usize> {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&x)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }
}

/// Cayley graph `Cay(Γ, S)`: `u ~ v` iff `v − u ∈ S`.
pub fn cayley_abelian(grp: &AbelianGroupSpec, conn: &ConnectionSet) -> Trigraph {
    let n = grp.order();
    let mut g = Trigraph::empty(n);
    for u in 0..n {
        for &s in conn.members() {
            let v = grp.add(u, s);
            if u < v {
                g.set_edge(u, v, crate::trigraph::EdgeColor::Black);
            }
        }
    }
    g
}

/// Circulant graph on `Z_n` with connection set `±offsets`.
pub fn circulant(n: usize, offsets: &[usize]) -> Result<Trigraph, FamilyError> {
    let grp = AbelianGroupSpec::cyclic(n)?;
    let conn = ConnectionSet::symmetric(&grp, offsets.iter().map(|&o| o % n))?;
    Ok(cayley_abelian(&grp, &conn))
}

/// Latin square: every row and every column is a permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LatinSquare {
    cells: Vec<Vec<usize>>,
}

impl LatinSquare {
    pub fn new(cells: Vec<Vec<usize>>) -> Result<Self, FamilyError> {
        let n = cells.len();
        for (row, r) in cells.iter().enumerate() {
            if r.len() != n {
                return Err(FamilyError::NotSquare { row, len: r.len(), n });
            }
            let mut seen = vec![false; n];
            for &x in r {
                if x >= n || std::mem::replace(&mut seen[x], true) {
                    return Err(FamilyError::BadRow { row, n });
                }
            }
        }
        for column in 0..n {
            let mut seen = vec![false; n];
            for r in &cells {
                if std::mem::replace(&mut seen[r[column]], true) {
                    return Err(FamilyError::BadColumn { column, n });
                }
            }
        }
        Ok(LatinSquare { cells })
    }

    pub fn order(&self) -> usize {
        self.cells.len()
    }

    pub fn cell(&self, row: usize, column: usize) -> usize {
        self.cells[row][column]
    }

    pub fn rows(&self) -> &[Vec<usize>] {
        &self.cells
    }
}

/// Addition table of `Z_n`: `cells[r][c] = (r + c) mod n`.
pub fn cyclic_latin(n: usize) -> LatinSquare {
    LatinSquare {
        cells: (0..n).map(|r| (0..n).map(|c| (r + c) % n).collect()).collect(),
    }
}

/// Latin square graph: cells row-major, adjacent when they share a row, a
/// column or a symbol.
pub fn latin_square_graph(m: &LatinSquare) -> Trigraph {
    let n = m.order();
    let mut g = Trigraph::empty(n * n);
    for a in 0..n * n {
        let (ra, ca) = (a / n, a % n);
        for b in a + 1..n * n {
            let (rb, cb) = (b / n, b % n);
            if ra == rb || ca == cb || m.cell(ra, ca) == m.cell(rb, cb) {
                g.set_edge(a, b, crate::trigraph::EdgeColor::Black);
            }
        }
    }
    g
}

/// Random graph for which `0, 1, …, n−1` is an elimination order: vertex `i`
/// draws `d'` uniformly from `[0, d]` and picks `min(i, d')` distinct earlier
/// neighbors uniformly.
pub fn random_degenerate(n: usize, d: usize, seed: u64) -> (Trigraph, EliminationOrder) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Trigraph::empty(n);
    let mut max_left = 0;
    for i in 1..n {
        let want: usize = rng.gen_range(0..=d);
        let k = want.min(i);
        max_left = max_left.max(k);
        for j in sample(&mut rng, i, k).into_iter() {
            g.set_edge(j, i, crate::trigraph::EdgeColor::Black);
        }
    }
    let order = EliminationOrder::new((0..n).collect(), max_left);
    (g, order)
}
