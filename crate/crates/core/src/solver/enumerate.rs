use std::collections::HashSet;

use super::canon::{canonical_form, ColoredGraph};
use super::SolverError;
use crate::families::pairs;
use crate::trigraph::{EdgeColor, Trigraph};

pub const MAX_LABELED_ORDER: usize = 7;
pub const MAX_CUBIC_ORDER: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GraphClass {
    /// Every labeled graph on `n` vertices, one per edge subset.
    Labeled(usize),
    /// Every 3-regular graph on `n` vertices, one per isomorphism class.
    Cubic(usize),
}

/// Streams the graphs of `class`. Labeled graphs come in edge-mask order
/// (bit `i` is the `i`-th pair of `pairs(n)`); cubic graphs come grouped by
/// component structure, connected ones first.
pub fn enumerate_graphs(class: GraphClass) -> Result<Box<dyn Iterator<Item = Trigraph>>, SolverError> {
    match class {
        GraphClass::Labeled(n) => {
            if n > MAX_LABELED_ORDER {
                return Err(SolverError::EnumerationCap { what: "labeled graph", n, max: MAX_LABELED_ORDER });
            }
            let all = pairs(n);
            let count = 1u64 << all.len();
            Ok(Box::new((0..count).map(move |mask| {
                let edges = all
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &(u, v))| (u, v, EdgeColor::Black));
                Trigraph::from_edges(n, edges).expect("pairs are distinct")
            })))
        }
        GraphClass::Cubic(n) => {
            if n > MAX_CUBIC_ORDER {
                return Err(SolverError::EnumerationCap { what: "cubic graph", n, max: MAX_CUBIC_ORDER });
            }
            Ok(Box::new(all_cubic(n).into_iter()))
        }
    }
}

fn all_cubic(n: usize) -> Vec<Trigraph> {
    if n < 4 || n % 2 == 1 {
        return Vec::new();
    }
    // connected[k] = connected cubic graphs on k vertices
    let connected: Vec<Vec<Trigraph>> = (0..=n).map(connected_cubic).collect();
    let mut out = Vec::new();
    let mut parts: Vec<(usize, usize)> = Vec::new();
    combine(n, (n, usize::MAX), &connected, &mut parts, &mut out);
    out
}

/// Multisets of connected components with sizes summing to `left`, listed
/// with components in non-increasing (size, index) order.
fn combine(
    left: usize,
    cap: (usize, usize),
    connected: &[Vec<Trigraph>],
    parts: &mut Vec<(usize, usize)>,
    out: &mut Vec<Trigraph>,
) {
    if left == 0 {
        let mut edges = Vec::new();
        let mut offset = 0;
        for &(size, idx) in parts.iter() {
            edges.extend(connected[size][idx].edges().map(|(u, v, _)| (u + offset, v + offset)));
            offset += size;
        }
        out.push(Trigraph::from_black_edges(offset, edges).expect("disjoint union is simple"));
        return;
    }
    for size in (4..=left.min(cap.0)).rev().filter(|s| s % 2 == 0) {
        let limit = if size == cap.0 { cap.1 } else { usize::MAX };
        for idx in 0..connected[size].len().min(limit.saturating_add(1)) {
            parts.push((size, idx));
            combine(left - size, (size, idx), connected, parts, out);
            parts.pop();
        }
    }
}

/// Connected cubic graphs on `n` vertices up to isomorphism.
///
/// Vertices are labeled in breadth-first order: vertex `v` is completed
/// before `v + 1`, and each new neighbor receives the next unused label, so
/// every graph appears at least once. Duplicates are removed by canonical
/// form.
fn connected_cubic(n: usize) -> Vec<Trigraph> {
    if n < 4 || n % 2 == 1 {
        return Vec::new();
    }
    let mut gen = CubicGen { n, adj: vec![Vec::with_capacity(3); n], next: 1, seen: HashSet::new(), out: Vec::new() };
    gen.fill(0, 0);
    gen.out
}

struct CubicGen {
    n: usize,
    adj: Vec<Vec<usize>>,
    next: usize,
    seen: HashSet<Vec<u8>>,
    out: Vec<Trigraph>,
}

impl CubicGen {
    /// Completes vertex `v`, choosing neighbors at least `from`.
    fn fill(&mut self, v: usize, from: usize) {
        if v == self.n {
            self.emit();
            return;
        }
        if v >= self.next {
            return; // not reached from earlier vertices: disconnected
        }
        if self.adj[v].len() == 3 {
            self.fill(v + 1, 0);
            return;
        }
        let lo = from.max(v + 1);
        for u in lo..self.next {
            if self.adj[u].len() < 3 && !self.adj[v].contains(&u) {
                self.link(v, u);
                self.fill(v, u + 1);
                self.unlink(v, u);
            }
        }
        if self.next < self.n {
            let u = self.next;
            self.next += 1;
            self.link(v, u);
            self.fill(v, u + 1);
            self.unlink(v, u);
            self.next -= 1;
        }
    }

    fn link(&mut self, a: usize, b: usize) {
        self.adj[a].push(b);
        self.adj[b].push(a);
    }

    fn unlink(&mut self, a: usize, b: usize) {
        self.adj[a].pop();
        self.adj[b].pop();
    }

    fn emit(&mut self) {
        let edges: Vec<(usize, usize)> = (0..self.n)
            .flat_map(|u| self.adj[u].iter().filter(move |&&w| u < w).map(move |&w| (u, w)))
            .collect();
        let g = Trigraph::from_black_edges(self.n, edges).expect("simple cubic graph");
        let code = canonical_form(&ColoredGraph::from_trigraph(&g, false)).code;
        if self.seen.insert(code) {
            self.out.push(g);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{complete, petersen};
    use crate::solver::is_isomorphic;

    #[test]
    fn labeled_counts() {
        assert_eq!(enumerate_graphs(GraphClass::Labeled(3)).unwrap().count(), 8);
        assert_eq!(enumerate_graphs(GraphClass::Labeled(0)).unwrap().count(), 1);
        assert!(enumerate_graphs(GraphClass::Labeled(8)).is_err());
    }

    #[test]
    fn cubic_counts() {
        // connected and total cubic graph counts for 4..=10 vertices
        let connected = [1, 2, 5, 19];
        let total = [1, 2, 6, 21];
        for (i, n) in (4..=10).step_by(2).enumerate() {
            assert_eq!(connected_cubic(n).len(), connected[i], "connected, n = {n}");
            let all: Vec<Trigraph> = enumerate_graphs(GraphClass::Cubic(n)).unwrap().collect();
            assert_eq!(all.len(), total[i], "all, n = {n}");
            assert!(all.iter().all(|g| (0..n).all(|v| g.degree(v) == 3)));
        }
        assert!(enumerate_graphs(GraphClass::Cubic(7)).unwrap().next().is_none());
        assert!(enumerate_graphs(GraphClass::Cubic(14)).is_err());
    }

    #[test]
    fn cubic_contains_known_graphs() {
        let four: Vec<Trigraph> = enumerate_graphs(GraphClass::Cubic(4)).unwrap().collect();
        assert!(is_isomorphic(&four[0], &complete(4)));
        assert!(enumerate_graphs(GraphClass::Cubic(10)).unwrap().any(|g| is_isomorphic(&g, &petersen())));
    }
}
