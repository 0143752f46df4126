//! One-step lower bound, strongly regular recognition, degeneracy and girth.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::bitset::BitRows;
use crate::trigraph::{Trigraph, TrigraphError, VertexId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BoundsError {
    #[error(transparent)]
    Trigraph(#[from] TrigraphError),
    #[error("srg parameters {0:?} violate (n-d-1)·mu = d·(d-lambda-1)")]
    Feasibility(SrgParams),
    #[error("srg parameters {0:?} out of range")]
    OutOfRange(SrgParams),
    #[error("strong regularity not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("vertex {vertex} has {left} earlier neighbors, more than d = {d}")]
    BadElimination { vertex: VertexId, left: usize, d: usize },
    #[error("elimination order is not a permutation of 0..{0}")]
    NotPermutation(usize),
}

/// Parameter set `(n, d, λ, μ)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SrgParams {
    pub n: usize,
    pub d: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl SrgParams {
    pub fn new(n: usize, d: usize, lambda: usize, mu: usize) -> Self {
        SrgParams { n, d, lambda, mu }
    }

    /// Checks `(n−d−1)μ = d(d−λ−1)` together with `d < n`, `λ < d`, `μ ≤ d`.
    pub fn validate(&self) -> Result<(), BoundsError> {
        let SrgParams { n, d, lambda, mu } = *self;
        if d >= n.max(1) || (d > 0 && lambda >= d) || mu > d {
            return Err(BoundsError::OutOfRange(*self));
        }
        let lhs = (n - d - 1) * mu;
        let rhs = d * (d.saturating_sub(lambda + 1));
        if lhs != rhs {
            return Err(BoundsError::Feasibility(*self));
        }
        Ok(())
    }
}

/// Elimination order: each vertex has at most `d` neighbors earlier in `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EliminationOrder {
    pub order: Vec<VertexId>,
    pub d: usize,
}

impl EliminationOrder {
    pub fn new(order: Vec<VertexId>, d: usize) -> Self {
        EliminationOrder { order, d }
    }

    /// Position of every vertex in the order.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![usize::MAX; self.order.len()];
        for (i, &v) in self.order.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }

    /// Verifies that the order is a permutation and that no vertex has more
    /// than `d` earlier neighbors.
    pub fn validate(&self, g: &Trigraph) -> Result<(), BoundsError> {
        let n = g.order();
        if self.order.len() != n {
            return Err(BoundsError::NotPermutation(n));
        }
        let mut seen = vec![false; n];
        for &v in &self.order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(BoundsError::NotPermutation(n));
            }
        }
        let pos = self.positions();
        for &v in &self.order {
            let left = g.neighbor_ids(v).filter(|&w| pos[w] < pos[v]).count();
            if left > self.d {
                return Err(BoundsError::BadElimination { vertex: v, left, d: self.d });
            }
        }
        Ok(())
    }
}

/// lb₁ together with the lexicographically smallest pair attaining it.
pub fn lb1_witness(g: &Trigraph) -> Result<(usize, Option<(VertexId, VertexId)>), BoundsError> {
    g.require_red_free()?;
    let n = g.order();
    if n < 2 {
        return Ok((0, None));
    }
    let rows = BitRows::from_trigraph(g);
    let mut best = (usize::MAX, None);
    for u in 0..n {
        for v in u + 1..n {
            // after merging u and v, each witness of N(u) Δ N(v) outside {u, v}
            // gets one red edge; the merged block gets all of them
            let mut diff = rows.symmetric_difference_count(u, v);
            if rows.get(u, v) {
                diff -= 2;
            }
            if diff < best.0 {
                best = (diff, Some((u, v)));
                if diff == 0 {
                    return Ok(best);
                }
            }
        }
    }
    Ok(best)
}

/// Least maximum red degree reachable by one merge. Zero for a single vertex.
pub fn lb1(g: &Trigraph) -> Result<usize, BoundsError> {
    lb1_witness(g).map(|(v, _)| v)
}

/// Strong regularity test.
///
/// `Err(NotApplicable)` when the graph is too small, complete or edgeless (λ
/// or μ has no witness); `Ok(None)` when it is simply not strongly regular.
pub fn srg_detect(g: &Trigraph) -> Result<Option<SrgParams>, BoundsError> {
    g.require_red_free()?;
    let n = g.order();
    if n < 3 {
        return Err(BoundsError::NotApplicable("fewer than 3 vertices"));
    }
    let m = g.edge_count();
    if m == 0 {
        return Err(BoundsError::NotApplicable("edgeless graph"));
    }
    if m == n * (n - 1) / 2 {
        return Err(BoundsError::NotApplicable("complete graph"));
    }
    let d = g.degree(0);
    if (0..n).any(|v| g.degree(v) != d) {
        return Ok(None);
    }
    let rows = BitRows::from_trigraph(g);
    let (mut lambda, mut mu) = (None, None);
    for u in 0..n {
        for v in u + 1..n {
            let c = rows.intersection_count(u, v);
            let slot = if rows.get(u, v) { &mut lambda } else { &mut mu };
            match *slot {
                None => *slot = Some(c),
                Some(x) if x != c => return Ok(None),
                _ => {}
            }
        }
    }
    match (lambda, mu) {
        (Some(lambda), Some(mu)) => Ok(Some(SrgParams { n, d, lambda, mu })),
        _ => Err(BoundsError::NotApplicable("missing adjacent or non-adjacent pair")),
    }
}

/// Closed form `min(2(d−λ−1), 2(d−μ))` of lb₁ for strongly regular graphs.
pub fn srg_lb1(p: &SrgParams) -> Result<usize, BoundsError> {
    p.validate()?;
    let a = 2 * p.d.saturating_sub(p.lambda + 1);
    let b = 2 * (p.d - p.mu);
    Ok(a.min(b))
}

/// Whether the parameters are `(n, (n−1)/2, (n−5)/4, (n−1)/4)` exactly.
pub fn is_conference(p: &SrgParams) -> bool {
    p.n >= 5 && 2 * p.d + 1 == p.n && 4 * p.lambda + 5 == p.n && 4 * p.mu + 1 == p.n
}

/// Degeneracy by repeated removal of a minimum-degree vertex (smallest id on
/// ties). The returned order lists vertices in reverse removal order.
pub fn degeneracy(g: &Trigraph) -> Result<EliminationOrder, BoundsError> {
    g.require_red_free()?;
    let n = g.order();
    let mut deg: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, VertexId)> = (0..n).map(|v| (deg[v], v)).collect();
    let mut removed = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut d = 0;
    while let Some((k, v)) = queue.pop_first() {
        d = d.max(k);
        removed[v] = true;
        order.push(v);
        for w in g.neighbor_ids(v) {
            if !removed[w] {
                queue.remove(&(deg[w], w));
                deg[w] -= 1;
                queue.insert((deg[w], w));
            }
        }
    }
    order.reverse();
    Ok(EliminationOrder { order, d })
}

/// Length of a shortest cycle, `None` for forests.
pub fn girth(g: &Trigraph) -> Result<Option<usize>, BoundsError> {
    g.require_red_free()?;
    Ok(girth_of_underlying(g))
}

/// Girth of the underlying simple graph, ignoring colors.
pub fn girth_of_underlying(g: &Trigraph) -> Option<usize> {
    let n = g.order();
    let mut best: Option<usize> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    for root in 0..n {
        dist.iter_mut().for_each(|x| *x = usize::MAX);
        dist[root] = 0;
        parent[root] = usize::MAX;
        queue.clear();
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some(b) = best {
                if 2 * dist[u] >= b {
                    break 'bfs;
                }
            }
            for w in g.neighbor_ids(u) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if parent[u] != w {
                    let len = dist[u] + dist[w] + 1;
                    if best.is_none_or(|b| len < b) {
                        best = Some(len);
                    }
                }
            }
        }
    }
    best
}
