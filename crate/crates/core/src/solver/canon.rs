//! Partition refinement, canonical labeling and isomorphism search on small
//! edge-colored graphs.
//!
//! Refinement splits an ordered vertex partition until it is equitable; the
//! resulting cell order depends only on the isomorphism type of the graph and
//! the individualized vertices, so two graphs can be compared cell by cell.

use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};

use crate::trigraph::{EdgeColor, Trigraph};

pub(crate) type Cells = Vec<Vec<usize>>;

/// Edge-colored graph with dense color lookup. Color 0 means no edge.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub(crate) struct ColoredGraph {
    n: usize,
    adj: Vec<Vec<(usize, u8)>>,
    mat: Vec<u8>,
}

impl ColoredGraph {
    pub(crate) fn from_trigraph(g: &Trigraph, keep_colors: bool) -> Self {
        let n = g.order();
        let mut adj = vec![Vec::new(); n];
        let mut mat = vec![0u8; n * n];
        for (u, v, c) in g.edges() {
            let code = if keep_colors && c == EdgeColor::Red { 2 } else { 1 };
            adj[u].push((v, code));
            adj[v].push((u, code));
            mat[u * n + v] = code;
            mat[v * n + u] = code;
        }
        ColoredGraph { n, adj, mat }
    }

    /// Builds from a dense color matrix (0 none, 1 black, 2 red).
    pub(crate) fn from_matrix(n: usize, mat: Vec<u8>) -> Self {
        let adj = (0..n)
            .map(|u| {
                (0..n)
                    .filter(|&v| mat[u * n + v] != 0)
                    .map(|v| (v, mat[u * n + v]))
                    .collect()
            })
            .collect();
        ColoredGraph { n, adj, mat }
    }

    pub(crate) fn order(&self) -> usize {
        self.n
    }

    pub(crate) fn color(&self, u: usize, v: usize) -> u8 {
        self.mat[u * self.n + v]
    }

    pub(crate) fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    fn preserves(&self, other: &ColoredGraph, map: &[usize]) -> bool {
        (0..self.n).all(|u| {
            self.adj[u].len() == other.adj[map[u]].len()
                && self.adj[u].iter().all(|&(v, c)| other.color(map[u], map[v]) == c)
        })
    }
}

/// Refines `cells` to the coarsest equitable partition below it. Returns the
/// refined cells and a trace hash of every split made.
pub(crate) fn refine(g: &ColoredGraph, mut cells: Cells) -> (Cells, u64) {
    let n = g.order();
    let mut hasher = DefaultHasher::new();
    let mut cell_of = vec![0u32; n];
    let mut scratch: Vec<(u32, u8)> = Vec::new();
    loop {
        for (i, c) in cells.iter().enumerate() {
            for &v in c {
                cell_of[v] = i as u32;
            }
        }
        let mut next: Cells = Vec::with_capacity(cells.len());
        for cell in &cells {
            if cell.len() == 1 {
                next.push(cell.clone());
                continue;
            }
            let mut keyed: Vec<(Vec<(u32, u8, u32)>, usize)> = cell
                .iter()
                .map(|&v| {
                    scratch.clear();
                    scratch.extend(g.adj[v].iter().map(|&(w, c)| (cell_of[w], c)));
                    scratch.sort_unstable();
                    let mut sig: Vec<(u32, u8, u32)> = Vec::new();
                    for &(k, c) in &scratch {
                        match sig.last_mut() {
                            Some(last) if last.0 == k && last.1 == c => last.2 += 1,
                            _ => sig.push((k, c, 1)),
                        }
                    }
                    (sig, v)
                })
                .collect();
            keyed.sort();
            let mut start = 0;
            while start < keyed.len() {
                let mut end = start + 1;
                while end < keyed.len() && keyed[end].0 == keyed[start].0 {
                    end += 1;
                }
                keyed[start].0.hash(&mut hasher);
                (end - start).hash(&mut hasher);
                next.push(keyed[start..end].iter().map(|&(_, v)| v).collect());
                start = end;
            }
        }
        let stable = next.len() == cells.len();
        cells = next;
        if stable {
            break;
        }
    }
    cells.len().hash(&mut hasher);
    (cells, hasher.finish())
}

/// Splits `w` off its cell, placing the singleton first.
pub(crate) fn individualize(cells: &Cells, w: usize) -> Cells {
    let mut out = Vec::with_capacity(cells.len() + 1);
    for c in cells {
        if c.len() > 1 && c.contains(&w) {
            out.push(vec![w]);
            out.push(c.iter().copied().filter(|&x| x != w).collect());
        } else {
            out.push(c.clone());
        }
    }
    out
}

/// Index of the first smallest non-singleton cell.
pub(crate) fn target_cell(cells: &Cells) -> Option<usize> {
    cells
        .iter()
        .enumerate()
        .filter(|(_, c)| c.len() > 1)
        .min_by_key(|(i, c)| (c.len(), *i))
        .map(|(i, _)| i)
}

/// Canonical code (upper-triangle colors in canonical order) and the
/// labeling `vertex -> canonical position` that produced it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct Canonical {
    pub code: Vec<u8>,
    pub labeling: Vec<usize>,
}

struct CanonSearch<'a> {
    g: &'a ColoredGraph,
    best: Option<(Vec<u8>, Vec<usize>)>,
    autos: Vec<Vec<usize>>,
}

impl CanonSearch<'_> {
    fn leaf(&mut self, cells: &Cells) {
        let n = self.g.order();
        let inv: Vec<usize> = cells.iter().map(|c| c[0]).collect();
        let mut code = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for i in 0..n {
            for j in i + 1..n {
                code.push(self.g.color(inv[i], inv[j]));
            }
        }
        match &self.best {
            Some((best, best_inv)) if *best == code => {
                // same code: inv -> best_inv is an automorphism
                let mut sigma = vec![0; n];
                for (i, &v) in inv.iter().enumerate() {
                    sigma[v] = best_inv[i];
                }
                self.autos.push(sigma);
            }
            Some((best, _)) if *best < code => {}
            _ => self.best = Some((code, inv)),
        }
    }

    fn search(&mut self, cells: Cells, prefix: &mut Vec<usize>) {
        let Some(t) = target_cell(&cells) else {
            self.leaf(&cells);
            return;
        };
        let mut tried: Vec<usize> = Vec::new();
        for &w in &cells[t] {
            if !tried.is_empty() && self.equivalent_to_tried(prefix, &tried, w) {
                continue;
            }
            tried.push(w);
            let (child, _) = refine(self.g, individualize(&cells, w));
            prefix.push(w);
            self.search(child, prefix);
            prefix.pop();
        }
    }

    /// Whether `w` shares an orbit with a tried vertex under the known
    /// automorphisms that fix `prefix` pointwise.
    fn equivalent_to_tried(&self, prefix: &[usize], tried: &[usize], w: usize) -> bool {
        let n = self.g.order();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(p: &mut [usize], mut x: usize) -> usize {
            while p[x] != x {
                p[x] = p[p[x]];
                x = p[x];
            }
            x
        }
        let mut any = false;
        for sigma in &self.autos {
            if prefix.iter().all(|&p| sigma[p] == p) {
                any = true;
                for v in 0..n {
                    let (a, b) = (find(&mut parent, v), find(&mut parent, sigma[v]));
                    if a != b {
                        parent[a] = b;
                    }
                }
            }
        }
        if !any {
            return false;
        }
        let rw = find(&mut parent, w);
        tried.iter().any(|&t| find(&mut parent, t) == rw)
    }
}

pub(crate) fn canonical_form(g: &ColoredGraph) -> Canonical {
    let n = g.order();
    if n == 0 {
        return Canonical { code: Vec::new(), labeling: Vec::new() };
    }
    let (cells, _) = refine(g, vec![(0..n).collect()]);
    let mut search = CanonSearch { g, best: None, autos: Vec::new() };
    search.search(cells, &mut Vec::new());
    let (code, inv) = search.best.expect("at least one leaf");
    let mut labeling = vec![0; n];
    for (i, &v) in inv.iter().enumerate() {
        labeling[v] = i;
    }
    Canonical { code, labeling }
}

/// Node budget ran out during a backtracking search.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Exhausted;

/// Searches for an isomorphism `a -> b` compatible with the paired ordered
/// partitions (cell `i` of `left` maps into cell `i` of `right`).
pub(crate) fn extend_mapping(
    a: &ColoredGraph,
    b: &ColoredGraph,
    left: &Cells,
    right: &Cells,
    nodes: &mut u64,
) -> Result<Option<Vec<usize>>, Exhausted> {
    if *nodes == 0 {
        return Err(Exhausted);
    }
    *nodes -= 1;
    if left.len() != right.len() || left.iter().zip(right).any(|(x, y)| x.len() != y.len()) {
        return Ok(None);
    }
    let Some(t) = target_cell(left) else {
        let mut map = vec![0; a.order()];
        for (x, y) in left.iter().zip(right) {
            map[x[0]] = y[0];
        }
        return Ok(a.preserves(b, &map).then_some(map));
    };
    let x = left[t][0];
    let (l2, tl) = refine(a, individualize(left, x));
    for &y in &right[t] {
        let (r2, tr) = refine(b, individualize(right, y));
        if tl != tr {
            continue;
        }
        if let Some(map) = extend_mapping(a, b, &l2, &r2, nodes)? {
            return Ok(Some(map));
        }
    }
    Ok(None)
}

/// Isomorphism test between two colored graphs.
pub(crate) fn find_isomorphism(
    a: &ColoredGraph,
    b: &ColoredGraph,
    nodes: &mut u64,
) -> Result<Option<Vec<usize>>, Exhausted> {
    if a.order() != b.order() || a.edge_count() != b.edge_count() {
        return Ok(None);
    }
    let n = a.order();
    if n == 0 {
        return Ok(Some(Vec::new()));
    }
    let (l, tl) = refine(a, vec![(0..n).collect()]);
    let (r, tr) = refine(b, vec![(0..n).collect()]);
    if tl != tr {
        return Ok(None);
    }
    extend_mapping(a, b, &l, &r, nodes)
}
