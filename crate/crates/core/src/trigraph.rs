//! Trigraphs, vertex partitions, quotients and contraction sequences.
//!
//! A [`Trigraph`] is a simple graph whose edges carry one of two colors. Black
//! edges are exact adjacencies, red edges record that two merged blocks are
//! only partially connected. Everything else in the crate certifies against
//! [`sequence_width`].

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

/// Vertex index in `[0, n)`.
pub type VertexId = usize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EdgeColor {
    Black,
    Red,
}

impl EdgeColor {
    pub fn is_red(self) -> bool {
        self == EdgeColor::Red
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrigraphError {
    #[error("vertex {vertex} out of range for order {n}")]
    VertexOutOfRange { vertex: VertexId, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("step {step}: vertices {u} and {v} already lie in the same block")]
    SameBlock { step: usize, u: VertexId, v: VertexId },
    #[error("step {step}: {source}")]
    Replay {
        step: usize,
        #[source]
        source: Box<TrigraphError>,
    },
    #[error("sequence is for order {seq} but the trigraph has order {graph}")]
    OrderMismatch { seq: usize, graph: usize },
    #[error("sequence has {steps} steps, more than n-1 = {max}")]
    TooManySteps { steps: usize, max: usize },
    #[error("operation requires a red-free trigraph, found red edge {0}-{1}")]
    RedEdge(VertexId, VertexId),
}

/// Edge-colored simple graph on vertices `0..n`.
///
/// Neighborhoods are kept sorted by neighbor id, so two trigraphs compare
/// equal exactly when their edge maps are equal.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Trigraph {
    adj: Vec<Vec<(VertexId, EdgeColor)>>,
}

impl fmt::Debug for Trigraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self
            .edges()
            .map(|(u, v, c)| format!("{u}-{v}{}", if c.is_red() { "r" } else { "" }))
            .collect();
        write!(f, "Trigraph(n={}, [{}])", self.order(), edges.join(" "))
    }
}

impl Trigraph {
    /// Edgeless trigraph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Trigraph { adj: vec![Vec::new(); n] }
    }

    /// Builds a trigraph, rejecting self-loops, out-of-range ids and repeated pairs.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, TrigraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId, EdgeColor)>,
    {
        let mut g = Trigraph::empty(n);
        for (u, v, c) in edges {
            g.check_pair(u, v)?;
            if g.color(u, v).is_some() {
                return Err(TrigraphError::DuplicateEdge(u.min(v), u.max(v)));
            }
            g.set_edge(u, v, c);
        }
        Ok(g)
    }

    /// Builds a red-free graph from black edges.
    pub fn from_black_edges<I>(n: usize, edges: I) -> Result<Self, TrigraphError>
    where
        I: IntoIterator<Item = (VertexId, VertexId)>,
    {
        Self::from_edges(n, edges.into_iter().map(|(u, v)| (u, v, EdgeColor::Black)))
    }

    fn check_pair(&self, u: VertexId, v: VertexId) -> Result<(), TrigraphError> {
        let n = self.order();
        for w in [u, v] {
            if w >= n {
                return Err(TrigraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(TrigraphError::SelfLoop(u));
        }
        Ok(())
    }

    /// Inserts or recolors the edge `uv`.
    ///
    /// Panics on self-loops or out-of-range ids; use [`Trigraph::from_edges`]
    /// for untrusted input.
    pub fn set_edge(&mut self, u: VertexId, v: VertexId, color: EdgeColor) {
        self.check_pair(u, v).expect("invalid edge");
        Self::insert_half(&mut self.adj[u], v, color);
        Self::insert_half(&mut self.adj[v], u, color);
    }

    fn insert_half(list: &mut Vec<(VertexId, EdgeColor)>, w: VertexId, color: EdgeColor) {
        match list.binary_search_by_key(&w, |&(x, _)| x) {
            Ok(i) => list[i].1 = color,
            Err(i) => list.insert(i, (w, color)),
        }
    }

    pub fn remove_edge(&mut self, u: VertexId, v: VertexId) {
        for (a, b) in [(u, v), (v, u)] {
            if let Ok(i) = self.adj[a].binary_search_by_key(&b, |&(x, _)| x) {
                self.adj[a].remove(i);
            }
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn red_edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|l| l.iter().filter(|(_, c)| c.is_red()).count())
            .sum::<usize>()
            / 2
    }

    pub fn color(&self, u: VertexId, v: VertexId) -> Option<EdgeColor> {
        let list = self.adj.get(u)?;
        list.binary_search_by_key(&v, |&(x, _)| x)
            .ok()
            .map(|i| list[i].1)
    }

    pub fn is_adjacent(&self, u: VertexId, v: VertexId) -> bool {
        self.color(u, v).is_some()
    }

    /// Neighbors of `v` with edge colors, sorted by neighbor id.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeColor)] {
        &self.adj[v]
    }

    pub fn neighbor_ids(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.adj[v].iter().map(|&(w, _)| w)
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn red_degree(&self, v: VertexId) -> usize {
        self.adj[v].iter().filter(|(_, c)| c.is_red()).count()
    }

    /// Maximum degree, counting edges of both colors.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn max_red_degree(&self) -> usize {
        (0..self.order()).map(|v| self.red_degree(v)).max().unwrap_or(0)
    }

    /// All edges as `(u, v, color)` with `u < v`, sorted by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (VertexId, VertexId, EdgeColor)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, l)| {
            l.iter()
                .filter(move |&&(v, _)| u < v)
                .map(move |&(v, c)| (u, v, c))
        })
    }

    pub fn is_red_free(&self) -> bool {
        self.first_red_edge().is_none()
    }

    pub fn first_red_edge(&self) -> Option<(VertexId, VertexId)> {
        self.edges().find(|e| e.2.is_red()).map(|(u, v, _)| (u, v))
    }

    pub(crate) fn require_red_free(&self) -> Result<(), TrigraphError> {
        match self.first_red_edge() {
            Some((u, v)) => Err(TrigraphError::RedEdge(u, v)),
            None => Ok(()),
        }
    }

    /// The same edge set with every edge black.
    pub fn underlying(&self) -> Trigraph {
        self.recolored(EdgeColor::Black)
    }

    /// The same edge set with every edge red.
    pub fn redden(&self) -> Trigraph {
        self.recolored(EdgeColor::Red)
    }

    fn recolored(&self, color: EdgeColor) -> Trigraph {
        Trigraph {
            adj: self
                .adj
                .iter()
                .map(|l| l.iter().map(|&(w, _)| (w, color)).collect())
                .collect(),
        }
    }

    /// Exchanges edges and non-edges. Only defined for red-free trigraphs.
    pub fn complement(&self) -> Result<Trigraph, TrigraphError> {
        self.require_red_free()?;
        let n = self.order();
        let adj = (0..n)
            .map(|u| {
                let mut out = Vec::with_capacity(n - 1 - self.degree(u));
                let mut it = self.adj[u].iter().map(|&(w, _)| w).peekable();
                for w in 0..n {
                    if it.peek() == Some(&w) {
                        it.next();
                    } else if w != u {
                        out.push((w, EdgeColor::Black));
                    }
                }
                out
            })
            .collect();
        Ok(Trigraph { adj })
    }

    /// Induced subgraph on `vertices`, renumbered in the given order.
    pub fn induced(&self, vertices: &[VertexId]) -> Trigraph {
        let mut index = HashMap::with_capacity(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            index.insert(v, i);
        }
        let mut g = Trigraph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &(w, c) in &self.adj[v] {
                if let Some(&j) = index.get(&w) {
                    if i < j {
                        g.set_edge(i, j, c);
                    }
                }
            }
        }
        g
    }

    /// Relabels vertex `v` as `perm[v]`.
    pub fn permuted(&self, perm: &[VertexId]) -> Trigraph {
        let mut adj = vec![Vec::new(); self.order()];
        for (u, l) in self.adj.iter().enumerate() {
            let mut out: Vec<_> = l.iter().map(|&(w, c)| (perm[w], c)).collect();
            out.sort_unstable();
            adj[perm[u]] = out;
        }
        Trigraph { adj }
    }
}

/// Disjoint nonempty blocks covering `0..n`. Blocks are stored sorted, in
/// increasing order of their minimum member (the block's representative).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: Vec<Vec<VertexId>>,
    block_of: Vec<usize>,
}

impl Partition {
    pub fn new(n: usize, blocks: Vec<Vec<VertexId>>) -> Result<Self, TrigraphError> {
        let mut block_of = vec![usize::MAX; n];
        let mut blocks: Vec<Vec<VertexId>> = blocks
            .into_iter()
            .map(|mut b| {
                b.sort_unstable();
                b
            })
            .collect();
        if let Some(i) = blocks.iter().position(Vec::is_empty) {
            return Err(TrigraphError::InvalidPartition(format!("block {i} is empty")));
        }
        blocks.sort_unstable_by_key(|b| b[0]);
        for (i, b) in blocks.iter().enumerate() {
            for &v in b {
                if v >= n {
                    return Err(TrigraphError::InvalidPartition(format!(
                        "vertex {v} out of range for order {n}"
                    )));
                }
                if block_of[v] != usize::MAX {
                    return Err(TrigraphError::InvalidPartition(format!(
                        "vertex {v} appears in more than one block"
                    )));
                }
                block_of[v] = i;
            }
        }
        if let Some(v) = block_of.iter().position(|&b| b == usize::MAX) {
            return Err(TrigraphError::InvalidPartition(format!(
                "vertex {v} is not covered"
            )));
        }
        Ok(Partition { blocks, block_of })
    }

    /// Every vertex in its own block.
    pub fn discrete(n: usize) -> Self {
        Partition {
            blocks: (0..n).map(|v| vec![v]).collect(),
            block_of: (0..n).collect(),
        }
    }

    /// A single block (no blocks when `n == 0`).
    pub fn trivial(n: usize) -> Self {
        if n == 0 {
            return Partition::discrete(0);
        }
        Partition {
            blocks: vec![(0..n).collect()],
            block_of: vec![0; n],
        }
    }

    /// Builds a partition from a block label per vertex.
    pub fn from_labels(labels: &[usize]) -> Self {
        let mut groups: BTreeMap<usize, Vec<VertexId>> = BTreeMap::new();
        for (v, &l) in labels.iter().enumerate() {
            groups.entry(l).or_default().push(v);
        }
        Partition::new(labels.len(), groups.into_values().collect()).expect("labels cover 0..n")
    }

    pub fn order(&self) -> usize {
        self.block_of.len()
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> &[Vec<VertexId>] {
        &self.blocks
    }

    /// Index of the block containing `v` (blocks are indexed by increasing representative).
    pub fn block_index(&self, v: VertexId) -> usize {
        self.block_of[v]
    }

    pub fn representative(&self, block: usize) -> VertexId {
        self.blocks[block][0]
    }

    /// Whether every block of `self` lies inside a block of `coarser`.
    pub fn refines(&self, coarser: &Partition) -> bool {
        self.order() == coarser.order()
            && self.blocks.iter().all(|b| {
                let target = coarser.block_index(b[0]);
                b.iter().all(|&v| coarser.block_index(v) == target)
            })
    }
}

/// Merge of the blocks containing `u` and `v`. Either endpoint may be any
/// member of its block; `u <= v` after construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct MergeStep {
    pub u: VertexId,
    pub v: VertexId,
}

impl MergeStep {
    pub fn new(a: VertexId, b: VertexId) -> Self {
        MergeStep { u: a.min(b), v: a.max(b) }
    }
}

/// Ordered merge steps starting from the discrete partition of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ContractionSequence {
    pub n: usize,
    pub steps: Vec<MergeStep>,
}

impl ContractionSequence {
    pub fn new(n: usize) -> Self {
        ContractionSequence { n, steps: Vec::new() }
    }

    pub fn with_steps(n: usize, steps: Vec<MergeStep>) -> Self {
        ContractionSequence { n, steps }
    }

    pub fn push(&mut self, a: VertexId, b: VertexId) {
        self.steps.push(MergeStep::new(a, b));
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// A sequence is complete once it reaches a single block.
    pub fn is_complete(&self) -> bool {
        self.steps.len() + 1 >= self.n
    }

    /// Partition reached after replaying all steps.
    pub fn final_partition(&self) -> Result<Partition, TrigraphError> {
        let mut dsu = Dsu::new(self.n);
        for (i, s) in self.steps.iter().enumerate() {
            for w in [s.u, s.v] {
                if w >= self.n {
                    return Err(TrigraphError::Replay {
                        step: i,
                        source: Box::new(TrigraphError::VertexOutOfRange { vertex: w, n: self.n }),
                    });
                }
            }
            if !dsu.union(s.u, s.v) {
                return Err(TrigraphError::SameBlock { step: i, u: s.u, v: s.v });
            }
        }
        Ok(Partition::from_labels(&dsu.labels()))
    }

    /// Rewrites every step so that it names both blocks by their minimum
    /// member, the form emitted by the sequence writer.
    pub fn canonical(&self) -> Result<ContractionSequence, TrigraphError> {
        let mut dsu = Dsu::new(self.n);
        let mut out = ContractionSequence::new(self.n);
        for (i, s) in self.steps.iter().enumerate() {
            if s.u >= self.n || s.v >= self.n {
                return Err(TrigraphError::Replay {
                    step: i,
                    source: Box::new(TrigraphError::VertexOutOfRange {
                        vertex: s.u.max(s.v),
                        n: self.n,
                    }),
                });
            }
            let (a, b) = (dsu.min_of(s.u), dsu.min_of(s.v));
            if !dsu.union(s.u, s.v) {
                return Err(TrigraphError::SameBlock { step: i, u: s.u, v: s.v });
            }
            out.push(a, b);
        }
        Ok(out)
    }

    /// Appends `other`, whose steps are expressed on the same vertex ids.
    pub fn extend(&mut self, other: &ContractionSequence) {
        self.steps.extend_from_slice(&other.steps);
    }
}

/// Union-find that also tracks the minimum member of each set.
#[derive(Debug, Clone)]
pub(crate) struct Dsu {
    parent: Vec<usize>,
    size: Vec<usize>,
    min: Vec<usize>,
}

impl Dsu {
    pub(crate) fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            size: vec![1; n],
            min: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn min_of(&mut self, x: usize) -> usize {
        let r = self.find(x);
        self.min[r]
    }

    /// Returns false if `a` and `b` were already joined.
    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
        self.min[ra] = self.min[ra].min(self.min[rb]);
        true
    }

    /// Minimum member of each vertex's set.
    pub(crate) fn labels(&mut self) -> Vec<usize> {
        (0..self.parent.len()).map(|v| self.min_of(v)).collect()
    }
}

/// Quotient `G/P`: blocks become vertices (renumbered by increasing
/// representative); two blocks are joined black if fully connected by black
/// edges, not joined if no edge runs between them, and red otherwise.
pub fn quotient(g: &Trigraph, p: &Partition) -> Result<Trigraph, TrigraphError> {
    if p.order() != g.order() {
        return Err(TrigraphError::InvalidPartition(format!(
            "partition of order {} applied to trigraph of order {}",
            p.order(),
            g.order()
        )));
    }
    // (black edge count, saw red) per block pair
    let mut between: HashMap<(usize, usize), (usize, bool)> = HashMap::new();
    for (u, v, c) in g.edges() {
        let (bu, bv) = (p.block_index(u), p.block_index(v));
        if bu == bv {
            continue;
        }
        let e = between.entry((bu.min(bv), bu.max(bv))).or_insert((0, false));
        match c {
            EdgeColor::Black => e.0 += 1,
            EdgeColor::Red => e.1 = true,
        }
    }
    let mut q = Trigraph::empty(p.len());
    let mut pairs: Vec<_> = between.into_iter().collect();
    pairs.sort_unstable_by_key(|&(k, _)| k);
    for ((a, b), (black, red)) in pairs {
        let full = p.blocks[a].len() * p.blocks[b].len();
        let color = if !red && black == full {
            EdgeColor::Black
        } else {
            EdgeColor::Red
        };
        q.set_edge(a, b, color);
    }
    Ok(q)
}

/// Incrementally maintained quotient `G/P` along a contraction sequence.
///
/// Each merge touches only the two merged blocks and their neighbors.
#[derive(Debug, Clone)]
pub struct QuotientState {
    dsu: Dsu,
    // adjacency keyed by dsu root; empty for roots that were merged away
    adj: Vec<BTreeMap<usize, EdgeColor>>,
    red_deg: Vec<usize>,
    red_hist: Vec<usize>,
    max_red: usize,
    blocks: usize,
}

impl QuotientState {
    pub fn new(g: &Trigraph) -> Self {
        let n = g.order();
        let adj: Vec<BTreeMap<usize, EdgeColor>> = (0..n)
            .map(|v| g.neighbors(v).iter().copied().collect())
            .collect();
        let red_deg: Vec<usize> = (0..n).map(|v| g.red_degree(v)).collect();
        let mut red_hist = vec![0; n.max(1)];
        for &r in &red_deg {
            red_hist[r] += 1;
        }
        let max_red = red_deg.iter().copied().max().unwrap_or(0);
        QuotientState {
            dsu: Dsu::new(n),
            adj,
            red_deg,
            red_hist,
            max_red,
            blocks: n,
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    /// Number of blocks currently present.
    pub fn block_count(&self) -> usize {
        self.blocks
    }

    pub fn max_red_degree(&self) -> usize {
        self.max_red
    }

    /// Minimum member of the block containing `v`.
    pub fn representative(&mut self, v: VertexId) -> VertexId {
        self.dsu.min_of(v)
    }

    pub fn same_block(&mut self, a: VertexId, b: VertexId) -> bool {
        self.dsu.find(a) == self.dsu.find(b)
    }

    /// Red degree of the block containing `v`.
    pub fn block_red_degree(&mut self, v: VertexId) -> usize {
        let r = self.dsu.find(v);
        self.red_deg[r]
    }

    /// Smallest representative among blocks of maximum red degree.
    pub fn argmax_block(&mut self) -> Option<VertexId> {
        let n = self.order();
        let max = self.max_red;
        let mut best = None;
        for v in 0..n {
            if self.dsu.find(v) == v && self.red_deg[v] == max {
                let m = self.dsu.min[v];
                if best.is_none_or(|b: VertexId| m < b) {
                    best = Some(m);
                }
            }
        }
        best
    }

    fn set_red_degree(&mut self, root: usize, value: usize) {
        let old = self.red_deg[root];
        self.red_hist[old] -= 1;
        self.red_hist[value] += 1;
        self.red_deg[root] = value;
        if value > self.max_red {
            self.max_red = value;
        }
    }

    fn drop_block(&mut self, root: usize) {
        let old = self.red_deg[root];
        self.red_hist[old] -= 1;
        self.red_deg[root] = 0;
    }

    fn settle_max(&mut self) {
        while self.max_red > 0 && self.red_hist[self.max_red] == 0 {
            self.max_red -= 1;
        }
    }

    /// Merges the blocks containing `a` and `b`, returning the maximum red
    /// degree of the new quotient.
    pub fn apply_merge(&mut self, step: MergeStep) -> Result<usize, TrigraphError> {
        let n = self.order();
        for w in [step.u, step.v] {
            if w >= n {
                return Err(TrigraphError::VertexOutOfRange { vertex: w, n });
            }
        }
        let (ra, rb) = (self.dsu.find(step.u), self.dsu.find(step.v));
        if ra == rb {
            return Err(TrigraphError::SameBlock { step: 0, u: step.u, v: step.v });
        }
        let adj_a = std::mem::take(&mut self.adj[ra]);
        let adj_b = std::mem::take(&mut self.adj[rb]);
        self.dsu.union(ra, rb);
        let root = self.dsu.find(ra);

        let mut merged = BTreeMap::new();
        let mut keys: Vec<usize> = adj_a.keys().chain(adj_b.keys()).copied().collect();
        keys.sort_unstable();
        keys.dedup();
        for x in keys {
            if x == ra || x == rb {
                continue;
            }
            let color = match (adj_a.get(&x), adj_b.get(&x)) {
                (Some(EdgeColor::Black), Some(EdgeColor::Black)) => EdgeColor::Black,
                _ => EdgeColor::Red,
            };
            merged.insert(x, color);
        }

        for (&x, &color) in &merged {
            let list = &mut self.adj[x];
            let mut lost = 0;
            for r in [ra, rb] {
                if list.remove(&r) == Some(EdgeColor::Red) {
                    lost += 1;
                }
            }
            list.insert(root, color);
            let gained = usize::from(color.is_red());
            let new = self.red_deg[x] + gained - lost;
            self.set_red_degree(x, new);
        }
        let red_new = merged.values().filter(|c| c.is_red()).count();
        let other = if root == ra { rb } else { ra };
        self.drop_block(other);
        self.set_red_degree(root, red_new);
        self.adj[root] = merged;
        self.blocks -= 1;
        self.settle_max();
        Ok(self.max_red)
    }

    /// Current partition, blocks ordered by representative.
    pub fn partition(&mut self) -> Partition {
        Partition::from_labels(&self.dsu.labels())
    }

    /// Current quotient as a standalone trigraph, blocks renumbered by
    /// increasing representative.
    pub fn to_trigraph(&mut self) -> Trigraph {
        let n = self.order();
        let mut roots: Vec<(usize, usize)> = Vec::with_capacity(self.blocks);
        for v in 0..n {
            if self.dsu.find(v) == v {
                roots.push((self.dsu.min[v], v));
            }
        }
        roots.sort_unstable();
        let mut index = vec![usize::MAX; n];
        for (i, &(_, r)) in roots.iter().enumerate() {
            index[r] = i;
        }
        let mut q = Trigraph::empty(roots.len());
        for &(_, r) in &roots {
            for (&x, &c) in &self.adj[r] {
                if index[r] < index[x] {
                    q.set_edge(index[r], index[x], c);
                }
            }
        }
        q
    }
}

/// Result of replaying a contraction sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WidthReport {
    pub width: usize,
    /// `(step index, maximum red degree after that step)`.
    pub per_step: Vec<(usize, usize)>,
    /// Representative of a block attaining `width`, at the first time it was attained.
    pub argmax_block: Option<VertexId>,
}

/// Width of `seq` on `g`: the maximum red degree over `g` itself and every
/// quotient reached along the sequence.
pub fn sequence_width(g: &Trigraph, seq: &ContractionSequence) -> Result<WidthReport, TrigraphError> {
    if seq.n != g.order() {
        return Err(TrigraphError::OrderMismatch { seq: seq.n, graph: g.order() });
    }
    let max_steps = g.order().saturating_sub(1);
    if seq.steps.len() > max_steps {
        return Err(TrigraphError::TooManySteps { steps: seq.steps.len(), max: max_steps });
    }
    let mut state = QuotientState::new(g);
    let mut width = state.max_red_degree();
    let mut argmax = state.argmax_block();
    let mut per_step = Vec::with_capacity(seq.steps.len());
    for (i, &step) in seq.steps.iter().enumerate() {
        let r = state.apply_merge(step).map_err(|e| match e {
            TrigraphError::SameBlock { u, v, .. } => TrigraphError::SameBlock { step: i, u, v },
            other => TrigraphError::Replay { step: i, source: Box::new(other) },
        })?;
        per_step.push((i, r));
        if r > width {
            width = r;
            argmax = state.argmax_block();
        }
    }
    Ok(WidthReport { width, per_step, argmax_block: argmax })
}
