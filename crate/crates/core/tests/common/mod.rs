// Shared helpers for the integration tests. Everything here is deliberately
// naive so it can serve as an independent check on the library.
#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use twinwidth::solver::canonical_code;
use twinwidth::{ContractionSequence, EdgeColor, Trigraph};

pub fn random_graph<R: Rng>(n: usize, p: f64, rng: &mut R) -> Trigraph {
    let mut g = Trigraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                g.set_edge(u, v, EdgeColor::Black);
            }
        }
    }
    g
}

pub fn random_trigraph<R: Rng>(n: usize, rng: &mut R) -> Trigraph {
    let mut g = Trigraph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            match rng.gen_range(0..4) {
                0 | 1 => {}
                2 => g.set_edge(u, v, EdgeColor::Black),
                _ => g.set_edge(u, v, EdgeColor::Red),
            }
        }
    }
    g
}

/// A full contraction sequence that merges two random live representatives
/// at every step.
pub fn random_sequence<R: Rng>(n: usize, rng: &mut R) -> ContractionSequence {
    let mut live: Vec<usize> = (0..n).collect();
    let mut seq = ContractionSequence::new(n);
    while live.len() > 1 {
        let i = rng.gen_range(0..live.len());
        let mut j = rng.gen_range(0..live.len() - 1);
        if j >= i {
            j += 1;
        }
        seq.push(live[i], live[j]);
        live.swap_remove(i.max(j));
    }
    seq
}

/// Graph on `n ≤ 8` vertices from a bitmask over the pairs `(u, v)`, `u < v`,
/// in lexicographic order.
pub fn graph_from_mask(n: usize, mask: u64) -> Trigraph {
    let mut g = Trigraph::empty(n);
    let mut bit = 0;
    for u in 0..n {
        for v in u + 1..n {
            if mask >> bit & 1 == 1 {
                g.set_edge(u, v, EdgeColor::Black);
            }
            bit += 1;
        }
    }
    g
}

fn masks(g: &Trigraph) -> (Vec<u64>, Vec<u64>) {
    let n = g.order();
    let mut black = vec![0u64; n];
    let mut red = vec![0u64; n];
    for (u, v, c) in g.edges() {
        let rows = if c.is_red() { &mut red } else { &mut black };
        rows[u] |= 1 << v;
        rows[v] |= 1 << u;
    }
    (black, red)
}

fn worst_red_degree(black: &[u64], red: &[u64], blocks: &[u64]) -> usize {
    let mut worst = 0;
    for (i, &bi) in blocks.iter().enumerate() {
        let mut deg = 0;
        for (j, &bj) in blocks.iter().enumerate() {
            if i == j {
                continue;
            }
            let mut any_red = false;
            let mut black_pairs = 0;
            let mut rest = bi;
            while rest != 0 {
                let v = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                any_red |= red[v] & bj != 0;
                black_pairs += (black[v] & bj).count_ones();
            }
            let full = bi.count_ones() * bj.count_ones();
            if any_red || (black_pairs != 0 && black_pairs != full) {
                deg += 1;
            }
        }
        worst = worst.max(deg);
    }
    worst
}

fn oracle_rec(black: &[u64], red: &[u64], blocks: &[u64]) -> usize {
    let here = worst_red_degree(black, red, blocks);
    if blocks.len() <= 1 {
        return here;
    }
    let mut best = usize::MAX;
    for i in 0..blocks.len() {
        for j in i + 1..blocks.len() {
            let mut next: Vec<u64> = blocks.to_vec();
            next[i] |= next[j];
            next.remove(j);
            best = best.min(oracle_rec(black, red, &next));
        }
    }
    here.max(best)
}

/// Twin-width by trying every contraction sequence, with no pruning or
/// memoization at all. Only sensible for `n ≤ 6`.
pub fn oracle_tww(g: &Trigraph) -> usize {
    let n = g.order();
    assert!(n <= 8, "the oracle is exponential; n = {n} is too large");
    let (black, red) = masks(g);
    let blocks: Vec<u64> = (0..n).map(|v| 1u64 << v).collect();
    oracle_rec(&black, &red, &blocks)
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..n {
            let mut q = p.clone();
            q.insert(pos, n - 1);
            out.push(q);
        }
    }
    out
}

/// Isomorphism-class key for black graphs on `n ≤ 7` vertices: the least pair
/// mask over all relabelings.
pub struct BruteCanon {
    n: usize,
    pair_bit: Vec<Vec<u32>>,
    perms: Vec<Vec<usize>>,
}

impl BruteCanon {
    pub fn new(n: usize) -> Self {
        assert!(n <= 7);
        let mut pair_bit = vec![vec![0u32; n]; n];
        let mut bit = 0;
        for u in 0..n {
            for v in u + 1..n {
                pair_bit[u][v] = bit;
                pair_bit[v][u] = bit;
                bit += 1;
            }
        }
        BruteCanon { n, pair_bit, perms: permutations(n) }
    }

    pub fn key(&self, mask: u64) -> u64 {
        let n = self.n;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if mask >> self.pair_bit[u][v] & 1 == 1 {
                    edges.push((u, v));
                }
            }
        }
        self.perms
            .iter()
            .map(|p| edges.iter().fold(0u64, |acc, &(u, v)| acc | 1 << self.pair_bit[p[u]][p[v]]))
            .min()
            .unwrap_or(0)
    }
}

/// One representative per isomorphism class of graphs on `n` vertices with
/// maximum degree at most 3, grown one edge at a time.
pub fn subcubic_graphs(n: usize) -> Vec<Trigraph> {
    let mut all = vec![Trigraph::empty(n)];
    let mut level = vec![Trigraph::empty(n)];
    while !level.is_empty() {
        let mut seen = HashSet::new();
        let mut next = Vec::new();
        for g in &level {
            for u in 0..n {
                if g.degree(u) >= 3 {
                    continue;
                }
                for v in u + 1..n {
                    if g.degree(v) >= 3 || g.is_adjacent(u, v) {
                        continue;
                    }
                    let mut h = g.clone();
                    h.set_edge(u, v, EdgeColor::Black);
                    if seen.insert(canonical_code(&h)) {
                        next.push(h);
                    }
                }
            }
        }
        all.extend(next.iter().cloned());
        level = next;
    }
    all
}
