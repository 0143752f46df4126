use super::canon::{extend_mapping, find_isomorphism, individualize, refine, target_cell, Cells, ColoredGraph};
use super::{AutGroupInfo, SolverError};
use crate::permutation::Permutation;
use crate::trigraph::{quotient, Dsu, Partition, Trigraph};

/// Automorphism group of the underlying simple graph, found along a
/// stabilizer chain: the order is the product of the basic orbit lengths.
///
/// `node_budget` bounds the number of backtracking nodes; when it runs out
/// the result is flagged incomplete and `order` is only a lower bound.
pub fn automorphism_search(g: &Trigraph, node_budget: Option<u64>) -> AutGroupInfo {
    let n = g.order();
    let cg = ColoredGraph::from_trigraph(g, false);
    let mut nodes = node_budget.unwrap_or(u64::MAX);
    let mut complete = true;

    // base points and the refined partition at each level of the chain
    let mut levels: Vec<(Cells, usize)> = Vec::new();
    if n > 0 {
        let (mut cells, _) = refine(&cg, vec![(0..n).collect()]);
        while let Some(t) = target_cell(&cells) {
            let b = cells[t][0];
            levels.push((cells.clone(), t));
            cells = refine(&cg, individualize(&cells, b)).0;
        }
    }

    let mut gens: Vec<Vec<usize>> = Vec::new();
    let mut order: u128 = 1;
    'levels: for depth in (0..levels.len()).rev() {
        let (cells, t) = &levels[depth];
        let prefix: Vec<usize> = levels[..depth].iter().map(|(c, t)| c[*t][0]).collect();
        let b = cells[*t][0];
        let (left, left_trace) = refine(&cg, individualize(cells, b));
        let mut orbit = orbit_of(n, &gens, &prefix, b);
        for &w in &cells[*t][1..] {
            if orbit.contains(&w) {
                continue;
            }
            let (right, right_trace) = refine(&cg, individualize(cells, w));
            if left_trace != right_trace {
                continue;
            }
            match extend_mapping(&cg, &cg, &left, &right, &mut nodes) {
                Ok(Some(sigma)) => {
                    gens.push(sigma);
                    orbit = orbit_of(n, &gens, &prefix, b);
                }
                Ok(None) => {}
                Err(_) => {
                    complete = false;
                    order = order.saturating_mul(orbit.len() as u128);
                    break 'levels;
                }
            }
        }
        order = order.saturating_mul(orbit.len() as u128);
    }

    let mut dsu = Dsu::new(n);
    for s in &gens {
        for (v, &w) in s.iter().enumerate() {
            dsu.union(v, w);
        }
    }
    AutGroupInfo {
        generators: gens.into_iter().map(|s| Permutation::new(s).expect("automorphism is a bijection")).collect(),
        order,
        orbits: Partition::from_labels(&dsu.labels()),
        complete,
    }
}

/// Orbit of `b` under the generators that fix every point of `prefix`.
fn orbit_of(n: usize, gens: &[Vec<usize>], prefix: &[usize], b: usize) -> Vec<usize> {
    let active: Vec<&Vec<usize>> = gens.iter().filter(|s| prefix.iter().all(|&p| s[p] == p)).collect();
    let mut seen = vec![false; n];
    seen[b] = true;
    let mut orbit = vec![b];
    let mut i = 0;
    while i < orbit.len() {
        let v = orbit[i];
        for s in &active {
            let w = s[v];
            if !seen[w] {
                seen[w] = true;
                orbit.push(w);
            }
        }
        i += 1;
    }
    orbit
}

/// Quotient by the orbit partition of the group generated by `gens`.
pub fn quotient_by_group(g: &Trigraph, gens: &[Permutation]) -> Result<Trigraph, SolverError> {
    let simple = g.underlying();
    let mut dsu = Dsu::new(g.order());
    for (index, p) in gens.iter().enumerate() {
        p.check_automorphism(&simple)
            .map_err(|source| SolverError::NotAutomorphism { index, source })?;
        for v in 0..p.len() {
            dsu.union(v, p.apply(v));
        }
    }
    Ok(quotient(g, &Partition::from_labels(&dsu.labels()))?)
}

/// Color-preserving isomorphism test between two trigraphs.
pub fn is_isomorphic(a: &Trigraph, b: &Trigraph) -> bool {
    let (ca, cb) = (ColoredGraph::from_trigraph(a, true), ColoredGraph::from_trigraph(b, true));
    let mut nodes = u64::MAX;
    matches!(find_isomorphism(&ca, &cb, &mut nodes), Ok(Some(_)))
}
