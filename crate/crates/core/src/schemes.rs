//! Constructive contraction sequences for structured graphs. Every scheme
//! returns a certificate whose width has been recomputed by replay.

use thiserror::Error;

use crate::bounds::{BoundsError, EliminationOrder};
use crate::families::{
    cayley_abelian, cyclic_latin, johnson, latin_square_graph, pair_index, AbelianGroupSpec, ConnectionSet,
    FamilyError,
};
pub use crate::permutation::Permutation;
use crate::permutation::PermutationError;
use crate::solver::automorphism_search;
use crate::trigraph::{
    quotient, sequence_width, ContractionSequence, MergeStep, Partition, QuotientState, Trigraph, TrigraphError,
    VertexId,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemeError {
    #[error(transparent)]
    Permutation(#[from] PermutationError),
    #[error(transparent)]
    Trigraph(#[from] TrigraphError),
    #[error(transparent)]
    Bounds(#[from] BoundsError),
    #[error(transparent)]
    Family(#[from] FamilyError),
    #[error("permutation has {0} orbits; a single orbit is required")]
    NotSingleOrbit(usize),
    #[error("group of even order {0} has a self-inverse non-identity element")]
    EvenGroupOrder(usize),
    #[error("vertex {vertex} has degree {degree}; input must be subcubic")]
    NotSubcubic { vertex: VertexId, degree: usize },
    #[error("tower stage {stage}: {reason}")]
    TowerStage { stage: usize, reason: String },
}

/// A (possibly partial) contraction sequence with its claimed and replayed
/// widths and the quotient it ends in.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SchemeCertificate {
    pub seq: ContractionSequence,
    pub claimed_bound: usize,
    pub verified_width: usize,
    pub residual: Trigraph,
    /// Set by [`asym_reduce`] when the automorphism search ran out of budget,
    /// so the residual may still have symmetries.
    pub symmetry_inconclusive: bool,
}

impl SchemeCertificate {
    pub fn holds(&self) -> bool {
        self.verified_width <= self.claimed_bound
    }
}

/// Replays `seq` on `g` and packages the result.
pub fn certify(g: &Trigraph, seq: ContractionSequence, claimed_bound: usize) -> Result<SchemeCertificate, SchemeError> {
    let verified_width = sequence_width(g, &seq)?.width;
    let residual = quotient(g, &seq.final_partition()?)?;
    Ok(SchemeCertificate { seq, claimed_bound, verified_width, residual, symmetry_inconclusive: false })
}

/// Caller-supplied generators of a tower of cyclic quotients. Stage `i`
/// acts on the quotient left by stages `1..i`, written on original vertex ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicTower {
    pub perms: Vec<Permutation>,
}

/// Doubling merges: inside each orbit `v, φ(v), φ²(v), …`, blocks of `k`
/// consecutive elements are merged pairwise for `k = 1, 2, 4, …`, all orbits
/// at one `k` before moving on.
fn doubling_steps(orbits: &[Vec<VertexId>]) -> Vec<MergeStep> {
    let longest = orbits.iter().map(Vec::len).max().unwrap_or(0);
    let mut steps = Vec::new();
    let mut k = 1;
    while k < longest {
        for orbit in orbits {
            let mut t = 0;
            while (2 * t + 1) * k < orbit.len() {
                steps.push(MergeStep::new(orbit[2 * t * k], orbit[(2 * t + 1) * k]));
                t += 1;
            }
        }
        k *= 2;
    }
    steps
}

/// Contracts every orbit of `⟨phi⟩` by doubling; width at most `4Δ(G)`.
pub fn orbit_double(g: &Trigraph, phi: &Permutation) -> Result<SchemeCertificate, SchemeError> {
    phi.check_automorphism(&g.underlying())?;
    let seq = ContractionSequence::with_steps(g.order(), doubling_steps(&phi.orbits()));
    certify(g, seq, 4 * g.max_degree())
}

/// Doubling along a single orbit; width at most `3Δ(G) + 1`.
pub fn circulant_scheme(g: &Trigraph, phi: &Permutation) -> Result<SchemeCertificate, SchemeError> {
    let orbits = phi.orbits();
    if orbits.len() > 1 {
        return Err(SchemeError::NotSingleOrbit(orbits.len()));
    }
    let mut cert = orbit_double(g, phi)?;
    cert.claimed_bound = 3 * g.max_degree() + 1;
    Ok(cert)
}

/// Renames quotient-level steps by the representatives of their blocks.
fn lift(p: &Partition, steps: Vec<MergeStep>) -> impl Iterator<Item = MergeStep> + '_ {
    steps
        .into_iter()
        .map(|s| MergeStep::new(p.representative(s.u), p.representative(s.v)))
}

/// One doubling run per tower stage, each on the current quotient.
pub fn cyclic_tower(g: &Trigraph, tower: &CyclicTower) -> Result<SchemeCertificate, SchemeError> {
    let n = g.order();
    let mut seq = ContractionSequence::new(n);
    for (i, phi) in tower.perms.iter().enumerate() {
        let stage = i + 1;
        let fail = |reason: String| SchemeError::TowerStage { stage, reason };
        if phi.len() != n {
            return Err(fail(format!("permutation has {} points, graph has {n}", phi.len())));
        }
        let p = seq.final_partition()?;
        let q = quotient(g, &p)?;
        let mut pushed = Vec::with_capacity(p.len());
        for block in p.blocks() {
            let target = p.block_index(phi.apply(block[0]));
            if let Some(&v) = block.iter().find(|&&v| p.block_index(phi.apply(v)) != target) {
                return Err(fail(format!("vertex {v} leaves the image block of its own block")));
            }
            pushed.push(target);
        }
        let pushed = Permutation::new(pushed).map_err(|e| fail(e.to_string()))?;
        pushed.check_automorphism(&q.underlying()).map_err(|e| fail(format!("on the quotient, {e}")))?;
        let steps: Vec<MergeStep> = lift(&p, doubling_steps(&pushed.orbits())).collect();
        seq.steps.extend(steps);
    }
    certify(g, seq, 4 * g.max_degree())
}

/// Interval scheme for `d`-degenerate graphs: width at most `d(k+1)` with
/// `k = ⌈√(2n/d)⌉`, which is at most `√(2dn) + 2d`.
pub fn degenerate_scheme(g: &Trigraph, elim: &EliminationOrder) -> Result<SchemeCertificate, SchemeError> {
    elim.validate(g)?;
    let n = g.order();
    let d = elim.d;
    let claimed = if n == 0 || d == 0 {
        0
    } else {
        let k = (0..).find(|&k| d * k * k >= 2 * n).expect("k exists");
        d * (k + 1)
    };
    let step = d.max(1);
    // intervals [start, end) over positions; the i-th takes ⌈i/d⌉ positions
    let mut intervals = Vec::new();
    let mut start = 0;
    let mut i: usize = 1;
    while start < n {
        let end = (start + i.div_ceil(step)).min(n);
        intervals.push((start, end));
        start = end;
        i += 1;
    }
    let order = &elim.order;
    let mut seq = ContractionSequence::new(n);
    for &(s, e) in intervals.iter().rev() {
        for j in (s..e.saturating_sub(1)).rev() {
            seq.push(order[j], order[j + 1]);
        }
    }
    for t in (0..intervals.len().saturating_sub(1)).rev() {
        seq.push(order[intervals[t].0], order[intervals[t + 1].0]);
    }
    certify(g, seq, claimed)
}

/// Johnson recursion on `johnson(n)`: for `m = n, …, 3`, fold the 2-subsets
/// containing `m` onto those containing `m − 1`.
pub fn johnson_scheme(n: usize) -> Result<SchemeCertificate, SchemeError> {
    let g = johnson(n)?;
    // ground set written 1..=n
    let v = |i: usize, j: usize| pair_index(n, i - 1, j - 1);
    let mut seq = ContractionSequence::new(g.order());
    for m in (3..=n).rev() {
        for i in 1..=m - 2 {
            seq.push(v(i, m), v(i, m - 1));
        }
        seq.push(v(m - 1, m), v(m - 2, m - 1));
    }
    certify(&g, seq, (2 * n).saturating_sub(6))
}

/// Pairs every element with its inverse on `Cay(Γ, S)`, then merges the rest
/// in increasing order; width at most `(|Γ| − 1)/2`.
pub fn selfcomp_pairs(grp: &AbelianGroupSpec, conn: &ConnectionSet) -> Result<SchemeCertificate, SchemeError> {
    let order = grp.order();
    if order.is_multiple_of(2) {
        return Err(SchemeError::EvenGroupOrder(order));
    }
    let g = cayley_abelian(grp, conn);
    let mut seq = ContractionSequence::new(order);
    for x in 0..order {
        if x < grp.neg(x) {
            seq.push(x, grp.neg(x));
        }
    }
    let reps: Vec<usize> = (0..order).filter(|&x| x <= grp.neg(x)).collect();
    for &r in reps.iter().skip(1) {
        seq.push(reps[0], r);
    }
    certify(&g, seq, (order - 1) / 2)
}

/// Merges twins (pairs whose merge creates no red edge), smallest pair
/// first, until none remain.
fn twin_first(g: &Trigraph) -> Result<ContractionSequence, SchemeError> {
    let mut state = QuotientState::new(g);
    let mut seq = ContractionSequence::new(g.order());
    'outer: while state.block_count() > 1 {
        let reps = state.partition().blocks().iter().map(|b| b[0]).collect::<Vec<_>>();
        for (i, &a) in reps.iter().enumerate() {
            for &b in &reps[i + 1..] {
                let mut trial = state.clone();
                if trial.apply_merge(MergeStep::new(a, b))? == 0 && trial.max_red_degree() == 0 {
                    state = trial;
                    seq.push(a, b);
                    continue 'outer;
                }
            }
        }
        break;
    }
    Ok(seq)
}

/// Grid scheme on the row-major Latin square graph of `Z_n`.
///
/// For `n ≥ 7` the sequence passes through the grid partitions with cells
/// of `2^y` rows by `2^x` columns, alternately doubling height and width;
/// its width is at most `4n − 8`. Smaller orders use direct arguments.
pub fn latin_grid_scheme(n: usize) -> Result<SchemeCertificate, SchemeError> {
    if n == 0 {
        return Err(FamilyError::Parameter { family: "latin_grid_scheme", requirement: "n >= 1", value: 0 }.into());
    }
    let g = latin_square_graph(&cyclic_latin(n));
    let cell = |r: usize, c: usize| r * n + c;
    let mut seq = ContractionSequence::new(n * n);
    match n {
        1..=3 => return certify(&g, twin_first(&g)?, 0),
        5 => {
            // Cay(Z_5 x Z_5, {(0,b), (a,0), (a,-a)}) with (r, c) encoded as 5r + c
            let grp = AbelianGroupSpec::new(vec![5, 5])?;
            let conn = ConnectionSet::new(
                &grp,
                (1..5).flat_map(|a| [cell(0, a), cell(a, 0), cell(a, (5 - a) % 5)]),
            )?;
            let cert = selfcomp_pairs(&grp, &conn)?;
            return certify(&g, cert.seq, 12);
        }
        4 | 6 => {
            for r in (0..n).step_by(2) {
                for c in 0..n {
                    seq.push(cell(r, c), cell(r + 1, c));
                }
            }
            let reps: Vec<usize> = (0..n).step_by(2).flat_map(|r| (0..n).map(move |c| cell(r, c))).collect();
            for &r in &reps[1..] {
                seq.push(reps[0], r);
            }
        }
        _ => {
            let levels = n.next_power_of_two().trailing_zeros() as usize;
            let (mut x, mut y) = (0usize, 0usize);
            while (x, y) != (levels, levels) {
                let (h, w) = (1usize << y, 1usize << x);
                let (rows, cols) = (n.div_ceil(h), n.div_ceil(w));
                if y == x {
                    for i in 0..rows.div_ceil(2) {
                        for j in 0..cols {
                            if 2 * i + 1 < rows {
                                seq.push(cell(2 * i * h, j * w), cell((2 * i + 1) * h, j * w));
                            }
                        }
                    }
                    y += 1;
                } else {
                    for i in 0..rows {
                        for j in 0..cols.div_ceil(2) {
                            if 2 * j + 1 < cols {
                                seq.push(cell(i * h, 2 * j * w), cell(i * h, (2 * j + 1) * w));
                            }
                        }
                    }
                    x += 1;
                }
            }
        }
    }
    certify(&g, seq, 4 * n - 8)
}

fn require_subcubic(g: &Trigraph) -> Result<(), SchemeError> {
    match (0..g.order()).find(|&v| g.degree(v) > 3) {
        Some(vertex) => Err(SchemeError::NotSubcubic { vertex, degree: g.degree(vertex) }),
        None => Ok(()),
    }
}

/// Lexicographically smallest triangle `a < b < c`.
fn find_triangle(q: &Trigraph) -> Option<(usize, usize, usize)> {
    for a in 0..q.order() {
        for b in q.neighbor_ids(a).filter(|&b| b > a) {
            if let Some(c) = q.neighbor_ids(b).find(|&c| c > b && q.is_adjacent(a, c)) {
                return Some((a, b, c));
            }
        }
    }
    None
}

/// First 4-cycle `a-b-c-d-a` in lexicographic search order.
fn find_four_cycle(q: &Trigraph) -> Option<(usize, usize, usize, usize)> {
    for a in 0..q.order() {
        for b in q.neighbor_ids(a) {
            for c in q.neighbor_ids(b).filter(|&c| c != a) {
                if let Some(d) = q.neighbor_ids(c).find(|&d| d != b && d != a && q.is_adjacent(d, a)) {
                    return Some((a, b, c, d));
                }
            }
        }
    }
    None
}

/// Contracts triangles and 4-cycles of a subcubic graph until its girth is
/// at least 5. A triangle is merged into one block; a 4-cycle `a-b-c-d`
/// has the matching `{a,b}`, `{c,d}` contracted. Width at most 9.
pub fn girth_reduce(g: &Trigraph) -> Result<SchemeCertificate, SchemeError> {
    require_subcubic(g)?;
    let mut seq = ContractionSequence::new(g.order());
    loop {
        let p = seq.final_partition()?;
        let q = quotient(g, &p)?;
        let local = if let Some((a, b, c)) = find_triangle(&q) {
            vec![MergeStep::new(a, b), MergeStep::new(a, c)]
        } else if let Some((a, b, c, d)) = find_four_cycle(&q) {
            vec![MergeStep::new(a, b), MergeStep::new(c, d)]
        } else {
            break;
        };
        let lifted: Vec<MergeStep> = lift(&p, local).collect();
        seq.steps.extend(lifted);
    }
    certify(g, seq, 9)
}

/// Repeatedly contracts the orbits of a non-trivial automorphism of the
/// current quotient until it is asymmetric. `node_budget` limits each
/// automorphism search.
pub fn asym_reduce(g: &Trigraph, node_budget: Option<u64>) -> Result<SchemeCertificate, SchemeError> {
    let mut seq = ContractionSequence::new(g.order());
    let inconclusive;
    loop {
        let p = seq.final_partition()?;
        let q = quotient(g, &p)?;
        let info = automorphism_search(&q, node_budget);
        let Some(phi) = info.generators.first() else {
            inconclusive = !info.complete;
            break;
        };
        let lifted: Vec<MergeStep> = lift(&p, doubling_steps(&phi.orbits())).collect();
        seq.steps.extend(lifted);
    }
    let mut cert = certify(g, seq, 4 * g.max_degree())?;
    cert.symmetry_inconclusive = inconclusive;
    Ok(cert)
}
