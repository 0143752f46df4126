//! Acceptance suite. Each criterion prints one PASS/FAIL line; the binary
//! exits non-zero if any criterion fails. Every tolerance and time limit is a
//! named constant below.

mod common;

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use twinwidth::bounds::{is_conference, lb1, srg_detect};
use twinwidth::families::{
    cayley_abelian, circulant, cyclic_latin, johnson, kneser, latin_square_graph, paley, petersen,
    quadratic_residues, random_degenerate, AbelianGroupSpec, ConnectionSet,
};
use twinwidth::io::{parse_graph6, write_graph6};
use twinwidth::schemes::{
    certify, circulant_scheme, degenerate_scheme, girth_reduce, johnson_scheme, latin_grid_scheme, orbit_double,
    selfcomp_pairs, Permutation,
};
use twinwidth::solver::{enumerate_graphs, stww, tww_exact, Budget, GraphClass, SolveStatus};
use twinwidth::{quotient, sequence_width, QuotientState, Trigraph};

use common::{
    graph_from_mask, oracle_tww, random_graph, random_sequence, random_trigraph, subcubic_graphs, BruteCanon,
};

// Time limits per criterion, measured on release-level optimization.
const LIMIT_LB1_FORMS: Duration = Duration::from_secs(1);
const LIMIT_JOHNSON: Duration = Duration::from_secs(10);
const LIMIT_KNESER: Duration = Duration::from_secs(10);
const LIMIT_PALEY: Duration = Duration::from_secs(5);
const LIMIT_LATIN: Duration = Duration::from_secs(60);
const LIMIT_DEGENERATE: Duration = Duration::from_secs(120);
const LIMIT_CIRCULANT: Duration = Duration::from_secs(60);
const LIMIT_ORBIT: Duration = Duration::from_secs(60);
const LIMIT_ORACLE: Duration = Duration::from_secs(30 * 60);
const LIMIT_PETERSEN: Duration = Duration::from_secs(10 * 60);
const LIMIT_CUBIC: Duration = Duration::from_secs(30 * 60);
const LIMIT_LB1_UNIVERSAL: Duration = Duration::from_secs(120);
const LIMIT_CHAIN: Duration = Duration::from_secs(60);
const LIMIT_GIRTH: Duration = Duration::from_secs(120);
const LIMIT_PROPERTIES: Duration = Duration::from_secs(120);

// Numeric tolerances. All checks are integer comparisons except the
// degeneracy bound, which involves a square root.
const SQRT_SLACK: f64 = 1e-9;
const CUBIC_TWW_MAX: usize = 4;
const GIRTH_REDUCE_WIDTH_MAX: usize = 9;
const PETERSEN_TWW: usize = 4;
const LATIN_Z5_BOUND: usize = 12;

// Sample sizes.
const DEGENERATE_SAMPLES: usize = 500;
const DEGENERATE_MAX_N: usize = 2000;
const CIRCULANT_SAMPLES: usize = 100;
const CIRCULANT_MAX_N: usize = 1000;
const CIRCULANT_MAX_DEGREE: usize = 8;
const ORBIT_SAMPLES: usize = 50;
const LB1_RANDOM_SAMPLES: usize = 10_000;
const LB1_RANDOM_MAX_N: usize = 40;
const CHAIN_SAMPLES: usize = 200;
const CHAIN_MAX_N: usize = 8;
const PROPERTY_TRIALS: usize = 10_000;

type Check = fn() -> Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lb1_closed_forms() -> Result<String, String> {
    for n in 5..=20 {
        let g = johnson(n).map_err(|e| e.to_string())?;
        let v = lb1(&g).map_err(|e| e.to_string())?;
        ensure(v == 2 * (n - 3), || format!("J({n}, 2): lb1 = {v}, expected {}", 2 * (n - 3)))?;
    }
    for p in [5, 13, 17, 29] {
        let v = lb1(&paley(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        ensure(v == (p - 1) / 2, || format!("P({p}): lb1 = {v}, expected {}", (p - 1) / 2))?;
    }
    let v = lb1(&petersen()).map_err(|e| e.to_string())?;
    ensure(v == 4, || format!("Petersen: lb1 = {v}, expected 4"))?;
    Ok("J(n,2) for n in 5..=20, Paley 5/13/17/29, Petersen".into())
}

fn johnson_exact() -> Result<String, String> {
    for n in 5..=15 {
        let cert = johnson_scheme(n).map_err(|e| e.to_string())?;
        let lb = lb1(&johnson(n).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let want = 2 * (n - 3);
        ensure(cert.verified_width == want && lb == want, || {
            format!("J({n}, 2): scheme width {}, lb1 {lb}, expected {want}", cert.verified_width)
        })?;
    }
    Ok("scheme width = lb1 = 2(n-3) for n in 5..=15".into())
}

fn kneser_exact() -> Result<String, String> {
    for n in 5..=15 {
        let seq = johnson_scheme(n).map_err(|e| e.to_string())?.seq;
        let g = kneser(n).map_err(|e| e.to_string())?;
        let cert = certify(&g, seq, 2 * (n - 3)).map_err(|e| e.to_string())?;
        let lb = lb1(&g).map_err(|e| e.to_string())?;
        let want = 2 * (n - 3);
        ensure(cert.verified_width == want && lb == want, || {
            format!("K({n}, 2): sequence width {}, lb1 {lb}, expected {want}", cert.verified_width)
        })?;
    }
    Ok("complement sequence width = lb1 = 2(n-3) for n in 5..=15".into())
}

fn paley_selfcomp() -> Result<String, String> {
    for p in [5usize, 13, 17, 29] {
        let grp = AbelianGroupSpec::cyclic(p).map_err(|e| e.to_string())?;
        let conn = ConnectionSet::new(&grp, quadratic_residues(p)).map_err(|e| e.to_string())?;
        let cert = selfcomp_pairs(&grp, &conn).map_err(|e| e.to_string())?;
        let lb = lb1(&paley(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let want = (p - 1) / 2;
        ensure(cert.verified_width == want && lb == want, || {
            format!("P({p}): scheme width {}, lb1 {lb}, expected {want}", cert.verified_width)
        })?;
    }
    Ok("scheme width = lb1 = (p-1)/2 for p in {5, 13, 17, 29}".into())
}

fn latin_grid() -> Result<String, String> {
    let mut widths = Vec::new();
    for n in 7..=12 {
        let cert = latin_grid_scheme(n).map_err(|e| e.to_string())?;
        let lb = lb1(&latin_square_graph(&cyclic_latin(n))).map_err(|e| e.to_string())?;
        let bound = 4 * n - 8;
        ensure(cert.verified_width <= bound && lb == bound, || {
            format!("ls(Z{n}): scheme width {}, lb1 {lb}, bound {bound}", cert.verified_width)
        })?;
        widths.push(cert.verified_width);
    }
    let z5 = latin_grid_scheme(5).map_err(|e| e.to_string())?;
    ensure(z5.verified_width <= LATIN_Z5_BOUND, || {
        format!("ls(Z5): scheme width {} exceeds {LATIN_Z5_BOUND}", z5.verified_width)
    })?;
    Ok(format!("widths {widths:?} for n in 7..=12, ls(Z5) width {}", z5.verified_width))
}

fn degenerate_bound() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xde9e);
    let mut tightest = f64::INFINITY;
    for i in 0..DEGENERATE_SAMPLES {
        let d = [1, 2, 3, 5][i % 4];
        let n = rng.gen_range(2..=DEGENERATE_MAX_N);
        let seed = rng.gen();
        let (g, elim) = random_degenerate(n, d, seed);
        let cert = degenerate_scheme(&g, &elim).map_err(|e| e.to_string())?;
        let bound = (2.0 * elim.d as f64 * n as f64).sqrt() + 2.0 * elim.d as f64;
        ensure(cert.verified_width as f64 <= bound + SQRT_SLACK, || {
            format!("n={n} d={} seed={seed}: width {} > {bound:.3}", elim.d, cert.verified_width)
        })?;
        tightest = tightest.min(bound - cert.verified_width as f64);
    }
    Ok(format!("{DEGENERATE_SAMPLES} instances, smallest margin {tightest:.3}"))
}

fn circulant_bound() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc1c);
    let mut checked = 0;
    while checked < CIRCULANT_SAMPLES {
        let n = rng.gen_range(3..=CIRCULANT_MAX_N);
        let k = rng.gen_range(1..=CIRCULANT_MAX_DEGREE / 2);
        let offs: Vec<usize> = (0..k).map(|_| rng.gen_range(1..=n / 2)).collect();
        let g = circulant(n, &offs).map_err(|e| e.to_string())?;
        let delta = g.max_degree();
        if delta > CIRCULANT_MAX_DEGREE {
            continue;
        }
        let rot = Permutation::rotation(n);
        let cert = circulant_scheme(&g, &rot).map_err(|e| e.to_string())?;
        ensure(cert.verified_width <= 3 * delta + 1, || {
            format!("C_{n}{offs:?}: width {} > 3*{delta}+1", cert.verified_width)
        })?;
        checked += 1;
    }
    Ok(format!("{CIRCULANT_SAMPLES} circulants, n <= {CIRCULANT_MAX_N}"))
}

fn random_abelian<R: Rng>(rng: &mut R) -> AbelianGroupSpec {
    loop {
        let factors = rng.gen_range(1..=3);
        let moduli: Vec<usize> = (0..factors).map(|_| rng.gen_range(2..=12)).collect();
        if moduli.iter().product::<usize>() <= 200 {
            return AbelianGroupSpec::new(moduli).expect("moduli are at least 2");
        }
    }
}

fn orbit_doubling() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0b17);
    let mut worst_ratio = 0.0f64;
    for _ in 0..ORBIT_SAMPLES {
        let grp = random_abelian(&mut rng);
        let order = grp.order();
        let gens: Vec<usize> = (0..rng.gen_range(1..=3)).map(|_| rng.gen_range(1..order)).collect();
        let conn = ConnectionSet::symmetric(&grp, gens).map_err(|e| e.to_string())?;
        let g = cayley_abelian(&grp, &conn);
        let delta = g.max_degree();
        let shift = rng.gen_range(1..order);
        let phi = Permutation::new(grp.translation(shift)).map_err(|e| e.to_string())?;
        let cert = orbit_double(&g, &phi).map_err(|e| e.to_string())?;
        let report = sequence_width(&g, &cert.seq).map_err(|e| e.to_string())?;
        let step_max = report.per_step.iter().map(|&(_, w)| w).max().unwrap_or(0);
        ensure(step_max <= 4 * delta && cert.verified_width <= 4 * delta, || {
            format!("Cay{:?} shift {shift}: width {} > 4*{delta}", grp.moduli(), cert.verified_width)
        })?;
        ensure(cert.residual.max_degree() <= delta, || {
            format!("Cay{:?} shift {shift}: residual degree {} > {delta}", grp.moduli(), cert.residual.max_degree())
        })?;
        if delta > 0 {
            worst_ratio = worst_ratio.max(cert.verified_width as f64 / delta as f64);
        }
    }
    Ok(format!("{ORBIT_SAMPLES} Cayley graphs, worst width/degree {worst_ratio:.2}"))
}

fn exact_vs_oracle() -> Result<String, String> {
    let mut compared = 0usize;
    for n in 0..=5usize {
        for mask in 0..1u64 << (n * n.saturating_sub(1) / 2) {
            let g = graph_from_mask(n, mask);
            let want = oracle_tww(&g);
            let got = tww_exact(&g, Budget::unlimited()).map_err(|e| e.to_string())?;
            ensure(got.value == want && got.status == SolveStatus::Exact, || {
                format!("n={n} mask={mask:#x}: exact {} ({:?}), oracle {want}", got.value, got.status)
            })?;
            compared += 1;
        }
    }
    // On six vertices the oracle runs once per isomorphism class, found by
    // brute-force relabeling.
    let canon = BruteCanon::new(6);
    let mut by_class = std::collections::HashMap::new();
    for mask in 0..1u64 << 15 {
        let g = graph_from_mask(6, mask);
        let key = canon.key(mask);
        let want = *by_class.entry(key).or_insert_with(|| oracle_tww(&graph_from_mask(6, key)));
        let got = tww_exact(&g, Budget::unlimited()).map_err(|e| e.to_string())?;
        ensure(got.value == want && got.status == SolveStatus::Exact, || {
            format!("n=6 mask={mask:#x}: exact {} ({:?}), oracle {want}", got.value, got.status)
        })?;
        compared += 1;
    }
    Ok(format!("{compared} labeled graphs, {} classes on 6 vertices", by_class.len()))
}

fn petersen_exact() -> Result<String, String> {
    let r = tww_exact(&petersen(), Budget::unlimited()).map_err(|e| e.to_string())?;
    ensure(r.value == PETERSEN_TWW && r.status == SolveStatus::Exact, || {
        format!("exact {} ({:?}), expected {PETERSEN_TWW}", r.value, r.status)
    })?;
    let replay = sequence_width(&petersen(), &r.witness).map_err(|e| e.to_string())?;
    ensure(replay.width == PETERSEN_TWW, || format!("witness replays to {}", replay.width))?;
    Ok("tww = 4 with a replayed witness".into())
}

fn cubic_sweep() -> Result<String, String> {
    let mut count = 0;
    let mut hist = [0usize; CUBIC_TWW_MAX + 2];
    for n in (4..=12).step_by(2) {
        for g in enumerate_graphs(GraphClass::Cubic(n)).map_err(|e| e.to_string())? {
            let r = tww_exact(&g, Budget::unlimited()).map_err(|e| e.to_string())?;
            ensure(r.status == SolveStatus::Exact && r.value <= CUBIC_TWW_MAX, || {
                format!("cubic graph on {n} vertices: tww {} ({:?})", r.value, r.status)
            })?;
            hist[r.value.min(CUBIC_TWW_MAX + 1)] += 1;
            count += 1;
        }
    }
    Ok(format!("{count} cubic graphs, tww histogram {:?}", &hist[..=CUBIC_TWW_MAX]))
}

fn is_five_cycle(g: &Trigraph) -> bool {
    if g.order() != 5 || (0..5).any(|v| g.degree(v) != 2) {
        return false;
    }
    // 2-regular on five vertices is C5 exactly when connected.
    let mut seen = [false; 5];
    let mut stack = vec![0];
    while let Some(v) = stack.pop() {
        if !std::mem::replace(&mut seen[v], true) {
            stack.extend(g.neighbor_ids(v));
        }
    }
    seen.iter().all(|&s| s)
}

fn lb1_universal() -> Result<String, String> {
    let cap = |n: usize| n.saturating_sub(1) / 2;
    let mut extremal_n5 = 0;
    for n in 2..=7usize {
        for mask in 0..1u64 << (n * (n - 1) / 2) {
            let g = graph_from_mask(n, mask);
            let v = lb1(&g).map_err(|e| e.to_string())?;
            ensure(v <= cap(n), || format!("n={n} mask={mask:#x}: lb1 {v} > {}", cap(n)))?;
            if n == 5 && v == cap(5) {
                let conference = srg_detect(&g).map_err(|e| e.to_string())?.is_some_and(|p| is_conference(&p));
                ensure(is_five_cycle(&g) && conference, || {
                    format!("n=5 mask={mask:#x} attains lb1 = 2 but is not the 5-cycle")
                })?;
                extremal_n5 += 1;
            }
        }
    }
    ensure(extremal_n5 == 12, || format!("expected the 12 labeled 5-cycles to be extremal, found {extremal_n5}"))?;
    let mut rng = ChaCha8Rng::seed_from_u64(0x1b1);
    for _ in 0..LB1_RANDOM_SAMPLES {
        let n = rng.gen_range(2..=LB1_RANDOM_MAX_N);
        let p = rng.gen_range(0.0..=1.0);
        let g = random_graph(n, p, &mut rng);
        let v = lb1(&g).map_err(|e| e.to_string())?;
        ensure(v <= cap(n), || format!("random n={n}: lb1 {v} > {}", cap(n)))?;
    }
    Ok(format!("all labeled graphs n <= 7 and {LB1_RANDOM_SAMPLES} random graphs n <= {LB1_RANDOM_MAX_N}"))
}

fn inequality_chain() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0xc4a1);
    let mut strict = 0;
    for _ in 0..CHAIN_SAMPLES {
        let n = rng.gen_range(1..=CHAIN_MAX_N);
        let p = rng.gen_range(0.1..0.9);
        let g = random_graph(n, p, &mut rng);
        let t = tww_exact(&g, Budget::unlimited()).map_err(|e| e.to_string())?;
        let s = stww(&g, Budget::unlimited()).map_err(|e| e.to_string())?;
        let delta = g.max_degree();
        ensure(t.status == SolveStatus::Exact && s.status == SolveStatus::Exact, || "search timed out".into())?;
        ensure(t.value <= s.value && s.value <= t.value + delta, || {
            format!("n={n}: tww {} stww {} degree {delta}", t.value, s.value)
        })?;
        if t.value < s.value {
            strict += 1;
        }
    }
    Ok(format!("{CHAIN_SAMPLES} graphs, {strict} with tww < stww"))
}

fn girth_reduction() -> Result<String, String> {
    let mut count = 0;
    for n in 1..=10 {
        for g in subcubic_graphs(n) {
            if twinwidth::bounds::girth_of_underlying(&g).is_none_or(|girth| girth >= 5) {
                continue;
            }
            let cert = girth_reduce(&g).map_err(|e| e.to_string())?;
            let res = &cert.residual;
            ensure(cert.verified_width <= GIRTH_REDUCE_WIDTH_MAX, || {
                format!("n={n}: width {} > {GIRTH_REDUCE_WIDTH_MAX}", cert.verified_width)
            })?;
            ensure(res.max_degree() <= 3, || format!("n={n}: residual degree {}", res.max_degree()))?;
            ensure(twinwidth::bounds::girth_of_underlying(res).is_none_or(|girth| girth >= 5), || {
                format!("n={n}: residual still has a short cycle")
            })?;
            count += 1;
        }
    }
    Ok(format!("{count} subcubic graphs with girth < 5"))
}

fn property_suites() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x9a9);
    for t in 0..PROPERTY_TRIALS {
        let n = rng.gen_range(1..=12);
        let g = random_trigraph(n, &mut rng);
        let seq = random_sequence(n, &mut rng);
        let cut = rng.gen_range(0..=seq.len());
        let mut state = QuotientState::new(&g);
        for &step in &seq.steps[..cut] {
            state.apply_merge(step).map_err(|e| e.to_string())?;
        }
        let prefix = twinwidth::ContractionSequence::with_steps(n, seq.steps[..cut].to_vec());
        let part = prefix.final_partition().map_err(|e| e.to_string())?;
        let scratch = quotient(&g, &part).map_err(|e| e.to_string())?;
        ensure(state.to_trigraph() == scratch, || format!("trial {t}: incremental and scratch quotients differ"))?;
    }
    for t in 0..PROPERTY_TRIALS {
        let n = rng.gen_range(0..=40);
        let g = random_graph(n, rng.gen_range(0.0..=1.0), &mut rng);
        let text = write_graph6(&g).map_err(|e| e.to_string())?;
        let back = parse_graph6(&text).map_err(|e| e.to_string())?;
        ensure(back == g, || format!("trial {t}: graph6 round trip changed the graph ({text})"))?;
    }
    for t in 0..PROPERTY_TRIALS {
        let n = rng.gen_range(1..=20);
        let g = random_graph(n, rng.gen_range(0.0..=1.0), &mut rng);
        let h = g.complement().map_err(|e| e.to_string())?;
        let seq = random_sequence(n, &mut rng);
        let a = sequence_width(&g, &seq).map_err(|e| e.to_string())?;
        let b = sequence_width(&h, &seq).map_err(|e| e.to_string())?;
        ensure(a.per_step == b.per_step && a.width == b.width, || {
            format!("trial {t}: width {} on the graph, {} on its complement", a.width, b.width)
        })?;
    }
    Ok(format!("{PROPERTY_TRIALS} trials each of quotient replay, graph6 round trip, complement invariance"))
}

fn main() -> ExitCode {
    let criteria: &[(&str, Duration, Check)] = &[
        ("lb1 closed forms", LIMIT_LB1_FORMS, lb1_closed_forms),
        ("Johnson graphs are tight", LIMIT_JOHNSON, johnson_exact),
        ("Kneser graphs are tight", LIMIT_KNESER, kneser_exact),
        ("Paley graphs are tight", LIMIT_PALEY, paley_selfcomp),
        ("Latin square grid scheme", LIMIT_LATIN, latin_grid),
        ("degeneracy bound", LIMIT_DEGENERATE, degenerate_bound),
        ("circulant bound", LIMIT_CIRCULANT, circulant_bound),
        ("orbit doubling", LIMIT_ORBIT, orbit_doubling),
        ("exact search matches the oracle", LIMIT_ORACLE, exact_vs_oracle),
        ("Petersen graph", LIMIT_PETERSEN, petersen_exact),
        ("cubic graphs up to 12 vertices", LIMIT_CUBIC, cubic_sweep),
        ("lb1 universal bound", LIMIT_LB1_UNIVERSAL, lb1_universal),
        ("tww <= stww <= tww + degree", LIMIT_CHAIN, inequality_chain),
        ("girth reduction", LIMIT_GIRTH, girth_reduction),
        ("property suites", LIMIT_PROPERTIES, property_suites),
    ];
    let mut failed = 0;
    for (name, limit, check) in criteria {
        let start = Instant::now();
        let outcome = check();
        let took = start.elapsed();
        let (ok, detail) = match outcome {
            Ok(d) if took <= *limit => (true, d),
            Ok(d) => (false, format!("{d}; exceeded the {limit:?} limit")),
            Err(e) => (false, e),
        };
        if !ok {
            failed += 1;
        }
        let tag = if ok { "PASS" } else { "FAIL" };
        println!("[{tag}] {name} ({:.2}s, limit {}s): {detail}", took.as_secs_f64(), limit.as_secs());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
