//! The twelve acceptance criteria, one PASS/FAIL line each.
//!
//! Run with `cargo test -p rainbow-core --test acceptance`.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use rainbow_core::characterize::{is_in_gk, is_in_hk, HkCase};
use rainbow_core::constructions::{build_case2_figure, build_gk, build_hnk, turan_diff, turan_graph, turan_number};
use rainbow_core::graph::choose2;
use rainbow_core::rainbow::{count_rainbow_triangles, enumerate_rainbow_cliques, has_rainbow_clique};
use rainbow_core::transform::{associated_colored_graph, directed_triangles};
use rainbow_core::verify::{
    bell, recolor_witness_colordeg, verify_theorem, ColorConstraint, ColoringEnumerator, Grid, SweepMode, TheoremId,
    VerificationReport,
};
use rainbow_core::{ColorId, EdgeColoredGraph, OrientedGraph};

type Outcome = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

/// Rainbow triangles by checking every triple.
fn triangle_oracle(g: &EdgeColoredGraph) -> Vec<[usize; 3]> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if let (Some(x), Some(y), Some(z)) = (g.color(a, b), g.color(b, c), g.color(a, c)) {
                    if x != y && y != z && x != z {
                        out.push([a, b, c]);
                    }
                }
            }
        }
    }
    out
}

fn swept(r: &VerificationReport) -> Outcome {
    ensure!(
        r.counterexample_count == 0,
        "{} counterexamples, first: {:?}",
        r.counterexample_count,
        r.counterexamples.first()
    );
    Ok(format!("{} instances, {} meeting the premise, 0 counterexamples", r.instances, r.premises_met))
}

fn figure_one() -> Outcome {
    let g = build_gk(10, 2).map_err(|e| e.to_string())?.graph;
    ensure!(g.m() == 45 && g.c() == 11, "m = {}, c = {}", g.m(), g.c());
    ensure!((g.m() + g.c()) as u64 == choose2(11) + 1, "m+c = {}", g.m() + g.c());
    let t = triangle_oracle(&g);
    ensure!(t.len() == 2 && count_rainbow_triangles(&g) == 2, "{} rainbow triangles", t.len());
    Ok("m=45, c=11, m+c=56, 2 rainbow triangles".into())
}

fn turan_arithmetic() -> Outcome {
    let mut checked = 0;
    for n in 1..=30usize {
        for k in 1..=n {
            let t = turan_number(n, k).map_err(|e| e.to_string())?;
            let (p, i) = ((n / k) as u64, (n % k) as u64);
            let (n64, k64) = (n as u64, k as u64);
            ensure!(t == choose2(k64) * p * p + i * (k64 - 1) * p + choose2(i), "first form at ({n},{k})");
            let generated = turan_graph(n, k, false).map_err(|e| e.to_string())?.graph.m() as u64;
            ensure!(generated == t, "t({n},{k}) = {t}, generated {generated}");
            let num = (k64 - 1) * (n64 * n64 - i * i);
            ensure!(num % (2 * k64) == 0 && num / (2 * k64) + choose2(i) == t, "second form at ({n},{k})");
            let diff = turan_number(n + 1, k).map_err(|e| e.to_string())? - t;
            ensure!(
                turan_diff(n, k).map_err(|e| e.to_string())? == diff && diff == n64 - n64 / k64,
                "difference at ({n},{k})"
            );
            checked += 1;
        }
    }
    Ok(format!("{checked} pairs (n,k)"))
}

fn theorem_one() -> Outcome {
    let mut grid = Grid::default_for(TheoremId::T1);
    grid.n = (1..=5).collect();
    let r = verify_theorem(TheoremId::T1, &grid).map_err(|e| e.to_string())?;
    for job in &r.jobs {
        let e = job.n * job.n.saturating_sub(1) / 2;
        ensure!(
            job.instances as u128 == bell(e),
            "n = {}: {} colorings, Bell({e}) = {}",
            job.n,
            job.instances,
            bell(e)
        );
    }
    // Independent pass with a triple-loop triangle count.
    for n in [4, 5] {
        for g in ColoringEnumerator::complete(n, ColorConstraint::Any) {
            if (g.m() + g.c()) as u64 >= choose2(n as u64 + 1) {
                ensure!(!triangle_oracle(&g).is_empty(), "counterexample {:?}", g.edges());
            }
        }
    }
    swept(&r)
}

fn triangle_sweep(id: TheoremId, ks: &[usize]) -> Outcome {
    let mut grid = Grid::default_for(id);
    grid.n = (1..=5).collect();
    grid.k = ks.to_vec();
    grid.noncomplete = true;
    let r = verify_theorem(id, &grid).map_err(|e| e.to_string())?;
    ensure!(r.jobs.iter().all(|j| j.mode == SweepMode::ExhaustiveSubgraphs), "not every n was swept with subgraphs");
    ensure!(r.jobs.last().map(|j| j.instances as u128) == Some(bell(11)), "n = 5 sweep has the wrong size");
    swept(&r)
}

fn theorem_three() -> Outcome {
    let (mut total, mut premise, mut accepted) = (0, 0, 0);
    for g in ColoringEnumerator::complete(5, ColorConstraint::Exactly(5)) {
        total += 1;
        let shaped = triangle_oracle(&g).len() == 1 && g.m() + g.c() == 15;
        let cert = is_in_gk(&g, 1);
        premise += usize::from(shaped);
        accepted += usize::from(cert.is_some());
        ensure!(cert.is_some() == shaped, "disagreement on {:?}", g.edges());
        if let Some(cert) = cert {
            cert.validate(&g).map_err(|e| format!("bad certificate: {e}"))?;
        }
    }
    ensure!(total == 42_525, "{total} colorings");
    Ok(format!("{total} colorings, {premise} meet the premises, {accepted} accepted"))
}

fn random_oriented(rng: &mut StdRng, n: usize) -> OrientedGraph {
    let p = rng.gen_range(0.1..=1.0);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    OrientedGraph::build(n, arcs).unwrap()
}

/// Weak components of `D[N^+(v)]` by flood fill.
fn omega(d: &OrientedGraph, v: usize) -> usize {
    let out = d.out_neighbors(v);
    let mut seen = vec![false; out.len()];
    let mut comps = 0;
    for s in 0..out.len() {
        if seen[s] {
            continue;
        }
        comps += 1;
        let mut stack = vec![s];
        seen[s] = true;
        while let Some(i) = stack.pop() {
            for j in 0..out.len() {
                if !seen[j] && d.adjacent(out[i], out[j]) {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    comps
}

fn lemma_two() -> Outcome {
    let mut rng = StdRng::seed_from_u64(0);
    let mut triangles = 0;
    for _ in 0..10_000 {
        let n = rng.gen_range(1..=12);
        let d = random_oriented(&mut rng, n);
        let g = associated_colored_graph(&d).graph;
        let mut cycles = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                for c in b + 1..n {
                    let fwd = d.has_arc(a, b) && d.has_arc(b, c) && d.has_arc(c, a);
                    let back = d.has_arc(b, a) && d.has_arc(c, b) && d.has_arc(a, c);
                    if fwd || back {
                        cycles.push([a, b, c]);
                    }
                }
            }
        }
        ensure!(directed_triangles(&d) == cycles, "directed triangles wrong on {:?}", d.arcs());
        ensure!(triangle_oracle(&g) == cycles, "triangle sets differ on {:?}", d.arcs());
        ensure!(g.m() == d.a(), "m != a on {:?}", d.arcs());
        let sum: usize = (0..n).map(|v| omega(&d, v)).sum();
        ensure!(g.c() == sum, "c = {}, sum w+ = {sum}", g.c());
        triangles += cycles.len();
    }
    Ok(format!("10000 digraphs, {triangles} directed triangles in total"))
}

fn theorem_five_tightness() -> Outcome {
    let mut instances = 0;
    let mut recolorings = 0;
    for k in 6..=8 {
        for n in k..=12 {
            let g = build_hnk(n, k).map_err(|e| e.to_string())?.graph;
            let t = turan_number(n, k - 2).map_err(|e| e.to_string())?;
            ensure!((g.m() + g.c()) as u64 == choose2(n as u64) + t + 1, "m+c off at ({n},{k})");
            ensure!(enumerate_rainbow_cliques(&g, k, Some(1)).is_empty(), "rainbow K_{k} in H({n},{k})");
            let tur: Vec<(usize, usize)> = turan_graph(n, k - 2, true)
                .map_err(|e| e.to_string())?
                .graph
                .edges()
                .iter()
                .map(|&(u, v, _)| (u, v))
                .collect();
            for &(u, v, _) in g.edges() {
                if tur.binary_search(&(u, v)).is_ok() {
                    continue;
                }
                let h = g.recolor_edge(u, v, g.fresh_color()).unwrap();
                ensure!(has_rainbow_clique(&h, k), "recoloring {u}{v} in H({n},{k}) leaves no rainbow K_{k}");
                recolorings += 1;
            }
            instances += 1;
        }
    }
    Ok(format!("{instances} constructions, {recolorings} single-edge recolorings"))
}

fn theorem_six() -> Outcome {
    let mut built = 0;
    for k in 6..=8 {
        for n in k..=12 {
            let g = build_hnk(n, k).map_err(|e| e.to_string())?.graph;
            let cert = is_in_hk(&g, k).map_err(|e| e.to_string())?;
            ensure!(matches!(&cert, Some(c) if c.case == HkCase::I), "H({n},{k}) not accepted as case I");
            built += 1;
        }
    }
    let fig = build_case2_figure(8, 7).map_err(|e| e.to_string())?.graph;
    let cert = is_in_hk(&fig, 7).map_err(|e| e.to_string())?;
    ensure!(matches!(&cert, Some(c) if c.case == HkCase::II), "case II figure not accepted as case II");
    let mut grid = Grid::default_for(TheoremId::T6);
    grid.pairs = vec![(8, 6), (9, 7)];
    grid.samples = 10_000;
    let r = verify_theorem(TheoremId::T6, &grid).map_err(|e| e.to_string())?;
    ensure!(r.jobs.iter().all(|j| j.premises_met >= 10_000), "too few premise samples: {:?}", r.jobs);
    let detail = swept(&r)?;
    Ok(format!("{built} constructions as case I, figure as case II; sampled: {detail}"))
}

fn proposition() -> Outcome {
    let mut grid = Grid::default_for(TheoremId::P1);
    grid.n = (4..=10).collect();
    grid.k = vec![4, 5, 6];
    grid.ell = vec![1, 2];
    grid.samples = 1000;
    let r = verify_theorem(TheoremId::P1, &grid).map_err(|e| e.to_string())?;
    ensure!(
        r.jobs.iter().filter(|j| j.mode == SweepMode::Sampled).all(|j| j.premises_met >= 1000),
        "too few premise samples: {:?}",
        r.jobs
    );
    swept(&r)
}

fn recolored_witness() -> Outcome {
    for n in 7..=12 {
        let g = recolor_witness_colordeg(n).map_err(|e| e.to_string())?;
        let sdc = g.degree_profile().sum_color_degree() as u64;
        ensure!(sdc >= choose2(n as u64 + 1), "n = {n}: sum d^c = {sdc}");
        ensure!(triangle_oracle(&g).len() == 1, "n = {n}: {} rainbow triangles", triangle_oracle(&g).len());
    }
    Ok("n = 7..12".into())
}

fn random_graph(rng: &mut StdRng) -> EdgeColoredGraph {
    let n = rng.gen_range(0..=16);
    let p = rng.gen_range(0.1..=1.0);
    let colors = rng.gen_range(1..=40);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v, ColorId(rng.gen_range(0..colors))));
            }
        }
    }
    EdgeColoredGraph::build(n, edges).unwrap()
}

/// Rainbow vertex subsets grouped by size, by extending each subset's color
/// set with its top vertex.
fn subset_oracle(g: &EdgeColoredGraph) -> Vec<Vec<Vec<usize>>> {
    let n = g.n();
    let mut colors: Vec<Option<u64>> = vec![None; 1 << n];
    let mut by_size = vec![Vec::new(); n + 1];
    colors[0] = Some(0);
    by_size[0].push(Vec::new());
    for mask in 1usize..1 << n {
        let top = usize::BITS as usize - 1 - mask.leading_zeros() as usize;
        let rest = mask & !(1 << top);
        let Some(mut used) = colors[rest] else { continue };
        let mut ok = true;
        for u in (0..top).filter(|&u| rest >> u & 1 == 1) {
            match g.color_rank(u, top) {
                Some(r) if used >> r & 1 == 0 => used |= 1 << r,
                _ => {
                    ok = false;
                    break;
                }
            }
        }
        if ok {
            colors[mask] = Some(used);
            by_size[mask.count_ones() as usize].push((0..n).filter(|&v| mask >> v & 1 == 1).collect());
        }
    }
    for list in &mut by_size {
        list.sort();
    }
    by_size
}

fn core_invariants() -> Outcome {
    let mut rng = StdRng::seed_from_u64(12);
    let mut small = 0;
    for _ in 0..100_000 {
        let g = random_graph(&mut rng);
        let p = g.degree_profile();
        ensure!(p.sum_saturated_degree() <= 2 * g.c(), "sum d^s > 2c on {:?}", g.edges());
        for v in 0..g.n() {
            let h = g.delete_vertex(v).unwrap();
            ensure!(h.c() == g.c() - p.saturated_degree[v], "c(G-v) wrong on {:?}", g.edges());
        }
        let canon = g.canonicalize_colors();
        ensure!(canon.canonicalize_colors() == canon, "canonicalize not idempotent");
        ensure!(canon.stats() == g.stats(), "canonicalize changed statistics");
        if g.n() <= 10 && g.c() <= 64 {
            small += 1;
            let oracle = subset_oracle(&g);
            for (k, expected) in oracle.iter().enumerate() {
                let got: Vec<Vec<usize>> = enumerate_rainbow_cliques(&g, k, None).into_iter().map(|c| c.0).collect();
                ensure!(&got == expected, "k = {k} cliques differ on {:?}", g.edges());
            }
        }
    }
    Ok(format!("100000 graphs, clique oracle on the {small} with n <= 10"))
}

struct Criterion {
    number: usize,
    name: &'static str,
    target: Duration,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let ms = Duration::from_millis;
    let secs = Duration::from_secs;
    let criteria = [
        Criterion { number: 1, name: "Figure 1 reproduction", target: ms(1), run: figure_one },
        Criterion { number: 2, name: "Turan arithmetic", target: secs(1), run: turan_arithmetic },
        Criterion { number: 3, name: "Theorem 1 exhaustive, n <= 5", target: secs(10), run: theorem_one },
        Criterion {
            number: 4,
            name: "Theorem 2 exhaustive, n <= 5, k <= 3, with subgraphs",
            target: secs(300),
            run: || triangle_sweep(TheoremId::T2, &[1, 2, 3]),
        },
        Criterion {
            number: 5,
            name: "Theorem 4 exhaustive, n <= 5, k <= 2, with subgraphs",
            target: secs(300),
            run: || triangle_sweep(TheoremId::T4, &[1, 2]),
        },
        Criterion { number: 6, name: "Theorem 3 exhaustive at (5,1)", target: secs(60), run: theorem_three },
        Criterion { number: 7, name: "Lemma 2 / associated colored graph", target: secs(10), run: lemma_two },
        Criterion { number: 8, name: "Theorem 5 tightness", target: secs(120), run: theorem_five_tightness },
        Criterion { number: 9, name: "Theorem 6 / H_k", target: secs(300), run: theorem_six },
        Criterion { number: 10, name: "Proposition, l in {1,2}", target: secs(120), run: proposition },
        Criterion { number: 11, name: "Recolored G_1 witness", target: secs(1), run: recolored_witness },
        Criterion { number: 12, name: "Core invariants on random graphs", target: secs(60), run: core_invariants },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let timing = format!("{:.3?} (target {:?})", elapsed, c.target);
        match outcome {
            Ok(detail) => println!("PASS  {:>2}. {}: {detail}; {timing}", c.number, c.name),
            Err(why) => {
                failed += 1;
                println!("FAIL  {:>2}. {}: {why}; {timing}", c.number, c.name);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
