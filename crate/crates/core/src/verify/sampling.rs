//! Seeded random instances for the sampled sweeps.
//!
//! Uniform colorings almost never sit near an extremal threshold, so most
//! samplers start from an extremal construction, scramble its labels and
//! apply a few local edits.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::constructions::TuranPartition;
use crate::graph::{ColorId, EdgeColoredGraph, OrientedGraph};

/// Random vertex permutation and injective color renaming.
pub fn scramble<R: Rng>(g: &EdgeColoredGraph, rng: &mut R) -> EdgeColoredGraph {
    let mut perm: Vec<usize> = (0..g.n()).collect();
    perm.shuffle(rng);
    let mut names: Vec<u32> = (0..g.c() as u32 * 2 + 1).collect();
    names.shuffle(rng);
    let palette = g.palette().to_vec();
    g.permute_vertices(&perm).expect("a permutation").map_colors(|c| ColorId(names[palette.binary_search(&c).unwrap()]))
}

/// One local edit: swap two edge colors, copy a color onto another edge,
/// give an edge a fresh color, or delete an edge.
pub fn mutate<R: Rng>(g: &EdgeColoredGraph, rng: &mut R) -> EdgeColoredGraph {
    let edges = g.edges();
    if edges.is_empty() {
        return g.clone();
    }
    let (u, v, cu) = edges[rng.gen_range(0..edges.len())];
    let (x, y, cx) = edges[rng.gen_range(0..edges.len())];
    let out = match rng.gen_range(0..4) {
        0 => g.recolor_edge(u, v, cx).and_then(|h| h.recolor_edge(x, y, cu)),
        1 => g.recolor_edge(u, v, cx),
        2 => g.recolor_edge(u, v, g.fresh_color()),
        _ => g.delete_edge(u, v),
    };
    out.expect("edge taken from the graph")
}

/// Uniformly random edge set of random density, colored from a palette of
/// random size.
pub fn random_coloring<R: Rng>(n: usize, rng: &mut R) -> EdgeColoredGraph {
    let density: f64 = rng.gen_range(0.3..=1.0);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                edges.push((u, v));
            }
        }
    }
    let colors = rng.gen_range(1..=edges.len().max(1)) as u32;
    EdgeColoredGraph::build(n, edges.into_iter().map(|(u, v)| (u, v, ColorId(rng.gen_range(0..colors)))))
        .expect("distinct pairs")
}

/// A scrambled, lightly edited copy of `base`; with probability 1/4 a
/// uniformly random coloring instead.
pub fn near<R: Rng>(base: &EdgeColoredGraph, max_edits: usize, rng: &mut R) -> EdgeColoredGraph {
    if rng.gen_ratio(1, 4) {
        return random_coloring(base.n(), rng);
    }
    let mut g = scramble(base, rng);
    for _ in 0..rng.gen_range(0..=max_edits) {
        g = mutate(&g, rng);
    }
    g
}

/// Rainbow `T_{n,q}` whose intra-part edges each get either one shared extra
/// color or the color of a Turán edge from the same pair to a singleton part.
/// Every instance is complete with at most `t_{n,q} + 1` colors.
pub fn singleton_reuse_candidate<R: Rng>(n: usize, q: usize, rng: &mut R) -> EdgeColoredGraph {
    let blocks = TuranPartition::new(n, q).expect("1 <= q <= n").blocks();
    let mut part = vec![0; n];
    for (i, b) in blocks.iter().enumerate() {
        for &v in b {
            part[v] = i;
        }
    }
    let singletons: Vec<usize> = blocks.iter().filter(|b| b.len() == 1).map(|b| b[0]).collect();
    let mut next = 0u32;
    let mut cross = std::collections::HashMap::new();
    for u in 0..n {
        for v in u + 1..n {
            if part[u] != part[v] {
                cross.insert((u, v), ColorId(next));
                next += 1;
            }
        }
    }
    let extra = ColorId(next);
    let g = EdgeColoredGraph::complete_with(n, |u, v| {
        if let Some(&c) = cross.get(&(u, v)) {
            return c;
        }
        if singletons.is_empty() || rng.gen_bool(0.5) {
            return extra;
        }
        let s = singletons[rng.gen_range(0..singletons.len())];
        let end = if rng.gen_bool(0.5) { u } else { v };
        cross[&(end.min(s), end.max(s))]
    })
    .expect("n is small");
    scramble(&g, rng)
}

/// Random oriented graph: each pair is an arc in a random direction with a
/// random density.
pub fn random_oriented_graph<R: Rng>(n: usize, rng: &mut R) -> OrientedGraph {
    let density: f64 = rng.gen_range(0.2..=1.0);
    let mut arcs = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(density) {
                arcs.push(if rng.gen_bool(0.5) { (u, v) } else { (v, u) });
            }
        }
    }
    OrientedGraph::build(n, arcs).expect("one arc per pair")
}
