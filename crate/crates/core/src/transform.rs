//! Oriented graphs and edge-colored graphs.
//!
//! The associated colored graph of an oriented graph `D` keeps the underlying
//! edges and gives two arcs the same color exactly when they leave the same
//! vertex `y` and end in the same weak component of `D[N^+(y)]`. Its rainbow
//! triangles are precisely the directed triangles of `D`.
//!
//! In the other direction, [`orient_by_p3_rule`] orients an edge-colored graph
//! so that monochromatic 2-paths point away from their center and rainbow
//! triangles become directed triangles.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{choose2, ColorId, EdgeColoredGraph, OrientedGraph};
use crate::rainbow::list_rainbow_triangles;

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

/// Weak components of `D[N^+(v)]`, each a sorted vertex list, ordered by
/// smallest member.
pub fn out_components(d: &OrientedGraph, v: usize) -> Result<Vec<Vec<usize>>> {
    if v >= d.n() {
        return Err(Error::VertexOutOfRange { vertex: v, n: d.n() });
    }
    let out = d.out_neighbors(v);
    let mut uf = UnionFind::new(out.len());
    for (i, &x) in out.iter().enumerate() {
        for (j, &y) in out.iter().enumerate().skip(i + 1) {
            if d.adjacent(x, y) {
                uf.union(i, j);
            }
        }
    }
    let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, &x) in out.iter().enumerate() {
        groups.entry(uf.find(i)).or_default().push(x);
    }
    Ok(groups.into_values().collect())
}

/// `ω^+(v)`: number of weak components of the out-neighborhood of `v`.
pub fn out_component_number(d: &OrientedGraph, v: usize) -> Result<usize> {
    out_components(d, v).map(|c| c.len())
}

/// `Σ_v ω^+(v)`
pub fn out_component_sum(d: &OrientedGraph) -> usize {
    (0..d.n()).map(|v| out_component_number(d, v).expect("vertex in range")).sum()
}

/// Directed triangles as sorted vertex triples, in lexicographic order.
pub fn directed_triangles(d: &OrientedGraph) -> Vec<[usize; 3]> {
    let mut out = Vec::new();
    for u in 0..d.n() {
        for &v in d.out_neighbors(u) {
            for &w in d.out_neighbors(v) {
                // Report each 3-cycle once, from its smallest vertex.
                if u < v && u < w && d.has_arc(w, u) {
                    let mut t = [u, v, w];
                    t.sort_unstable();
                    out.push(t);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Directed triangles forced by `a(D) + Σ ω^+ >= C(n+1, 2) + k - 1`.
pub fn guaranteed_directed_triangles(n: u64, a: u64, omega_sum: u64) -> u64 {
    (a as i128 + omega_sum as i128 - choose2(n + 1) as i128 + 1).max(0) as u64
}

/// An oriented graph with its associated coloring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedColoring {
    pub graph: EdgeColoredGraph,
    /// Color of every arc, in arc order.
    pub arc_colors: Vec<((usize, usize), ColorId)>,
}

/// Colors arcs by (tail, weak out-component of the head). Colors are numbered
/// consecutively by tail, then by component order.
pub fn associated_colored_graph(d: &OrientedGraph) -> AssociatedColoring {
    let mut next = 0u32;
    let mut arc_colors = Vec::with_capacity(d.a());
    for v in 0..d.n() {
        for comp in out_components(d, v).expect("vertex in range") {
            for &x in &comp {
                arc_colors.push(((v, x), ColorId(next)));
            }
            next += 1;
        }
    }
    arc_colors.sort_unstable();
    let graph = EdgeColoredGraph::build(d.n(), arc_colors.iter().map(|&((u, v), c)| (u, v, c)))
        .expect("an oriented graph has no digons, loops or repeats");
    AssociatedColoring { graph, arc_colors }
}

/// A monochromatic path `leaves.0 - center - leaves.1`, leaves sorted.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MonochromaticP3 {
    pub center: usize,
    pub leaves: (usize, usize),
}

/// All monochromatic 2-edge paths, sorted by center then leaves.
pub fn find_monochromatic_p3(g: &EdgeColoredGraph) -> Vec<MonochromaticP3> {
    let mut out = Vec::new();
    for b in 0..g.n() {
        let nbrs = g.ranked_neighbors(b);
        for (i, &(a, ra)) in nbrs.iter().enumerate() {
            for &(c, rc) in &nbrs[i + 1..] {
                if ra == rc {
                    out.push(MonochromaticP3 { center: b, leaves: (a, c) });
                }
            }
        }
    }
    out
}

/// First monochromatic path `a - b - c - d` on four distinct vertices, scanning
/// middle edges `{b, c}` in order.
pub fn find_monochromatic_p4(g: &EdgeColoredGraph) -> Option<[usize; 4]> {
    for &(b, c, _) in g.edges() {
        let r = g.color_rank(b, c).expect("edge present") as u32;
        for &(a, ra) in g.ranked_neighbors(b) {
            if ra != r || a == c {
                continue;
            }
            for &(d, rd) in g.ranked_neighbors(c) {
                if rd == r && d != b && d != a {
                    return Some([a, b, c, d]);
                }
            }
        }
    }
    None
}

/// Why an arc got its direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    /// Part of a monochromatic 2-path, pointing away from its center.
    P3Forced,
    /// Edge of a rainbow triangle, oriented as a directed 3-cycle.
    TriangleCycled,
    /// Unconstrained; oriented from the lower to the higher index.
    FreeDefault,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrientationReport {
    pub digraph: OrientedGraph,
    /// `(tail, head, provenance)` for every edge, sorted by arc.
    pub provenance: Vec<(usize, usize, Provenance)>,
}

/// Orients `g` so that every monochromatic 2-path points away from its
/// center and every rainbow triangle becomes a directed triangle
/// (`a -> b -> c -> a` for `a < b < c`); remaining edges go low to high.
///
/// Rejects inputs with a monochromatic `P_4` or triangle, a rainbow-triangle
/// edge lying on a monochromatic 2-path, or two rainbow triangles sharing an
/// edge.
pub fn orient_by_p3_rule(g: &EdgeColoredGraph) -> Result<OrientationReport> {
    if let Some([a, b, c, d]) = find_monochromatic_p4(g) {
        return Err(Error::Orientation(format!("monochromatic P4 {a}-{b}-{c}-{d}")));
    }
    let mut forced: BTreeMap<(usize, usize), (usize, usize, Provenance)> = BTreeMap::new();
    for p in find_monochromatic_p3(g) {
        let b = p.center;
        for x in [p.leaves.0, p.leaves.1] {
            let key = (b.min(x), b.max(x));
            if let Some(&(tail, _, _)) = forced.get(&key) {
                if tail != b {
                    // Only a monochromatic triangle remains once P4s are excluded.
                    return Err(Error::Orientation(format!(
                        "edge {{{}, {}}} is forced both ways (monochromatic triangle through it)",
                        key.0, key.1
                    )));
                }
            }
            forced.insert(key, (b, x, Provenance::P3Forced));
        }
    }
    let triangles = list_rainbow_triangles(g);
    for t in &triangles {
        let [a, b, c] = t.0;
        for key in [(a, b), (b, c), (a, c)] {
            if forced.contains_key(&key) {
                return Err(Error::Orientation(format!(
                    "edge {{{}, {}}} of rainbow triangle {{{a}, {b}, {c}}} lies on a monochromatic P3",
                    key.0, key.1
                )));
            }
        }
        for (tail, head) in [(a, b), (b, c), (c, a)] {
            let key = (tail.min(head), tail.max(head));
            if forced.insert(key, (tail, head, Provenance::TriangleCycled)).is_some() {
                return Err(Error::Orientation(format!("rainbow triangles share the edge {{{}, {}}}", key.0, key.1)));
            }
        }
    }
    let provenance: Vec<(usize, usize, Provenance)> = g
        .edges()
        .iter()
        .map(|&(u, v, _)| forced.get(&(u, v)).copied().unwrap_or((u, v, Provenance::FreeDefault)))
        .collect();
    let digraph = OrientedGraph::build(g.n(), provenance.iter().map(|&(u, v, _)| (u, v)))?;
    let mut provenance = provenance;
    provenance.sort_unstable_by_key(|&(u, v, _)| (u, v));
    Ok(OrientationReport { digraph, provenance })
}
