//! Edge-colored simple graphs and oriented graphs.
//!
//! Vertices are dense indices `0..n`. Graphs are immutable values: every
//! mutating operation returns a new graph. Deleting a vertex renumbers the
//! remaining vertices by order-preserving compaction.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest vertex count accepted by [`EdgeColoredGraph::build`].
pub const MAX_VERTICES: usize = 4096;

/// Largest vertex count for which single-word neighbor bitsets are kept.
pub const MAX_BITSET_VERTICES: usize = 64;

/// Graphs up to this size also keep a dense color matrix.
const DENSE_LIMIT: usize = 256;

const NO_EDGE: u32 = u32::MAX;

/// An opaque color label. Only equality carries meaning.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ColorId(pub u32);

impl fmt::Display for ColorId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for ColorId {
    fn from(value: u32) -> Self {
        ColorId(value)
    }
}

/// `n choose 2`.
pub const fn choose2(n: u64) -> u64 {
    n * n.saturating_sub(1) / 2
}

/// A simple undirected graph with a color on every edge.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EdgeColoredGraph {
    n: usize,
    /// Sorted by `(u, v)` with `u < v`.
    edges: Vec<(usize, usize, ColorId)>,
    /// Sorted distinct colors; a color's rank is its index here.
    palette: Vec<ColorId>,
    /// `adj[v]` holds `(neighbor, color rank)` sorted by neighbor.
    adj: Vec<Vec<(usize, u32)>>,
    /// Row-major color ranks, present when `n <= DENSE_LIMIT`.
    dense: Option<Vec<u32>>,
    /// Neighbor bitsets, present when `n <= MAX_BITSET_VERTICES`.
    masks: Vec<u64>,
}

impl EdgeColoredGraph {
    /// Builds a graph on vertices `0..n` from `(u, v, color)` triples.
    ///
    /// Endpoints may be given in either order. Self-loops, out-of-range
    /// endpoints and repeated pairs are rejected.
    pub fn build<I>(n: usize, colored_edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize, ColorId)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let mut edges = Vec::new();
        for (u, v, color) in colored_edges {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            edges.push((u.min(v), u.max(v), color));
        }
        edges.sort_unstable();
        if let Some(w) = edges.windows(2).find(|w| (w[0].0, w[0].1) == (w[1].0, w[1].1)) {
            return Err(Error::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(Self::from_sorted(n, edges))
    }

    /// The graph on `n` vertices with no edges.
    pub fn empty(n: usize) -> Result<Self> {
        Self::build(n, std::iter::empty())
    }

    /// The complete graph on `n` vertices, edge `{u, v}` (`u < v`) colored `color(u, v)`.
    pub fn complete_with<F>(n: usize, mut color: F) -> Result<Self>
    where
        F: FnMut(usize, usize) -> ColorId,
    {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let mut edges = Vec::with_capacity(n * n.saturating_sub(1) / 2);
        for u in 0..n {
            for v in u + 1..n {
                edges.push((u, v, color(u, v)));
            }
        }
        Ok(Self::from_sorted(n, edges))
    }

    fn from_sorted(n: usize, edges: Vec<(usize, usize, ColorId)>) -> Self {
        let mut palette: Vec<ColorId> = edges.iter().map(|e| e.2).collect();
        palette.sort_unstable();
        palette.dedup();

        let mut adj = vec![Vec::new(); n];
        let mut dense = (n <= DENSE_LIMIT).then(|| vec![NO_EDGE; n * n]);
        let mut masks = if n <= MAX_BITSET_VERTICES { vec![0u64; n] } else { Vec::new() };
        for &(u, v, color) in &edges {
            let rank = palette.binary_search(&color).expect("color in palette") as u32;
            adj[u].push((v, rank));
            adj[v].push((u, rank));
            if let Some(d) = dense.as_mut() {
                d[u * n + v] = rank;
                d[v * n + u] = rank;
            }
            if !masks.is_empty() {
                masks[u] |= 1 << v;
                masks[v] |= 1 << u;
            }
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        EdgeColoredGraph { n, edges, palette, adj, dense, masks }
    }

    /// Number of vertices.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges, `m(G)`.
    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Number of distinct colors, `c(G)`.
    pub fn c(&self) -> usize {
        self.palette.len()
    }

    /// Edges as `(u, v, color)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> &[(usize, usize, ColorId)] {
        &self.edges
    }

    /// Distinct colors in increasing order.
    pub fn palette(&self) -> &[ColorId] {
        &self.palette
    }

    pub fn is_complete(&self) -> bool {
        self.m() as u64 == choose2(self.n as u64)
    }

    /// Color of edge `{u, v}`, if present.
    pub fn color(&self, u: usize, v: usize) -> Option<ColorId> {
        self.color_rank(u, v).map(|r| self.palette[r])
    }

    /// Index of the color of `{u, v}` in [`palette`](Self::palette).
    pub fn color_rank(&self, u: usize, v: usize) -> Option<usize> {
        if u >= self.n || v >= self.n || u == v {
            return None;
        }
        match &self.dense {
            Some(d) => match d[u * self.n + v] {
                NO_EDGE => None,
                r => Some(r as usize),
            },
            None => {
                let list = &self.adj[u];
                list.binary_search_by_key(&v, |&(w, _)| w).ok().map(|i| list[i].1 as usize)
            }
        }
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.color_rank(u, v).is_some()
    }

    /// Neighbors of `v` with the color rank of the connecting edge, sorted by neighbor.
    pub fn ranked_neighbors(&self, v: usize) -> &[(usize, u32)] {
        &self.adj[v]
    }

    /// Neighbors of `v` with the connecting edge color.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = (usize, ColorId)> + '_ {
        self.adj[v].iter().map(move |&(w, r)| (w, self.palette[r as usize]))
    }

    /// Neighbor bitset of `v`; only available for `n <= 64`.
    pub fn neighbor_mask(&self, v: usize) -> Option<u64> {
        self.masks.get(v).copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    /// Number of distinct colors on edges at `v`.
    pub fn color_degree(&self, v: usize) -> usize {
        let mut ranks: Vec<u32> = self.adj[v].iter().map(|&(_, r)| r).collect();
        ranks.sort_unstable();
        ranks.dedup();
        ranks.len()
    }

    /// Per-vertex degree, color degree and saturated degree.
    pub fn degree_profile(&self) -> DegreeProfile {
        let c = self.c();
        let mut class_size = vec![0usize; c];
        for &(u, v, _) in &self.edges {
            let r = self.color_rank(u, v).expect("edge present");
            class_size[r] += 1;
        }
        let mut at_vertex = vec![0usize; c];
        let mut profile = DegreeProfile {
            degree: Vec::with_capacity(self.n),
            color_degree: Vec::with_capacity(self.n),
            saturated_degree: Vec::with_capacity(self.n),
        };
        for v in 0..self.n {
            let mut touched = Vec::new();
            for &(_, r) in &self.adj[v] {
                let r = r as usize;
                if at_vertex[r] == 0 {
                    touched.push(r);
                }
                at_vertex[r] += 1;
            }
            // A color leaves with v exactly when every edge of its class is at v.
            let saturated = touched.iter().filter(|&&r| at_vertex[r] == class_size[r]).count();
            profile.degree.push(self.adj[v].len());
            profile.color_degree.push(touched.len());
            profile.saturated_degree.push(saturated);
            for r in touched {
                at_vertex[r] = 0;
            }
        }
        profile
    }

    /// `m`, `c` and the degree profile in one pass.
    pub fn stats(&self) -> GraphStats {
        GraphStats { m: self.m(), c: self.c(), profile: self.degree_profile() }
    }

    /// The class of each color: the edges carrying it.
    pub fn color_classes(&self) -> Vec<(ColorId, Vec<(usize, usize)>)> {
        let mut classes: Vec<(ColorId, Vec<(usize, usize)>)> = self.palette.iter().map(|&c| (c, Vec::new())).collect();
        for &(u, v, color) in &self.edges {
            let r = self.palette.binary_search(&color).expect("color in palette");
            classes[r].1.push((u, v));
        }
        classes
    }

    /// `G - v`; vertices above `v` shift down by one.
    pub fn delete_vertex(&self, v: usize) -> Result<Self> {
        if v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
        }
        let shift = |x: usize| if x > v { x - 1 } else { x };
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b, _)| a != v && b != v)
            .map(|&(a, b, c)| (shift(a), shift(b), c))
            .collect();
        Ok(Self::from_sorted(self.n - 1, edges))
    }

    /// `G - {u, v}` (the edge only).
    pub fn delete_edge(&self, u: usize, v: usize) -> Result<Self> {
        let key = (u.min(v), u.max(v));
        let idx = self.edge_index(key.0, key.1)?;
        let mut edges = self.edges.clone();
        edges.remove(idx);
        Ok(Self::from_sorted(self.n, edges))
    }

    /// Replaces the color of an existing edge.
    pub fn recolor_edge(&self, u: usize, v: usize, color: ColorId) -> Result<Self> {
        let idx = self.edge_index(u.min(v), u.max(v))?;
        let mut edges = self.edges.clone();
        edges[idx].2 = color;
        Ok(Self::from_sorted(self.n, edges))
    }

    /// Adds a new edge.
    pub fn add_edge(&self, u: usize, v: usize, color: ColorId) -> Result<Self> {
        let mut edges = self.edges.clone();
        edges.push((u, v, color));
        Self::build(self.n, edges)
    }

    fn edge_index(&self, u: usize, v: usize) -> Result<usize> {
        if u >= self.n || v >= self.n {
            return Err(Error::VertexOutOfRange { vertex: u.max(v), n: self.n });
        }
        self.edges.binary_search_by(|&(a, b, _)| (a, b).cmp(&(u, v))).map_err(|_| Error::MissingEdge(u, v))
    }

    /// The subgraph induced on `vertices`, renumbered in increasing vertex order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Self> {
        let mut sorted = vertices.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if let Some(&bad) = sorted.iter().find(|&&x| x >= self.n) {
            return Err(Error::VertexOutOfRange { vertex: bad, n: self.n });
        }
        let mut new_index = vec![usize::MAX; self.n];
        for (i, &x) in sorted.iter().enumerate() {
            new_index[x] = i;
        }
        let edges = self
            .edges
            .iter()
            .filter(|&&(a, b, _)| new_index[a] != usize::MAX && new_index[b] != usize::MAX)
            .map(|&(a, b, c)| (new_index[a], new_index[b], c))
            .collect();
        Ok(Self::from_sorted(sorted.len(), edges))
    }

    /// Applies a vertex permutation: old vertex `x` becomes `perm[x]`.
    pub fn permute_vertices(&self, perm: &[usize]) -> Result<Self> {
        let mut seen = vec![false; self.n];
        if perm.len() != self.n {
            return Err(Error::Precondition(format!("permutation has length {}, expected {}", perm.len(), self.n)));
        }
        for &p in perm {
            if p >= self.n || std::mem::replace(&mut seen[p], true) {
                return Err(Error::Precondition("not a permutation".into()));
            }
        }
        Self::build(self.n, self.edges.iter().map(|&(u, v, c)| (perm[u], perm[v], c)))
    }

    /// Renames every color through `f`; `f` need not be injective.
    pub fn map_colors<F>(&self, mut f: F) -> Self
    where
        F: FnMut(ColorId) -> ColorId,
    {
        let edges = self.edges.iter().map(|&(u, v, c)| (u, v, f(c))).collect();
        Self::from_sorted(self.n, edges)
    }

    /// Relabels colors to `0..c` in order of first appearance along the sorted edge list.
    pub fn canonicalize_colors(&self) -> Self {
        let mut relabel = vec![u32::MAX; self.c()];
        let mut next = 0u32;
        let edges = self
            .edges
            .iter()
            .map(|&(u, v, c)| {
                let r = self.palette.binary_search(&c).expect("color in palette");
                if relabel[r] == u32::MAX {
                    relabel[r] = next;
                    next += 1;
                }
                (u, v, ColorId(relabel[r]))
            })
            .collect();
        Self::from_sorted(self.n, edges)
    }

    /// A color not used anywhere in the graph.
    pub fn fresh_color(&self) -> ColorId {
        ColorId(self.palette.last().map_or(0, |c| c.0 + 1))
    }
}

/// Degree statistics per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeProfile {
    /// `d(v)`
    pub degree: Vec<usize>,
    /// `d^c(v)`: distinct colors at `v`.
    pub color_degree: Vec<usize>,
    /// `d^s(v) = c(G) - c(G - v)`.
    pub saturated_degree: Vec<usize>,
}

impl DegreeProfile {
    pub fn sum_degree(&self) -> usize {
        self.degree.iter().sum()
    }

    pub fn sum_color_degree(&self) -> usize {
        self.color_degree.iter().sum()
    }

    pub fn sum_saturated_degree(&self) -> usize {
        self.saturated_degree.iter().sum()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphStats {
    pub m: usize,
    pub c: usize,
    pub profile: DegreeProfile,
}

/// A digraph with at most one arc per vertex pair.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedGraph {
    n: usize,
    arcs: Vec<(usize, usize)>,
    out: Vec<Vec<usize>>,
    inn: Vec<Vec<usize>>,
}

impl OrientedGraph {
    /// Builds an oriented graph; rejects self-loops, repeated arcs and digons.
    pub fn build<I>(n: usize, arcs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices { n, max: MAX_VERTICES });
        }
        let mut list: Vec<(usize, usize)> = Vec::new();
        for (u, v) in arcs {
            for vertex in [u, v] {
                if vertex >= n {
                    return Err(Error::VertexOutOfRange { vertex, n });
                }
            }
            if u == v {
                return Err(Error::SelfLoop(u));
            }
            list.push((u, v));
        }
        list.sort_unstable();
        if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateArc(w[0].0, w[0].1));
        }
        for &(u, v) in &list {
            if u < v && list.binary_search(&(v, u)).is_ok() {
                return Err(Error::Digon(u, v));
            }
        }
        let mut out = vec![Vec::new(); n];
        let mut inn = vec![Vec::new(); n];
        for &(u, v) in &list {
            out[u].push(v);
            inn[v].push(u);
        }
        for l in &mut inn {
            l.sort_unstable();
        }
        Ok(OrientedGraph { n, arcs: list, out, inn })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of arcs, `a(D)`.
    pub fn a(&self) -> usize {
        self.arcs.len()
    }

    /// Arcs sorted lexicographically.
    pub fn arcs(&self) -> &[(usize, usize)] {
        &self.arcs
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out[v].len()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.inn[v].len()
    }

    pub fn has_arc(&self, u: usize, v: usize) -> bool {
        u < self.n && self.out[u].binary_search(&v).is_ok()
    }

    /// True when `u` and `v` are joined by an arc in either direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_arc(u, v) || self.has_arc(v, u)
    }
}
