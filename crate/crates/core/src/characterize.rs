//! Recognizers for the two extremal classes, each returning a certificate
//! that can be re-checked independently.
//!
//! The rainbow-triangle class is built from single vertices and rainbow
//! triangles by monochromatic complete joins; the rainbow-clique class
//! consists of `H_{n,k-2}` (case I) and, when `floor(n/(k-2)) = 1`, complete
//! graphs with `t(n,k-2) + 1` colors that contain a rainbow spanning Turán
//! graph but no rainbow `K_k` (case II).

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::constructions::{part_index, turan_number, TuranPartition};
use crate::error::{precondition, Error, Result};
use crate::graph::{ColorId, EdgeColoredGraph};
use crate::rainbow::{count_rainbow_triangles, enumerate_rainbow_cliques};

/// One node of a membership certificate. Vertex numbers refer to the input graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "node", rename_all = "kebab-case")]
pub enum GkNode {
    Vertex {
        vertex: usize,
    },
    Triangle {
        vertices: [usize; 3],
    },
    Join {
        /// Color shared by every edge between the two sides.
        color: ColorId,
        /// Rainbow triangles on each side; they sum to this node's count.
        counts: (usize, usize),
        left: Box<GkNode>,
        right: Box<GkNode>,
    },
}

impl GkNode {
    pub fn vertices(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out.sort_unstable();
        out
    }

    fn collect(&self, out: &mut Vec<usize>) {
        match self {
            GkNode::Vertex { vertex } => out.push(*vertex),
            GkNode::Triangle { vertices } => out.extend_from_slice(vertices),
            GkNode::Join { left, right, .. } => {
                left.collect(out);
                right.collect(out);
            }
        }
    }

    /// Rainbow triangles in the subgraph this node covers, according to the tree.
    pub fn k(&self) -> usize {
        match self {
            GkNode::Vertex { .. } => 0,
            GkNode::Triangle { .. } => 1,
            GkNode::Join { counts, .. } => counts.0 + counts.1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GkCertificate {
    pub k: usize,
    pub root: GkNode,
}

impl GkCertificate {
    /// Re-checks the certificate against `g` without reusing the search.
    pub fn validate(&self, g: &EdgeColoredGraph) -> Result<(), String> {
        if !g.is_complete() {
            return Err("graph is not complete".into());
        }
        if self.root.vertices() != (0..g.n()).collect::<Vec<_>>() {
            return Err("leaves do not partition the vertex set".into());
        }
        if self.root.k() != self.k {
            return Err(format!("tree counts {} rainbow triangles, certificate says {}", self.root.k(), self.k));
        }
        validate_node(g, &self.root)
    }
}

fn validate_node(g: &EdgeColoredGraph, node: &GkNode) -> Result<(), String> {
    let vs = node.vertices();
    let sub = g.induced(&vs).map_err(|e| e.to_string())?;
    let k = count_rainbow_triangles(&sub);
    if k != node.k() {
        return Err(format!("subgraph on {vs:?} has {k} rainbow triangles, node claims {}", node.k()));
    }
    if sub.c() + 1 != vs.len() + k {
        return Err(format!("subgraph on {vs:?} has c = {}, expected n + k - 1", sub.c()));
    }
    match node {
        GkNode::Vertex { .. } => Ok(()),
        GkNode::Triangle { vertices: [a, b, c] } => {
            let colors: BTreeSet<_> = [g.color(*a, *b), g.color(*a, *c), g.color(*b, *c)].into_iter().collect();
            if colors.len() == 3 && !colors.contains(&None) {
                Ok(())
            } else {
                Err(format!("{{{a}, {b}, {c}}} is not a rainbow triangle"))
            }
        }
        GkNode::Join { color, counts, left, right } => {
            for x in left.vertices() {
                for y in right.vertices() {
                    if g.color(x, y) != Some(*color) {
                        return Err(format!("join edge {{{x}, {y}}} is not colored {color}"));
                    }
                }
            }
            if left.k() != counts.0 || right.k() != counts.1 {
                return Err("join counts disagree with children".into());
            }
            validate_node(g, left)?;
            validate_node(g, right)
        }
    }
}

struct GkSearch<'a> {
    g: &'a EdgeColoredGraph,
    memo: HashMap<Vec<usize>, Option<GkNode>>,
}

impl GkSearch<'_> {
    fn member(&mut self, set: &[usize]) -> Option<GkNode> {
        if let Some(hit) = self.memo.get(set) {
            return hit.clone();
        }
        let result = self.decide(set);
        self.memo.insert(set.to_vec(), result.clone());
        result
    }

    fn decide(&mut self, set: &[usize]) -> Option<GkNode> {
        let sub = self.g.induced(set).expect("vertices in range");
        let k = count_rainbow_triangles(&sub);
        if sub.c() + 1 != set.len() + k {
            return None;
        }
        match (set.len(), k) {
            (1, _) => return Some(GkNode::Vertex { vertex: set[0] }),
            (3, 1) => return Some(GkNode::Triangle { vertices: [set[0], set[1], set[2]] }),
            _ => {}
        }
        // A join color must separate the graph: group the vertices into the
        // components left after deleting that color's edges.
        for &color in sub.palette() {
            let comps = components_without(&sub, color);
            if comps.len() < 2 || comps.len() > 64 {
                continue;
            }
            // Component 0 stays on the left to skip mirrored splits.
            for mask in 0..(1u64 << (comps.len() - 1)) - 1 {
                let mut left = comps[0].clone();
                let mut right = Vec::new();
                for (j, comp) in comps.iter().enumerate().skip(1) {
                    if mask >> (j - 1) & 1 == 1 {
                        left.extend_from_slice(comp);
                    } else {
                        right.extend_from_slice(comp);
                    }
                }
                let to_global = |part: &mut Vec<usize>| {
                    for x in part.iter_mut() {
                        *x = set[*x];
                    }
                    part.sort_unstable();
                };
                to_global(&mut left);
                to_global(&mut right);
                let Some(l) = self.member(&left) else { continue };
                let Some(r) = self.member(&right) else { continue };
                if l.k() + r.k() != k {
                    continue;
                }
                return Some(GkNode::Join { color, counts: (l.k(), r.k()), left: Box::new(l), right: Box::new(r) });
            }
        }
        None
    }
}

/// Connected components (local vertex numbers) after removing all edges of `color`.
fn components_without(g: &EdgeColoredGraph, color: ColorId) -> Vec<Vec<usize>> {
    let n = g.n();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut i = 0;
        while i < members.len() {
            let v = members[i];
            i += 1;
            for (w, c) in g.neighbors(v) {
                if c != color && comp[w] == usize::MAX {
                    comp[w] = id;
                    members.push(w);
                }
            }
        }
        members.sort_unstable();
        out.push(members);
    }
    out
}

/// Membership in the rainbow-triangle extremal class with parameter `k`.
///
/// Requires a complete graph with exactly `k` rainbow triangles and
/// `c = n + k - 1`, built recursively from single vertices and rainbow
/// triangles by joins whose cross edges share one color. Candidate joins are
/// read off the color classes: deleting the join color disconnects the two
/// sides, so every split is a grouping of those components. The search is
/// memoized on vertex subsets and is exponential only in the number of
/// components per color.
pub fn is_in_gk(g: &EdgeColoredGraph, k: usize) -> Option<GkCertificate> {
    if g.n() == 0 || !g.is_complete() || g.c() + 1 != g.n() + k || count_rainbow_triangles(g) != k {
        return None;
    }
    let mut search = GkSearch { g, memo: HashMap::new() };
    let all: Vec<usize> = (0..g.n()).collect();
    search.member(&all).map(|root| GkCertificate { k, root })
}

/// A balanced partition together with the concrete vertex sets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningTuran {
    pub partition: TuranPartition,
    /// Vertex sets in order of their smallest vertex.
    pub parts: Vec<Vec<usize>>,
}

struct TuranSearch<'a> {
    g: &'a EdgeColoredGraph,
    parts: usize,
    p: usize,
    large: usize,
    assign: Vec<usize>,
    sizes: Vec<usize>,
    used: Vec<bool>,
}

impl TuranSearch<'_> {
    fn max_size(&self) -> usize {
        if self.large > 0 {
            self.p + 1
        } else {
            self.p
        }
    }

    fn search(&mut self, v: usize, opened: usize) -> bool {
        let n = self.g.n();
        if v == n {
            return opened == self.parts && self.sizes.iter().all(|&s| s >= self.p);
        }
        let limit = (opened + 1).min(self.parts);
        for j in 0..limit {
            if self.sizes[j] + 1 > self.max_size() {
                continue;
            }
            let grows_large = self.sizes[j] + 1 == self.p + 1;
            if grows_large {
                let count = self.sizes.iter().filter(|&&s| s == self.p + 1).count();
                if count >= self.large {
                    continue;
                }
            }
            // Cross edges to earlier vertices must bring unused colors.
            let mut marked = Vec::new();
            let mut ok = true;
            for u in 0..v {
                if self.assign[u] == j {
                    continue;
                }
                let r = self.g.color_rank(u, v).expect("complete graph");
                if self.used[r] {
                    ok = false;
                    break;
                }
                self.used[r] = true;
                marked.push(r);
            }
            if ok {
                self.assign[v] = j;
                self.sizes[j] += 1;
                let deficit: usize = self.sizes.iter().map(|&s| self.p.saturating_sub(s)).sum();
                let opened_next = opened.max(j + 1);
                if deficit < n - v && self.search(v + 1, opened_next) {
                    return true;
                }
                self.sizes[j] -= 1;
                self.assign[v] = usize::MAX;
            }
            for r in marked {
                self.used[r] = false;
            }
        }
        false
    }
}

/// A balanced `parts`-partition of the complete graph `g` whose cross edges
/// all have distinct colors, i.e. a rainbow spanning Turán graph. Vertices
/// are assigned in increasing order, each to an existing part or the next new
/// one, so the first partition found is deterministic.
pub fn find_rainbow_spanning_turan(g: &EdgeColoredGraph, parts: usize) -> Result<Option<SpanningTuran>> {
    if !g.is_complete() {
        return Err(Error::NotComplete);
    }
    let partition = TuranPartition::new(g.n(), parts)?;
    if (turan_number(g.n(), parts)? as usize) > g.c() {
        return Ok(None);
    }
    let mut search = TuranSearch {
        g,
        parts,
        p: partition.p(),
        large: partition.i(),
        assign: vec![usize::MAX; g.n()],
        sizes: vec![0; parts],
        used: vec![false; g.c()],
    };
    if !search.search(0, 0) {
        return Ok(None);
    }
    let mut sets = vec![Vec::new(); parts];
    for (v, &j) in search.assign.iter().enumerate() {
        sets[j].push(v);
    }
    Ok(Some(SpanningTuran { partition, parts: sets }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HkCase {
    /// Isomorphic to `H_{n,k-2}`.
    I,
    /// `floor(n/(k-2)) = 1`, `c = t + 1`, rainbow spanning Turán graph, no rainbow `K_k`.
    II,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HkCertificate {
    pub case: HkCase,
    pub k: usize,
    /// Parts of the rainbow spanning `T_{n,k-2}`.
    pub parts: Vec<Vec<usize>>,
    /// Case I: the single color inside the parts.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_color: Option<ColorId>,
    /// `t(n, k-2)`
    pub turan_edges: u64,
}

impl HkCertificate {
    /// Re-checks the certificate, including clique-freeness by enumeration.
    pub fn validate(&self, g: &EdgeColoredGraph) -> Result<(), String> {
        let n = g.n();
        let q = self.k.checked_sub(2).filter(|&q| q >= 1 && q <= n).ok_or("invalid k")?;
        let partition = TuranPartition::new(n, q).map_err(|e| e.to_string())?;
        let mut all: Vec<usize> = self.parts.iter().flatten().copied().collect();
        all.sort_unstable();
        if all != (0..n).collect::<Vec<_>>() || !partition.matches(&self.parts) {
            return Err("parts are not a balanced partition of V(G)".into());
        }
        if !g.is_complete() {
            return Err("graph is not complete".into());
        }
        let t = turan_number(n, q).map_err(|e| e.to_string())?;
        if t != self.turan_edges || g.c() as u64 != t + 1 {
            return Err(format!("c = {}, expected t + 1 = {}", g.c(), t + 1));
        }
        let part_of = part_index(n, &self.parts);
        let mut cross = BTreeSet::new();
        for &(u, v, c) in g.edges() {
            if part_of[u] != part_of[v] && !cross.insert(c) {
                return Err(format!("cross color {c} repeats"));
            }
        }
        match self.case {
            HkCase::I => {
                let extra = self.extra_color.ok_or("case I needs the extra color")?;
                if cross.contains(&extra) {
                    return Err("extra color is used on the Turán subgraph".into());
                }
                for &(u, v, c) in g.edges() {
                    if part_of[u] == part_of[v] && c != extra {
                        return Err(format!("intra edge {{{u}, {v}}} is not colored {extra}"));
                    }
                }
            }
            HkCase::II => {
                if n / q != 1 {
                    return Err("case II needs floor(n/(k-2)) = 1".into());
                }
                if !enumerate_rainbow_cliques(g, self.k, Some(1)).is_empty() {
                    return Err(format!("graph contains a rainbow K_{}", self.k));
                }
            }
        }
        Ok(())
    }
}

/// Case I test: some color class is a disjoint union of cliques on the parts
/// of a balanced `q`-partition and every other edge has its own color.
fn h_structure(g: &EdgeColoredGraph, q: usize, t: u64) -> Option<(Vec<Vec<usize>>, ColorId)> {
    let partition = TuranPartition::new(g.n(), q).ok()?;
    let mut class_size: BTreeMap<ColorId, usize> = BTreeMap::new();
    for &(_, _, c) in g.edges() {
        *class_size.entry(c).or_default() += 1;
    }
    let intra_edges: usize = partition.sizes.iter().map(|&s| s * s.saturating_sub(1) / 2).sum();
    for (&color, &size) in &class_size {
        if size != intra_edges {
            continue;
        }
        // Parts are the components of this color class.
        let mono = EdgeColoredGraph::build(g.n(), g.edges().iter().filter(|e| e.2 == color).copied()).ok()?;
        let parts = components_without(&mono, ColorId(u32::MAX));
        if parts.len() != q || !partition.matches(&parts) {
            continue;
        }
        let part_of = part_index(g.n(), &parts);
        let mut cross = BTreeSet::new();
        let mut ok = true;
        for &(u, v, c) in g.edges() {
            let same = part_of[u] == part_of[v];
            if same != (c == color) || (!same && !cross.insert(c)) {
                ok = false;
                break;
            }
        }
        if ok && cross.len() as u64 == t {
            return Some((parts, color));
        }
    }
    None
}

/// Membership in the rainbow-`K_k` extremal class. Requires `n >= k >= 4`.
pub fn is_in_hk(g: &EdgeColoredGraph, k: usize) -> Result<Option<HkCertificate>> {
    let n = g.n();
    if k < 4 {
        return Err(precondition(format!("k = {k} < 4")));
    }
    if n < k {
        return Err(precondition(format!("n < k (n = {n}, k = {k})")));
    }
    let q = k - 2;
    let t = turan_number(n, q)?;
    if !g.is_complete() || g.c() as u64 != t + 1 {
        return Ok(None);
    }
    if let Some((parts, color)) = h_structure(g, q, t) {
        return Ok(Some(HkCertificate { case: HkCase::I, k, parts, extra_color: Some(color), turan_edges: t }));
    }
    if n / q != 1 {
        return Ok(None);
    }
    let Some(spanning) = find_rainbow_spanning_turan(g, q)? else {
        return Ok(None);
    };
    if !enumerate_rainbow_cliques(g, k, Some(1)).is_empty() {
        return Ok(None);
    }
    Ok(Some(HkCertificate { case: HkCase::II, k, parts: spanning.parts, extra_color: None, turan_edges: t }))
}
