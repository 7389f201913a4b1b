//! Generators for the extremal objects: Turán graphs and numbers, the
//! rainbow-triangle extremal graphs `G_k`, the clique-extremal graphs
//! `H_{n,k-2}`, the eight-vertex case (II) example and the recolored `G_1`.
//!
//! Every generator returns the graph together with metadata describing the
//! structure it planted, and checks that metadata against the graph before
//! returning.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{precondition, Error, Result};
use crate::graph::{choose2, ColorId, EdgeColoredGraph};
use crate::rainbow::{enumerate_rainbow_cliques, list_rainbow_triangles};

/// Part sizes of the balanced complete `k`-partite graph on `n` vertices:
/// `i` parts of size `p + 1` followed by `k - i` parts of size `p`, where
/// `n = p k + i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TuranPartition {
    pub n: usize,
    pub k: usize,
    pub sizes: Vec<usize>,
}

impl TuranPartition {
    pub fn new(n: usize, k: usize) -> Result<Self> {
        check_turan_params(n, k)?;
        let (p, i) = (n / k, n % k);
        let sizes = (0..k).map(|j| if j < i { p + 1 } else { p }).collect();
        Ok(TuranPartition { n, k, sizes })
    }

    /// `floor(n / k)`
    pub fn p(&self) -> usize {
        self.n / self.k
    }

    /// `n mod k`: the number of larger parts.
    pub fn i(&self) -> usize {
        self.n % self.k
    }

    /// Consecutive vertex blocks realizing the partition.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut start = 0;
        self.sizes
            .iter()
            .map(|&s| {
                let block = (start..start + s).collect();
                start += s;
                block
            })
            .collect()
    }

    /// Whether `parts` (as vertex sets) have exactly these sizes up to order.
    pub fn matches(&self, parts: &[Vec<usize>]) -> bool {
        let mut got: Vec<usize> = parts.iter().map(Vec::len).collect();
        got.sort_unstable_by(|a, b| b.cmp(a));
        got == self.sizes
    }
}

fn check_turan_params(n: usize, k: usize) -> Result<()> {
    if k == 0 {
        return Err(precondition("k = 0"));
    }
    if k > n {
        return Err(precondition(format!("k = {k} > n = {n}")));
    }
    Ok(())
}

/// Edge count of the Turán graph: `C(k,2) p^2 + i (k-1) p + C(i,2)`.
pub fn turan_number(n: usize, k: usize) -> Result<u64> {
    check_turan_params(n, k)?;
    let (k, p, i) = (k as u64, (n / k) as u64, (n % k) as u64);
    Ok(choose2(k) * p * p + i * (k - 1) * p + choose2(i))
}

/// `t(n+1, k) - t(n, k) = n - floor(n / k)`.
pub fn turan_diff(n: usize, k: usize) -> Result<u64> {
    check_turan_params(n, k)?;
    Ok((n - n / k) as u64)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructionKind {
    Turan,
    Gk,
    Hnk,
    Case2Figure,
    RecoloredG1,
}

/// An intra-part edge that borrows the color of a cross edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReusedColor {
    pub edge: (usize, usize),
    pub color: ColorId,
    pub source: (usize, usize),
}

/// Planted structure of a generated graph, serialized as the metadata sidecar.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionMetadata {
    pub kind: ConstructionKind,
    pub n: usize,
    /// Number of parts for Turán graphs; `k` otherwise.
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rainbow: Option<bool>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub triangles: Vec<[usize; 3]>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub join_colors: Vec<ColorId>,
    /// The color outside the rainbow Turán subgraph, when there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub extra_color: Option<ColorId>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub reused: Vec<ReusedColor>,
}

impl ConstructionMetadata {
    fn new(kind: ConstructionKind, n: usize, k: usize) -> Self {
        ConstructionMetadata {
            kind,
            n,
            k,
            rainbow: None,
            parts: Vec::new(),
            triangles: Vec::new(),
            join_colors: Vec::new(),
            extra_color: None,
            reused: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledConstruction {
    pub graph: EdgeColoredGraph,
    pub metadata: ConstructionMetadata,
}

/// Largest `n` at which generators re-check clique-freeness on build.
pub const CLIQUE_CHECK_MAX_N: usize = 12;

impl LabeledConstruction {
    /// Re-derives the planted structure from the graph.
    pub fn validate(&self) -> Result<(), String> {
        let g = &self.graph;
        let md = &self.metadata;
        if g.n() != md.n {
            return Err(format!("graph has {} vertices, metadata says {}", g.n(), md.n));
        }
        match md.kind {
            ConstructionKind::Turan => {
                let partition = TuranPartition::new(md.n, md.k).map_err(|e| e.to_string())?;
                check_parts(md.n, &partition, &md.parts)?;
                let part_of = part_index(md.n, &md.parts);
                for u in 0..md.n {
                    for v in u + 1..md.n {
                        if g.has_edge(u, v) != (part_of[u] != part_of[v]) {
                            return Err(format!("edge {{{u}, {v}}} does not match the partition"));
                        }
                    }
                }
                if md.rainbow == Some(true) && g.c() != g.m() {
                    return Err("rainbow Turán graph repeats a color".into());
                }
            }
            ConstructionKind::Gk => {
                if !g.is_complete() {
                    return Err("G_k must be complete".into());
                }
                if g.c() != md.n + md.k - 1 {
                    return Err(format!("c = {}, expected n + k - 1 = {}", g.c(), md.n + md.k - 1));
                }
                let found: Vec<[usize; 3]> = list_rainbow_triangles(g).into_iter().map(|t| t.0).collect();
                if found != md.triangles || found.len() != md.k {
                    return Err(format!("rainbow triangles {found:?} differ from planted {:?}", md.triangles));
                }
                let covered: BTreeSet<usize> = found.iter().flatten().copied().collect();
                if covered.len() != 3 * found.len() {
                    return Err("rainbow triangles are not vertex-disjoint".into());
                }
            }
            ConstructionKind::Hnk | ConstructionKind::Case2Figure => {
                let partition = TuranPartition::new(md.n, md.k - 2).map_err(|e| e.to_string())?;
                check_parts(md.n, &partition, &md.parts)?;
                if !g.is_complete() {
                    return Err("graph must be complete".into());
                }
                let t = turan_number(md.n, md.k - 2).map_err(|e| e.to_string())? as usize;
                if g.c() != t + 1 {
                    return Err(format!("c = {}, expected t + 1 = {}", g.c(), t + 1));
                }
                let part_of = part_index(md.n, &md.parts);
                let mut cross = BTreeSet::new();
                for &(u, v, c) in g.edges() {
                    if part_of[u] != part_of[v] && !cross.insert(c) {
                        return Err(format!("cross color {c} repeats"));
                    }
                }
                let extra = md.extra_color.ok_or("missing extra color")?;
                if cross.contains(&extra) {
                    return Err("extra color appears on the Turán subgraph".into());
                }
                if md.kind == ConstructionKind::Hnk {
                    for &(u, v, c) in g.edges() {
                        if part_of[u] == part_of[v] && c != extra {
                            return Err(format!("intra edge {{{u}, {v}}} has color {c}, expected {extra}"));
                        }
                    }
                } else {
                    for r in &md.reused {
                        if g.color(r.edge.0, r.edge.1) != Some(r.color)
                            || g.color(r.source.0, r.source.1) != Some(r.color)
                        {
                            return Err(format!("reused color record {r:?} does not match the graph"));
                        }
                    }
                }
                if md.n <= CLIQUE_CHECK_MAX_N && !enumerate_rainbow_cliques(g, md.k, Some(1)).is_empty() {
                    return Err(format!("contains a rainbow K_{}", md.k));
                }
            }
            ConstructionKind::RecoloredG1 => {
                let found: Vec<[usize; 3]> = list_rainbow_triangles(g).into_iter().map(|t| t.0).collect();
                if found != md.triangles || found.len() != 1 {
                    return Err(format!("expected exactly the planted rainbow triangle, found {found:?}"));
                }
                let sum_dc = g.degree_profile().sum_color_degree() as u64;
                if sum_dc < choose2(md.n as u64 + 1) {
                    return Err(format!("color-degree sum {sum_dc} below C(n+1, 2)"));
                }
            }
        }
        Ok(())
    }

    fn checked(self) -> Result<Self> {
        self.validate().map_err(Error::Construction)?;
        Ok(self)
    }
}

fn check_parts(n: usize, partition: &TuranPartition, parts: &[Vec<usize>]) -> Result<(), String> {
    let mut all: Vec<usize> = parts.iter().flatten().copied().collect();
    all.sort_unstable();
    if all != (0..n).collect::<Vec<_>>() || !partition.matches(parts) {
        return Err(format!("parts {parts:?} are not a Turán partition {:?}", partition.sizes));
    }
    Ok(())
}

pub(crate) fn part_index(n: usize, parts: &[Vec<usize>]) -> Vec<usize> {
    let mut part_of = vec![usize::MAX; n];
    for (j, part) in parts.iter().enumerate() {
        for &v in part {
            part_of[v] = j;
        }
    }
    part_of
}

/// The Turán graph `T_{n,k}` on consecutive vertex blocks. With `rainbow`,
/// edges get colors `0..t(n,k)` in edge order; otherwise all use color 0.
pub fn turan_graph(n: usize, k: usize, rainbow: bool) -> Result<LabeledConstruction> {
    let partition = TuranPartition::new(n, k)?;
    let parts = partition.blocks();
    let part_of = part_index(n, &parts);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] != part_of[v] {
                let color = if rainbow { edges.len() as u32 } else { 0 };
                edges.push((u, v, ColorId(color)));
            }
        }
    }
    let mut metadata = ConstructionMetadata::new(ConstructionKind::Turan, n, k);
    metadata.rainbow = Some(rainbow);
    metadata.parts = parts;
    LabeledConstruction { graph: EdgeColoredGraph::build(n, edges)?, metadata }.checked()
}

/// The complete graph `G_k` on `n >= 3k` vertices with exactly `k` rainbow
/// triangles and `n + k - 1` colors.
///
/// Vertices `0..n-3k` form `G_0`, where edge `{i, j}` (`i < j`) has color `i`.
/// Each following step appends three vertices spanning a rainbow triangle in
/// three fresh colors and joins them to everything before in one more fresh
/// color; there is no join when nothing came before.
pub fn build_gk(n: usize, k: usize) -> Result<LabeledConstruction> {
    if n < 3 * k {
        return Err(precondition(format!("n < 3k (n = {n}, k = {k})")));
    }
    if n == 0 {
        return Err(precondition("n = 0"));
    }
    let base = n - 3 * k;
    let mut color = vec![vec![0u32; n]; n];
    for (i, row) in color.iter_mut().enumerate().take(base) {
        for cell in row.iter_mut().take(base).skip(i + 1) {
            *cell = i as u32;
        }
    }
    let mut next = base.saturating_sub(1) as u32;
    let mut metadata = ConstructionMetadata::new(ConstructionKind::Gk, n, k);
    for step in 0..k {
        let start = base + 3 * step;
        let [a, b, c] = [start, start + 1, start + 2];
        for (u, v) in [(a, b), (a, c), (b, c)] {
            color[u][v] = next;
            next += 1;
        }
        if start > 0 {
            for row in color.iter_mut().take(start) {
                row[a..=c].fill(next);
            }
            metadata.join_colors.push(ColorId(next));
            next += 1;
        }
        metadata.triangles.push([a, b, c]);
    }
    let graph = EdgeColoredGraph::complete_with(n, |u, v| ColorId(color[u][v]))?;
    LabeledConstruction { graph, metadata }.checked()
}

/// `H_{n,k-2}`: a rainbow `T_{n,k-2}` (colors `0..t` in edge order) with every
/// edge inside a part colored `t`. Requires `n >= k >= 4`.
pub fn build_hnk(n: usize, k: usize) -> Result<LabeledConstruction> {
    if k < 4 {
        return Err(precondition(format!("k = {k} < 4")));
    }
    if n < k {
        return Err(precondition(format!("n < k (n = {n}, k = {k})")));
    }
    let turan = turan_graph(n, k - 2, true)?;
    let t = turan.graph.m() as u32;
    let part_of = part_index(n, &turan.metadata.parts);
    let mut edges = turan.graph.edges().to_vec();
    for u in 0..n {
        for v in u + 1..n {
            if part_of[u] == part_of[v] {
                edges.push((u, v, ColorId(t)));
            }
        }
    }
    let mut metadata = ConstructionMetadata::new(ConstructionKind::Hnk, n, k);
    metadata.parts = turan.metadata.parts;
    metadata.extra_color = Some(ColorId(t));
    LabeledConstruction { graph: EdgeColoredGraph::build(n, edges)?, metadata }.checked()
}

/// The case (II) example on 8 vertices for `k = 7`: parts `{0,1} {2,3} {4,5}
/// {6} {7}` carry a rainbow `T_{8,5}`; one pair edge takes the single extra
/// color, the other two reuse colors of edges from their own pair to a
/// singleton part. Among all such choices the lexicographically first one
/// (by fresh pair, then reused colors) without a rainbow `K_7` is returned.
pub fn build_case2_figure(n: usize, k: usize) -> Result<LabeledConstruction> {
    if (n, k) != (8, 7) {
        return Err(precondition(format!("only (n, k) = (8, 7) is supported, got ({n}, {k})")));
    }
    let turan = turan_graph(n, k - 2, true)?;
    let parts = turan.metadata.parts.clone();
    let pairs: Vec<(usize, usize)> = parts.iter().filter(|p| p.len() == 2).map(|p| (p[0], p[1])).collect();
    let singletons: Vec<usize> = parts.iter().filter(|p| p.len() == 1).map(|p| p[0]).collect();
    let fresh = ColorId(turan.graph.m() as u32);

    // Candidate (color, source edge) pairs for a pair's intra edge.
    let candidates = |&(a, b): &(usize, usize)| {
        let mut c: Vec<(ColorId, (usize, usize))> = [a, b]
            .iter()
            .flat_map(|&x| singletons.iter().map(move |&s| (x.min(s), x.max(s))))
            .map(|(u, v)| (turan.graph.color(u, v).expect("cross edge"), (u, v)))
            .collect();
        c.sort_unstable();
        c
    };

    for fresh_pair in 0..pairs.len() {
        let others: Vec<(usize, usize)> =
            pairs.iter().enumerate().filter(|&(j, _)| j != fresh_pair).map(|(_, &p)| p).collect();
        let options: Vec<_> = others.iter().map(candidates).collect();
        let mut choice = vec![0usize; others.len()];
        loop {
            let mut edges = turan.graph.edges().to_vec();
            let (fa, fb) = pairs[fresh_pair];
            edges.push((fa, fb, fresh));
            let mut reused = Vec::new();
            for (j, &(a, b)) in others.iter().enumerate() {
                let (color, source) = options[j][choice[j]];
                edges.push((a, b, color));
                reused.push(ReusedColor { edge: (a, b), color, source });
            }
            let graph = EdgeColoredGraph::build(n, edges)?;
            if enumerate_rainbow_cliques(&graph, k, Some(1)).is_empty() {
                let mut metadata = ConstructionMetadata::new(ConstructionKind::Case2Figure, n, k);
                metadata.parts = parts;
                metadata.extra_color = Some(fresh);
                metadata.reused = reused;
                return LabeledConstruction { graph, metadata }.checked();
            }
            if !advance(&mut choice, &options.iter().map(Vec::len).collect::<Vec<_>>()) {
                break;
            }
        }
    }
    Err(Error::Construction("no reuse assignment avoids a rainbow K_7".into()))
}

/// Odometer step, last position fastest. Returns false after the last tuple.
fn advance(choice: &mut [usize], lens: &[usize]) -> bool {
    for pos in (0..choice.len()).rev() {
        choice[pos] += 1;
        if choice[pos] < lens[pos] {
            return true;
        }
        choice[pos] = 0;
    }
    false
}

/// `G_1` with the edges from each of the first `n - 4` base vertices to the
/// rainbow triangle recolored with that vertex's own base color. The color
/// degrees sum to at least `C(n+1, 2)` while only one rainbow triangle
/// remains. Requires `n >= 7`.
pub fn recolored_g1(n: usize) -> Result<LabeledConstruction> {
    if n < 7 {
        return Err(precondition(format!("n < 7 (n = {n})")));
    }
    let g1 = build_gk(n, 1)?;
    let triangle = g1.metadata.triangles[0];
    let mut graph = g1.graph;
    for v in 0..n - 4 {
        for &x in &triangle {
            graph = graph.recolor_edge(v, x, ColorId(v as u32))?;
        }
    }
    let mut metadata = ConstructionMetadata::new(ConstructionKind::RecoloredG1, n, 1);
    metadata.triangles = vec![triangle];
    LabeledConstruction { graph, metadata }.checked()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rainbow::count_rainbow_triangles;

    #[test]
    fn turan_partition_shape() {
        let p = TuranPartition::new(11, 5).unwrap();
        assert_eq!(p.sizes, vec![3, 2, 2, 2, 2]);
        assert_eq!((p.p(), p.i()), (2, 1));
        assert!(TuranPartition::new(3, 4).is_err());
        assert!(TuranPartition::new(3, 0).is_err());
    }

    #[test]
    fn turan_values() {
        // Edge counts of the partitions 3+2+2+2+2, 2+2+2+1+1, 3+3+2+2.
        assert_eq!(turan_number(11, 5).unwrap(), 55 - 7);
        assert_eq!(turan_number(8, 5).unwrap(), 28 - 3);
        assert_eq!(turan_number(10, 4).unwrap(), 45 - 8);
        assert_eq!(turan_number(7, 7).unwrap(), 21);
        assert_eq!(turan_diff(10, 5).unwrap(), 8);
        assert_eq!(turan_diff(6, 6).unwrap(), 5);
        assert!(turan_number(4, 5).is_err());
    }

    #[test]
    fn turan_graph_c4() {
        let t = turan_graph(4, 2, false).unwrap();
        assert_eq!((t.graph.m(), t.graph.c()), (4, 1));
        let t = turan_graph(10, 4, true).unwrap();
        assert_eq!((t.graph.m(), t.graph.c()), (37, 37));
    }

    #[test]
    fn gk_figure_one() {
        let g = build_gk(10, 2).unwrap();
        assert_eq!((g.graph.m(), g.graph.c()), (45, 11));
        assert_eq!(g.metadata.triangles, vec![[4, 5, 6], [7, 8, 9]]);
        assert_eq!(g.metadata.join_colors.len(), 2);
    }

    #[test]
    fn gk_boundaries() {
        let g = build_gk(6, 0).unwrap();
        assert_eq!(g.graph.c(), 5);
        assert_eq!(count_rainbow_triangles(&g.graph), 0);
        let g = build_gk(3, 1).unwrap();
        assert_eq!(g.graph.c(), 3);
        assert!(g.metadata.join_colors.is_empty());
        // n = 3k and n = 3k + 1: c = n + k - 1 still holds.
        assert_eq!(build_gk(9, 3).unwrap().graph.c(), 11);
        assert_eq!(build_gk(10, 3).unwrap().graph.c(), 12);
        assert_eq!(build_gk(1, 0).unwrap().graph.c(), 0);
        let err = build_gk(5, 2).unwrap_err();
        assert!(err.to_string().contains("n < 3k"), "{err}");
    }

    #[test]
    fn hnk_shapes() {
        let h = build_hnk(11, 7).unwrap();
        assert_eq!((h.graph.m(), h.graph.c()), (55, 49));
        let h = build_hnk(7, 7).unwrap();
        assert_eq!(h.graph.c(), 21 - 1);
        assert!(build_hnk(5, 7).is_err());
        assert!(build_hnk(5, 3).is_err());
    }

    #[test]
    fn case2_figure() {
        let f = build_case2_figure(8, 7).unwrap();
        assert_eq!((f.graph.m(), f.graph.c()), (28, 26));
        assert_eq!(f.metadata.reused.len(), 2);
        assert!(build_case2_figure(9, 7).is_err());
    }

    #[test]
    fn recolored_g1_has_one_triangle() {
        for n in 7..=9 {
            let g = recolored_g1(n).unwrap();
            assert_eq!(count_rainbow_triangles(&g.graph), 1);
        }
        assert!(recolored_g1(6).is_err());
    }

    #[test]
    fn metadata_serializes_kebab_case() {
        let js = serde_json::to_string(&build_gk(3, 1).unwrap().metadata).unwrap();
        assert!(js.starts_with("{\"kind\":\"gk\""), "{js}");
    }
}
