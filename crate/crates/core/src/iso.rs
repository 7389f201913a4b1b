//! Isomorphism of edge-colored graphs up to vertex permutation and color
//! renaming.
//!
//! Vertices are first split by invariants that survive color renaming
//! (degree, color degree, sizes of the incident color classes), the split is
//! refined a few rounds over neighbor labels, and the remaining choices are
//! resolved by backtracking that maintains a partial color bijection.

use crate::graph::EdgeColoredGraph;

const UNSET: u32 = u32::MAX;

fn class_sizes(g: &EdgeColoredGraph) -> Vec<usize> {
    let mut sizes = vec![0usize; g.c()];
    for v in 0..g.n() {
        for &(w, r) in g.ranked_neighbors(v) {
            if v < w {
                sizes[r as usize] += 1;
            }
        }
    }
    sizes
}

/// Labels both graphs' vertices with jointly ranked refinement classes so that
/// label equality across the graphs is meaningful.
fn joint_labels(a: &EdgeColoredGraph, b: &EdgeColoredGraph) -> (Vec<usize>, Vec<usize>) {
    let sizes = [class_sizes(a), class_sizes(b)];
    let graphs = [a, b];
    let initial = |gi: usize, v: usize| -> Vec<usize> {
        let g = graphs[gi];
        let mut per_color: Vec<(usize, usize)> = Vec::new();
        let mut ranks: Vec<u32> = g.ranked_neighbors(v).iter().map(|&(_, r)| r).collect();
        ranks.sort_unstable();
        for chunk in ranks.chunk_by(|x, y| x == y) {
            per_color.push((sizes[gi][chunk[0] as usize], chunk.len()));
        }
        per_color.sort_unstable();
        let mut key = vec![g.degree(v), per_color.len()];
        key.extend(per_color.into_iter().flat_map(|(s, k)| [s, k]));
        key
    };
    let mut keys: Vec<Vec<Vec<usize>>> =
        (0..2).map(|gi| (0..graphs[gi].n()).map(|v| initial(gi, v)).collect()).collect();
    let mut labels = rank_jointly(&keys);
    for _ in 0..3 {
        keys = (0..2)
            .map(|gi| {
                let g = graphs[gi];
                (0..g.n())
                    .map(|v| {
                        let mut around: Vec<(usize, usize)> = g
                            .ranked_neighbors(v)
                            .iter()
                            .map(|&(w, r)| (labels[gi][w], sizes[gi][r as usize]))
                            .collect();
                        around.sort_unstable();
                        let mut key = vec![labels[gi][v]];
                        key.extend(around.into_iter().flat_map(|(l, s)| [l, s]));
                        key
                    })
                    .collect()
            })
            .collect();
        let refined = rank_jointly(&keys);
        let classes = |ls: &[Vec<usize>]| ls.iter().flatten().collect::<std::collections::BTreeSet<_>>().len();
        let done = classes(&refined) == classes(&labels);
        labels = refined;
        if done {
            break;
        }
    }
    let mut it = labels.into_iter();
    (it.next().unwrap(), it.next().unwrap())
}

fn rank_jointly(keys: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let mut all: Vec<&Vec<usize>> = keys.iter().flatten().collect();
    all.sort();
    all.dedup();
    keys.iter().map(|ks| ks.iter().map(|k| all.binary_search(&k).unwrap()).collect()).collect()
}

struct Matcher<'a> {
    a: &'a EdgeColoredGraph,
    b: &'a EdgeColoredGraph,
    order: Vec<usize>,
    label_a: Vec<usize>,
    label_b: Vec<usize>,
    map: Vec<usize>,
    used_b: Vec<bool>,
    color_fwd: Vec<u32>,
    color_bwd: Vec<u32>,
}

impl Matcher<'_> {
    fn search(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        for y in 0..self.b.n() {
            if self.used_b[y] || self.label_b[y] != self.label_a[x] {
                continue;
            }
            let mut bound = Vec::new();
            let mut ok = true;
            for &x2 in &self.order[..depth] {
                let y2 = self.map[x2];
                match (self.a.color_rank(x, x2), self.b.color_rank(y, y2)) {
                    (None, None) => {}
                    (Some(ra), Some(rb)) => {
                        let (fa, fb) = (self.color_fwd[ra], self.color_bwd[rb]);
                        if fa == UNSET && fb == UNSET {
                            self.color_fwd[ra] = rb as u32;
                            self.color_bwd[rb] = ra as u32;
                            bound.push((ra, rb));
                        } else if fa != rb as u32 || fb != ra as u32 {
                            ok = false;
                        }
                    }
                    _ => ok = false,
                }
                if !ok {
                    break;
                }
            }
            if ok {
                self.map[x] = y;
                self.used_b[y] = true;
                if self.search(depth + 1) {
                    return true;
                }
                self.used_b[y] = false;
            }
            for (ra, rb) in bound {
                self.color_fwd[ra] = UNSET;
                self.color_bwd[rb] = UNSET;
            }
        }
        false
    }
}

/// A vertex map `a -> b` under which edges and color classes correspond.
pub fn find_isomorphism(a: &EdgeColoredGraph, b: &EdgeColoredGraph) -> Option<Vec<usize>> {
    if a.n() != b.n() || a.m() != b.m() || a.c() != b.c() {
        return None;
    }
    let (mut sa, mut sb) = (class_sizes(a), class_sizes(b));
    sa.sort_unstable();
    sb.sort_unstable();
    if sa != sb {
        return None;
    }
    let (label_a, label_b) = joint_labels(a, b);
    let (mut la, mut lb) = (label_a.clone(), label_b.clone());
    la.sort_unstable();
    lb.sort_unstable();
    if la != lb {
        return None;
    }
    // Rarest labels first, then by adjacency to already ordered vertices.
    let mut freq = vec![0usize; label_a.iter().max().map_or(0, |m| m + 1)];
    for &l in &label_a {
        freq[l] += 1;
    }
    let mut order: Vec<usize> = Vec::with_capacity(a.n());
    let mut placed = vec![false; a.n()];
    while order.len() < a.n() {
        let next = (0..a.n())
            .filter(|&v| !placed[v])
            .min_by_key(|&v| {
                let links = order.iter().filter(|&&u| a.has_edge(u, v)).count();
                (freq[label_a[v]], std::cmp::Reverse(links), v)
            })
            .unwrap();
        placed[next] = true;
        order.push(next);
    }
    let mut m = Matcher {
        a,
        b,
        order,
        label_a,
        label_b,
        map: vec![usize::MAX; a.n()],
        used_b: vec![false; b.n()],
        color_fwd: vec![UNSET; a.c()],
        color_bwd: vec![UNSET; b.c()],
    };
    m.search(0).then_some(m.map)
}

pub fn colored_isomorphic(a: &EdgeColoredGraph, b: &EdgeColoredGraph) -> bool {
    find_isomorphism(a, b).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColorId;

    fn path(colors: &[u32]) -> EdgeColoredGraph {
        EdgeColoredGraph::build(colors.len() + 1, colors.iter().enumerate().map(|(i, &c)| (i, i + 1, ColorId(c))))
            .unwrap()
    }

    #[test]
    fn renamed_and_permuted_copies_match() {
        let g = path(&[0, 0, 1, 2]);
        let h = g.permute_vertices(&[4, 2, 0, 1, 3]).unwrap().map_colors(|c| ColorId(10 - c.0));
        let map = find_isomorphism(&g, &h).unwrap();
        for &(u, v, _) in g.edges() {
            assert!(h.has_edge(map[u], map[v]));
        }
    }

    #[test]
    fn color_pattern_matters() {
        assert!(!colored_isomorphic(&path(&[0, 0, 1]), &path(&[0, 0, 0])));
        assert!(!colored_isomorphic(&path(&[0, 1, 0]), &path(&[0, 0, 1])));
        assert!(colored_isomorphic(&path(&[0, 0, 1]), &path(&[1, 0, 0])));
    }
}
