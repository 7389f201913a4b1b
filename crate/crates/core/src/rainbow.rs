//! Rainbow triangles and rainbow cliques, and the closed-form lower bounds on
//! how many of them a graph must contain.

use serde::{Deserialize, Serialize};

use crate::constructions::turan_number;
use crate::error::{precondition, Result};
use crate::graph::{choose2, EdgeColoredGraph};

/// Vertex triple of a rainbow triangle, sorted increasingly.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RainbowTriangle(pub [usize; 3]);

/// Vertex set of a rainbow `K_k`, sorted increasingly.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct RainbowClique(pub Vec<usize>);

impl RainbowClique {
    pub fn k(&self) -> usize {
        self.0.len()
    }
}

/// Calls `f` on every rainbow triangle in lexicographic order.
fn for_each_rainbow_triangle<F: FnMut([usize; 3])>(g: &EdgeColoredGraph, mut f: F) {
    let n = g.n();
    let rank = |a, b| g.color_rank(a, b).expect("edge present");
    if n <= crate::graph::MAX_BITSET_VERTICES {
        for u in 0..n {
            let above_u = g.neighbor_mask(u).unwrap() & !low_bits(u + 1);
            let mut vs = above_u;
            while vs != 0 {
                let v = vs.trailing_zeros() as usize;
                vs &= vs - 1;
                let ruv = rank(u, v);
                let mut ws = above_u & g.neighbor_mask(v).unwrap() & !low_bits(v + 1);
                while ws != 0 {
                    let w = ws.trailing_zeros() as usize;
                    ws &= ws - 1;
                    let (ruw, rvw) = (rank(u, w), rank(v, w));
                    if ruv != ruw && ruv != rvw && ruw != rvw {
                        f([u, v, w]);
                    }
                }
            }
        }
    } else {
        for u in 0..n {
            let nu = g.ranked_neighbors(u);
            for (i, &(v, ruv)) in nu.iter().enumerate() {
                if v < u {
                    continue;
                }
                let nv = g.ranked_neighbors(v);
                // Merge the two sorted lists beyond v.
                let (mut a, mut b) = (i + 1, nv.partition_point(|&(x, _)| x <= v));
                while a < nu.len() && b < nv.len() {
                    let ((wa, ruw), (wb, rvw)) = (nu[a], nv[b]);
                    match wa.cmp(&wb) {
                        std::cmp::Ordering::Less => a += 1,
                        std::cmp::Ordering::Greater => b += 1,
                        std::cmp::Ordering::Equal => {
                            if ruv != ruw && ruv != rvw && ruw != rvw {
                                f([u, v, wa]);
                            }
                            a += 1;
                            b += 1;
                        }
                    }
                }
            }
        }
    }
}

#[inline]
fn low_bits(k: usize) -> u64 {
    if k >= 64 {
        u64::MAX
    } else {
        (1u64 << k) - 1
    }
}

/// Number of rainbow triangles.
pub fn count_rainbow_triangles(g: &EdgeColoredGraph) -> usize {
    let mut count = 0;
    for_each_rainbow_triangle(g, |_| count += 1);
    count
}

/// All rainbow triangles, sorted lexicographically.
pub fn list_rainbow_triangles(g: &EdgeColoredGraph) -> Vec<RainbowTriangle> {
    let mut out = Vec::new();
    for_each_rainbow_triangle(g, |t| out.push(RainbowTriangle(t)));
    out
}

struct CliqueSearch<'a> {
    g: &'a EdgeColoredGraph,
    k: usize,
    limit: usize,
    used: Vec<bool>,
    clique: Vec<usize>,
    found: Vec<RainbowClique>,
}

impl CliqueSearch<'_> {
    /// Returns false once the limit is reached.
    fn extend(&mut self, candidates: &[usize]) -> bool {
        if self.clique.len() == self.k {
            self.found.push(RainbowClique(self.clique.clone()));
            return self.found.len() < self.limit;
        }
        let mut added = Vec::with_capacity(self.clique.len());
        for (idx, &w) in candidates.iter().enumerate() {
            if self.clique.len() + (candidates.len() - idx) < self.k {
                break;
            }
            added.clear();
            let mut fits = true;
            for &x in &self.clique {
                let r = self.g.color_rank(x, w).expect("candidates are adjacent to the clique");
                if self.used[r] {
                    fits = false;
                    break;
                }
                self.used[r] = true;
                added.push(r);
            }
            let mut keep_going = true;
            if fits {
                let next: Vec<usize> =
                    candidates[idx + 1..].iter().copied().filter(|&y| self.g.has_edge(w, y)).collect();
                self.clique.push(w);
                keep_going = self.extend(&next);
                self.clique.pop();
            }
            for &r in &added {
                self.used[r] = false;
            }
            if !keep_going {
                return false;
            }
        }
        true
    }
}

/// Rainbow `K_k`s in lexicographic order of their sorted vertex sets.
///
/// With `limit`, stops after that many (the lexicographically first ones).
/// The search extends partial cliques in increasing vertex order, keeping
/// only vertices adjacent to the whole clique whose connecting colors avoid
/// the colors already used.
pub fn enumerate_rainbow_cliques(g: &EdgeColoredGraph, k: usize, limit: Option<usize>) -> Vec<RainbowClique> {
    let limit = limit.unwrap_or(usize::MAX);
    if limit == 0 || k > g.n() || (choose2(k as u64) as usize) > g.c() {
        return Vec::new();
    }
    let mut search =
        CliqueSearch { g, k, limit, used: vec![false; g.c()], clique: Vec::with_capacity(k), found: Vec::new() };
    let all: Vec<usize> = (0..g.n()).collect();
    search.extend(&all);
    search.found
}

/// Number of rainbow `K_k`s.
pub fn count_rainbow_cliques(g: &EdgeColoredGraph, k: usize) -> usize {
    enumerate_rainbow_cliques(g, k, None).len()
}

pub fn has_rainbow_clique(g: &EdgeColoredGraph, k: usize) -> bool {
    !enumerate_rainbow_cliques(g, k, Some(1)).is_empty()
}

fn clamp(x: i128) -> u64 {
    x.max(0) as u64
}

/// Rainbow triangles forced by `m + c >= C(n+1, 2) + k - 1`: the largest
/// such `k`, or 0 below the threshold.
pub fn guaranteed_triangles_mc(n: u64, m: u64, c: u64) -> u64 {
    clamp(m as i128 + c as i128 - choose2(n + 1) as i128 + 1)
}

/// Rainbow triangles forced by a color-degree sum of `sum_dc`.
pub fn guaranteed_triangles_colordeg(n: u64, sum_dc: u64) -> u64 {
    clamp(sum_dc as i128 - choose2(n + 1) as i128 + 1)
}

/// Rainbow `K_k`s forced by `m + c >= C(n, 2) + t(n, k-2) + 2l`: the largest
/// such `l`, or 0. Requires `n >= k >= 4`.
pub fn guaranteed_cliques_mc(n: u64, k: u64, m: u64, c: u64) -> Result<u64> {
    if k < 4 {
        return Err(precondition(format!("k = {k} < 4")));
    }
    if n < k {
        return Err(precondition(format!("n = {n} < k = {k}")));
    }
    let t = turan_number(n as usize, (k - 2) as usize)?;
    let slack = m as i128 + c as i128 - choose2(n) as i128 - t as i128;
    Ok(clamp(slack.div_euclid(2)))
}

/// `C(n, 2) + t(n, k-2) + 2`: the edge-plus-color count forcing a rainbow `K_k`.
pub fn clique_threshold(n: u64, k: u64) -> Result<u64> {
    if k < 4 || n < k {
        return Err(precondition(format!("need n >= k >= 4, got n = {n}, k = {k}")));
    }
    Ok(choose2(n) + turan_number(n as usize, (k - 2) as usize)? + 2)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::ColorId;

    fn rainbow_complete(n: usize) -> EdgeColoredGraph {
        let mut next = 0;
        EdgeColoredGraph::complete_with(n, |_, _| {
            next += 1;
            ColorId(next)
        })
        .unwrap()
    }

    #[test]
    fn triangles_basic() {
        let g = rainbow_complete(3);
        assert_eq!(count_rainbow_triangles(&g), 1);
        assert_eq!(list_rainbow_triangles(&g), vec![RainbowTriangle([0, 1, 2])]);
        let mono = EdgeColoredGraph::complete_with(6, |_, _| ColorId(0)).unwrap();
        assert_eq!(count_rainbow_triangles(&mono), 0);
        assert_eq!(count_rainbow_triangles(&rainbow_complete(6)), 20);
    }

    #[test]
    fn triangles_large_graph_uses_list_path() {
        let n = 70;
        let g = rainbow_complete(n);
        assert_eq!(count_rainbow_triangles(&g), n * (n - 1) * (n - 2) / 6);
    }

    #[test]
    fn rainbow_k6_single_clique() {
        let g = rainbow_complete(6);
        assert_eq!(enumerate_rainbow_cliques(&g, 6, None), vec![RainbowClique((0..6).collect())]);
        assert_eq!(count_rainbow_cliques(&g, 4), 15);
        assert_eq!(enumerate_rainbow_cliques(&g, 4, Some(2)).len(), 2);
        assert!(enumerate_rainbow_cliques(&g, 7, None).is_empty());
    }

    #[test]
    fn clique_k3_matches_triangles() {
        let g = EdgeColoredGraph::build(
            4,
            [(0, 1, ColorId(0)), (0, 2, ColorId(1)), (1, 2, ColorId(2)), (1, 3, ColorId(0)), (2, 3, ColorId(0))],
        )
        .unwrap();
        let tri: Vec<Vec<usize>> = list_rainbow_triangles(&g).iter().map(|t| t.0.to_vec()).collect();
        let cl: Vec<Vec<usize>> = enumerate_rainbow_cliques(&g, 3, None).into_iter().map(|c| c.0).collect();
        assert_eq!(tri, cl);
    }

    #[test]
    fn guarantee_formulas() {
        assert_eq!(guaranteed_triangles_mc(5, 10, 5), 1);
        assert_eq!(guaranteed_triangles_mc(10, 45, 11), 2);
        assert_eq!(guaranteed_triangles_mc(5, 4, 3), 0);
        assert_eq!(guaranteed_triangles_colordeg(5, 15), 1);
        assert_eq!(guaranteed_triangles_colordeg(5, 14), 0);
        // C(11,2) = 55, so 57 - 55 + 1.
        assert_eq!(guaranteed_triangles_colordeg(10, 57), 3);
        assert_eq!(guaranteed_cliques_mc(11, 7, 55, 51).unwrap(), 1);
        assert_eq!(guaranteed_cliques_mc(11, 7, 55, 49).unwrap(), 0);
        assert_eq!(guaranteed_cliques_mc(11, 7, 0, 0).unwrap(), 0);
        assert!(guaranteed_cliques_mc(5, 7, 0, 0).is_err());
        assert_eq!(clique_threshold(11, 7).unwrap(), 55 + 48 + 2);
    }
}
