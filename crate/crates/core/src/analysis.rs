//! One-shot summary of a colored graph against the triangle and clique bounds.

use serde::{Deserialize, Serialize};

use crate::constructions::turan_number;
use crate::graph::{choose2, EdgeColoredGraph};
use crate::rainbow::{
    guaranteed_triangles_colordeg, guaranteed_triangles_mc, has_rainbow_clique, list_rainbow_triangles,
};

/// Default largest clique size probed by [`analyze`].
pub const DEFAULT_MAX_K: usize = 7;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Threshold {
    pub k: usize,
    pub threshold: u64,
    /// Statistic minus threshold; zero means met with equality.
    pub margin: i64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CliqueProbe {
    pub k: usize,
    pub rainbow: bool,
    /// `m+c` against `C(n,2) + t(n,k-2) + 2`.
    pub t5: Threshold,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Analysis {
    pub n: usize,
    pub m: usize,
    pub c: usize,
    pub m_plus_c: u64,
    pub sum_color_degree: u64,
    pub sum_saturated_degree: u64,
    pub complete: bool,
    pub rainbow_triangles: usize,
    pub rainbow_triangle_list: Vec<[usize; 3]>,
    /// `m+c` against `C(n+1,2) + k - 1`, for `k` up to one past the count.
    pub t2: Vec<Threshold>,
    /// Color-degree sum against the same thresholds.
    pub t4: Vec<Threshold>,
    pub guaranteed_triangles_mc: u64,
    pub guaranteed_triangles_colordeg: u64,
    /// `k = 4..=max_k` with `k <= n`.
    pub cliques: Vec<CliqueProbe>,
}

pub fn analyze(g: &EdgeColoredGraph, max_k: usize) -> Analysis {
    let n = g.n();
    let profile = g.degree_profile();
    let s = (g.m() + g.c()) as u64;
    let sdc = profile.sum_color_degree() as u64;
    let triangles: Vec<[usize; 3]> = list_rainbow_triangles(g).into_iter().map(|t| t.0).collect();
    let c1 = choose2(n as u64 + 1);
    let against = |stat: u64| -> Vec<Threshold> {
        (1..=triangles.len() + 1)
            .map(|k| {
                let threshold = c1 + k as u64 - 1;
                Threshold { k, threshold, margin: stat as i64 - threshold as i64 }
            })
            .collect()
    };
    let cliques = (4..=max_k.min(n))
        .map(|k| {
            let threshold = choose2(n as u64) + turan_number(n, k - 2).expect("2 <= k - 2 <= n") + 2;
            CliqueProbe {
                k,
                rainbow: has_rainbow_clique(g, k),
                t5: Threshold { k, threshold, margin: s as i64 - threshold as i64 },
            }
        })
        .collect();
    Analysis {
        n,
        m: g.m(),
        c: g.c(),
        m_plus_c: s,
        sum_color_degree: sdc,
        sum_saturated_degree: profile.sum_saturated_degree() as u64,
        complete: g.is_complete(),
        rainbow_triangles: triangles.len(),
        t2: against(s),
        t4: against(sdc),
        rainbow_triangle_list: triangles,
        guaranteed_triangles_mc: guaranteed_triangles_mc(n as u64, g.m() as u64, g.c() as u64),
        guaranteed_triangles_colordeg: guaranteed_triangles_colordeg(n as u64, sdc),
        cliques,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::{build_gk, build_hnk};

    #[test]
    fn figure_one_numbers() {
        let a = analyze(&build_gk(10, 2).unwrap().graph, DEFAULT_MAX_K);
        assert_eq!((a.m_plus_c, a.rainbow_triangles), (56, 2));
        assert_eq!(a.t2[1], Threshold { k: 2, threshold: 56, margin: 0 });
        assert_eq!(a.t2[2].margin, -1);
    }

    #[test]
    fn empty_graph_is_all_zero() {
        let a = analyze(&EdgeColoredGraph::empty(0).unwrap(), DEFAULT_MAX_K);
        assert_eq!((a.n, a.m, a.c, a.m_plus_c, a.rainbow_triangles), (0, 0, 0, 0, 0));
        assert!(a.cliques.is_empty());
    }

    #[test]
    fn hnk_sits_one_below_t5() {
        let a = analyze(&build_hnk(11, 7).unwrap().graph, 7);
        let last = a.cliques.last().unwrap();
        assert_eq!(last.k, 7);
        assert!(!last.rainbow);
        assert_eq!(last.t5.margin, -1);
    }
}
