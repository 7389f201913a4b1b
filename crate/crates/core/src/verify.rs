//! Replays the theorems and lemmas as implications over exhaustive and
//! sampled instance sets.
//!
//! Small `n` is swept exhaustively: every coloring of `K_n` up to color
//! renaming, and optionally every coloring of every spanning subgraph. Larger
//! `n` is sampled from seeded generators. Sweeps are split into units that
//! are checked in parallel and merged in unit order, so reports do not depend
//! on the number of workers.

pub mod enumerate;
pub mod sampling;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::characterize::{find_rainbow_spanning_turan, is_in_gk, is_in_hk};
use crate::constructions::{build_gk, build_hnk, recolored_g1, turan_number};
use crate::error::{precondition, Error, Result};
use crate::graph::{choose2, EdgeColoredGraph, OrientedGraph};
use crate::io::{parse_digraph, parse_edgelist, write_digraph, write_edgelist};
use crate::rainbow::{count_rainbow_triangles, enumerate_rainbow_cliques, has_rainbow_clique, list_rainbow_triangles};
use crate::transform::{
    associated_colored_graph, directed_triangles, guaranteed_directed_triangles, out_component_sum,
};

pub use enumerate::{
    bell, coloring_count, enumerate_colorings, stirling2, ColorConstraint, ColoringEnumerator, DEFAULT_BUDGET,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TheoremId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    L1,
    L2,
    L3,
    L4,
    L5,
    P1,
}

impl TheoremId {
    pub const ALL: [TheoremId; 12] = [
        TheoremId::T1,
        TheoremId::T2,
        TheoremId::T3,
        TheoremId::T4,
        TheoremId::T5,
        TheoremId::T6,
        TheoremId::L1,
        TheoremId::L2,
        TheoremId::L3,
        TheoremId::L4,
        TheoremId::L5,
        TheoremId::P1,
    ];

    pub fn statement(self) -> &'static str {
        match self {
            TheoremId::T1 => "m+c >= C(n+1,2) => a rainbow triangle",
            TheoremId::T2 => "m+c >= C(n+1,2)+k-1 => k rainbow triangles",
            TheoremId::T3 => "n >= 3k, m+c >= C(n+1,2)+k-1, exactly k rainbow triangles => G in G_k",
            TheoremId::T4 => "sum d^c >= C(n+1,2)+k-1 => k rainbow triangles",
            TheoremId::T5 => "m+c >= C(n,2)+t(n,k-2)+2 => a rainbow K_k",
            TheoremId::T6 => "m+c = C(n,2)+t(n,k-2)+1, no rainbow K_k => G in H_k",
            TheoremId::L1 => "m+c >= C(n+1,2)+k-1, exactly k rainbow triangles => equality and complete",
            TheoremId::L2 => "a + sum w+ >= C(n+1,2)+k-1 => k directed triangles",
            TheoremId::L3 => "complete, c = t+1, rainbow T(n,k-2), no rainbow K_k, n/(k-2) >= 2 => one intra color",
            TheoremId::L4 => "complete, c = t+1, no rainbow K_k => rainbow spanning T(n,k-2)",
            TheoremId::L5 => "m+c = C(n,2)+t(n,k-2)+1, no rainbow K_k => complete",
            TheoremId::P1 => "m+c >= C(n,2)+t(n,k-2)+2l => l rainbow K_k",
        }
    }

    fn uses_pairs(self) -> bool {
        matches!(self, TheoremId::T6 | TheoremId::L3 | TheoremId::L4 | TheoremId::L5)
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        TheoremId::ALL
            .into_iter()
            .find(|id| id.to_string().eq_ignore_ascii_case(s))
            .ok_or_else(|| precondition(format!("unknown theorem id {s:?}")))
    }
}

/// Parameters of a verification run.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Grid {
    /// Vertex counts.
    pub n: Vec<usize>,
    /// Values of `k` (ignored by T1).
    pub k: Vec<usize>,
    /// Values of `l` for P1.
    pub ell: Vec<usize>,
    /// Explicit `(n, k)` pairs for T6 and L3-L5; when empty they are formed
    /// from `n` and `k`.
    pub pairs: Vec<(usize, usize)>,
    /// Exhaustive sweeps also range over all spanning subgraphs.
    pub noncomplete: bool,
    /// Largest `n` swept exhaustively; larger `n` is sampled.
    pub exhaustive_max_n: usize,
    /// Premise-meeting samples wanted per sampled job (instances for L2).
    pub samples: usize,
    pub seed: u64,
    /// Worker threads; 0 picks the rayon default.
    pub jobs: usize,
    /// Largest exhaustive sweep allowed.
    pub budget: u64,
}

impl Grid {
    /// Grid used when none is given.
    pub fn default_for(id: TheoremId) -> Grid {
        let mut g = Grid {
            n: (1..=5).collect(),
            k: vec![1, 2, 3],
            ell: Vec::new(),
            pairs: Vec::new(),
            noncomplete: true,
            exhaustive_max_n: 5,
            samples: 0,
            seed: 0,
            jobs: 0,
            budget: DEFAULT_BUDGET as u64,
        };
        match id {
            TheoremId::T1 => {
                g.k.clear();
                g.noncomplete = false;
            }
            TheoremId::T2 | TheoremId::L1 => {}
            TheoremId::T3 => {
                g.n = vec![3, 4, 5];
                g.k = vec![0, 1];
                g.noncomplete = false;
            }
            TheoremId::T4 => g.k = vec![1, 2],
            TheoremId::T5 => {
                g.n = (4..=9).collect();
                g.k = vec![4, 5, 6];
                g.samples = 1000;
            }
            TheoremId::T6 => {
                g.pairs = vec![(7, 6), (8, 6), (8, 7), (9, 7)];
                g.samples = 1000;
            }
            TheoremId::L2 => {
                g.n = (1..=12).collect();
                g.k.clear();
                g.samples = 10_000;
            }
            TheoremId::L3 => {
                g.pairs = vec![(8, 6), (9, 6), (10, 6)];
                g.samples = 500;
            }
            TheoremId::L4 | TheoremId::L5 => {
                g.pairs = (6..=10).map(|n| (n, 6)).chain((7..=10).map(|n| (n, 7))).collect();
                g.samples = 500;
            }
            TheoremId::P1 => {
                g.n = (4..=10).collect();
                g.k = vec![4, 5, 6];
                g.ell = vec![1, 2];
                g.noncomplete = false;
                g.samples = 1000;
            }
        }
        g
    }

    fn resolved_pairs(&self) -> Vec<(usize, usize)> {
        if !self.pairs.is_empty() {
            return self.pairs.clone();
        }
        self.n.iter().flat_map(|&n| self.k.iter().filter(move |&&k| k <= n).map(move |&k| (n, k))).collect()
    }
}

/// Parameters handed to a single instance check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckParams {
    pub k: Vec<usize>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ell: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    /// Edge list, or a digraph file for L2.
    pub instance: String,
    pub params: CheckParams,
    pub reason: String,
}

/// How one `(n, k)` slice of the grid was covered.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct JobSummary {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    pub mode: SweepMode,
    pub instances: u64,
    pub premises_met: u64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SweepMode {
    Exhaustive,
    ExhaustiveSubgraphs,
    Sampled,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem: TheoremId,
    pub statement: String,
    pub grid: Grid,
    pub jobs: Vec<JobSummary>,
    pub instances: u64,
    pub premises_met: u64,
    pub counterexample_count: u64,
    /// Minimized; at most a few are kept.
    pub counterexamples: Vec<Counterexample>,
    pub tightness_witnesses: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness_example: Option<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub observations: BTreeMap<String, u64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
    pub wall_clock_ms: u64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.counterexample_count == 0
    }

    /// Plain-text summary, one row per job.
    pub fn table(&self) -> String {
        let mut s = format!("{}: {}\n", self.theorem, self.statement);
        s.push_str(&format!("{:>4} {:>4}  {:<20} {:>12} {:>12}\n", "n", "k", "mode", "instances", "premises"));
        for j in &self.jobs {
            let k = j.k.map_or("-".to_string(), |k| k.to_string());
            let mode = match j.mode {
                SweepMode::Exhaustive => "exhaustive",
                SweepMode::ExhaustiveSubgraphs => "exhaustive+subgraphs",
                SweepMode::Sampled => "sampled",
            };
            s.push_str(&format!("{:>4} {:>4}  {:<20} {:>12} {:>12}\n", j.n, k, mode, j.instances, j.premises_met));
        }
        for (key, v) in &self.observations {
            s.push_str(&format!("{key}: {v}\n"));
        }
        for note in &self.notes {
            s.push_str(&format!("note: {note}\n"));
        }
        s.push_str(&format!(
            "instances {}  premises {}  witnesses {}  counterexamples {}  seed {}  {} ms\n",
            self.instances,
            self.premises_met,
            self.tightness_witnesses,
            self.counterexample_count,
            self.grid.seed,
            self.wall_clock_ms
        ));
        s
    }
}

const KEPT_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Debug, Default)]
struct Tally {
    instances: u64,
    premises: u64,
    witnesses: u64,
    witness: Option<String>,
    failures: u64,
    failing: Vec<(String, String)>,
    observations: BTreeMap<&'static str, u64>,
    premise_now: bool,
    failed_now: Option<String>,
}

impl Tally {
    fn begin(&mut self) {
        self.instances += 1;
        self.premise_now = false;
        self.failed_now = None;
    }

    fn premise(&mut self) {
        self.premise_now = true;
    }

    fn witness(&mut self, g: &EdgeColoredGraph) {
        self.witnesses += 1;
        if self.witness.is_none() {
            self.witness = Some(write_edgelist(g));
        }
    }

    fn fail(&mut self, reason: String) {
        if self.failed_now.is_none() {
            self.failed_now = Some(reason);
        }
    }

    fn observe(&mut self, key: &'static str) {
        *self.observations.entry(key).or_default() += 1;
    }

    fn end(&mut self, instance: impl FnOnce() -> String) {
        if self.premise_now {
            self.premises += 1;
        }
        if let Some(reason) = self.failed_now.take() {
            self.failures += 1;
            if self.failing.len() < KEPT_COUNTEREXAMPLES {
                self.failing.push((instance(), reason));
            }
        }
    }

    fn merge(&mut self, other: Tally) {
        self.instances += other.instances;
        self.premises += other.premises;
        self.witnesses += other.witnesses;
        if self.witness.is_none() {
            self.witness = other.witness;
        }
        self.failures += other.failures;
        let room = KEPT_COUNTEREXAMPLES - self.failing.len();
        self.failing.extend(other.failing.into_iter().take(room));
        for (k, v) in other.observations {
            *self.observations.entry(k).or_default() += v;
        }
    }
}

fn turan_or_none(n: usize, k: usize) -> Option<u64> {
    if k < 3 || n < k {
        return None;
    }
    turan_number(n, k - 2).ok()
}

/// Runs the checks of `id` on one colored graph.
fn check_graph(id: TheoremId, g: &EdgeColoredGraph, p: &CheckParams, t: &mut Tally) {
    let n = g.n();
    let s = (g.m() + g.c()) as u64;
    let c1 = choose2(n as u64 + 1);
    match id {
        TheoremId::T1 => {
            let count = count_rainbow_triangles(g);
            if s >= c1 {
                t.premise();
                if count == 0 {
                    t.fail(format!("m+c = {s} >= {c1} but no rainbow triangle"));
                }
            } else if s + 1 == c1 && count == 0 {
                t.witness(g);
            }
        }
        TheoremId::T2 | TheoremId::T4 => {
            let stat = if id == TheoremId::T2 { s } else { g.degree_profile().sum_color_degree() as u64 };
            let name = if id == TheoremId::T2 { "m+c" } else { "sum d^c" };
            let count = count_rainbow_triangles(g) as u64;
            for &k in &p.k {
                let k = k as u64;
                if k == 0 {
                    continue;
                }
                let thr = c1 + k - 1;
                if stat >= thr {
                    t.premise();
                    if count < k {
                        t.fail(format!("k = {k}: {name} = {stat} >= {thr} but {count} rainbow triangles"));
                    }
                } else if stat + 1 == thr && count < k {
                    t.witness(g);
                }
            }
        }
        TheoremId::L1 => {
            let count = count_rainbow_triangles(g) as u64;
            for &k in &p.k {
                let thr = c1 + k as u64 - 1;
                if k == 0 || s < thr || count != k as u64 {
                    continue;
                }
                t.premise();
                if s != thr {
                    t.fail(format!("k = {k}: exactly k rainbow triangles but m+c = {s} > {thr}"));
                } else if !g.is_complete() {
                    t.fail(format!("k = {k}: exactly k rainbow triangles, m+c = {thr}, not complete"));
                }
            }
        }
        TheoremId::T3 => {
            let count = count_rainbow_triangles(g) as u64;
            for &k in &p.k {
                let thr = (c1 + k as u64).saturating_sub(1);
                let premise = s >= thr && count == k as u64;
                let cert = is_in_gk(g, k);
                if let Some(cert) = &cert {
                    if let Err(e) = cert.validate(g) {
                        t.fail(format!("k = {k}: invalid certificate: {e}"));
                    }
                    if !premise || s != thr || !g.is_complete() {
                        t.fail(format!("k = {k}: accepted with m+c = {s}, {count} rainbow triangles"));
                    }
                }
                if n < 3 * k {
                    if premise {
                        t.observe("n < 3k: premises met");
                        if cert.is_some() {
                            t.observe("n < 3k: accepted");
                        }
                    }
                    continue;
                }
                if premise {
                    t.premise();
                    if cert.is_none() {
                        t.fail(format!("k = {k}: premises hold but not in G_k"));
                    }
                }
            }
        }
        TheoremId::T5 => {
            for &k in &p.k {
                let Some(tn) = turan_or_none(n, k).filter(|_| k >= 4) else { continue };
                let thr = choose2(n as u64) + tn + 2;
                if s >= thr {
                    t.premise();
                    if !has_rainbow_clique(g, k) {
                        t.fail(format!("k = {k}: m+c = {s} >= {thr} but no rainbow K_{k}"));
                    }
                } else if s + 1 == thr && !has_rainbow_clique(g, k) {
                    t.witness(g);
                }
            }
        }
        TheoremId::P1 => {
            for &k in &p.k {
                let Some(tn) = turan_or_none(n, k).filter(|_| k >= 4) else { continue };
                for &l in &p.ell {
                    if l == 0 {
                        continue;
                    }
                    let thr = choose2(n as u64) + tn + 2 * l as u64;
                    if s + 1 < thr {
                        continue;
                    }
                    let found = enumerate_rainbow_cliques(g, k, Some(l)).len();
                    if s >= thr {
                        t.premise();
                        if found < l {
                            t.fail(format!("k = {k}, l = {l}: m+c = {s} >= {thr} but {found} rainbow K_{k}"));
                        }
                    } else if found < l {
                        t.witness(g);
                    }
                }
            }
        }
        TheoremId::T6 | TheoremId::L5 => {
            for &k in &p.k {
                let Some(tn) = turan_or_none(n, k).filter(|_| k >= 6) else { continue };
                if s != choose2(n as u64) + tn + 1 || has_rainbow_clique(g, k) {
                    continue;
                }
                t.premise();
                if id == TheoremId::L5 {
                    if !g.is_complete() {
                        t.fail(format!("k = {k}: extremal, no rainbow K_{k}, but not complete"));
                    }
                    continue;
                }
                match is_in_hk(g, k) {
                    Ok(Some(cert)) => {
                        if let Err(e) = cert.validate(g) {
                            t.fail(format!("k = {k}: invalid certificate: {e}"));
                        }
                        t.observe(match cert.case {
                            crate::characterize::HkCase::I => "accepted as case I",
                            crate::characterize::HkCase::II => "accepted as case II",
                        });
                    }
                    Ok(None) => t.fail(format!("k = {k}: premises hold but not in H_k")),
                    Err(e) => t.fail(format!("k = {k}: recognizer error: {e}")),
                }
            }
        }
        TheoremId::L3 | TheoremId::L4 => {
            for &k in &p.k {
                let Some(tn) = turan_or_none(n, k).filter(|_| k >= 6) else { continue };
                let q = k - 2;
                if !g.is_complete() || g.c() as u64 != tn + 1 {
                    continue;
                }
                if id == TheoremId::L3 && n / q < 2 {
                    continue;
                }
                if has_rainbow_clique(g, k) {
                    continue;
                }
                let found = match find_rainbow_spanning_turan(g, q) {
                    Ok(found) => found,
                    Err(e) => {
                        t.fail(format!("k = {k}: {e}"));
                        continue;
                    }
                };
                if id == TheoremId::L4 {
                    t.premise();
                    if found.is_none() {
                        t.fail(format!("k = {k}: no rainbow spanning T(n,{q})"));
                    }
                    continue;
                }
                let Some(tur) = found else { continue };
                t.premise();
                if let Err(e) = intra_monochromatic(g, &tur.parts) {
                    t.fail(format!("k = {k}: {e}"));
                }
            }
        }
        TheoremId::L2 => {}
    }
}

/// All edges inside the parts share one color that no cross edge uses.
fn intra_monochromatic(g: &EdgeColoredGraph, parts: &[Vec<usize>]) -> std::result::Result<(), String> {
    let mut part = vec![0; g.n()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            part[v] = i;
        }
    }
    let mut intra = None;
    for &(u, v, c) in g.edges() {
        if part[u] == part[v] {
            match intra {
                None => intra = Some(c),
                Some(d) if d != c => return Err(format!("intra edges use colors {d} and {c}")),
                _ => {}
            }
        }
    }
    if let Some(c) = intra {
        if g.edges().iter().any(|&(u, v, d)| part[u] != part[v] && d == c) {
            return Err(format!("intra color {c} also appears on the Turán subgraph"));
        }
    }
    Ok(())
}

fn check_digraph(d: &OrientedGraph, t: &mut Tally) {
    let assoc = associated_colored_graph(d);
    let g = &assoc.graph;
    let omega = out_component_sum(d);
    if g.m() != d.a() {
        t.fail(format!("m = {} but a = {}", g.m(), d.a()));
    }
    if g.c() != omega {
        t.fail(format!("c = {} but sum w+ = {omega}", g.c()));
    }
    let directed = directed_triangles(d);
    let rainbow: Vec<[usize; 3]> = list_rainbow_triangles(g).into_iter().map(|r| r.0).collect();
    if directed != rainbow {
        t.fail(format!("directed triangles {directed:?} differ from rainbow triangles {rainbow:?}"));
    }
    let need = guaranteed_directed_triangles(d.n() as u64, d.a() as u64, omega as u64);
    if need > 0 {
        t.premise();
        if (directed.len() as u64) < need {
            t.fail(format!("a + sum w+ forces {need} directed triangles, found {}", directed.len()));
        }
    }
}

/// Failure reasons of one instance; empty when every check passes.
pub fn failures(id: TheoremId, g: &EdgeColoredGraph, params: &CheckParams) -> Vec<String> {
    let mut t = Tally::default();
    t.begin();
    check_graph(id, g, params, &mut t);
    t.failed_now.into_iter().collect()
}

pub fn digraph_failures(d: &OrientedGraph) -> Vec<String> {
    let mut t = Tally::default();
    t.begin();
    check_digraph(d, &mut t);
    t.failed_now.into_iter().collect()
}

/// Greedy vertex then edge deletion while `fails` keeps holding.
pub fn minimize_graph<F>(g: &EdgeColoredGraph, fails: F) -> EdgeColoredGraph
where
    F: Fn(&EdgeColoredGraph) -> bool,
{
    let mut g = g.clone();
    'outer: loop {
        for v in (0..g.n()).rev() {
            let h = g.delete_vertex(v).expect("vertex in range");
            if fails(&h) {
                g = h;
                continue 'outer;
            }
        }
        for &(u, v, _) in g.edges().to_vec().iter().rev() {
            let h = g.delete_edge(u, v).expect("edge present");
            if fails(&h) {
                g = h;
                continue 'outer;
            }
        }
        return g;
    }
}

pub fn minimize_digraph<F>(d: &OrientedGraph, fails: F) -> OrientedGraph
where
    F: Fn(&OrientedGraph) -> bool,
{
    let mut d = d.clone();
    'outer: loop {
        for v in (0..d.n()).rev() {
            let shift = |x: usize| if x > v { x - 1 } else { x };
            let arcs = d.arcs().iter().filter(|&&(a, b)| a != v && b != v).map(|&(a, b)| (shift(a), shift(b)));
            let h = OrientedGraph::build(d.n() - 1, arcs.collect::<Vec<_>>()).expect("subgraph");
            if fails(&h) {
                d = h;
                continue 'outer;
            }
        }
        for i in (0..d.a()).rev() {
            let arcs: Vec<_> = d.arcs().iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &a)| a).collect();
            let h = OrientedGraph::build(d.n(), arcs).expect("subgraph");
            if fails(&h) {
                d = h;
                continue 'outer;
            }
        }
        return d;
    }
}

/// Re-runs the stored counterexamples; true when every one still fails.
pub fn revalidate(report: &VerificationReport) -> Result<bool> {
    for ce in &report.counterexamples {
        let still = if report.theorem == TheoremId::L2 {
            !digraph_failures(&parse_digraph(&ce.instance)?).is_empty()
        } else {
            !failures(report.theorem, &parse_edgelist(&ce.instance)?, &ce.params).is_empty()
        };
        if !still {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Deterministic per-unit seed.
fn unit_seed(seed: u64, tag: u64, unit: u64) -> u64 {
    let mut x = seed ^ tag.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ unit.wrapping_mul(0xD1B5_4A32_D192_ED03);
    x ^= x >> 31;
    x = x.wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x ^ (x >> 29)
}

const UNITS_PER_ROUND: u64 = 16;
const ATTEMPTS_PER_UNIT: u64 = 64;
const ATTEMPT_FACTOR: u64 = 200;

/// Instance source for sampled jobs.
struct Sampler {
    n: usize,
    bases: Vec<EdgeColoredGraph>,
    reuse_parts: Option<usize>,
    fresh_boost: bool,
    max_edits: usize,
}

impl Sampler {
    fn for_job(id: TheoremId, n: usize, ks: &[usize]) -> Result<Sampler> {
        let triangle = matches!(id, TheoremId::T1 | TheoremId::T2 | TheoremId::T3 | TheoremId::T4 | TheoremId::L1);
        let bases: Vec<EdgeColoredGraph> = if triangle {
            (0..=n / 3).map(|k| build_gk(n, k).map(|c| c.graph)).collect::<Result<_>>()?
        } else {
            ks.iter()
                .filter(|&&k| k >= 4 && k <= n)
                .map(|&k| build_hnk(n, k).map(|c| c.graph))
                .collect::<Result<_>>()?
        };
        if bases.is_empty() {
            return Err(precondition(format!("no valid k for n = {n}")));
        }
        let reuse_parts = ks.iter().map(|&k| k.saturating_sub(2)).find(|&q| !triangle && q >= 1 && n / q == 1);
        Ok(Sampler { n, bases, reuse_parts, fresh_boost: id == TheoremId::P1, max_edits: 3 })
    }

    fn sample(&self, rng: &mut StdRng) -> EdgeColoredGraph {
        if let Some(q) = self.reuse_parts {
            if rng.gen_ratio(1, 4) {
                return sampling::singleton_reuse_candidate(self.n, q, rng);
            }
        }
        let base = &self.bases[rng.gen_range(0..self.bases.len())];
        let mut g = sampling::near(base, self.max_edits, rng);
        if self.fresh_boost && g.m() > 0 && rng.gen_bool(0.5) {
            for _ in 0..rng.gen_range(1..=4) {
                let (u, v, _) = g.edges()[rng.gen_range(0..g.m())];
                g = g.recolor_edge(u, v, g.fresh_color()).expect("edge present");
            }
        }
        g
    }
}

struct Job {
    n: usize,
    k: Option<usize>,
    params: CheckParams,
    constraint: ColorConstraint,
}

fn run_units<T, F>(pool: &rayon::ThreadPool, units: &[T], f: F) -> Tally
where
    T: Sync,
    F: Fn(&T) -> Tally + Sync,
{
    let parts: Vec<Tally> = pool.install(|| units.par_iter().map(&f).collect());
    let mut total = Tally::default();
    for p in parts {
        total.merge(p);
    }
    total
}

fn exhaustive(id: TheoremId, job: &Job, noncomplete: bool, pool: &rayon::ThreadPool) -> Tally {
    let n = job.n;
    let slots = enumerate::complete_slots(n);
    let check = |g: &EdgeColoredGraph, t: &mut Tally| {
        t.begin();
        check_graph(id, g, &job.params, t);
        t.end(|| write_edgelist(g));
    };
    if noncomplete {
        let masks: Vec<u64> = (0..1u64 << slots.len()).collect();
        return run_units(pool, &masks, |&mask| {
            let chosen: Vec<_> =
                slots.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e).collect();
            let mut t = Tally::default();
            for g in ColoringEnumerator::new(n, chosen, job.constraint) {
                check(&g, &mut t);
            }
            t
        });
    }
    let prefixes = enumerate::prefixes(slots.len(), 6, job.constraint);
    run_units(pool, &prefixes, |prefix| {
        let mut t = Tally::default();
        for g in ColoringEnumerator::with_prefix(n, slots.clone(), job.constraint, prefix) {
            check(&g, &mut t);
        }
        t
    })
}

fn sampled<G>(target: u64, count_premises: bool, tag: u64, seed: u64, pool: &rayon::ThreadPool, one: G) -> (Tally, bool)
where
    G: Fn(&mut StdRng, &mut Tally) + Sync,
{
    let cap = target.saturating_mul(ATTEMPT_FACTOR).max(1);
    let mut total = Tally::default();
    let mut round = 0u64;
    loop {
        let done = if count_premises { total.premises } else { total.instances };
        if done >= target {
            return (total, true);
        }
        if total.instances >= cap {
            return (total, false);
        }
        let round_size = if count_premises {
            UNITS_PER_ROUND * ATTEMPTS_PER_UNIT
        } else {
            (target - done).min(UNITS_PER_ROUND * ATTEMPTS_PER_UNIT)
        };
        let units: Vec<u64> = (0..UNITS_PER_ROUND).collect();
        let part = run_units(pool, &units, |&j| {
            let mut rng = StdRng::seed_from_u64(unit_seed(seed, tag, round * UNITS_PER_ROUND + j));
            let mut t = Tally::default();
            let attempts = round_size / UNITS_PER_ROUND + u64::from(j < round_size % UNITS_PER_ROUND);
            for _ in 0..attempts {
                one(&mut rng, &mut t);
            }
            t
        });
        total.merge(part);
        round += 1;
    }
}

/// Number of instances an exhaustive job would visit.
fn exhaustive_size(n: usize, constraint: ColorConstraint, noncomplete: bool) -> u128 {
    let e = choose2(n as u64) as usize;
    if !noncomplete {
        return coloring_count(e, constraint);
    }
    let mut binom = 1u128;
    let mut total = 0u128;
    for j in 0..=e {
        total += binom * coloring_count(j, constraint);
        binom = binom * (e - j) as u128 / (j + 1) as u128;
    }
    total
}

fn build_jobs(id: TheoremId, grid: &Grid) -> Vec<Job> {
    let mut jobs = Vec::new();
    let params =
        |k: Vec<usize>| CheckParams { k, ell: if id == TheoremId::P1 { grid.ell.clone() } else { Vec::new() } };
    if id.uses_pairs() {
        for (n, k) in grid.resolved_pairs() {
            jobs.push(Job { n, k: Some(k), params: params(vec![k]), constraint: ColorConstraint::Any });
        }
        return jobs;
    }
    for &n in &grid.n {
        match id {
            TheoremId::T3 => {
                for &k in &grid.k {
                    let colors = (n + k).saturating_sub(1);
                    jobs.push(Job {
                        n,
                        k: Some(k),
                        params: params(vec![k]),
                        constraint: ColorConstraint::Exactly(colors),
                    });
                }
            }
            TheoremId::T5 | TheoremId::P1 => {
                let ks: Vec<usize> = grid.k.iter().copied().filter(|&k| k >= 4 && k <= n).collect();
                if !ks.is_empty() {
                    jobs.push(Job { n, k: None, params: params(ks), constraint: ColorConstraint::Any });
                }
            }
            _ => jobs.push(Job { n, k: None, params: params(grid.k.clone()), constraint: ColorConstraint::Any }),
        }
    }
    jobs
}

/// Checks one theorem over a parameter grid.
pub fn verify_theorem(id: TheoremId, grid: &Grid) -> Result<VerificationReport> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(grid.jobs)
        .build()
        .map_err(|e| precondition(format!("thread pool: {e}")))?;
    let mut total = Tally::default();
    let mut summaries = Vec::new();
    let mut notes = Vec::new();
    let mut failing = Vec::new();

    if id == TheoremId::L2 {
        if grid.n.is_empty() {
            return Err(precondition("L2 needs at least one n"));
        }
        let (t, _) = sampled(grid.samples as u64, false, 0, grid.seed, &pool, |rng, t| {
            let n = grid.n[rng.gen_range(0..grid.n.len())];
            let d = sampling::random_oriented_graph(n, rng);
            t.begin();
            check_digraph(&d, t);
            t.end(|| write_digraph(&d));
        });
        summaries.push(JobSummary {
            n: *grid.n.iter().max().unwrap(),
            k: None,
            mode: SweepMode::Sampled,
            instances: t.instances,
            premises_met: t.premises,
        });
        for (inst, reason) in &t.failing {
            let d = minimize_digraph(&parse_digraph(inst)?, |h| !digraph_failures(h).is_empty());
            let reason = digraph_failures(&d).into_iter().next().unwrap_or_else(|| reason.clone());
            failing.push(Counterexample { instance: write_digraph(&d), params: CheckParams::default(), reason });
        }
        total.merge(t);
    } else {
        for (tag, job) in build_jobs(id, grid).into_iter().enumerate() {
            let exhaustive_ok = job.n <= grid.exhaustive_max_n && !id.uses_pairs();
            let (t, mode) = if exhaustive_ok {
                let size = exhaustive_size(job.n, job.constraint, grid.noncomplete);
                if size > grid.budget as u128 {
                    return Err(Error::BudgetExceeded { estimate: size, budget: grid.budget as u128 });
                }
                let mode = if grid.noncomplete { SweepMode::ExhaustiveSubgraphs } else { SweepMode::Exhaustive };
                (exhaustive(id, &job, grid.noncomplete, &pool), mode)
            } else {
                if grid.samples == 0 {
                    return Err(precondition(format!(
                        "n = {} is above the exhaustive limit and no samples were requested",
                        job.n
                    )));
                }
                let sampler = Sampler::for_job(id, job.n, &job.params.k)?;
                let (t, reached) = sampled(grid.samples as u64, true, tag as u64 + 1, grid.seed, &pool, |rng, t| {
                    let g = sampler.sample(rng);
                    t.begin();
                    check_graph(id, &g, &job.params, t);
                    t.end(|| write_edgelist(&g));
                });
                if !reached {
                    notes.push(format!(
                        "n = {}{}: {} premise instances after {} attempts",
                        job.n,
                        job.k.map_or(String::new(), |k| format!(", k = {k}")),
                        t.premises,
                        t.instances
                    ));
                }
                (t, SweepMode::Sampled)
            };
            summaries.push(JobSummary { n: job.n, k: job.k, mode, instances: t.instances, premises_met: t.premises });
            for (inst, reason) in &t.failing {
                if failing.len() >= KEPT_COUNTEREXAMPLES {
                    break;
                }
                let g = minimize_graph(&parse_edgelist(inst)?, |h| !failures(id, h, &job.params).is_empty());
                let reason = failures(id, &g, &job.params).into_iter().next().unwrap_or_else(|| reason.clone());
                failing.push(Counterexample { instance: write_edgelist(&g), params: job.params.clone(), reason });
            }
            total.merge(t);
        }
    }
    if id == TheoremId::T3 && total.observations.keys().any(|k| k.starts_with("n < 3k")) {
        notes.push("n < 3k lies outside the theorem; those instances are recorded, not judged".to_string());
    }
    Ok(VerificationReport {
        theorem: id,
        statement: id.statement().to_string(),
        grid: grid.clone(),
        jobs: summaries,
        instances: total.instances,
        premises_met: total.premises,
        counterexample_count: total.failures,
        counterexamples: failing,
        tightness_witnesses: total.witnesses,
        witness_example: total.witness,
        observations: total.observations.into_iter().map(|(k, v)| (k.to_string(), v)).collect(),
        notes,
        wall_clock_ms: start.elapsed().as_millis() as u64,
    })
}

/// A graph one below the threshold of `id` that misses the conclusion.
/// T1: `G_0`. T2: `G_k`, which has `k` rainbow triangles and so witnesses
/// T2 at `k + 1`. T5: `H_{n,k-2}`.
pub fn find_tightness_witness(id: TheoremId, n: usize, k: usize) -> Result<EdgeColoredGraph> {
    match id {
        TheoremId::T1 => build_gk(n, 0).map(|c| c.graph),
        TheoremId::T2 => build_gk(n, k).map(|c| c.graph),
        TheoremId::T5 => build_hnk(n, k).map(|c| c.graph),
        _ => Err(precondition(format!("no tightness witness for {id}"))),
    }
}

/// `G_1` with the edges from each base vertex to the triangle recolored by
/// that vertex: large color-degree sum, one rainbow triangle.
pub fn recolor_witness_colordeg(n: usize) -> Result<EdgeColoredGraph> {
    recolored_g1(n).map(|c| c.graph)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quick(id: TheoremId) -> Grid {
        let mut g = Grid::default_for(id);
        g.n.retain(|&n| n <= 4);
        g.samples = g.samples.min(50);
        g
    }

    #[test]
    fn theorem_ids_round_trip() {
        for id in TheoremId::ALL {
            assert_eq!(id.to_string().parse::<TheoremId>().unwrap(), id);
        }
        assert_eq!("p1".parse::<TheoremId>().unwrap(), TheoremId::P1);
        assert!("T7".parse::<TheoremId>().is_err());
    }

    #[test]
    fn small_triangle_sweeps_pass() {
        for id in [TheoremId::T1, TheoremId::T2, TheoremId::T4, TheoremId::L1] {
            let r = verify_theorem(id, &quick(id)).unwrap();
            assert!(r.passed(), "{}", r.table());
            assert!(r.premises_met > 0);
        }
    }

    #[test]
    fn t1_counts_match_bell_numbers() {
        let mut grid = Grid::default_for(TheoremId::T1);
        grid.n = vec![4];
        let r = verify_theorem(TheoremId::T1, &grid).unwrap();
        assert_eq!(r.instances, 203);
        assert!(r.tightness_witnesses > 0);
    }

    #[test]
    fn subgraph_sweep_size() {
        // Colorings of all spanning subgraphs of K_n are the partitions of E(K_n) plus one block.
        assert_eq!(exhaustive_size(4, ColorConstraint::Any, true), bell(7));
        let mut grid = Grid::default_for(TheoremId::T2);
        grid.n = vec![4];
        let r = verify_theorem(TheoremId::T2, &grid).unwrap();
        assert_eq!(r.instances as u128, bell(7));
    }

    #[test]
    fn worker_count_does_not_change_reports() {
        let mut a = quick(TheoremId::T6);
        a.pairs = vec![(7, 6)];
        a.samples = 40;
        let mut b = a.clone();
        a.jobs = 1;
        b.jobs = 3;
        let (mut ra, mut rb) = (verify_theorem(TheoremId::T6, &a).unwrap(), verify_theorem(TheoremId::T6, &b).unwrap());
        ra.wall_clock_ms = 0;
        rb.wall_clock_ms = 0;
        ra.grid.jobs = 0;
        rb.grid.jobs = 0;
        assert_eq!(ra, rb);
        assert!(ra.premises_met >= 40);
    }

    #[test]
    fn budget_rejection() {
        let mut grid = Grid::default_for(TheoremId::T1);
        grid.n = vec![6];
        grid.exhaustive_max_n = 6;
        grid.budget = 1_000_000;
        assert!(matches!(verify_theorem(TheoremId::T1, &grid), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn minimization_keeps_the_failure() {
        let g = EdgeColoredGraph::build(
            5,
            [(0, 1, 0), (1, 2, 1), (0, 2, 2), (2, 3, 3), (3, 4, 4)].map(|(u, v, c)| (u, v, crate::ColorId(c))),
        )
        .unwrap();
        assert!(failures(TheoremId::T2, &g, &CheckParams { k: vec![1], ell: vec![] }).is_empty());
        let min = minimize_graph(&g, |_| true);
        assert_eq!((min.n(), min.m()), (0, 0));
        let min = minimize_graph(&g, |h| count_rainbow_triangles(h) > 0);
        assert_eq!((min.n(), min.m()), (3, 3));
    }

    #[test]
    fn l2_sample_count_is_exact() {
        let mut grid = Grid::default_for(TheoremId::L2);
        grid.samples = 1001;
        let r = verify_theorem(TheoremId::L2, &grid).unwrap();
        assert_eq!(r.instances, 1001);
        assert!(r.passed());
    }

    #[test]
    fn witnesses_sit_one_below() {
        let g = find_tightness_witness(TheoremId::T2, 9, 3).unwrap();
        assert_eq!((g.m() + g.c()) as u64, choose2(10) + 2);
        assert_eq!(count_rainbow_triangles(&g), 3);
        let g = find_tightness_witness(TheoremId::T1, 5, 0).unwrap();
        assert_eq!((g.m() + g.c()) as u64, choose2(6) - 1);
        assert!(find_tightness_witness(TheoremId::L4, 8, 6).is_err());
        assert!(recolor_witness_colordeg(6).is_err());
    }
}
