//! Colorings of a fixed edge set up to color renaming.
//!
//! A coloring of edges `e_0 < e_1 < ...` up to renaming is a set partition of
//! the edges, written as a restricted growth string `a` with `a_0 = 0` and
//! `a_i <= 1 + max(a_0..a_i)`. Reading `a_i` as the color of `e_i` yields the
//! canonical (first-appearance) coloring directly.

use crate::error::{Error, Result};
use crate::graph::{ColorId, EdgeColoredGraph};

/// Restriction on the number of color classes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ColorConstraint {
    Any,
    Exactly(usize),
    AtMost(usize),
}

impl ColorConstraint {
    fn max_blocks(self, len: usize) -> usize {
        match self {
            ColorConstraint::Any => len,
            ColorConstraint::Exactly(c) | ColorConstraint::AtMost(c) => c.min(len),
        }
    }

    fn admits(self, blocks: usize) -> bool {
        match self {
            ColorConstraint::Any => true,
            ColorConstraint::Exactly(c) => blocks == c,
            ColorConstraint::AtMost(c) => blocks <= c,
        }
    }
}

/// Stirling numbers of the second kind `S(n, k)` for `k <= n`, as rows.
pub fn stirling2_table(n: usize) -> Vec<Vec<u128>> {
    let mut rows = vec![vec![1u128]];
    for i in 1..=n {
        let prev = &rows[i - 1];
        let mut row = vec![0u128; i + 1];
        for k in 1..=i {
            let stay = if k < i { k as u128 * prev[k] } else { 0 };
            row[k] = prev[k - 1] + stay;
        }
        rows.push(row);
    }
    rows
}

pub fn stirling2(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    stirling2_table(n)[n][k]
}

pub fn bell(n: usize) -> u128 {
    stirling2_table(n)[n].iter().sum()
}

/// Number of colorings of `len` edges admitted by `constraint`.
pub fn coloring_count(len: usize, constraint: ColorConstraint) -> u128 {
    let row = &stirling2_table(len)[len];
    (0..=len).filter(|&b| constraint.admits(b)).map(|b| row[b]).sum()
}

/// Streams every coloring of a fixed edge set, once per set partition.
#[derive(Clone, Debug)]
pub struct ColoringEnumerator {
    n: usize,
    slots: Vec<(usize, usize)>,
    constraint: ColorConstraint,
    fixed: usize,
    rgs: Vec<u32>,
    started: bool,
    done: bool,
}

impl ColoringEnumerator {
    /// Colorings of the edges `slots` (sorted `u < v` pairs) of a graph on `n` vertices.
    pub fn new(n: usize, mut slots: Vec<(usize, usize)>, constraint: ColorConstraint) -> Self {
        slots.sort_unstable();
        Self::with_prefix(n, slots, constraint, &[])
    }

    /// Colorings of the complete graph `K_n`.
    pub fn complete(n: usize, constraint: ColorConstraint) -> Self {
        Self::new(n, complete_slots(n), constraint)
    }

    /// Only those colorings whose first slots are colored as `prefix`.
    /// The prefix must itself be a restricted growth string.
    pub fn with_prefix(n: usize, slots: Vec<(usize, usize)>, constraint: ColorConstraint, prefix: &[u32]) -> Self {
        let mut rgs = vec![0u32; slots.len()];
        rgs[..prefix.len()].copy_from_slice(prefix);
        ColoringEnumerator { n, slots, constraint, fixed: prefix.len(), rgs, started: false, done: false }
    }

    pub fn slots(&self) -> &[(usize, usize)] {
        &self.slots
    }

    fn blocks_before(&self, i: usize) -> usize {
        self.rgs[..i].iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Smallest admissible completion of positions `from..`; false if none.
    fn fill_from(&mut self, from: usize) -> bool {
        let len = self.slots.len();
        let blocks = self.blocks_before(from);
        let need = match self.constraint {
            ColorConstraint::Exactly(c) => {
                if blocks > c || c - blocks > len - from {
                    return false;
                }
                c - blocks
            }
            ColorConstraint::AtMost(c) if blocks > c => return false,
            _ => 0,
        };
        let tail_start = len - need;
        for (j, slot) in self.rgs[from..].iter_mut().enumerate() {
            let pos = from + j;
            *slot = if pos >= tail_start { (blocks + pos - tail_start) as u32 } else { 0 };
        }
        // With no edges before `from`, position 0 must hold block 0.
        if from == 0 && len > 0 && need == 0 {
            self.rgs[0] = 0;
        }
        true
    }

    /// Advances to the next coloring and returns its restricted growth string.
    pub fn advance(&mut self) -> Option<&[u32]> {
        if self.done {
            return None;
        }
        let len = self.slots.len();
        if !self.started {
            self.started = true;
            let prefix_ok =
                self.rgs[..self.fixed].iter().enumerate().all(|(i, &a)| a as usize <= self.blocks_before(i));
            if !prefix_ok || !self.fill_from(self.fixed) || !self.constraint.admits(self.blocks_before(len)) {
                self.done = true;
                return None;
            }
            return Some(&self.rgs);
        }
        let max_blocks = self.constraint.max_blocks(len);
        for i in (self.fixed..len).rev() {
            let bound = self.blocks_before(i);
            let candidate = self.rgs[i] as usize + 1;
            if candidate > bound || candidate >= max_blocks {
                continue;
            }
            let saved = self.rgs[i];
            self.rgs[i] = candidate as u32;
            if self.fill_from(i + 1) {
                return Some(&self.rgs);
            }
            self.rgs[i] = saved;
        }
        self.done = true;
        None
    }

    /// The current coloring as a graph; colors are the block indices.
    pub fn graph(&self) -> EdgeColoredGraph {
        EdgeColoredGraph::build(self.n, self.slots.iter().zip(&self.rgs).map(|(&(u, v), &a)| (u, v, ColorId(a))))
            .expect("slots are valid edges")
    }
}

impl Iterator for ColoringEnumerator {
    type Item = EdgeColoredGraph;

    fn next(&mut self) -> Option<EdgeColoredGraph> {
        self.advance()?;
        Some(self.graph())
    }
}

/// Edges of `K_n` in lexicographic order.
pub fn complete_slots(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect()
}

/// Default cap on exhaustive sweeps; admits every coloring of `K_6`.
pub const DEFAULT_BUDGET: u128 = 1_500_000_000;

/// All colorings of `K_n` admitted by `constraint`, or an error when their
/// number exceeds `budget`.
pub fn enumerate_colorings(n: usize, constraint: ColorConstraint, budget: u128) -> Result<ColoringEnumerator> {
    let slots = complete_slots(n);
    let estimate = coloring_count(slots.len(), constraint);
    if estimate > budget {
        return Err(Error::BudgetExceeded { estimate, budget });
    }
    Ok(ColoringEnumerator::new(n, slots, constraint))
}

/// Restricted growth strings of length `depth` that can still be completed to
/// an admissible coloring of `total` edges. Used to split sweeps into units.
pub fn prefixes(total: usize, depth: usize, constraint: ColorConstraint) -> Vec<Vec<u32>> {
    let depth = depth.min(total);
    let max_blocks = constraint.max_blocks(total);
    let mut it = ColoringEnumerator::new(
        depth + 1,
        complete_slots(depth + 1).into_iter().take(depth).collect(),
        ColorConstraint::AtMost(max_blocks),
    );
    let mut out = Vec::new();
    while let Some(rgs) = it.advance() {
        let blocks = rgs.iter().max().map_or(0, |&m| m as usize + 1);
        let feasible = match constraint {
            ColorConstraint::Exactly(c) => blocks <= c && c - blocks <= total - depth,
            ColorConstraint::AtMost(c) => blocks <= c,
            ColorConstraint::Any => true,
        };
        if feasible {
            out.push(rgs.to_vec());
        }
    }
    out
}
