//! Exact chromatic number: DSATUR branch and bound with a SAT fallback.
//!
//! The lower bound comes from a greedy clique, the upper bound from greedy
//! DSATUR. Between them the solver repeatedly asks whether `ub - 1` colors
//! suffice. Each decision search pre-colors the clique with distinct colors,
//! branches on the uncolored vertex of maximum saturation (ties: more
//! uncolored neighbors, then lower index), opens at most one new color per
//! node, and backtracks as soon as some uncolored vertex sees every color.
//!
//! Once the branch-and-bound node budget is spent, remaining decisions go to
//! a CDCL solver (see `sat`), which refutes the hard cases far faster.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graphs::{BitMatrix, LabeledGraph};

use super::sat::{self, SatVerdict};

/// Default search-node budget per `chromatic_number` call.
pub const DEFAULT_NODE_LIMIT: u64 = 2_000_000;

/// Default wall-clock limit for a single SAT decision, in seconds.
pub const DEFAULT_SAT_TIMEOUT: f64 = 3600.0;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SolverConfig {
    /// Maximum number of branching nodes, summed over all decision searches.
    pub node_limit: u64,
    /// Hand undecided questions to the SAT solver once `node_limit` is spent.
    pub sat_fallback: bool,
    /// Time limit per SAT decision, in seconds.
    pub sat_timeout: f64,
}

impl SolverConfig {
    /// Branch and bound only, with the given node budget.
    pub fn branch_and_bound(node_limit: u64) -> Self {
        SolverConfig {
            node_limit,
            sat_fallback: false,
            ..Self::default()
        }
    }
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            node_limit: DEFAULT_NODE_LIMIT,
            sat_fallback: true,
            sat_timeout: DEFAULT_SAT_TIMEOUT,
        }
    }
}

/// Result of an exact solve. `Unknown` is returned when the budget runs out;
/// the bounds it carries are still valid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ChromaticOutcome {
    Exact {
        chi: usize,
        /// Proper coloring with colors `0..chi`.
        coloring: Vec<usize>,
        nodes: u64,
        sat_calls: u32,
    },
    Unknown {
        lower: usize,
        upper: usize,
        /// Proper coloring with `upper` colors.
        best: Vec<usize>,
        nodes: u64,
        sat_calls: u32,
    },
}

impl ChromaticOutcome {
    pub fn chi(&self) -> Option<usize> {
        match self {
            ChromaticOutcome::Exact { chi, .. } => Some(*chi),
            ChromaticOutcome::Unknown { .. } => None,
        }
    }

    pub fn nodes(&self) -> u64 {
        match self {
            ChromaticOutcome::Exact { nodes, .. } | ChromaticOutcome::Unknown { nodes, .. } => *nodes,
        }
    }
}

/// Exact chromatic number with a witness coloring.
pub fn chromatic_number(graph: &LabeledGraph, cfg: SolverConfig) -> Result<ChromaticOutcome> {
    if graph.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let adj = graph.adjacency();
    let clique = greedy_clique(adj);
    let lower = clique.len();
    let mut best = dsatur_greedy(adj);
    let mut upper = color_count(&best);
    let mut nodes = 0u64;
    let mut sat_calls = 0u32;
    while upper > lower {
        let mut verdict = Verdict::OutOfBudget;
        if nodes < cfg.node_limit {
            let mut search = Search::new(adj, upper - 1, cfg.node_limit - nodes);
            verdict = search.run(&clique);
            nodes += search.nodes;
        }
        if matches!(verdict, Verdict::OutOfBudget) && cfg.sat_fallback {
            sat_calls += 1;
            verdict = match sat::decide(adj, upper - 1, &clique, cfg.sat_timeout) {
                SatVerdict::Colorable(coloring) => Verdict::Colorable(coloring),
                SatVerdict::Infeasible => Verdict::Infeasible,
                SatVerdict::TimedOut => Verdict::OutOfBudget,
            };
        }
        match verdict {
            Verdict::Colorable(coloring) => {
                debug_assert!(is_proper(graph, &coloring));
                upper = color_count(&coloring);
                best = coloring;
            }
            Verdict::Infeasible => break,
            Verdict::OutOfBudget => {
                return Ok(ChromaticOutcome::Unknown {
                    lower: lower.max(1),
                    upper,
                    best,
                    nodes,
                    sat_calls,
                })
            }
        }
    }
    Ok(ChromaticOutcome::Exact {
        chi: upper,
        coloring: best,
        nodes,
        sat_calls,
    })
}

/// True iff `coloring` assigns different colors to the ends of every edge.
pub fn is_proper(graph: &LabeledGraph, coloring: &[usize]) -> bool {
    coloring.len() == graph.len() && graph.edges().all(|(u, v)| coloring[u] != coloring[v])
}

fn color_count(coloring: &[usize]) -> usize {
    coloring.iter().max().map_or(0, |&c| c + 1)
}

fn popcount_and(a: &[u64], b: &[u64]) -> usize {
    a.iter().zip(b).map(|(x, y)| (x & y).count_ones() as usize).sum()
}

/// Largest clique found by greedy extension from every seed vertex.
pub fn greedy_clique(adj: &BitMatrix) -> Vec<usize> {
    let size = adj.size();
    let mut best: Vec<usize> = Vec::new();
    for seed in 0..size {
        let mut clique = vec![seed];
        let mut cand: Vec<u64> = adj.row(seed).to_vec();
        loop {
            // pick the candidate with the most neighbors among the candidates
            let mut pick = None;
            let mut pick_score = 0;
            for (w, &word) in cand.iter().enumerate() {
                let mut bits = word;
                while bits != 0 {
                    let v = w * 64 + bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    let score = popcount_and(adj.row(v), &cand) + 1;
                    if score > pick_score {
                        pick = Some(v);
                        pick_score = score;
                    }
                }
            }
            let Some(v) = pick else { break };
            clique.push(v);
            for (c, r) in cand.iter_mut().zip(adj.row(v)) {
                *c &= r;
            }
        }
        if clique.len() > best.len() {
            best = clique;
        }
    }
    best.sort_unstable();
    best
}

/// Greedy DSATUR coloring.
pub fn dsatur_greedy(adj: &BitMatrix) -> Vec<usize> {
    let size = adj.size();
    let mut color = vec![usize::MAX; size];
    let mut seen: Vec<Vec<bool>> = vec![Vec::new(); size];
    let degree: Vec<usize> = (0..size).map(|u| adj.row(u).iter().map(|w| w.count_ones() as usize).sum()).collect();
    for _ in 0..size {
        let u = (0..size)
            .filter(|&u| color[u] == usize::MAX)
            .max_by_key(|&u| {
                let sat = seen[u].iter().filter(|&&b| b).count();
                (sat, degree[u], std::cmp::Reverse(u))
            })
            .expect("an uncolored vertex remains");
        let c = (0..).find(|&c| !seen[u].get(c).copied().unwrap_or(false)).unwrap();
        color[u] = c;
        for v in 0..size {
            if adj.get(u, v) {
                if seen[v].len() <= c {
                    seen[v].resize(c + 1, false);
                }
                seen[v][c] = true;
            }
        }
    }
    color
}

enum Verdict {
    Colorable(Vec<usize>),
    Infeasible,
    OutOfBudget,
}

const UNCOLORED: usize = usize::MAX;

struct Search<'a> {
    adj: &'a BitMatrix,
    colors: usize,
    color: Vec<usize>,
    /// count[v * colors + c] = colored neighbors of v with color c
    count: Vec<u32>,
    /// bit c set iff some neighbor of v has color c
    sat: Vec<u64>,
    uncolored_degree: Vec<usize>,
    uncolored: usize,
    nodes: u64,
    limit: u64,
    exhausted: bool,
    neighbors: Vec<Vec<usize>>,
}

impl<'a> Search<'a> {
    fn new(adj: &'a BitMatrix, colors: usize, limit: u64) -> Self {
        assert!(colors <= 64, "the decision search supports at most 64 colors");
        let size = adj.size();
        let neighbors: Vec<Vec<usize>> = (0..size)
            .map(|u| (0..size).filter(|&v| adj.get(u, v)).collect())
            .collect();
        Search {
            adj,
            colors,
            color: vec![UNCOLORED; size],
            count: vec![0; size * colors],
            sat: vec![0; size],
            uncolored_degree: neighbors.iter().map(Vec::len).collect(),
            uncolored: size,
            nodes: 0,
            limit,
            exhausted: false,
            neighbors,
        }
    }

    fn run(&mut self, clique: &[usize]) -> Verdict {
        if clique.len() > self.colors {
            return Verdict::Infeasible;
        }
        for (c, &v) in clique.iter().enumerate() {
            if !self.assign(v, c) {
                return Verdict::Infeasible;
            }
        }
        let used = clique.len();
        if self.descend(used) {
            debug_assert!((0..self.adj.size()).all(|u| {
                self.neighbors[u].iter().all(|&v| self.color[u] != self.color[v])
            }));
            Verdict::Colorable(self.color.clone())
        } else if self.exhausted {
            Verdict::OutOfBudget
        } else {
            Verdict::Infeasible
        }
    }

    /// Colors `v` with `c`; returns false if some uncolored neighbor is left with no color.
    fn assign(&mut self, v: usize, c: usize) -> bool {
        self.color[v] = c;
        self.uncolored -= 1;
        let full = if self.colors == 64 { u64::MAX } else { (1u64 << self.colors) - 1 };
        let mut ok = true;
        for i in 0..self.neighbors[v].len() {
            let u = self.neighbors[v][i];
            self.uncolored_degree[u] -= 1;
            let slot = &mut self.count[u * self.colors + c];
            *slot += 1;
            if *slot == 1 {
                self.sat[u] |= 1 << c;
                if self.color[u] == UNCOLORED && self.sat[u] == full {
                    ok = false;
                }
            }
        }
        ok
    }

    fn unassign(&mut self, v: usize) {
        let c = self.color[v];
        for i in 0..self.neighbors[v].len() {
            let u = self.neighbors[v][i];
            self.uncolored_degree[u] += 1;
            let slot = &mut self.count[u * self.colors + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u] &= !(1 << c);
            }
        }
        self.color[v] = UNCOLORED;
        self.uncolored += 1;
    }

    fn pick(&self) -> usize {
        let mut best = UNCOLORED;
        let mut key = (0u32, 0usize);
        for u in 0..self.color.len() {
            if self.color[u] != UNCOLORED {
                continue;
            }
            let k = (self.sat[u].count_ones(), self.uncolored_degree[u]);
            if best == UNCOLORED || k > key {
                best = u;
                key = k;
            }
        }
        best
    }

    fn descend(&mut self, used: usize) -> bool {
        if self.uncolored == 0 {
            return true;
        }
        if self.nodes >= self.limit {
            self.exhausted = true;
            return false;
        }
        self.nodes += 1;
        let v = self.pick();
        let top = (used + 1).min(self.colors);
        for c in 0..top {
            if self.sat[v] >> c & 1 == 1 {
                continue;
            }
            let ok = self.assign(v, c);
            if ok && self.descend(used.max(c + 1)) {
                return true;
            }
            self.unassign(v);
            if self.exhausted {
                return false;
            }
        }
        false
    }
}
