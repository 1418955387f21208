//! Edge-criticality certificates for `XG(n, k)`.
//!
//! For each edge `AB` the verifier builds the context, colors `XG(n, k)` by
//! R1–R7 and checks that the only monochromatic edge of the full graph is
//! `AB` itself, i.e. that the coloring is proper on `XG(n, k) - AB`. On a
//! chosen subset of edges it also asks the exact solver for `χ(XG - AB)`.

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::critical::{critical_coloring, verify_proper, CriticalityContext, OutsidePick, Rule};
use super::exact::{chromatic_number, ChromaticOutcome, SolverConfig};
use crate::alternator::Alternator;
use crate::cyclic::{ElemSet, GroundSet};
use crate::error::{Error, Result};
use crate::graphs::{xg_graph, LabeledGraph};

/// Graphs up to this many vertices get the exact check on every edge under
/// [`ExactCheck::Auto`].
pub const AUTO_EXACT_ALL_LIMIT: usize = 60;

/// Default sample size for the exact check on larger graphs.
pub const DEFAULT_SAMPLE: usize = 25;

/// Which edges get an exact `χ(XG - AB)` computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "mode", rename_all = "kebab-case")]
pub enum ExactCheck {
    None,
    All,
    /// `size` edges drawn uniformly without replacement.
    Sample { size: usize, seed: u64 },
    /// `All` up to [`AUTO_EXACT_ALL_LIMIT`] vertices, otherwise `Sample`.
    Auto { size: usize, seed: u64 },
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CriticalOptions {
    pub outside_pick: OutsidePick,
    pub exact: ExactCheck,
    pub solver: SolverConfig,
    /// Keep the per-vertex `(color, rule)` table in every edge certificate.
    pub tables: bool,
    /// Negative control: fold color 0 into the smallest other color before
    /// checking, which should make the check fail.
    pub corrupt_palette: bool,
}

impl Default for CriticalOptions {
    fn default() -> Self {
        CriticalOptions {
            outside_pick: OutsidePick::default(),
            exact: ExactCheck::None,
            solver: SolverConfig::default(),
            tables: false,
            corrupt_palette: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct VertexEntry {
    pub vertex: ElemSet,
    pub color: u32,
    pub rule: Rule,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clash {
    pub x: ElemSet,
    pub y: ElemSet,
    pub color: u32,
    pub rules: (Rule, Rule),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum ExactChi {
    Exact { chi: usize },
    Unknown { lower: usize, upper: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EdgeCertificate {
    pub a: ElemSet,
    pub b: ElemSet,
    pub alternator: Alternator,
    pub colors_used: usize,
    /// Monochromatic edges of `XG(n, k) - AB`.
    pub violations: Vec<Clash>,
    /// Whether `AB` itself is monochromatic. Always expected: `A` and `B`
    /// both end up with color 0.
    pub ab_monochromatic: bool,
    /// Vertices whose R3/R4 index was not unique.
    pub ambiguous: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub exact_chi: Option<ExactChi>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<VertexEntry>>,
}

impl EdgeCertificate {
    pub fn passed(&self, target: usize) -> bool {
        self.violations.is_empty()
            && self.colors_used <= target
            && !matches!(self.exact_chi, Some(ExactChi::Exact { chi }) if chi != target)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    /// No coloring failed but some exact check ran out of budget.
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalReport {
    pub n: u32,
    pub k: u32,
    /// `n - 2k + 1`
    pub target: usize,
    pub outside_pick: OutsidePick,
    pub exact: ExactCheck,
    pub vertices: usize,
    pub edge_count: usize,
    pub failed_edges: usize,
    pub violations: usize,
    pub exact_checked: usize,
    pub exact_unknown: usize,
    pub verdict: Verdict,
    pub edges: Vec<EdgeCertificate>,
}

/// Indices of the edges (in `xg.edges()` order) that get an exact check.
pub fn exact_edge_selection(check: ExactCheck, vertices: usize, edges: usize) -> Vec<usize> {
    let draw = |size: usize, seed: u64| {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut picked = sample(&mut rng, edges, size.min(edges)).into_vec();
        picked.sort_unstable();
        picked
    };
    match check {
        ExactCheck::None => Vec::new(),
        ExactCheck::All => (0..edges).collect(),
        ExactCheck::Sample { size, seed } => draw(size, seed),
        ExactCheck::Auto { size, seed } => {
            if vertices <= AUTO_EXACT_ALL_LIMIT {
                (0..edges).collect()
            } else {
                draw(size, seed)
            }
        }
    }
}

/// Certifies one edge of `xg` (which must be `XG(n, k)`).
pub fn certify_edge(xg: &LabeledGraph, u: usize, v: usize, opts: &CriticalOptions, exact: bool) -> Result<EdgeCertificate> {
    let g = *xg.ground().ok_or_else(|| Error::InconsistentContext("graph has no ground set".into()))?;
    let (a, b) = match (xg.subset(u), xg.subset(v)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::InconsistentContext("vertices are not labeled by subsets".into())),
    };
    let ctx = match xg.alternator(u, v) {
        Some(alt) => CriticalityContext::with_alternator(a, b, alt.clone(), &g)?,
        None => CriticalityContext::new(a, b, &g)?,
    }
    .with_outside_pick(opts.outside_pick);
    let mut coloring = critical_coloring(xg, &ctx)?;
    if opts.corrupt_palette {
        let merged = ctx.palette().get(1).copied().unwrap_or(0);
        for c in coloring.colors.iter_mut().filter(|c| **c == 0) {
            *c = merged;
        }
    }
    let clashes = verify_proper(xg, &coloring.colors, Some(&coloring.rules))?;
    let (mut ab_monochromatic, mut violations) = (false, Vec::new());
    for c in clashes {
        if (c.u, c.v) == (u.min(v), u.max(v)) {
            ab_monochromatic = true;
        } else {
            violations.push(Clash {
                x: xg.subset(c.u).unwrap_or_default(),
                y: xg.subset(c.v).unwrap_or_default(),
                color: c.color,
                rules: c.rules.expect("rules were supplied"),
            });
        }
    }
    let exact_chi = if exact {
        let h = xg.without_edge(u, v);
        Some(match chromatic_number(&h, opts.solver)? {
            ChromaticOutcome::Exact { chi, .. } => ExactChi::Exact { chi },
            ChromaticOutcome::Unknown { lower, upper, .. } => ExactChi::Unknown { lower, upper },
        })
    } else {
        None
    };
    let table = opts.tables.then(|| {
        (0..xg.len())
            .map(|w| VertexEntry {
                vertex: xg.subset(w).unwrap_or_default(),
                color: coloring.colors[w],
                rule: coloring.rules[w],
            })
            .collect()
    });
    Ok(EdgeCertificate {
        a,
        b,
        alternator: ctx.alternator().clone(),
        colors_used: coloring.colors_used(),
        violations,
        ab_monochromatic,
        ambiguous: coloring.ambiguous.len(),
        exact_chi,
        table,
    })
}

/// Runs [`certify_edge`] on every edge of `XG(n, k)` in the current rayon pool.
pub fn verify_edge_critical(g: &GroundSet, opts: &CriticalOptions) -> Result<CriticalReport> {
    let xg = xg_graph(g);
    verify_edge_critical_on(&xg, opts)
}

/// As [`verify_edge_critical`], for an already constructed `XG(n, k)`.
pub fn verify_edge_critical_on(xg: &LabeledGraph, opts: &CriticalOptions) -> Result<CriticalReport> {
    let g = *xg.ground().ok_or_else(|| Error::InconsistentContext("graph has no ground set".into()))?;
    let (n, k) = (g.n(), g.k());
    let target = (n - 2 * k + 1) as usize;
    let edges: Vec<(usize, usize)> = xg.edges().collect();
    let mut exact_flags = vec![false; edges.len()];
    for i in exact_edge_selection(opts.exact, xg.len(), edges.len()) {
        exact_flags[i] = true;
    }
    let certs: Vec<EdgeCertificate> = edges
        .par_iter()
        .zip(exact_flags.par_iter())
        .map(|(&(u, v), &exact)| certify_edge(xg, u, v, opts, exact))
        .collect::<Result<_>>()?;
    let failed_edges = certs.iter().filter(|c| !c.passed(target)).count();
    let exact_unknown = certs
        .iter()
        .filter(|c| matches!(c.exact_chi, Some(ExactChi::Unknown { .. })))
        .count();
    let verdict = if failed_edges > 0 {
        Verdict::Fail
    } else if exact_unknown > 0 {
        Verdict::Unknown
    } else {
        Verdict::Pass
    };
    Ok(CriticalReport {
        n,
        k,
        target,
        outside_pick: opts.outside_pick,
        exact: opts.exact,
        vertices: xg.len(),
        edge_count: edges.len(),
        failed_edges,
        violations: certs.iter().map(|c| c.violations.len()).sum(),
        exact_checked: certs.iter().filter(|c| c.exact_chi.is_some()).count(),
        exact_unknown,
        verdict,
        edges: certs,
    })
}
