//! The explicit `(n - 2k + 1)`-coloring of `XG(n, k) - AB`.
//!
//! Fix an edge `AB` with standard alternator pairs `⟨c_i, d_i⟩`, `i ∈ [m]`,
//! numbered so that `c_1 < … < c_m < k < d_m < … < d_1`, and put
//! `W = A ∪ B ∪ C ∪ D`. Every vertex is classified against the intervals
//! `[d_i, c_i)` and `(d_i, c_i]` and then colored by the first rule that
//! applies:
//!
//! | rule | condition | color |
//! |------|-----------|-------|
//! | R1 | `X ⊄ W` | largest element of `X ∖ W` (see [`OutsidePick`]) |
//! | R2 | balanced pair `{c_i, d_i} ⊆ X` | `c_i`, least `i` |
//! | R3 | min-heavy or max-light on `(d_i, c_i]` | `c_i` |
//! | R4 | min-heavy or max-light on `[d_i, c_i)` | `d_i` |
//! | R5 | `W`-consecutive pair, depth `j` | `j` if `j ∈ [k-1] ∖ (A ∪ B)`, else 0 |
//! | R6 | skew at `d_i` | `d_i`, least `i` |
//! | R7 | otherwise | 0 |
//!
//! Color `j > 0` stands for `col_j` with `j ∉ A ∪ B`; color 0 is the extra
//! color, so at most `n - 2k + 1` colors appear.
//!
//! R1 names the *largest* outside element by default. Naming the least one
//! lets an inessential vertex holding `j ∈ [k-1] ∖ W` share `col_j` with an
//! adjacent R5 vertex of depth `j`; [`OutsidePick::Least`] keeps that variant
//! available for comparison.
//!
//! R3 and R4 can match at two indices at once (min-heavy at one, max-light at
//! another). The least index is used and the vertex is reported in
//! [`CriticalColoring::ambiguous`]; each color class argument only needs the
//! vertex to satisfy the property tied to its color, so either choice is sound.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::alternator::{depth, find_standard_alternator, is_alternator, Alternator};
use crate::cyclic::{interval_mask, CyclicInterval, ElemSet, GroundSet, Openness};
use crate::error::{Error, Result};
use crate::graphs::LabeledGraph;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Rule {
    R1,
    R2,
    R3,
    R4,
    R5,
    R6,
    R7,
}

impl Rule {
    pub const ALL: [Rule; 7] = [Rule::R1, Rule::R2, Rule::R3, Rule::R4, Rule::R5, Rule::R6, Rule::R7];
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

/// An edge `AB` of `XG(n, k)` together with its standard alternator and the
/// sets derived from it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CriticalityContext {
    ground: GroundSet,
    a: ElemSet,
    b: ElemSet,
    alt: Alternator,
    w: ElemSet,
    /// `U_1 … U_{m+1}`; empty when `m = 0`.
    u: Vec<ElemSet>,
    outside_pick: OutsidePick,
}

/// Which element of `X ∖ W` names the color of an inessential vertex (R1).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutsidePick {
    /// The largest element. This keeps `X ∖ W ⊆ [1, j]` for a vertex colored
    /// `col_j` with `j < k`, which the depth argument against R5 vertices needs.
    #[default]
    Largest,
    /// The least element. Not a proper coloring in general: an inessential
    /// vertex `{1, 5}` and an R5 vertex `{4, 6}` of depth 1 share `col_1` in
    /// `XG(6, 2) - {2,4}{3,6}` although they are adjacent.
    Least,
}

impl CriticalityContext {
    /// Context for the edge `AB`; fails when `AB` is not an edge of `XG(n, k)`.
    pub fn new(a: ElemSet, b: ElemSet, g: &GroundSet) -> Result<Self> {
        match find_standard_alternator(a, b, g)? {
            Some(alt) => Self::with_alternator(a, b, alt, g),
            None => Err(Error::NotAnEdge {
                a: a.to_string(),
                b: b.to_string(),
                n: g.n(),
                k: g.k(),
            }),
        }
    }

    /// Context from a given alternator, which must be the standard one for `AB`.
    pub fn with_alternator(a: ElemSet, b: ElemSet, alt: Alternator, g: &GroundSet) -> Result<Self> {
        g.check_vertex(a)?;
        g.check_vertex(b)?;
        let bad = |msg: String| Err(Error::InconsistentContext(msg));
        if !a.is_disjoint(b) {
            return bad(format!("{a} and {b} intersect"));
        }
        if !is_alternator(a, b, &alt, g) {
            return bad(format!("{alt} is not an alternator for {a}, {b}"));
        }
        let ab = a | b;
        if let Some(p) = alt.pairs().iter().find(|p| !ab.contains(g.succ(p.d))) {
            return bad(format!("partner {} is not gap-maximal", p.d));
        }
        let w = ab | alt.as_set();
        let mut ctx = CriticalityContext {
            ground: *g,
            a,
            b,
            alt,
            w,
            u: Vec::new(),
            outside_pick: OutsidePick::default(),
        };
        let m = ctx.m();
        if m > 0 {
            ctx.u = (1..=m + 1)
                .map(|i| {
                    ctx.open_w(ctx.d_ext(i), ctx.d_ext(i - 1)) | ctx.open_w(ctx.c_ext(i - 1), ctx.c_ext(i))
                })
                .collect();
            for (idx, &ui) in ctx.u.iter().enumerate() {
                let i = idx + 1;
                let expected = if i == 1 {
                    2 * ctx.c(1)
                } else if i == m + 1 {
                    2 * (g.k() - ctx.c(m))
                } else {
                    2 * (ctx.c(i) - ctx.c(i - 1))
                };
                if !ui.is_subset(ab) || ui.len() != expected {
                    return bad(format!("U_{i} = {ui} should be a subset of A ∪ B of size {expected}"));
                }
            }
        }
        Ok(ctx)
    }

    /// Same context with a different R1 choice.
    pub fn with_outside_pick(mut self, pick: OutsidePick) -> Self {
        self.outside_pick = pick;
        self
    }

    pub fn outside_pick(&self) -> OutsidePick {
        self.outside_pick
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn a(&self) -> ElemSet {
        self.a
    }

    pub fn b(&self) -> ElemSet {
        self.b
    }

    pub fn alternator(&self) -> &Alternator {
        &self.alt
    }

    /// Number of control pairs.
    pub fn m(&self) -> usize {
        self.alt.len()
    }

    /// `W = A ∪ B ∪ C ∪ D`
    pub fn w(&self) -> ElemSet {
        self.w
    }

    /// `c_i` for `i ∈ [m]`.
    pub fn c(&self, i: usize) -> u32 {
        self.alt.pairs()[i - 1].c
    }

    /// `d_i` for `i ∈ [m]`.
    pub fn d(&self, i: usize) -> u32 {
        self.alt.pairs()[i - 1].d
    }

    /// `c_i` for `i ∈ [0, m + 1]`, with `c_0 = d_1` and `c_{m+1} = d_m`.
    pub fn c_ext(&self, i: usize) -> u32 {
        match i {
            0 => self.d(1),
            i if i == self.m() + 1 => self.d(self.m()),
            i => self.c(i),
        }
    }

    /// `d_i` for `i ∈ [0, m + 1]`, with `d_0 = c_1` and `d_{m+1} = c_m`.
    pub fn d_ext(&self, i: usize) -> u32 {
        match i {
            0 => self.c(1),
            i if i == self.m() + 1 => self.c(self.m()),
            i => self.d(i),
        }
    }

    /// `U_i` for `i ∈ [m + 1]` (requires `m ≥ 1`).
    pub fn u(&self, i: usize) -> ElemSet {
        self.u[i - 1]
    }

    /// Color ids in use: 0 followed by `[n] ∖ (A ∪ B)` in increasing order.
    pub fn palette(&self) -> Vec<u32> {
        let free = self.ground.full() - (self.a | self.b);
        std::iter::once(0).chain(free.iter()).collect()
    }

    /// `(x, y)_W`
    fn open_w(&self, x: u32, y: u32) -> ElemSet {
        interval_mask(x, y, Openness::Open, self.ground.n()) & self.w
    }

    fn count(&self, start: u32, end: u32, openness: Openness, x: ElemSet) -> u32 {
        (interval_mask(start, end, openness, self.ground.n()) & x).len()
    }

    /// Elements of `(x, y)_W` in clockwise order from `x`.
    fn open_w_members(&self, x: u32, y: u32) -> Vec<u32> {
        CyclicInterval::open(x, y, &self.ground)
            .map(|iv| iv.restrict(self.w))
            .unwrap_or_default()
    }

    /// The `W`-consecutive pair `⟨s, s'⟩` in `X` with `s` as large as possible.
    pub fn consecutive_pair(&self, x: ElemSet) -> Option<(u32, u32)> {
        let w = self.w.to_vec();
        (0..w.len())
            .rev()
            .map(|i| (w[i], w[(i + 1) % w.len()]))
            .find(|&(s, t)| s != t && x.contains(s) && x.contains(t))
    }

    /// `δ(X)`: the depth of `s'` in `X` for the pair from
    /// [`consecutive_pair`](Self::consecutive_pair). When `s'` falls outside
    /// `[k, n]` the depth is undefined and the sentinel `k` is returned.
    pub fn vertex_depth(&self, x: ElemSet) -> Option<u32> {
        let (_, t) = self.consecutive_pair(x)?;
        Some(depth(x, t, &self.ground).unwrap_or(self.ground.k()))
    }

    /// Whether `X` is skew at `d_i`, `i ∈ [m + 1]`: it contains the last
    /// element of `(d_{i+1}, d_i)_W` and the second element of `(d_i, d_{i-1})_W`,
    /// both in clockwise order.
    pub fn is_skew_at(&self, x: ElemSet, i: usize) -> bool {
        let before = self.open_w_members(self.d_ext(i + 1), self.d_ext(i));
        let after = self.open_w_members(self.d_ext(i), self.d_ext(i - 1));
        match (before.last(), after.get(1)) {
            (Some(&p), Some(&q)) => x.contains(p) && x.contains(q),
            _ => false,
        }
    }

    /// Full classification of a vertex.
    pub fn classify(&self, x: ElemSet) -> Classification {
        let m = self.m();
        let status = |openness: Openness| -> Vec<Balance> {
            (1..=m)
                .map(|i| Balance::of(self.count(self.d(i), self.c(i), openness, x), self.c(i)))
                .collect()
        };
        let left = status(Openness::OpenRight);
        let right = status(Openness::OpenLeft);
        let heavy_before: Vec<bool> = (0..=m)
            .map(|i| (0..i).any(|j| left[j] == Balance::Heavy || right[j] == Balance::Heavy))
            .collect();
        let light_after: Vec<bool> = (0..m)
            .map(|i| (i + 1..m).any(|j| left[j] == Balance::Light || right[j] == Balance::Light))
            .collect();
        let intervals = |bal: &[Balance]| -> Vec<IntervalStatus> {
            (0..m)
                .map(|i| IntervalStatus {
                    balance: bal[i],
                    min_heavy: bal[i] == Balance::Heavy && !heavy_before[i],
                    max_light: bal[i] == Balance::Light && !light_after[i],
                })
                .collect()
        };
        let balanced = left.iter().chain(&right).all(|&s| s == Balance::Balanced);
        let ab = self.a | self.b;
        let balanced_pairs = (1..=m)
            .filter(|&i| x.contains(self.c(i)) && x.contains(self.d(i)) && left[i - 1] == Balance::Balanced)
            .collect();
        let pair = self.consecutive_pair(x);
        Classification {
            essential: x.is_subset(self.w),
            left_closed: intervals(&left),
            right_closed: intervals(&right),
            balanced,
            regular: balanced && x.is_subset(ab),
            balanced_pairs,
            skew: (1..=m).filter(|&i| self.is_skew_at(x, i)).collect(),
            consecutive_pair: pair,
            depth: pair.map(|(_, t)| depth(x, t, &self.ground).unwrap_or(self.ground.k())),
        }
    }

    /// Every rule whose condition holds for `X`, with the color it would give.
    pub fn applicable_rules(&self, x: ElemSet) -> Vec<(Rule, u32)> {
        let cls = self.classify(x);
        let mut out = Vec::new();
        let outside = x - self.w;
        let pick = match self.outside_pick {
            OutsidePick::Largest => outside.max(),
            OutsidePick::Least => outside.min(),
        };
        if let Some(j) = pick {
            out.push((Rule::R1, j));
        }
        if let Some(&i) = cls.balanced_pairs.first() {
            out.push((Rule::R2, self.c(i)));
        }
        for (i, s) in cls.right_closed.iter().enumerate() {
            if s.min_heavy || s.max_light {
                out.push((Rule::R3, self.c(i + 1)));
            }
        }
        for (i, s) in cls.left_closed.iter().enumerate() {
            if s.min_heavy || s.max_light {
                out.push((Rule::R4, self.d(i + 1)));
            }
        }
        if let Some(j) = cls.depth {
            let k = self.ground.k();
            let color = if j < k && !(self.a | self.b).contains(j) { j } else { 0 };
            out.push((Rule::R5, color));
        }
        if let Some(&i) = cls.skew.first() {
            out.push((Rule::R6, self.d(i)));
        }
        out.push((Rule::R7, 0));
        out
    }

    /// Color of `X` and the rule that gave it; `ambiguous` is set when the
    /// deciding rule matched at several indices with different colors.
    pub fn color_of(&self, x: ElemSet) -> (u32, Rule, bool) {
        let rules = self.applicable_rules(x);
        let (rule, color) = rules[0];
        let ambiguous = rules.iter().any(|&(r, c)| r == rule && c != color);
        (color, rule, ambiguous)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Balance {
    Light,
    Balanced,
    Heavy,
}

impl Balance {
    fn of(count: u32, c: u32) -> Self {
        match count.cmp(&c) {
            std::cmp::Ordering::Less => Balance::Light,
            std::cmp::Ordering::Equal => Balance::Balanced,
            std::cmp::Ordering::Greater => Balance::Heavy,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntervalStatus {
    pub balance: Balance,
    pub min_heavy: bool,
    pub max_light: bool,
}

/// How a vertex sits relative to the control intervals of a context.
/// Index `i - 1` of the per-interval vectors refers to pair `i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// `X ⊆ W`
    pub essential: bool,
    /// Status on `[d_i, c_i)`.
    pub left_closed: Vec<IntervalStatus>,
    /// Status on `(d_i, c_i]`.
    pub right_closed: Vec<IntervalStatus>,
    pub balanced: bool,
    pub regular: bool,
    /// Indices `i` (1-based) with `{c_i, d_i}` a balanced pair in `X`.
    pub balanced_pairs: Vec<usize>,
    /// Indices `i ∈ [m]` (1-based) with `X` skew at `d_i`.
    pub skew: Vec<usize>,
    /// The `W`-consecutive pair with largest first element.
    pub consecutive_pair: Option<(u32, u32)>,
    /// `δ(X)`, present exactly when `consecutive_pair` is.
    pub depth: Option<u32>,
}

/// A coloring of `XG(n, k) - AB` by rules R1–R7, indexed like the graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CriticalColoring {
    pub colors: Vec<u32>,
    pub rules: Vec<Rule>,
    /// Vertices where R3 or R4 matched at indices with different colors.
    pub ambiguous: Vec<usize>,
}

impl CriticalColoring {
    /// Number of distinct colors used.
    pub fn colors_used(&self) -> usize {
        let mut seen: Vec<u32> = self.colors.clone();
        seen.sort_unstable();
        seen.dedup();
        seen.len()
    }
}

/// Colors every vertex of `xg` (which must be `XG(n, k)` over the context's
/// ground set) by rules R1–R7.
pub fn critical_coloring(xg: &LabeledGraph, ctx: &CriticalityContext) -> Result<CriticalColoring> {
    if xg.ground() != Some(ctx.ground()) {
        return Err(Error::InconsistentContext("graph and context use different ground sets".into()));
    }
    match (xg.index_of(ctx.a()), xg.index_of(ctx.b())) {
        (Some(ia), Some(ib)) if xg.has_edge(ia, ib) => {}
        _ => {
            return Err(Error::InconsistentContext(format!(
                "{} {} is not an edge of the graph",
                ctx.a(),
                ctx.b()
            )))
        }
    }
    let mut out = CriticalColoring {
        colors: Vec::with_capacity(xg.len()),
        rules: Vec::with_capacity(xg.len()),
        ambiguous: Vec::new(),
    };
    for v in 0..xg.len() {
        let x = xg
            .subset(v)
            .ok_or_else(|| Error::InconsistentContext(format!("vertex {v} is not labeled by a subset")))?;
        let (color, rule, ambiguous) = ctx.color_of(x);
        out.colors.push(color);
        out.rules.push(rule);
        if ambiguous {
            out.ambiguous.push(v);
        }
    }
    Ok(out)
}

/// A monochromatic edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub u: usize,
    pub v: usize,
    pub color: u32,
    /// Rule tags of `u` and `v`, when known.
    pub rules: Option<(Rule, Rule)>,
}

/// All monochromatic edges of `g` under `colors`.
pub fn verify_proper(g: &LabeledGraph, colors: &[u32], rules: Option<&[Rule]>) -> Result<Vec<Violation>> {
    if colors.len() != g.len() || rules.is_some_and(|r| r.len() != g.len()) {
        return Err(Error::PartialColoring {
            expected: g.len(),
            actual: colors.len().min(rules.map_or(usize::MAX, <[Rule]>::len)),
        });
    }
    Ok(g.edges()
        .filter(|&(u, v)| colors[u] == colors[v])
        .map(|(u, v)| Violation {
            u,
            v,
            color: colors[u],
            rules: rules.map(|r| (r[u], r[v])),
        })
        .collect())
}
