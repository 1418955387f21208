//! The generalized Mycielski construction `M_r(G)` and the homomorphism
//! `f: M_k(XG(n - 1, k)) -> XG(n, k)`.
//!
//! `M_r(G)` has vertices `(u, j)` for `u ∈ V(G)`, `j ∈ [0, r - 1]`, plus an apex
//! `z`. Vertex `(u, j)` sits at index `j * |V(G)| + u` and the apex comes last.

use std::fmt;

use serde::Serialize;

use crate::alternator::{find_standard_alternator, is_alternator, switch_along, Alternator, ControlPair};
use crate::cyclic::{closed_count, ElemSet, GroundSet};
use crate::error::{Error, Result};
use crate::graphs::{xg_graph, GraphFamily, LabeledGraph, VertexLabel};

/// `M_r(G)`.
pub fn mycielski(g: &LabeledGraph, r: u32) -> Result<LabeledGraph> {
    if r < 1 {
        return Err(Error::OutOfRange {
            what: "r",
            value: r,
            lo: 1,
            hi: u32::MAX,
        });
    }
    let size = g.len();
    let r = r as usize;
    let apex = r * size;
    let mut labels: Vec<VertexLabel> = (0..r)
        .flat_map(|level| (0..size).map(move |base| VertexLabel::Layer { base, level: level as u32 }))
        .collect();
    labels.push(VertexLabel::Apex);

    let mut edges = Vec::new();
    for (u, v) in g.edges() {
        edges.push((u, v));
        for i in 0..r - 1 {
            edges.push((i * size + u, (i + 1) * size + v));
            edges.push((i * size + v, (i + 1) * size + u));
        }
    }
    edges.extend((0..size).map(|u| ((r - 1) * size + u, apex)));
    LabeledGraph::from_edges(GraphFamily::Mycielski, None, labels, edges)
}

/// `M_{r_{t-2}}(... M_{r_1}(K_2) ...)`, a member of the family `𝓜_t`.
pub fn mycielski_tower(t: u32, radii: &[u32]) -> Result<LabeledGraph> {
    if t < 2 {
        return Err(Error::OutOfRange {
            what: "t",
            value: t,
            lo: 2,
            hi: u32::MAX,
        });
    }
    let expected = (t - 2) as usize;
    if radii.len() != expected {
        return Err(Error::RadiiLength {
            expected,
            actual: radii.len(),
        });
    }
    radii
        .iter()
        .try_fold(LabeledGraph::complete(2), |g, &r| mycielski(&g, r))
}

/// `Λ_{n,i}`: for odd `i`, `{n-i+1, n-i+3, ..., n} ∪ {2, 4, ..., i-1}`; for
/// even `i`, `{n-i+1, n-i+3, ..., n-1} ∪ {1, 3, ..., i-1}`.
pub fn lambda_set(g: &GroundSet, i: u32) -> Result<ElemSet> {
    let (n, k) = (g.n(), g.k());
    if i > k {
        return Err(Error::OutOfRange {
            what: "i",
            value: i,
            lo: 0,
            hi: k,
        });
    }
    let high = (n + 1 - i..=n).step_by(2);
    let low_start = if i % 2 == 1 { 2 } else { 1 };
    let low = (low_start..i).step_by(2);
    Ok(high.chain(low).collect())
}

/// `A^j`: the `j` elements of `A` closest to `j` counterclockwise (`j` itself
/// included), i.e. `[d, j]_A` for the largest `d` with `|[d, j]_A| = j`.
pub fn prefix_set(a: ElemSet, j: u32, g: &GroundSet) -> Result<ElemSet> {
    let k = g.k();
    if j > k {
        return Err(Error::OutOfRange {
            what: "j",
            value: j,
            lo: 0,
            hi: k,
        });
    }
    if j > a.len() {
        return Err(Error::OutOfRange {
            what: "j",
            value: j,
            lo: 0,
            hi: a.len(),
        });
    }
    if j == 0 {
        return Ok(ElemSet::EMPTY);
    }
    let mut out = ElemSet::EMPTY;
    let mut e = j;
    while out.len() < j {
        if a.contains(e) {
            out = out.with(e);
        }
        e = g.pred(e);
    }
    Ok(out)
}

/// `f(A, j) = (A ∖ A^j) ∪ Λ_{n,j}` for `j ∈ [0, k - 1]`.
pub fn f_layer(a: ElemSet, j: u32, g: &GroundSet) -> Result<ElemSet> {
    if j >= g.k() {
        return Err(Error::OutOfRange {
            what: "j",
            value: j,
            lo: 0,
            hi: g.k() - 1,
        });
    }
    Ok((a - prefix_set(a, j, g)?) | lambda_set(g, j)?)
}

/// `f(Z) = Λ_{n,k}`.
pub fn f_apex(g: &GroundSet) -> ElemSet {
    lambda_set(g, g.k()).expect("k is in range")
}

/// Explicit `f: M_k(XG(n - 1, k)) -> XG(n, k)` with all three graphs.
#[derive(Clone, Debug)]
pub struct HomomorphismInstance {
    pub target_ground: GroundSet,
    /// `XG(n - 1, k)`
    pub base: LabeledGraph,
    /// `M_k(XG(n - 1, k))`
    pub source: LabeledGraph,
    /// `XG(n, k)`
    pub target: LabeledGraph,
    /// `f` as source index -> target index.
    pub map: Vec<usize>,
}

/// Builds `f` for the target ground set `(n, k)`; needs `n >= 2k + 1`.
pub fn homomorphism_f(target_ground: &GroundSet) -> Result<HomomorphismInstance> {
    let (n, k) = (target_ground.n(), target_ground.k());
    if n < 2 * k + 1 {
        return Err(Error::InvalidGroundSet { n: n - 1, k });
    }
    let base_ground = GroundSet::new(n - 1, k)?;
    let base = xg_graph(&base_ground);
    let source = mycielski(&base, k)?;
    let target = xg_graph(target_ground);
    let images = source
        .labels()
        .iter()
        .map(|label| match *label {
            VertexLabel::Layer { base: u, level } => {
                let a = base.subset(u).expect("XG vertices are subsets");
                f_layer(a, level, target_ground)
            }
            VertexLabel::Apex => Ok(f_apex(target_ground)),
            _ => unreachable!("Mycielski graphs only carry layer and apex labels"),
        })
        .collect::<Result<Vec<_>>>()?;
    let map = index_map(&images, &target)?;
    Ok(HomomorphismInstance {
        target_ground: *target_ground,
        base,
        source,
        target,
        map,
    })
}

/// Resolves set images to target vertex indices.
pub fn index_map(images: &[ElemSet], target: &LabeledGraph) -> Result<Vec<usize>> {
    images
        .iter()
        .enumerate()
        .map(|(i, s)| {
            target.index_of(*s).ok_or_else(|| Error::MapOutOfRange {
                source_vertex: i,
                target: s.to_string(),
            })
        })
        .collect()
}

/// The three edge types of `M_r(G)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum MycielskiEdgeKind {
    /// `(u, 0)(v, 0)`
    Base,
    /// `(u, j)(v, j + 1)`
    Layer { lower: u32 },
    /// `(u, r - 1) z`
    Apex,
}

impl fmt::Display for MycielskiEdgeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MycielskiEdgeKind::Base => f.write_str("(A,0)(B,0)"),
            MycielskiEdgeKind::Layer { lower } => write!(f, "(A,{lower})(B,{})", lower + 1),
            MycielskiEdgeKind::Apex => f.write_str("(A,k-1)Z"),
        }
    }
}

/// Edge type of `uv` in a Mycielski graph, `None` for other labels.
pub fn mycielski_edge_kind(source: &LabeledGraph, u: usize, v: usize) -> Option<MycielskiEdgeKind> {
    match (source.label(u), source.label(v)) {
        (VertexLabel::Apex, _) | (_, VertexLabel::Apex) => Some(MycielskiEdgeKind::Apex),
        (VertexLabel::Layer { level: i, .. }, VertexLabel::Layer { level: j, .. }) => {
            if i == j {
                Some(MycielskiEdgeKind::Base)
            } else {
                Some(MycielskiEdgeKind::Layer { lower: i.min(j) })
            }
        }
        _ => None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomViolation {
    pub source_edge: (usize, usize),
    pub image: (usize, usize),
    pub kind: Option<MycielskiEdgeKind>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomReport {
    pub edges_checked: usize,
    pub violations: Vec<HomViolation>,
}

impl HomReport {
    pub fn is_homomorphism(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks that every source edge maps onto a target edge; lists every failure.
pub fn verify_homomorphism(source: &LabeledGraph, target: &LabeledGraph, map: &[usize]) -> Result<HomReport> {
    if map.len() != source.len() {
        return Err(Error::MapLength {
            expected: source.len(),
            actual: map.len(),
        });
    }
    if let Some((i, &t)) = map.iter().enumerate().find(|(_, &t)| t >= target.len()) {
        return Err(Error::MapOutOfRange {
            source_vertex: i,
            target: format!("index {t}"),
        });
    }
    let mut report = HomReport::default();
    for (u, v) in source.edges() {
        report.edges_checked += 1;
        let (fu, fv) = (map[u], map[v]);
        if !target.has_edge(fu, fv) {
            report.violations.push(HomViolation {
                source_edge: (u, v),
                image: (fu, fv),
                kind: mycielski_edge_kind(source, u, v),
            });
        }
    }
    Ok(report)
}

/// Lifts `h: G -> H` to `M_r(G) -> M_r(H)` level by level, apex to apex.
pub fn lift_homomorphism(map: &[usize], target_size: usize, r: u32) -> Vec<usize> {
    let size = map.len();
    let mut out = Vec::with_capacity(size * r as usize + 1);
    for level in 0..r as usize {
        out.extend(map.iter().map(|&t| level * target_size + t));
    }
    out.push(r as usize * target_size);
    out
}

/// An explicit `f(A, j) f(B, j + 1)`-alternator built from the standard
/// `AB`-alternator of the edge `AB` of `XG(n - 1, k)`.
///
/// With `A_m B_m` the interlacing result of switching `AB`, `d` the largest
/// element of `[k + 1, n]` making `[d, j + 1]` weakly `A_m B_m`-admissible, and
/// `t` the last control index with `c_t < j + 1`, the candidates are the
/// control pairs after `t`, alone or preceded by `⟨j + 1, d⟩`. When
/// `c_{t+1} = j + 1` the switches at `[d, j + 1]` and `[d_{t+1}, j + 1]`
/// share an endpoint and the pair `⟨c_{t+1}, d_{t+1}⟩` is absorbed, so the
/// tail without its first pair is tried as well. Returns the first candidate
/// that passes every alternator condition.
pub fn layer_edge_alternator(a: ElemSet, b: ElemSet, j: u32, target: &GroundSet) -> Result<Option<Alternator>> {
    let (n, k) = (target.n(), target.k());
    let base_ground = GroundSet::new(n - 1, k)?;
    let alt = find_standard_alternator(a, b, &base_ground)?.ok_or_else(|| Error::NotAnEdge {
        a: a.to_string(),
        b: b.to_string(),
        n: n - 1,
        k,
    })?;
    let (am, bm) = switch_along(a, b, &alt.intervals(&base_ground)?);
    let c = j + 1;
    let Some(d) = (k + 1..=n)
        .rev()
        .find(|&d| closed_count(d, c, am, n) == c && closed_count(d, c, bm, n) == c)
    else {
        return Ok(None);
    };
    let t = alt.pairs().iter().rposition(|p| p.c < c).map_or(0, |i| i + 1);
    let tail = &alt.pairs()[t..];

    let a2 = f_layer(a, j, target)?;
    let b2 = f_layer(b, j + 1, target)?;
    let mut candidates = vec![tail.to_vec()];
    if tail.first().is_some_and(|p| p.c == c) {
        candidates.push(tail[1..].to_vec());
    } else {
        candidates.push(std::iter::once(ControlPair { c, d }).chain(tail.iter().copied()).collect());
    }
    Ok(candidates
        .into_iter()
        .map(Alternator::from_pairs)
        .find(|alt| is_alternator(a2, b2, alt, target)))
}
