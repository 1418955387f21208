//! Kneser, Schrijver and almost-interlacing graphs with a canonical vertex
//! order, plus DIMACS and JSON export.

use std::collections::{BTreeMap, HashMap};
use std::io::{BufRead, Read, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::alternator::{find_standard_alternator, Alternator};
use crate::cyclic::{is_interlacing, ElemSet, GroundSet};
use crate::error::{Error, Result};

/// Version of the JSON graph schema written by [`LabeledGraph::write_json`].
pub const GRAPH_SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GraphFamily {
    Kneser,
    Schrijver,
    Xg,
    Interlacing,
    Mycielski,
    Complete,
    Custom,
}

/// Identity of a vertex. Subset graphs use [`VertexLabel::Subset`]; the
/// generalized Mycielski construction labels its vertices by base vertex and level.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum VertexLabel {
    Subset(ElemSet),
    Layer { base: usize, level: u32 },
    Apex,
    Plain(usize),
}

/// Dense symmetric adjacency, one bit row per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    size: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(size: usize) -> Self {
        let words = size.div_ceil(64).max(1);
        BitMatrix {
            size,
            words,
            data: vec![0; words * size],
        }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn words(&self) -> usize {
        self.words
    }

    pub fn row(&self, u: usize) -> &[u64] {
        &self.data[u * self.words..(u + 1) * self.words]
    }

    #[inline]
    pub fn get(&self, u: usize, v: usize) -> bool {
        self.data[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    fn set(&mut self, u: usize, v: usize, on: bool) {
        let w = &mut self.data[u * self.words + v / 64];
        if on {
            *w |= 1 << (v % 64);
        } else {
            *w &= !(1 << (v % 64));
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    family: GraphFamily,
    ground: Option<GroundSet>,
    labels: Vec<VertexLabel>,
    adj: BitMatrix,
    neighbors: Vec<Vec<usize>>,
    edge_count: usize,
    alternators: BTreeMap<(usize, usize), Alternator>,
    index: HashMap<ElemSet, usize>,
}

impl LabeledGraph {
    /// Builds a simple graph. Duplicate edges collapse; loops and out-of-range endpoints are errors.
    pub fn from_edges<I>(
        family: GraphFamily,
        ground: Option<GroundSet>,
        labels: Vec<VertexLabel>,
        edges: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let size = labels.len();
        let mut adj = BitMatrix::new(size);
        for (u, v) in edges {
            if u >= size || v >= size {
                return Err(Error::Format(format!("edge ({u}, {v}) out of range for {size} vertices")));
            }
            if u == v {
                return Err(Error::Format(format!("loop at vertex {u}")));
            }
            adj.set(u, v, true);
            adj.set(v, u, true);
        }
        let neighbors: Vec<Vec<usize>> = (0..size)
            .map(|u| (0..size).filter(|&v| adj.get(u, v)).collect())
            .collect();
        let edge_count = neighbors.iter().map(Vec::len).sum::<usize>() / 2;
        let index = labels
            .iter()
            .enumerate()
            .filter_map(|(i, l)| match l {
                VertexLabel::Subset(s) => Some((*s, i)),
                _ => None,
            })
            .collect();
        Ok(LabeledGraph {
            family,
            ground,
            labels,
            adj,
            neighbors,
            edge_count,
            alternators: BTreeMap::new(),
            index,
        })
    }

    /// `K_size` with plain labels.
    pub fn complete(size: usize) -> Self {
        let edges = (0..size).flat_map(|u| (u + 1..size).map(move |v| (u, v)));
        let labels = (0..size).map(VertexLabel::Plain).collect();
        LabeledGraph::from_edges(GraphFamily::Complete, None, labels, edges)
            .expect("complete graph edges are in range")
    }

    pub fn family(&self) -> GraphFamily {
        self.family
    }

    pub fn ground(&self) -> Option<&GroundSet> {
        self.ground.as_ref()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn labels(&self) -> &[VertexLabel] {
        &self.labels
    }

    pub fn label(&self, u: usize) -> VertexLabel {
        self.labels[u]
    }

    /// The subset behind vertex `u`, for Kneser-family graphs.
    pub fn subset(&self, u: usize) -> Option<ElemSet> {
        match self.labels[u] {
            VertexLabel::Subset(s) => Some(s),
            _ => None,
        }
    }

    pub fn index_of(&self, s: ElemSet) -> Option<usize> {
        self.index.get(&s).copied()
    }

    #[inline]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adj.get(u, v)
    }

    pub fn neighbors(&self, u: usize) -> &[usize] {
        &self.neighbors[u]
    }

    pub fn degree(&self, u: usize) -> usize {
        self.neighbors[u].len()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adj
    }

    /// Edges `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.neighbors
            .iter()
            .enumerate()
            .flat_map(|(u, ns)| ns.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// The standard alternator memoized for edge `uv` of an XG graph.
    pub fn alternator(&self, u: usize, v: usize) -> Option<&Alternator> {
        self.alternators.get(&(u.min(v), u.max(v)))
    }

    pub fn alternators(&self) -> &BTreeMap<(usize, usize), Alternator> {
        &self.alternators
    }

    /// A copy with edge `uv` removed (the family becomes [`GraphFamily::Custom`]).
    pub fn without_edge(&self, u: usize, v: usize) -> Self {
        let mut g = self.clone();
        if g.adj.get(u, v) {
            g.adj.set(u, v, false);
            g.adj.set(v, u, false);
            g.neighbors[u].retain(|&w| w != v);
            g.neighbors[v].retain(|&w| w != u);
            g.edge_count -= 1;
            g.alternators.remove(&(u.min(v), u.max(v)));
        }
        g.family = GraphFamily::Custom;
        g
    }

    /// Edge set equality on a common vertex count, ignoring labels.
    pub fn is_spanning_subgraph_of(&self, other: &LabeledGraph) -> bool {
        self.len() == other.len() && self.edges().all(|(u, v)| other.has_edge(u, v))
    }

    /// Writes `p edge V E` followed by `e u v` lines, 1-based, in canonical order.
    pub fn write_dimacs<W: Write>(&self, mut sink: W) -> Result<()> {
        writeln!(sink, "p edge {} {}", self.len(), self.edge_count)?;
        for (u, v) in self.edges() {
            writeln!(sink, "e {} {}", u + 1, v + 1)?;
        }
        Ok(())
    }

    pub fn to_dimacs(&self) -> String {
        let mut buf = Vec::new();
        self.write_dimacs(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("DIMACS output is ASCII")
    }

    /// Parses a DIMACS edge file into a graph with plain labels. `c` comment lines are skipped.
    pub fn read_dimacs<R: BufRead>(source: R) -> Result<Self> {
        let mut size = None;
        let mut edges = Vec::new();
        for line in source.lines() {
            let line = line?;
            let mut parts = line.split_whitespace();
            match parts.next() {
                None | Some("c") => {}
                Some("p") => {
                    let _format = parts.next();
                    let v: usize = parse_field(parts.next(), &line)?;
                    size = Some(v);
                }
                Some("e") => {
                    let u: usize = parse_field(parts.next(), &line)?;
                    let v: usize = parse_field(parts.next(), &line)?;
                    if u == 0 || v == 0 {
                        return Err(Error::Format(format!("DIMACS vertices are 1-based: {line}")));
                    }
                    edges.push((u - 1, v - 1));
                }
                Some(_) => return Err(Error::Format(format!("unexpected DIMACS line: {line}"))),
            }
        }
        let size = size.ok_or_else(|| Error::Format("missing DIMACS header".into()))?;
        let labels = (0..size).map(VertexLabel::Plain).collect();
        LabeledGraph::from_edges(GraphFamily::Custom, None, labels, edges)
    }

    pub fn to_json_value(&self) -> GraphFile {
        let alternators = (!self.alternators.is_empty()).then(|| {
            self.alternators
                .iter()
                .map(|(&(u, v), alt)| EdgeAlternator {
                    edge: [u + 1, v + 1],
                    pairs: alt.clone(),
                })
                .collect()
        });
        GraphFile {
            format: "xgraph".into(),
            version: GRAPH_SCHEMA_VERSION,
            family: self.family,
            n: self.ground.map(|g| g.n()),
            k: self.ground.map(|g| g.k()),
            vertices: self.labels.iter().map(LabelRecord::from).collect(),
            edges: self.edges().map(|(u, v)| [u + 1, v + 1]).collect(),
            alternators,
        }
    }

    pub fn write_json<W: Write>(&self, sink: W) -> Result<()> {
        serde_json::to_writer_pretty(sink, &self.to_json_value()).map_err(|e| Error::Io(e.to_string()))
    }

    pub fn read_json<R: Read>(source: R) -> Result<Self> {
        let file: GraphFile = serde_json::from_reader(source).map_err(|e| Error::Format(e.to_string()))?;
        LabeledGraph::from_json_value(file)
    }

    pub fn from_json_value(file: GraphFile) -> Result<Self> {
        if file.version != GRAPH_SCHEMA_VERSION {
            return Err(Error::Format(format!("unsupported schema version {}", file.version)));
        }
        let ground = match (file.n, file.k) {
            (Some(n), Some(k)) => Some(GroundSet::new(n, k)?),
            (None, None) => None,
            _ => return Err(Error::Format("n and k must be given together".into())),
        };
        let labels = file
            .vertices
            .into_iter()
            .map(VertexLabel::try_from)
            .collect::<Result<Vec<_>>>()?;
        let edges = file
            .edges
            .iter()
            .map(|&[u, v]| one_based(u).and_then(|u| Ok((u, one_based(v)?))))
            .collect::<Result<Vec<_>>>()?;
        let mut graph = LabeledGraph::from_edges(file.family, ground, labels, edges)?;
        for rec in file.alternators.unwrap_or_default() {
            let (u, v) = (one_based(rec.edge[0])?, one_based(rec.edge[1])?);
            if !graph.has_edge(u, v) {
                return Err(Error::Format(format!("alternator for non-edge {:?}", rec.edge)));
            }
            graph.alternators.insert((u.min(v), u.max(v)), rec.pairs);
        }
        Ok(graph)
    }
}

fn one_based(i: usize) -> Result<usize> {
    i.checked_sub(1)
        .ok_or_else(|| Error::Format("vertex indices are 1-based".into()))
}

fn parse_field<T: std::str::FromStr>(field: Option<&str>, line: &str) -> Result<T> {
    field
        .and_then(|f| f.parse().ok())
        .ok_or_else(|| Error::Format(format!("malformed DIMACS line: {line}")))
}

/// On-disk JSON graph record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GraphFile {
    pub format: String,
    pub version: u32,
    pub family: GraphFamily,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<u32>,
    pub vertices: Vec<LabelRecord>,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub alternators: Option<Vec<EdgeAlternator>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EdgeAlternator {
    pub edge: [usize; 2],
    pub pairs: Alternator,
}

/// JSON form of a [`VertexLabel`]: element array, `{"base", "level"}`, `"apex"`, or a bare index.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum LabelRecord {
    Subset(ElemSet),
    Layer { base: usize, level: u32 },
    Plain(usize),
    Named(String),
}

impl From<&VertexLabel> for LabelRecord {
    fn from(l: &VertexLabel) -> Self {
        match *l {
            VertexLabel::Subset(s) => LabelRecord::Subset(s),
            VertexLabel::Layer { base, level } => LabelRecord::Layer { base: base + 1, level },
            VertexLabel::Apex => LabelRecord::Named("apex".into()),
            VertexLabel::Plain(i) => LabelRecord::Plain(i + 1),
        }
    }
}

impl TryFrom<LabelRecord> for VertexLabel {
    type Error = Error;

    fn try_from(r: LabelRecord) -> Result<Self> {
        Ok(match r {
            LabelRecord::Subset(s) => VertexLabel::Subset(s),
            LabelRecord::Layer { base, level } => VertexLabel::Layer {
                base: one_based(base)?,
                level,
            },
            LabelRecord::Plain(i) => VertexLabel::Plain(one_based(i)?),
            LabelRecord::Named(s) if s == "apex" => VertexLabel::Apex,
            LabelRecord::Named(s) => return Err(Error::Format(format!("unknown vertex label {s:?}"))),
        })
    }
}

/// All `k`-subsets of `[n]`, lexicographic on ascending element tuples.
pub fn kneser_vertices(g: &GroundSet) -> Vec<ElemSet> {
    let (n, k) = (g.n() as usize, g.k() as usize);
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (1..=k).collect();
    loop {
        out.push(ElemSet::from_elems(idx.iter().map(|&e| e as u32)));
        // advance to the next combination in lexicographic order
        let mut i = k;
        while i > 0 && idx[i - 1] == n - k + i {
            i -= 1;
        }
        if i == 0 {
            break;
        }
        idx[i - 1] += 1;
        for j in i..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
    out
}

/// The vertices of `SG(n, k)`: `k`-subsets independent in `C_n`, canonically ordered.
pub fn schrijver_vertices(g: &GroundSet) -> Vec<ElemSet> {
    kneser_vertices(g)
        .into_iter()
        .filter(|&s| g.is_independent(s))
        .collect()
}

fn subset_graph<F>(family: GraphFamily, g: &GroundSet, vertices: Vec<ElemSet>, adjacent: F) -> LabeledGraph
where
    F: Fn(ElemSet, ElemSet) -> bool + Sync,
{
    let edges: Vec<(usize, usize)> = (0..vertices.len())
        .into_par_iter()
        .flat_map_iter(|u| {
            let vertices = &vertices;
            let adjacent = &adjacent;
            (u + 1..vertices.len())
                .filter(move |&v| adjacent(vertices[u], vertices[v]))
                .map(move |v| (u, v))
        })
        .collect();
    let labels = vertices.into_iter().map(VertexLabel::Subset).collect();
    LabeledGraph::from_edges(family, Some(*g), labels, edges).expect("subset graph edges are in range")
}

/// `KG(n, k)`: all `k`-subsets, adjacent when disjoint.
pub fn kneser_graph(g: &GroundSet) -> LabeledGraph {
    subset_graph(GraphFamily::Kneser, g, kneser_vertices(g), |a, b| a.is_disjoint(b))
}

/// `SG(n, k)`: the subgraph of `KG(n, k)` induced by the independent sets of `C_n`.
pub fn schrijver_graph(g: &GroundSet) -> LabeledGraph {
    subset_graph(GraphFamily::Schrijver, g, schrijver_vertices(g), |a, b| a.is_disjoint(b))
}

/// The spanning subgraph of `SG(n, k)` with only interlacing edges.
pub fn interlacing_subgraph(g: &GroundSet) -> LabeledGraph {
    let g2 = *g;
    subset_graph(GraphFamily::Interlacing, g, schrijver_vertices(g), move |a, b| {
        a.is_disjoint(b) && is_interlacing(a, b, &g2)
    })
}

/// `XG(n, k)`: the almost-interlacing edges of `SG(n, k)`, each carrying its
/// standard alternator.
pub fn xg_graph(g: &GroundSet) -> LabeledGraph {
    let vertices = schrijver_vertices(g);
    let certified: Vec<((usize, usize), Alternator)> = (0..vertices.len())
        .into_par_iter()
        .flat_map_iter(|u| {
            let vertices = &vertices;
            (u + 1..vertices.len()).filter_map(move |v| {
                let (a, b) = (vertices[u], vertices[v]);
                if !a.is_disjoint(b) {
                    return None;
                }
                find_standard_alternator(a, b, g)
                    .expect("Schrijver vertices are valid and disjoint")
                    .map(|alt| ((u, v), alt))
            })
        })
        .collect();
    let labels = vertices.into_iter().map(VertexLabel::Subset).collect();
    let mut graph = LabeledGraph::from_edges(
        GraphFamily::Xg,
        Some(*g),
        labels,
        certified.iter().map(|(e, _)| *e),
    )
    .expect("XG edges are in range");
    graph.alternators = certified.into_iter().collect();
    graph
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(n: u32, k: u32) -> GroundSet {
        GroundSet::new(n, k).unwrap()
    }

    fn binom(n: u64, k: u64) -> u64 {
        (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
    }

    #[test]
    fn schrijver_vertex_counts() {
        let (a, b) = (ElemSet::from_elems([1, 3, 5]), ElemSet::from_elems([2, 4, 6]));
        assert_eq!(schrijver_vertices(&g(6, 3)), vec![a, b]);
        assert_eq!(schrijver_vertices(&g(8, 3)).len(), 16);
        // n/(n-k) * C(n-k, k)
        assert_eq!(8 * binom(5, 3) / 5, 16);
        assert_eq!(schrijver_vertices(&g(6, 1)).len(), 6);
    }

    #[test]
    fn canonical_order_is_lexicographic() {
        let vs = kneser_vertices(&g(5, 2));
        let tuples: Vec<Vec<u32>> = vs.iter().map(|s| s.to_vec()).collect();
        let mut sorted = tuples.clone();
        sorted.sort();
        assert_eq!(tuples, sorted);
        assert_eq!(tuples[0], vec![1, 2]);
        assert_eq!(tuples[9], vec![4, 5]);
    }

    #[test]
    fn petersen() {
        let kg = kneser_graph(&g(5, 2));
        assert_eq!((kg.len(), kg.edge_count()), (10, 15));
        assert!((0..10).all(|u| kg.degree(u) == 3));
        assert_eq!(kg.to_dimacs().lines().filter(|l| l.starts_with("e ")).count(), 15);
    }

    #[test]
    fn smallest_schrijver_graph_is_k2() {
        for k in 1..=4 {
            let sg = schrijver_graph(&g(2 * k, k));
            assert_eq!((sg.len(), sg.edge_count()), (2, 1));
            let xg = xg_graph(&g(2 * k, k));
            assert_eq!(xg.edge_count(), 1);
            assert_eq!(xg.to_dimacs(), "p edge 2 1\ne 1 2\n");
        }
    }

    #[test]
    fn xg_of_k_equal_one_is_complete() {
        for n in 2..=7 {
            let xg = xg_graph(&g(n, 1));
            assert_eq!(xg.edge_count() as u32, n * (n - 1) / 2);
        }
    }

    #[test]
    fn xg_contains_figure_edge() {
        let g16 = g(16, 4);
        let xg = xg_graph(&g16);
        let a = xg.index_of(ElemSet::from_elems([4, 9, 12, 15])).unwrap();
        let b = xg.index_of(ElemSet::from_elems([6, 8, 13, 16])).unwrap();
        assert!(xg.has_edge(a, b));
        assert_eq!(xg.alternator(a, b).unwrap().as_set(), ElemSet::from_elems([2, 3, 7, 11]));
    }

    #[test]
    fn subgraph_chain() {
        for (n, k) in [(7, 2), (8, 2), (9, 3)] {
            let gs = g(n, k);
            let (sg, xg, il) = (schrijver_graph(&gs), xg_graph(&gs), interlacing_subgraph(&gs));
            assert!(il.is_spanning_subgraph_of(&xg));
            assert!(xg.is_spanning_subgraph_of(&sg));
            assert_eq!(xg.alternators().len(), xg.edge_count());
        }
    }

    #[test]
    fn dimacs_round_trip() {
        let kg = kneser_graph(&g(5, 2));
        let back = LabeledGraph::read_dimacs(kg.to_dimacs().as_bytes()).unwrap();
        assert_eq!(back.len(), 10);
        assert_eq!(back.edges().collect::<Vec<_>>(), kg.edges().collect::<Vec<_>>());
        assert!(LabeledGraph::read_dimacs("e 1 2\n".as_bytes()).is_err());
        assert!(LabeledGraph::read_dimacs("p edge 2 1\ne 0 1\n".as_bytes()).is_err());
    }

    #[test]
    fn json_round_trip() {
        let xg = xg_graph(&g(8, 2));
        let mut buf = Vec::new();
        xg.write_json(&mut buf).unwrap();
        let back = LabeledGraph::read_json(buf.as_slice()).unwrap();
        assert_eq!(back, xg);

        let text = String::from_utf8(buf).unwrap();
        assert!(text.contains("\"version\": 1"));
        assert!(text.contains("\"family\": \"xg\""));
    }

    #[test]
    fn json_rejects_unknown_version() {
        let mut file = kneser_graph(&g(5, 2)).to_json_value();
        file.version = 99;
        assert!(LabeledGraph::from_json_value(file).is_err());
    }

    #[test]
    fn without_edge_drops_one_edge() {
        let xg = xg_graph(&g(7, 2));
        let (u, v) = xg.edges().next().unwrap();
        let h = xg.without_edge(u, v);
        assert_eq!(h.edge_count() + 1, xg.edge_count());
        assert!(!h.has_edge(u, v) && !h.has_edge(v, u));
        assert!(h.alternator(u, v).is_none());
    }
}
