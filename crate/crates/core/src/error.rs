use thiserror::Error;

/// Errors raised by the graph constructions and verifiers.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid ground set (n = {n}, k = {k}): need k >= 1, n >= 2k and n <= {max}", max = crate::cyclic::MAX_N)]
    InvalidGroundSet { n: u32, k: u32 },

    #[error("element {element} is outside [1, {n}]")]
    ElementOutOfRange { element: u32, n: u32 },

    #[error("set {set} is not a vertex of SG({n}, {k})")]
    InvalidVertex { set: String, n: u32, k: u32 },

    #[error("sets {a} and {b} are not disjoint")]
    NotDisjoint { a: String, b: String },

    #[error("a consecutive pair needs at least two elements, got {len}")]
    TooFewElements { len: u32 },

    #[error("{what} = {value} is out of range [{lo}, {hi}]")]
    OutOfRange {
        what: &'static str,
        value: u32,
        lo: u32,
        hi: u32,
    },

    #[error("operation requires k = {expected}, got k = {actual}")]
    WrongK { expected: u32, actual: u32 },

    #[error("expected {expected} Mycielski radii, got {actual}")]
    RadiiLength { expected: usize, actual: usize },

    #[error("vertex map has {actual} entries, source graph has {expected} vertices")]
    MapLength { expected: usize, actual: usize },

    #[error("vertex map sends source vertex {source_vertex} to {target}, outside the target graph")]
    MapOutOfRange { source_vertex: usize, target: String },

    #[error("coloring covers {actual} vertices, graph has {expected}")]
    PartialColoring { expected: usize, actual: usize },

    #[error("{a} {b} is not an edge of XG({n}, {k})")]
    NotAnEdge { a: String, b: String, n: u32, k: u32 },

    #[error("criticality context is inconsistent with the removed edge: {0}")]
    InconsistentContext(String),

    #[error("graph has no vertices")]
    EmptyGraph,

    #[error("malformed graph file: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
