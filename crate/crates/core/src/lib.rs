//! Kneser, Schrijver and almost-interlacing graphs `XG(n, k)`.
//!
//! The crate builds the graph family, decides almost-interlacing adjacency
//! through standard alternators, checks the generalized Mycielski
//! homomorphism `M_k(XG(n - 1, k)) -> XG(n, k)`, and certifies edge-criticality
//! of `XG(n, k)` with an explicit `(n - 2k + 1)`-coloring of `XG(n, k) - AB`.
//! An exact chromatic-number solver serves as the independent oracle.

pub mod alternator;
pub mod coloring;
pub mod cyclic;
pub mod error;
pub mod graphs;
pub mod mycielski;

pub use alternator::{Alternator, ControlPair};
pub use cyclic::{CyclicInterval, ElemSet, GroundSet, Openness};
pub use error::{Error, Result};
pub use graphs::{GraphFamily, LabeledGraph, VertexLabel};
