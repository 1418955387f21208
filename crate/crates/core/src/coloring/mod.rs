//! Exact coloring and the explicit `(n - 2k + 1)`-coloring of `XG(n, k) - AB`.

pub mod certify;
pub mod critical;
pub mod exact;
mod sat;

pub use certify::{verify_edge_critical, CriticalOptions, CriticalReport, ExactCheck, Verdict};
pub use critical::{critical_coloring, verify_proper, CriticalColoring, CriticalityContext, OutsidePick, Rule};
pub use exact::{chromatic_number, is_proper, ChromaticOutcome, SolverConfig};
