//! Exact analysis of finite labelled graphs: accommodating set structures,
//! the simplicity criteria of the associated labelled graph algebra, and a
//! small symbolic calculus over its canonical generators.
//!
//! Entry points: [`graph::LabelledGraph::parse`] for input,
//! [`analysis::Analysis`] for a validated session and
//! [`verdict::simplicity_verdict`] for the combined decision.

pub mod accommodating;
pub mod algebra;
pub mod analysis;
pub mod automaton;
pub mod caps;
pub mod cofinality;
pub mod disagreeable;
pub mod error;
pub mod fixtures;
pub mod graph;
pub mod sample;
pub mod verdict;
pub mod wlr;
pub mod words;

pub use accommodating::{Partition, SetFamily};
pub use analysis::Analysis;
pub use caps::Caps;
pub use error::{Error, Result};
pub use graph::{LabelId, LabelWord, LabelledGraph, VertexId, VertexSet};
pub use verdict::{simplicity_verdict, Simplicity, SimplicityReport};
