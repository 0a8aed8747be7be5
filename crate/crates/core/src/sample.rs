//! Seeded random labelled graphs for cross-checking the deciders against
//! their independent oracles.  Generated graphs always satisfy the standing
//! assumptions: no sinks, no duplicate labelled edges.

use std::collections::BTreeSet;

use rand::Rng;

use crate::graph::LabelledGraph;

/// A random graph with at most `max_vertices` vertices and `max_labels`
/// labels.  Every vertex gets at least one outgoing edge.
pub fn random_graph<R: Rng>(rng: &mut R, max_vertices: usize, max_labels: usize) -> LabelledGraph {
    let n = rng.gen_range(1..=max_vertices.max(1));
    let k = rng.gen_range(1..=max_labels.max(1));
    let mut triples: BTreeSet<(usize, usize, usize)> = BTreeSet::new();
    for src in 0..n {
        triples.insert((src, rng.gen_range(0..n), rng.gen_range(0..k)));
    }
    let extra = rng.gen_range(0..=2 * n);
    for _ in 0..extra {
        triples.insert((
            rng.gen_range(0..n),
            rng.gen_range(0..n),
            rng.gen_range(0..k),
        ));
    }
    let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
    let labels: Vec<String> = (0..k).map(|i| format!("a{i}")).collect();
    let edges: Vec<(&str, &str, &str)> = triples
        .iter()
        .map(|&(s, d, l)| (names[s].as_str(), names[d].as_str(), labels[l].as_str()))
        .collect();
    LabelledGraph::from_edges(&edges)
}
