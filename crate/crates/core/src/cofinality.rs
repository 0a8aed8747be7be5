//! Cofinality of the labelled space: every infinite label path must
//! eventually feed every part of the graph, measured through generalized
//! vertices.
//!
//! The space is strongly cofinal when for every vertex `w`, every infinite
//! word `x` realizable from `w` and every target class `V`, some prefix
//! `x_{1..N}` has `r([w]_1, x_{1..N})` inside the union of all relative
//! ranges emanating from `V`.  Plain cofinality asks the same with `[w]`
//! taken at the stable level.  A failure is an infinite word all of whose
//! prefixes violate the inclusion; by finiteness of the pair product
//! `(r({w}, ·), r([w], ·))` such a word exists exactly when a lasso of
//! violating product states does, which is what the search returns.
//!
//! Two reductions keep the target side small.  Containment in the union
//! `U(V)` is monotone in `V`, so only the inclusion-minimal candidate
//! classes matter, and every candidate is a block of the stable partition.
//! The start state is exempt: prefixes of length zero say nothing.

use crate::accommodating::Partition;
use crate::automaton::{bad_lasso_search, SubsetAutomaton};
use crate::caps::Caps;
use crate::error::Result;
use crate::graph::{LabelId, LabelWord, LabelledGraph, VertexId, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CofinalityWitness {
    /// The vertex whose class escapes the target.
    pub from: VertexId,
    /// The stable class never absorbed into.
    pub target: VertexSet,
    /// Lasso presentation `prefix·cycle^∞` of the violating word.
    pub prefix: LabelWord,
    pub cycle: LabelWord,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CofinalityVerdict {
    Holds,
    Fails(CofinalityWitness),
}

impl CofinalityVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, CofinalityVerdict::Holds)
    }
}

/// Strong cofinality: source classes are taken at level 1.
pub fn check_strong_cofinality(
    g: &LabelledGraph,
    level_one: &Partition,
    stable: &Partition,
    caps: &Caps,
) -> Result<CofinalityVerdict> {
    check(g, level_one, stable, caps)
}

/// Cofinality: source classes are taken at the stable level.
pub fn check_cofinality(
    g: &LabelledGraph,
    stable: &Partition,
    caps: &Caps,
) -> Result<CofinalityVerdict> {
    check(g, stable, stable, caps)
}

fn check(
    g: &LabelledGraph,
    source_classes: &Partition,
    stable: &Partition,
    caps: &Caps,
) -> Result<CofinalityVerdict> {
    let labels: Vec<LabelId> = g.labels().collect();
    // union of all relative ranges from each candidate target class
    let seeds: Vec<VertexSet> = stable.blocks().to_vec();
    let automaton = SubsetAutomaton::build(g, &seeds, caps)?;
    let unions: Vec<VertexSet> = stable
        .blocks()
        .iter()
        .map(|b| automaton.reach_union(automaton.find(b).unwrap()))
        .collect();

    for w in g.vertices() {
        for (target, union) in stable.blocks().iter().zip(&unions) {
            let start = (
                VertexSet::singleton(w),
                source_classes.block_of(w).clone(),
            );
            let found = bad_lasso_search(
                start,
                &labels,
                |state: &(VertexSet, VertexSet), label| {
                    let first = g.step_set(&state.0, label);
                    if first.is_empty() {
                        return None;
                    }
                    Some((first, g.step_set(&state.1, label)))
                },
                |state: &(VertexSet, VertexSet)| !state.1.is_subset(union),
                caps,
            )?;
            if let Some((prefix, cycle)) = found {
                return Ok(CofinalityVerdict::Fails(CofinalityWitness {
                    from: w,
                    target: target.clone(),
                    prefix,
                    cycle,
                }));
            }
        }
    }
    Ok(CofinalityVerdict::Holds)
}
