//! Generalized vertices, the partitions they induce, and accommodating set
//! families.
//!
//! Two vertices are identified at level `l` when the same label words of
//! length at most `l` can reach them.  Rather than comparing word sets
//! directly, the deciders compare membership across the distinct sets
//! `r(α)`: vertex `v` lies in `r(α)` exactly when `α` reads into `v`, so the
//! partition at level `l` is the kernel of the membership vector over all
//! ranges of words of length `1..=l`.  Since only finitely many distinct
//! ranges exist, the partitions stabilize; the stable partition and the
//! level where it is first reached drive the simplicity analysis.

use std::collections::BTreeSet;

use crate::automaton::SubsetAutomaton;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{LabelledGraph, VertexId, VertexSet};

/// A partition of the vertex set into blocks, canonically ordered by their
/// smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    blocks: Vec<VertexSet>,
    block_index: Vec<usize>,
}

impl Partition {
    fn from_keys<K: Ord>(n: usize, key_of: impl Fn(u32) -> K) -> Partition {
        let mut by_key: std::collections::BTreeMap<K, Vec<u32>> = Default::default();
        for v in 0..n as u32 {
            by_key.entry(key_of(v)).or_default().push(v);
        }
        let mut blocks: Vec<VertexSet> = by_key
            .into_values()
            .map(VertexSet::from_indices)
            .collect();
        blocks.sort();
        let mut block_index = vec![0; n];
        for (i, b) in blocks.iter().enumerate() {
            for v in b.iter() {
                block_index[v.0 as usize] = i;
            }
        }
        Partition {
            blocks,
            block_index,
        }
    }

    pub fn blocks(&self) -> &[VertexSet] {
        &self.blocks
    }

    pub fn block_of(&self, v: VertexId) -> &VertexSet {
        &self.blocks[self.block_index[v.0 as usize]]
    }

    pub fn same_block(&self, v: VertexId, w: VertexId) -> bool {
        self.block_index[v.0 as usize] == self.block_index[w.0 as usize]
    }

    /// Every block a singleton.
    pub fn is_discrete(&self) -> bool {
        self.blocks.iter().all(|b| b.len() == 1)
    }

    pub fn refines(&self, coarser: &Partition) -> bool {
        self.blocks.iter().all(|b| {
            let first = b.iter().next().unwrap();
            b.is_subset(coarser.block_of(first))
        })
    }
}

/// The distinct range sets `r(α)` for words of each length, gathered layer
/// by layer from `E^0` until the layers start repeating.
#[derive(Debug)]
pub struct RangeLayers {
    automaton: SubsetAutomaton,
    /// layers[k] = state ids of the distinct `r(α)` with `|α| = k + 1`
    layers: Vec<Vec<usize>>,
}

impl RangeLayers {
    pub fn compute(g: &LabelledGraph, caps: &Caps) -> Result<RangeLayers> {
        let automaton = SubsetAutomaton::build(g, &[g.full_set()], caps)?;
        let root = automaton.find(&g.full_set()).unwrap();
        let mut layers: Vec<Vec<usize>> = Vec::new();
        let mut seen_layers: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut current: Vec<usize> = vec![root];
        loop {
            let mut next: BTreeSet<usize> = BTreeSet::new();
            for &s in &current {
                for label in g.labels() {
                    if let Some(t) = automaton.step(s, label) {
                        next.insert(t);
                    }
                }
            }
            let next: Vec<usize> = next.into_iter().collect();
            if next.is_empty() || !seen_layers.insert(next.clone()) {
                // a repeated layer only replays ranges already gathered
                break;
            }
            layers.push(next.clone());
            current = next;
        }
        Ok(RangeLayers { automaton, layers })
    }

    pub fn automaton(&self) -> &SubsetAutomaton {
        &self.automaton
    }

    /// Distinct ranges of words of length `1..=depth`; `None` means all
    /// lengths.
    pub fn ranges_upto(&self, depth: Option<usize>) -> Vec<&VertexSet> {
        let take = depth.unwrap_or(self.layers.len()).min(self.layers.len());
        let mut ids: BTreeSet<usize> = BTreeSet::new();
        for layer in &self.layers[..take] {
            ids.extend(layer.iter().copied());
        }
        ids.into_iter().map(|i| self.automaton.state(i)).collect()
    }

    pub fn layer_count(&self) -> usize {
        self.layers.len()
    }
}

fn partition_by_ranges(g: &LabelledGraph, ranges: &[&VertexSet]) -> Partition {
    Partition::from_keys(g.vertex_count(), |v| {
        let v = VertexId(v);
        ranges.iter().map(|r| r.contains(v)).collect::<Vec<bool>>()
    })
}

/// The level-`l` partition into generalized vertices `[v]_l`.
pub fn omega(g: &LabelledGraph, l: u32, caps: &Caps) -> Result<Partition> {
    let layers = RangeLayers::compute(g, caps)?;
    Ok(partition_by_ranges(g, &layers.ranges_upto(Some(l as usize))))
}

/// The stable partition together with the least level realizing it.
pub fn stable_partition(g: &LabelledGraph, caps: &Caps) -> Result<(Partition, u32)> {
    let layers = RangeLayers::compute(g, caps)?;
    let stable = partition_by_ranges(g, &layers.ranges_upto(None));
    for l in 1..=layers.layer_count().max(1) {
        let at_l = partition_by_ranges(g, &layers.ranges_upto(Some(l)));
        if at_l == stable {
            return Ok((stable, l as u32));
        }
    }
    // layer_count == 0 (no edges): every level gives the trivial partition
    Ok((stable, 1))
}

/// `[v]_l` computed straight from the definition: the vertices whose sets of
/// incoming label words of length `1..=l` coincide with `v`'s.  Independent
/// of the layered route; kept as its cross-check.
pub fn generalized_vertex_naive(g: &LabelledGraph, v: VertexId, l: u32) -> VertexSet {
    let reference = g.in_label_words(v, l);
    g.vertices()
        .filter(|&w| g.in_label_words(w, l) == reference)
        .collect()
}

/// The decomposition `[v]_l = X ∖ r(Y)`.  `X` intersects the ranges of
/// `v`'s incoming words of length `1..=l`; `Y` collects the incoming words
/// of `X`'s members that `v` does not share.  Undefined when nothing reads
/// into `v`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassDecomposition {
    pub x: VertexSet,
    pub y: BTreeSet<crate::graph::LabelWord>,
    pub y_range: VertexSet,
}

pub fn class_decomposition(
    g: &LabelledGraph,
    v: VertexId,
    l: u32,
) -> Result<ClassDecomposition> {
    let own = g.in_label_words(v, l);
    if own.is_empty() {
        return Err(Error::NoIncomingWords {
            vertex: g.vertex_id(v).to_string(),
            level: l,
        });
    }
    let mut x: Option<VertexSet> = None;
    for w in &own {
        let r = g.range_of_word(w);
        x = Some(match x {
            None => r,
            Some(acc) => acc.intersect(&r),
        });
    }
    let x = x.unwrap();
    let mut y: BTreeSet<crate::graph::LabelWord> = BTreeSet::new();
    for u in x.iter() {
        for w in g.in_label_words(u, l) {
            if !own.contains(&w) {
                y.insert(w);
            }
        }
    }
    let mut y_range = VertexSet::empty();
    for w in &y {
        y_range.union_in_place(&g.range_of_word(w));
    }
    Ok(ClassDecomposition { x, y, y_range })
}

/// A family of nonempty vertex sets closed under the operations the
/// analysis needs.  The empty set is an implicit member everywhere and is
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SetFamily {
    /// Materialized members, sorted and deduplicated.
    Explicit(Vec<VertexSet>),
    /// All nonempty unions of the given pairwise-disjoint blocks.
    BlockImplicit { blocks: Vec<VertexSet> },
}

impl SetFamily {
    pub fn explicit(mut members: Vec<VertexSet>) -> SetFamily {
        members.retain(|m| !m.is_empty());
        members.sort();
        members.dedup();
        SetFamily::Explicit(members)
    }

    pub fn contains(&self, s: &VertexSet) -> bool {
        if s.is_empty() {
            return true;
        }
        match self {
            SetFamily::Explicit(members) => members.binary_search(s).is_ok(),
            SetFamily::BlockImplicit { blocks } => {
                let mut cover = VertexSet::empty();
                for b in blocks {
                    if b.is_subset(s) {
                        cover.union_in_place(b);
                    } else if !b.is_disjoint(s) {
                        return false;
                    }
                }
                cover == *s
            }
        }
    }

    /// The materialized members, when explicit.
    pub fn explicit_members(&self) -> Option<&[VertexSet]> {
        match self {
            SetFamily::Explicit(members) => Some(members),
            SetFamily::BlockImplicit { .. } => None,
        }
    }

    /// Number of stored generators (not the member count for the implicit
    /// form).
    pub fn generator_count(&self) -> usize {
        match self {
            SetFamily::Explicit(members) => members.len(),
            SetFamily::BlockImplicit { blocks } => blocks.len(),
        }
    }
}

/// The family of all finite unions of stable generalized vertices.
pub fn bar_e(g: &LabelledGraph, caps: &Caps) -> Result<SetFamily> {
    let (stable, _) = stable_partition(g, caps)?;
    Ok(SetFamily::BlockImplicit {
        blocks: stable.blocks().to_vec(),
    })
}

/// The smallest accommodating family: the closure of the ranges `r(α)`
/// under intersections, unions and relative ranges.  Computed as a
/// semi-naive fixpoint; exceeding the family cap is an error.
pub fn smallest_accommodating(g: &LabelledGraph, caps: &Caps) -> Result<SetFamily> {
    let layers = RangeLayers::compute(g, caps)?;
    let mut members: BTreeSet<VertexSet> = layers
        .ranges_upto(None)
        .into_iter()
        .cloned()
        .collect();
    let mut frontier: Vec<VertexSet> = members.iter().cloned().collect();
    while !frontier.is_empty() {
        let mut fresh: Vec<VertexSet> = Vec::new();
        let mut consider = |s: VertexSet, members: &mut BTreeSet<VertexSet>| -> Result<()> {
            if s.is_empty() || members.contains(&s) {
                return Ok(());
            }
            if members.len() >= caps.max_family {
                return Err(Error::ResourceExceeded {
                    what: "accommodating-family members",
                    cap: caps.max_family,
                    flag: "--cap-family",
                });
            }
            members.insert(s.clone());
            fresh.push(s);
            Ok(())
        };
        for new in &frontier {
            for label in g.labels() {
                consider(g.step_set(new, label), &mut members)?;
            }
            for old in members.clone().iter() {
                consider(new.intersect(old), &mut members)?;
                consider(new.union(old), &mut members)?;
            }
        }
        frontier = fresh;
    }
    Ok(SetFamily::Explicit(members.into_iter().collect()))
}

/// Whether every singleton `{v}` belongs to the family.
pub fn singleton_condition(g: &LabelledGraph, family: &SetFamily) -> bool {
    g.vertices().all(|v| family.contains(&VertexSet::singleton(v)))
}
