//! Deciding whether the labelled space is weakly left-resolving relative to
//! a set family: `r(A, w) ∩ r(B, w) = r(A ∩ B, w)` for all members and all
//! words.
//!
//! The right side always sits inside the left, so only strict inclusions
//! must be ruled out, and nested pairs can never violate the identity.  For
//! an explicit family each unordered non-nested pair drives a breadth-first
//! product walk over the triple `(r(A,w), r(B,w), r(A∩B,w))`; words become
//! unreachable once either of the first two components empties.  For the
//! implicit union-of-blocks family the identity over all unions reduces to
//! the ranges of distinct blocks staying disjoint, checked on pair products.

use std::collections::{HashMap, VecDeque};

use crate::accommodating::SetFamily;
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{LabelWord, LabelledGraph, VertexSet};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WlrVerdict {
    Holds,
    /// A concrete violation: `r(a, word) ∩ r(b, word) ⊋ r(a ∩ b, word)`.
    Fails {
        a: VertexSet,
        b: VertexSet,
        word: LabelWord,
    },
}

impl WlrVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, WlrVerdict::Holds)
    }
}

/// Checks the family; a failure carries the minimal counterexample, ordered
/// by word length, then word, then the pair.
pub fn check_wlr(g: &LabelledGraph, family: &SetFamily, caps: &Caps) -> Result<WlrVerdict> {
    let pairs: Vec<(VertexSet, VertexSet)> = match family {
        SetFamily::Explicit(members) => {
            let mut out = Vec::new();
            for (i, a) in members.iter().enumerate() {
                for b in &members[i + 1..] {
                    if a.is_subset(b) || b.is_subset(a) {
                        continue;
                    }
                    out.push((a.clone(), b.clone()));
                }
            }
            out
        }
        SetFamily::BlockImplicit { blocks } => {
            let mut out = Vec::new();
            for (i, a) in blocks.iter().enumerate() {
                for b in &blocks[i + 1..] {
                    out.push((a.clone(), b.clone()));
                }
            }
            out
        }
    };
    if pairs.len() > caps.max_pairs {
        return Err(Error::ResourceExceeded {
            what: "weak-left-resolving pairs",
            cap: caps.max_pairs,
            flag: "--cap-states",
        });
    }

    let mut best: Option<(LabelWord, VertexSet, VertexSet)> = None;
    for (a, b) in pairs {
        if let Some(word) = pair_violation(g, &a, &b, caps)? {
            let better = match &best {
                None => true,
                Some((w, _, _)) => (word.len(), &word) < (w.len(), w),
            };
            if better {
                best = Some((word, a, b));
            }
        }
    }
    Ok(match best {
        None => WlrVerdict::Holds,
        Some((word, a, b)) => WlrVerdict::Fails { a, b, word },
    })
}

/// Shortest word (then lexicographically first) witnessing a violation for
/// one pair, or `None`.
fn pair_violation(
    g: &LabelledGraph,
    a: &VertexSet,
    b: &VertexSet,
    caps: &Caps,
) -> Result<Option<LabelWord>> {
    type State = (VertexSet, VertexSet, VertexSet);
    let start: State = (a.clone(), b.clone(), a.intersect(b));
    let violated = |s: &State| s.0.intersect(&s.1) != s.2;
    if violated(&start) {
        // cannot happen: r(·, ε) is the identity
        return Ok(Some(LabelWord::empty()));
    }
    let mut seen: HashMap<State, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut queue: VecDeque<(State, LabelWord)> = VecDeque::new();
    queue.push_back((start, LabelWord::empty()));
    while let Some((state, word)) = queue.pop_front() {
        for label in g.labels() {
            let next: State = (
                g.step_set(&state.0, label),
                g.step_set(&state.1, label),
                g.step_set(&state.2, label),
            );
            if next.0.is_empty() || next.1.is_empty() {
                continue;
            }
            let mut w = word.clone();
            w.push(label);
            if violated(&next) {
                return Ok(Some(w));
            }
            if seen.contains_key(&next) {
                continue;
            }
            if seen.len() >= caps.max_states {
                return Err(Error::ResourceExceeded {
                    what: "weak-left-resolving product states",
                    cap: caps.max_states,
                    flag: "--cap-states",
                });
            }
            seen.insert(next.clone(), ());
            queue.push_back((next, w));
        }
    }
    Ok(None)
}

/// Bounded reference evaluation: the length of the shortest violating word
/// of length at most `depth` over an intersection-closed member list, found
/// by walking the word tree while stepping every member's range in lock
/// step.  `None` means no violation within the bound.
pub fn bounded_violation(
    g: &LabelledGraph,
    members: &[VertexSet],
    depth: usize,
) -> Option<usize> {
    let index = |s: &VertexSet| members.binary_search(s).ok();
    // pairs with their intersection's member index; nested pairs can never
    // violate and intersection-closure guarantees the lookup
    let mut pairs: Vec<(usize, usize, Option<usize>)> = Vec::new();
    for i in 0..members.len() {
        for j in i + 1..members.len() {
            if members[i].is_subset(&members[j]) || members[j].is_subset(&members[i]) {
                continue;
            }
            let meet = members[i].intersect(&members[j]);
            let meet_idx = if meet.is_empty() { None } else { index(&meet) };
            pairs.push((i, j, meet_idx));
        }
    }
    let mut layer: Vec<Vec<VertexSet>> = vec![members.to_vec()];
    for n in 1..=depth {
        let mut next_layer = Vec::new();
        let mut hit = false;
        for ranges in &layer {
            for label in g.labels() {
                let stepped: Vec<VertexSet> =
                    ranges.iter().map(|r| g.step_set(r, label)).collect();
                for &(i, j, meet) in &pairs {
                    let lhs = stepped[i].intersect(&stepped[j]);
                    let rhs = match meet {
                        Some(m) => stepped[m].clone(),
                        None => VertexSet::empty(),
                    };
                    if lhs != rhs {
                        hit = true;
                    }
                }
                next_layer.push(stepped);
            }
        }
        if hit {
            return Some(n);
        }
        layer = next_layer;
    }
    None
}
