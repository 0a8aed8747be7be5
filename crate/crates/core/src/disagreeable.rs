//! Deciding disagreeability: every generalized vertex, at every level, must
//! emit label sequences that escape short periods.
//!
//! A class is disagreeable at level `l` when arbitrarily long words readable
//! from it have no period `p <= l`.  The decision splits on how many
//! infinite sequences the class emits.  When finitely many, each is a lasso
//! `u·z^∞` and the class is disagreeable at `l` exactly when some lasso has
//! no shift period at most `l` — either its canonical prefix is nonempty
//! (never periodic) or its primitive cycle is longer than `l`.  When
//! infinitely many, the class is disagreeable at every level: were every
//! long word `l`-agreeable, overlapping periods would collapse (two periods
//! `p, q <= l` on a word of length `p + q` force the period `gcd(p, q)`)
//! and every emitted sequence would be purely periodic with period at most
//! `l`, of which only finitely many exist.
//!
//! Levels beyond the stabilization point reuse the stable classes, and the
//! lasso condition only hardens as `l` grows, so the whole space is decided
//! by the levels up to stabilization plus one limit check per stable class.

use std::collections::{HashMap, VecDeque};

use crate::accommodating::{omega, Partition};
use crate::automaton::{Classification, SubsetAutomaton};
use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{LabelId, LabelWord, LabelledGraph, VertexSet};
use crate::words::{lasso_least_pure_period, Lasso};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockEvidence {
    /// A readable word, longer than the level, violating every period up to
    /// the level.
    AperiodicWord(LabelWord),
    /// A readable sequence with no shift period up to the level.
    EscapingLasso(Lasso),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BlockStatus {
    Disagreeable(BlockEvidence),
    /// Every readable sequence is purely periodic with period at most the
    /// level; the complete list is returned.
    Agreeable { lassos: Vec<Lasso> },
}

impl BlockStatus {
    pub fn is_disagreeable(&self) -> bool {
        matches!(self, BlockStatus::Disagreeable(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DisagreeableFailure {
    pub block: VertexSet,
    pub level: u32,
    /// The complete list of sequences readable from the block, all purely
    /// periodic with period at most `level`.
    pub lassos: Vec<Lasso>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DisagreeableVerdict {
    Holds,
    Fails(DisagreeableFailure),
}

impl DisagreeableVerdict {
    pub fn holds(&self) -> bool {
        matches!(self, DisagreeableVerdict::Holds)
    }
}

/// Decides one class at one level.
pub fn disagreeable_block(
    g: &LabelledGraph,
    block: &VertexSet,
    level: u32,
    caps: &Caps,
) -> Result<BlockStatus> {
    let automaton = SubsetAutomaton::build(g, std::slice::from_ref(block), caps)?;
    let seed = automaton.find(block).unwrap();
    match automaton.classify(seed) {
        Classification::Infinite => {
            let witness = aperiodic_witness(g, &automaton, seed, level, caps)?
                .expect("a class emitting infinitely many sequences escapes every period bound");
            Ok(BlockStatus::Disagreeable(BlockEvidence::AperiodicWord(
                witness,
            )))
        }
        Classification::Finite(lassos) => {
            match lassos
                .iter()
                .find(|x| lasso_least_pure_period(x, level as usize).is_none())
            {
                Some(x) => Ok(BlockStatus::Disagreeable(BlockEvidence::EscapingLasso(
                    x.clone(),
                ))),
                None => Ok(BlockStatus::Agreeable { lassos }),
            }
        }
    }
}

/// Shortest word readable from `seed` carrying a mismatch for every period
/// `1..=level`: breadth-first over (automaton state, last letters, violated
/// periods).
fn aperiodic_witness(
    g: &LabelledGraph,
    automaton: &SubsetAutomaton,
    seed: usize,
    level: u32,
    caps: &Caps,
) -> Result<Option<LabelWord>> {
    let l = level as usize;
    if l >= 63 {
        return Err(Error::ResourceExceeded {
            what: "period-tracking level",
            cap: 62,
            flag: "--cap-states",
        });
    }
    let full: u64 = ((1u64 << l) - 1) << 1;
    type State = (usize, Vec<LabelId>, u64);
    let start: State = (seed, Vec::new(), 0);
    if full == 0 {
        return Ok(Some(LabelWord::empty()));
    }
    let mut seen: HashMap<State, ()> = HashMap::new();
    seen.insert(start.clone(), ());
    let mut queue: VecDeque<(State, LabelWord)> = VecDeque::new();
    queue.push_back((start, LabelWord::empty()));
    while let Some(((state, window, mask), word)) = queue.pop_front() {
        for label in g.labels() {
            let Some(next) = automaton.step(state, label) else {
                continue;
            };
            let mut next_mask = mask;
            for p in 1..=l.min(window.len()) {
                if window[window.len() - p] != label {
                    next_mask |= 1 << p;
                }
            }
            let mut w = word.clone();
            w.push(label);
            if next_mask == full {
                return Ok(Some(w));
            }
            let mut next_window = window.clone();
            next_window.push(label);
            if next_window.len() > l {
                next_window.remove(0);
            }
            let key: State = (next, next_window, next_mask);
            if seen.contains_key(&key) {
                continue;
            }
            if seen.len() >= caps.max_states {
                return Err(Error::ResourceExceeded {
                    what: "period-product states",
                    cap: caps.max_states,
                    flag: "--cap-states",
                });
            }
            seen.insert(key.clone(), ());
            queue.push_back((key, w));
        }
    }
    Ok(None)
}

/// Decides the whole space: every class at every level must be
/// disagreeable.  A failure reports the least level and, within it, the
/// first class in canonical order.
pub fn check_disagreeable(
    g: &LabelledGraph,
    stable: &Partition,
    stable_level: u32,
    caps: &Caps,
) -> Result<DisagreeableVerdict> {
    for level in 1..=stable_level {
        let partition = omega(g, level, caps)?;
        for block in partition.blocks() {
            if let BlockStatus::Agreeable { lassos } =
                disagreeable_block(g, block, level, caps)?
            {
                return Ok(DisagreeableVerdict::Fails(DisagreeableFailure {
                    block: block.clone(),
                    level,
                    lassos,
                }));
            }
        }
    }

    // beyond stabilization the classes are fixed and the condition only
    // hardens with the level, so the limit decides the tail: a class stays
    // disagreeable forever exactly when it emits infinitely many sequences
    // or some lasso that is not purely periodic
    let mut worst: Option<DisagreeableFailure> = None;
    for block in stable.blocks() {
        let automaton = SubsetAutomaton::build(g, std::slice::from_ref(block), caps)?;
        let seed = automaton.find(block).unwrap();
        let lassos = match automaton.classify(seed) {
            Classification::Infinite => continue,
            Classification::Finite(lassos) => lassos,
        };
        if lassos.iter().any(|x| !x.is_purely_periodic()) {
            continue;
        }
        let longest_cycle = lassos.iter().map(|x| x.cycle().len()).max().unwrap_or(0);
        let failing_level = (stable_level + 1).max(longest_cycle as u32);
        let better = worst
            .as_ref()
            .map_or(true, |w| (failing_level, block) < (w.level, &w.block));
        if better {
            worst = Some(DisagreeableFailure {
                block: block.clone(),
                level: failing_level,
                lassos,
            });
        }
    }
    Ok(match worst {
        None => DisagreeableVerdict::Holds,
        Some(f) => DisagreeableVerdict::Fails(f),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::accommodating::stable_partition;
    use crate::fixtures;
    use crate::words::has_period;

    fn caps() -> Caps {
        Caps::default()
    }

    fn check(text: &str) -> (LabelledGraph, DisagreeableVerdict) {
        let g = LabelledGraph::parse(text).unwrap();
        let (stable, lstar) = stable_partition(&g, &caps()).unwrap();
        let v = check_disagreeable(&g, &stable, lstar, &caps()).unwrap();
        (g, v)
    }

    #[test]
    fn fixture_b_disagreeable() {
        let (_, v) = check(fixtures::FIXTURE_B);
        assert!(v.holds());
    }

    #[test]
    fn single_loop_fails_at_level_one() {
        let (g, v) = check(fixtures::FIXTURE_C);
        match v {
            DisagreeableVerdict::Fails(f) => {
                assert_eq!(g.format_set(&f.block), "{v}");
                assert_eq!(f.level, 1);
                assert_eq!(f.lassos.len(), 1);
                assert!(f.lassos[0].is_purely_periodic());
                assert_eq!(f.lassos[0].cycle().len(), 1);
            }
            DisagreeableVerdict::Holds => panic!("expected failure"),
        }
    }

    #[test]
    fn two_loops_fail() {
        let (_, v) = check(fixtures::FIXTURE_D);
        assert!(!v.holds());
    }

    #[test]
    fn infinite_class_witness_violates_every_period() {
        let g = LabelledGraph::parse(fixtures::FIXTURE_B).unwrap();
        let block = g.set_from_ids(["v1"]).unwrap();
        for level in 1..=4 {
            match disagreeable_block(&g, &block, level, &caps()).unwrap() {
                BlockStatus::Disagreeable(BlockEvidence::AperiodicWord(w)) => {
                    assert!(w.len() > level as usize);
                    for p in 1..=level as usize {
                        assert!(!has_period(&w, p), "period {p} not violated at {level}");
                    }
                    assert!(!g.relative_range(&block, &w).is_empty());
                }
                other => panic!("unexpected {other:?}"),
            }
        }
    }

    #[test]
    fn escaping_lasso_evidence() {
        // v emits only a·b^∞: eventually but not purely periodic, hence
        // disagreeable at every level
        let g = LabelledGraph::parse("edge v w a\nedge w w b\n").unwrap();
        let block = g.set_from_ids(["v"]).unwrap();
        for level in 1..=5 {
            match disagreeable_block(&g, &block, level, &caps()).unwrap() {
                BlockStatus::Disagreeable(BlockEvidence::EscapingLasso(x)) => {
                    assert!(!x.is_purely_periodic());
                }
                other => panic!("unexpected {other:?}"),
            }
        }
        let (stable, lstar) = stable_partition(&g, &caps()).unwrap();
        // w itself emits only b^∞ and spoils the space
        assert!(!check_disagreeable(&g, &stable, lstar, &caps())
            .unwrap()
            .holds());
    }

    #[test]
    fn long_cycle_fails_only_past_its_length() {
        // the only sequence is (a.b.c)^∞: period 3, so levels 1 and 2 are
        // fine and level 3 is the least failure
        let g = LabelledGraph::parse("edge u v a\nedge v w b\nedge w u c\n").unwrap();
        let block = g.set_from_ids(["u"]).unwrap();
        assert!(disagreeable_block(&g, &block, 1, &caps()).unwrap().is_disagreeable());
        assert!(disagreeable_block(&g, &block, 2, &caps()).unwrap().is_disagreeable());
        assert!(!disagreeable_block(&g, &block, 3, &caps()).unwrap().is_disagreeable());
        let (stable, lstar) = stable_partition(&g, &caps()).unwrap();
        match check_disagreeable(&g, &stable, lstar, &caps()).unwrap() {
            DisagreeableVerdict::Fails(f) => assert_eq!(f.level, 3),
            DisagreeableVerdict::Holds => panic!("expected failure"),
        }
    }

    /// Independent route for finite levels: a class is disagreeable at `l`
    /// exactly when some readable word longer than `l` violates all periods
    /// up to `l`, found here by plain breadth-first search without the
    /// classification split.
    fn product_oracle(g: &LabelledGraph, block: &VertexSet, level: u32) -> bool {
        let automaton =
            SubsetAutomaton::build(g, std::slice::from_ref(block), &caps()).unwrap();
        let seed = automaton.find(block).unwrap();
        aperiodic_witness(g, &automaton, seed, level, &caps())
            .unwrap()
            .is_some()
    }

    #[test]
    fn classification_route_matches_product_route() {
        for text in [
            fixtures::FIXTURE_A,
            fixtures::FIXTURE_B,
            fixtures::FIXTURE_C,
            fixtures::FIXTURE_D,
            "edge v w a\nedge w w b\n",
            "edge u v a\nedge v w b\nedge w u c\n",
            "edge t t a\nedge t q b\nedge q q a\n",
        ] {
            let g = LabelledGraph::parse(text).unwrap();
            for v in g.vertices() {
                let block = VertexSet::singleton(v);
                for level in 1..=4 {
                    assert_eq!(
                        disagreeable_block(&g, &block, level, &caps())
                            .unwrap()
                            .is_disagreeable(),
                        product_oracle(&g, &block, level),
                        "vertex {} level {level} in {text}",
                        g.vertex_id(v)
                    );
                }
            }
        }
    }
}
