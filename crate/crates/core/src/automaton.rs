//! The determinized label-transition system over nonempty vertex sets, plus
//! the lasso searches built on it.
//!
//! Pruning empty sets is the correctness keystone of every infinite-path
//! argument here: transitions exist exactly for nonempty relative ranges, so
//! the automaton's path trees are finitely branching with nonempty levels,
//! and an infinite labelled path exists from a seed if and only if words of
//! every length are replayable (König's lemma).

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;

use crate::caps::Caps;
use crate::error::{Error, Result};
use crate::graph::{LabelId, LabelWord, LabelledGraph, VertexSet};
use crate::words::Lasso;

/// Deterministic transition system with states `S ⊆ E^0` and transitions
/// `S --a--> r(S, a)` present exactly when the range is nonempty.
#[derive(Debug, Clone)]
pub struct SubsetAutomaton {
    states: Vec<VertexSet>,
    index: HashMap<VertexSet, usize>,
    /// transitions[state][label]
    transitions: Vec<Vec<Option<usize>>>,
    seeds: Vec<usize>,
    label_count: usize,
}

/// A finitely presented infinite word replayable inside an automaton.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LassoWitness {
    pub prefix: LabelWord,
    pub cycle: LabelWord,
    pub annotation: String,
}

/// Outcome of classifying the infinite label sequences realizable from a
/// state: either infinitely many exist, or the finite complete list of
/// lassos.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Classification {
    Infinite,
    Finite(Vec<Lasso>),
}

impl SubsetAutomaton {
    /// Breadth-first closure of the seeds under single-letter relative
    /// ranges; empty sets are pruned, empty seeds skipped.
    pub fn build(g: &LabelledGraph, seeds: &[VertexSet], caps: &Caps) -> Result<Self> {
        let mut aut = SubsetAutomaton {
            states: Vec::new(),
            index: HashMap::new(),
            transitions: Vec::new(),
            seeds: Vec::new(),
            label_count: g.label_count(),
        };
        let mut queue = VecDeque::new();
        for seed in seeds {
            if seed.is_empty() {
                continue;
            }
            let id = aut.intern(seed.clone(), caps)?;
            if !aut.seeds.contains(&id) {
                aut.seeds.push(id);
            }
            queue.push_back(id);
        }
        let mut explored = vec![false; aut.states.len()];
        while let Some(id) = queue.pop_front() {
            if *explored.get(id).unwrap_or(&false) {
                continue;
            }
            if explored.len() < aut.states.len() {
                explored.resize(aut.states.len(), false);
            }
            explored[id] = true;
            for label in g.labels() {
                let next = g.step_set(&aut.states[id], label);
                if next.is_empty() {
                    continue;
                }
                let next_id = aut.intern(next, caps)?;
                if explored.len() < aut.states.len() {
                    explored.resize(aut.states.len(), false);
                }
                aut.transitions[id][label.0 as usize] = Some(next_id);
                if !explored[next_id] {
                    queue.push_back(next_id);
                }
            }
        }
        Ok(aut)
    }

    fn intern(&mut self, set: VertexSet, caps: &Caps) -> Result<usize> {
        if let Some(&id) = self.index.get(&set) {
            return Ok(id);
        }
        if self.states.len() >= caps.max_states {
            return Err(Error::ResourceExceeded {
                what: "subset-automaton states",
                cap: caps.max_states,
                flag: "--cap-states",
            });
        }
        let id = self.states.len();
        self.index.insert(set.clone(), id);
        self.states.push(set);
        self.transitions.push(vec![None; self.label_count]);
        Ok(id)
    }

    pub fn state_count(&self) -> usize {
        self.states.len()
    }

    pub fn state(&self, id: usize) -> &VertexSet {
        &self.states[id]
    }

    pub fn states(&self) -> &[VertexSet] {
        &self.states
    }

    pub fn seeds(&self) -> &[usize] {
        &self.seeds
    }

    pub fn find(&self, set: &VertexSet) -> Option<usize> {
        self.index.get(set).copied()
    }

    pub fn step(&self, id: usize, label: LabelId) -> Option<usize> {
        self.transitions[id][label.0 as usize]
    }

    pub fn out_labels(&self, id: usize) -> impl Iterator<Item = LabelId> + '_ {
        self.transitions[id]
            .iter()
            .enumerate()
            .filter_map(|(l, t)| t.map(|_| LabelId(l as u32)))
    }

    /// Replays a word from a state; `None` once a range empties out.
    pub fn replay(&self, from: usize, word: &LabelWord) -> Option<usize> {
        word.0.iter().try_fold(from, |s, &l| self.step(s, l))
    }

    /// `U(S) = ∪_{|λ| >= 1} r(S, λ)`: the union of all states reachable in
    /// at least one transition.
    pub fn reach_union(&self, from: usize) -> VertexSet {
        let mut out = VertexSet::empty();
        let mut visited = vec![false; self.states.len()];
        let mut queue: VecDeque<usize> = self.successors(from).collect();
        while let Some(id) = queue.pop_front() {
            if visited[id] {
                continue;
            }
            visited[id] = true;
            out.union_in_place(&self.states[id]);
            queue.extend(self.successors(id));
        }
        out
    }

    fn successors(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.transitions[id].iter().filter_map(|t| *t)
    }

    fn reachable_from(&self, from: &[usize]) -> Vec<bool> {
        let mut visited = vec![false; self.states.len()];
        let mut queue: VecDeque<usize> = from.iter().copied().collect();
        while let Some(id) = queue.pop_front() {
            if visited[id] {
                continue;
            }
            visited[id] = true;
            queue.extend(self.successors(id));
        }
        visited
    }

    /// Classifies the set `X_S` of infinite label sequences realizable from
    /// `from`.  It is infinite exactly when a branching state (two or more
    /// live labels) can be reached from some state that lies on a directed
    /// cycle, itself reachable from `from`; otherwise every run is forced
    /// into a lasso and the complete finite list is returned.
    pub fn classify(&self, from: usize) -> Classification {
        let reachable = self.reachable_from(&[from]);
        // states on a directed cycle inside the reachable region
        let mut cycle_states = Vec::new();
        for s in 0..self.states.len() {
            if !reachable[s] {
                continue;
            }
            let succs: Vec<usize> = self.successors(s).collect();
            let back = self.reachable_from(&succs);
            if back[s] {
                cycle_states.push(s);
            }
        }
        let pumpable = self.reachable_from(&cycle_states);
        let branching = |s: usize| self.successors(s).count() >= 2;
        if (0..self.states.len()).any(|s| reachable[s] && pumpable[s] && branching(s)) {
            return Classification::Infinite;
        }

        // finite case: depth-first enumeration; the run is forced once it
        // re-enters a state on its own path.
        let mut lassos = Vec::new();
        let mut path_states: Vec<usize> = vec![from];
        let mut path_labels: Vec<LabelId> = Vec::new();
        self.enumerate_lassos(&mut path_states, &mut path_labels, &mut lassos);
        lassos.sort();
        lassos.dedup();
        Classification::Finite(lassos)
    }

    fn enumerate_lassos(
        &self,
        path_states: &mut Vec<usize>,
        path_labels: &mut Vec<LabelId>,
        out: &mut Vec<Lasso>,
    ) {
        let current = *path_states.last().unwrap();
        for label in self.out_labels(current) {
            let next = self.step(current, label).unwrap();
            if let Some(pos) = path_states.iter().position(|&s| s == next) {
                let prefix = LabelWord(path_labels[..pos].to_vec());
                let mut cycle = path_labels[pos..].to_vec();
                cycle.push(label);
                out.push(Lasso::new(prefix, LabelWord(cycle)));
            } else {
                path_states.push(next);
                path_labels.push(label);
                self.enumerate_lassos(path_states, path_labels, out);
                path_states.pop();
                path_labels.pop();
            }
        }
    }

    /// DOT rendering for debugging.
    pub fn to_dot(&self, g: &LabelledGraph) -> String {
        let mut out = String::from("digraph subset_automaton {\n  rankdir=LR;\n");
        for (i, s) in self.states.iter().enumerate() {
            let shape = if self.seeds.contains(&i) {
                "doublecircle"
            } else {
                "circle"
            };
            out.push_str(&format!(
                "  s{i} [label=\"{}\", shape={shape}];\n",
                g.format_set(s)
            ));
        }
        for (i, row) in self.transitions.iter().enumerate() {
            for (l, t) in row.iter().enumerate() {
                if let Some(j) = t {
                    out.push_str(&format!(
                        "  s{i} -> s{j} [label=\"{}\"];\n",
                        g.label_symbol(LabelId(l as u32))
                    ));
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Searches for a lasso all of whose visited states from step 1 onward
/// satisfy `bad`; the start state itself is exempt unless the cycle returns
/// to it.  The result is minimal by total length, then by label order, among
/// lassos assembled from per-state shortest prefixes and cycles.
pub fn bad_lasso_search<S, F, B>(
    start: S,
    labels: &[LabelId],
    mut step: F,
    mut bad: B,
    caps: &Caps,
) -> Result<Option<(LabelWord, LabelWord)>>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S, LabelId) -> Option<S>,
    B: FnMut(&S) -> bool,
{
    // breadth-first discovery of bad states reachable through bad states;
    // first arrival order is (length, lex) order of prefixes.
    let mut prefix_of: HashMap<S, LabelWord> = HashMap::new();
    let mut order: Vec<S> = Vec::new();
    let mut queue: VecDeque<S> = VecDeque::new();
    if bad(&start) {
        prefix_of.insert(start.clone(), LabelWord::empty());
        order.push(start.clone());
    }
    // the start participates in discovery even when not bad itself
    queue.push_back(start.clone());
    let mut discovered: HashMap<S, ()> = HashMap::new();
    discovered.insert(start.clone(), ());
    let start_word = LabelWord::empty();
    while let Some(s) = queue.pop_front() {
        let base = if s == start {
            &start_word
        } else {
            &prefix_of[&s]
        };
        let base = base.clone();
        for &label in labels {
            if let Some(next) = step(&s, label) {
                if !bad(&next) || discovered.contains_key(&next) {
                    continue;
                }
                if discovered.len() >= caps.max_states {
                    return Err(Error::ResourceExceeded {
                        what: "lasso-search states",
                        cap: caps.max_states,
                        flag: "--cap-states",
                    });
                }
                let mut word = base.clone();
                word.push(label);
                discovered.insert(next.clone(), ());
                prefix_of.insert(next.clone(), word);
                order.push(next.clone());
                queue.push_back(next.clone());
            }
        }
    }

    // shortest bad cycle from each candidate back to itself
    let mut best: Option<(LabelWord, LabelWord)> = None;
    for s in &order {
        let prefix = prefix_of[s].clone();
        if let Some(cycle) = shortest_bad_cycle(s, labels, &mut step, &mut bad, caps)? {
            let candidate = (prefix, cycle);
            let key = |(p, c): &(LabelWord, LabelWord)| (p.len() + c.len(), p.concat(c));
            if best.as_ref().map_or(true, |b| key(&candidate) < key(b)) {
                best = Some(candidate);
            }
        }
    }
    Ok(best)
}

fn shortest_bad_cycle<S, F, B>(
    base: &S,
    labels: &[LabelId],
    step: &mut F,
    bad: &mut B,
    caps: &Caps,
) -> Result<Option<LabelWord>>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S, LabelId) -> Option<S>,
    B: FnMut(&S) -> bool,
{
    let mut word_of: HashMap<S, LabelWord> = HashMap::new();
    let mut queue: VecDeque<S> = VecDeque::new();
    word_of.insert(base.clone(), LabelWord::empty());
    queue.push_back(base.clone());
    while let Some(s) = queue.pop_front() {
        let base_word = word_of[&s].clone();
        for &label in labels {
            if let Some(next) = step(&s, label) {
                let mut word = base_word.clone();
                word.push(label);
                if next == *base {
                    return Ok(Some(word));
                }
                if !bad(&next) || word_of.contains_key(&next) {
                    continue;
                }
                if word_of.len() >= caps.max_states {
                    return Err(Error::ResourceExceeded {
                        what: "lasso-search states",
                        cap: caps.max_states,
                        flag: "--cap-states",
                    });
                }
                word_of.insert(next.clone(), word);
                queue.push_back(next.clone());
            }
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn build_from(text: &str, seed_ids: &[&str]) -> (LabelledGraph, SubsetAutomaton, usize) {
        let g = LabelledGraph::parse(text).unwrap();
        let seed = g.set_from_ids(seed_ids.iter().copied()).unwrap();
        let aut = SubsetAutomaton::build(&g, &[seed.clone()], &Caps::default()).unwrap();
        let id = aut.find(&seed).unwrap();
        (g, aut, id)
    }

    #[test]
    fn fixture_b_closure_from_v1() {
        let (g, aut, _) = build_from(fixtures::FIXTURE_B, &["v1"]);
        let mut states: Vec<String> = aut.states().iter().map(|s| g.format_set(s)).collect();
        states.sort();
        assert_eq!(
            states,
            vec!["{v1}", "{v2}", "{v3}", "{v4,v5}", "{v5}", "{v6}"]
        );
    }

    #[test]
    fn one_vertex_loop_single_state() {
        let (_, aut, id) = build_from(fixtures::FIXTURE_C, &["v"]);
        assert_eq!(aut.state_count(), 1);
        assert_eq!(aut.step(id, LabelId(0)), Some(id));
    }

    #[test]
    fn fixture_a_merging_words() {
        let g = LabelledGraph::parse(fixtures::FIXTURE_A).unwrap();
        let aut = SubsetAutomaton::build(&g, &[g.full_set()], &Caps::default()).unwrap();
        let full = aut.find(&g.full_set()).unwrap();
        let by_b = aut.replay(full, &g.parse_word("b").unwrap()).unwrap();
        let by_ab = aut.replay(full, &g.parse_word("a.b").unwrap()).unwrap();
        assert_eq!(by_b, by_ab);
        assert_eq!(g.format_set(aut.state(by_b)), "{v1,v2}");
    }

    #[test]
    fn reach_union_examples() {
        let (g, aut, v1) = build_from(fixtures::FIXTURE_B, &["v1"]);
        assert_eq!(aut.reach_union(v1), g.full_set());

        let (_, aut_c, v) = build_from(fixtures::FIXTURE_C, &["v"]);
        assert_eq!(aut_c.reach_union(v).len(), 1);

        let (g_a, aut_a, v3) = build_from(fixtures::FIXTURE_A, &["v3"]);
        assert_eq!(
            aut_a.reach_union(v3),
            g_a.set_from_ids(["v4", "v5"]).unwrap()
        );
    }

    #[test]
    fn classification_examples() {
        let (_, aut_b, v1) = build_from(fixtures::FIXTURE_B, &["v1"]);
        assert_eq!(aut_b.classify(v1), Classification::Infinite);

        let (g_c, aut_c, v) = build_from(fixtures::FIXTURE_C, &["v"]);
        match aut_c.classify(v) {
            Classification::Finite(lassos) => {
                assert_eq!(lassos.len(), 1);
                assert!(lassos[0].prefix().is_empty());
                assert_eq!(g_c.format_word(lassos[0].cycle()), "a");
            }
            other => panic!("unexpected {other:?}"),
        }

        let alternating = "edge v w a\nedge w v b\n";
        let (g2, aut2, v) = build_from(alternating, &["v"]);
        match aut2.classify(v) {
            Classification::Finite(lassos) => {
                assert_eq!(lassos.len(), 1);
                assert!(lassos[0].prefix().is_empty());
                assert_eq!(g2.format_word(lassos[0].cycle()), "a.b");
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn finite_classification_is_complete() {
        // every word replayable from the seed must be a prefix of a listed
        // lasso's unrolling
        for text in [fixtures::FIXTURE_C, "edge v w a\nedge w v b\n", "edge s m a\nedge s n b\nedge m m c\nedge n n c\n"] {
            let g = LabelledGraph::parse(text).unwrap();
            let seed = VertexSet::singleton(g.vertices().next().unwrap());
            let aut = SubsetAutomaton::build(&g, &[seed.clone()], &Caps::default()).unwrap();
            let from = aut.find(&seed).unwrap();
            let lassos = match aut.classify(from) {
                Classification::Finite(l) => l,
                Classification::Infinite => continue,
            };
            let longest = lassos
                .iter()
                .map(|l| l.prefix().len() + l.cycle().len())
                .max()
                .unwrap_or(0);
            let depth = aut.state_count() + longest;
            // depth-first over realizable words
            let mut stack = vec![(from, LabelWord::empty())];
            while let Some((s, word)) = stack.pop() {
                if word.len() > 0 {
                    let covered = lassos
                        .iter()
                        .any(|l| l.unroll(word.len()) == word);
                    assert!(covered, "uncovered word {word:?} in {text}");
                }
                if word.len() == depth {
                    continue;
                }
                for label in aut.out_labels(s) {
                    let mut w = word.clone();
                    w.push(label);
                    stack.push((aut.step(s, label).unwrap(), w));
                }
            }
            // and each lasso replays forever (three cycles suffice to check)
            for l in &lassos {
                let n = l.prefix().len() + 3 * l.cycle().len();
                assert!(aut.replay(from, &l.unroll(n)).is_some());
            }
        }
    }

    #[test]
    fn bad_lasso_search_trivial_cases() {
        let (_, aut, v1) = build_from(fixtures::FIXTURE_B, &["v1"]);
        let labels: Vec<LabelId> = (0..7).map(LabelId).collect();
        // bad ≡ false → none
        let none = bad_lasso_search(
            v1,
            &labels,
            |&s, l| aut.step(s, l),
            |_| false,
            &Caps::default(),
        )
        .unwrap();
        assert!(none.is_none());
        // bad ≡ true → the shortest cycle through the seed region
        let some = bad_lasso_search(
            v1,
            &labels,
            |&s, l| aut.step(s, l),
            |_| true,
            &Caps::default(),
        )
        .unwrap();
        let (prefix, cycle) = some.unwrap();
        assert_eq!(prefix.len() + cycle.len(), 4); // v1 -> v2|v3 -> · -> v6 -> v1
    }

    #[test]
    fn randomized_replay_matches_relative_range() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        let g = LabelledGraph::parse(fixtures::FIXTURE_B).unwrap();
        let aut = SubsetAutomaton::build(&g, &[g.full_set()], &Caps::default()).unwrap();
        for _ in 0..200 {
            let sid = rng.gen_range(0..aut.state_count());
            let len = rng.gen_range(0..6);
            let word = LabelWord(
                (0..len)
                    .map(|_| LabelId(rng.gen_range(0..g.label_count() as u32)))
                    .collect(),
            );
            let direct = g.relative_range(aut.state(sid), &word);
            match aut.replay(sid, &word) {
                Some(t) => assert_eq!(aut.state(t), &direct),
                None => assert!(direct.is_empty()),
            }
        }
    }

    #[test]
    fn state_cap_is_enforced() {
        let g = LabelledGraph::parse(fixtures::FIXTURE_B).unwrap();
        let caps = Caps {
            max_states: 2,
            ..Caps::default()
        };
        let err = SubsetAutomaton::build(&g, &[g.full_set()], &caps).unwrap_err();
        assert!(matches!(err, Error::ResourceExceeded { .. }));
    }
}
