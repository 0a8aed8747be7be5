//! Data model for finite labelled graphs and the primitive range operations.
//!
//! A labelled graph is a finite directed graph together with a labelling of
//! its edges over a finite alphabet.  The alphabet is always exactly the set
//! of labels that occur on edges.  Vertices are ordered by first appearance
//! in the input, labels lexicographically, so that every derived structure is
//! reproducible bit for bit.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::error::{Error, Result};

/// Index of a label in the (sorted) alphabet of a graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LabelId(pub u32);

/// Dense index of a vertex, in first-appearance order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

/// A subset of the vertex set, stored as a sorted list of dense indices.
/// Equality is extensional.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct VertexSet {
    members: Vec<u32>,
}

impl VertexSet {
    pub fn empty() -> Self {
        VertexSet::default()
    }

    pub fn singleton(v: VertexId) -> Self {
        VertexSet { members: vec![v.0] }
    }

    pub fn from_indices(mut members: Vec<u32>) -> Self {
        members.sort_unstable();
        members.dedup();
        VertexSet { members }
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn contains(&self, v: VertexId) -> bool {
        self.members.binary_search(&v.0).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.members.iter().map(|&i| VertexId(i))
    }

    pub fn insert(&mut self, v: VertexId) {
        if let Err(pos) = self.members.binary_search(&v.0) {
            self.members.insert(pos, v.0);
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        let mut out = Vec::with_capacity(self.members.len() + other.members.len());
        let (mut i, mut j) = (0, 0);
        while i < self.members.len() && j < other.members.len() {
            match self.members[i].cmp(&other.members[j]) {
                std::cmp::Ordering::Less => {
                    out.push(self.members[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    out.push(other.members[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    out.push(self.members[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend_from_slice(&self.members[i..]);
        out.extend_from_slice(&other.members[j..]);
        VertexSet { members: out }
    }

    pub fn union_in_place(&mut self, other: &VertexSet) {
        if !other.members.is_empty() {
            *self = self.union(other);
        }
    }

    pub fn intersect(&self, other: &VertexSet) -> VertexSet {
        let members = self
            .members
            .iter()
            .filter(|m| other.members.binary_search(m).is_ok())
            .copied()
            .collect();
        VertexSet { members }
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        let members = self
            .members
            .iter()
            .filter(|m| other.members.binary_search(m).is_err())
            .copied()
            .collect();
        VertexSet { members }
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.members
            .iter()
            .all(|m| other.members.binary_search(m).is_ok())
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.intersect(other).is_empty()
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<T: IntoIterator<Item = VertexId>>(iter: T) -> Self {
        VertexSet::from_indices(iter.into_iter().map(|v| v.0).collect())
    }
}

/// A finite label word.  The empty word is used only as an internal sentinel
/// (relative ranges treat it as the identity); it never denotes a labelled
/// path in any decider.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct LabelWord(pub Vec<LabelId>);

impl LabelWord {
    pub fn empty() -> Self {
        LabelWord(Vec::new())
    }

    pub fn letter(l: LabelId) -> Self {
        LabelWord(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn push(&mut self, l: LabelId) {
        self.0.push(l);
    }

    pub fn concat(&self, other: &LabelWord) -> LabelWord {
        let mut out = self.0.clone();
        out.extend_from_slice(&other.0);
        LabelWord(out)
    }

    pub fn prefix(&self, n: usize) -> LabelWord {
        LabelWord(self.0[..n.min(self.0.len())].to_vec())
    }

    /// `other` extends `self` by the returned suffix, if it does.
    pub fn strip_prefix(&self, other: &LabelWord) -> Option<LabelWord> {
        if other.0.len() >= self.0.len() && other.0[..self.0.len()] == self.0[..] {
            Some(LabelWord(other.0[self.0.len()..].to_vec()))
        } else {
            None
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct LabelledEdge {
    pub src: VertexId,
    pub dst: VertexId,
    pub label: LabelId,
}

/// A finite labelled graph, immutable after construction.
#[derive(Debug, Clone)]
pub struct LabelledGraph {
    vertex_ids: Vec<String>,
    labels: Vec<String>,
    edges: Vec<LabelledEdge>,
    /// step[label][vertex] = successors of `vertex` along `label`-edges.
    step: Vec<Vec<VertexSet>>,
    /// rstep[label][vertex] = predecessors of `vertex` along `label`-edges.
    rstep: Vec<Vec<VertexSet>>,
    vertex_index: HashMap<String, u32>,
}

/// Findings of `validate`; the analyzer's standing assumptions (no sinks,
/// no duplicate edges) hold iff the report is clean.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    /// Vertices with no outgoing edge.
    pub sinks: Vec<String>,
    /// `(src, dst, label)` triples that occur more than once.
    pub duplicate_edges: Vec<(String, String, String)>,
}

impl ValidationReport {
    pub fn is_clean(&self) -> bool {
        self.sinks.is_empty() && self.duplicate_edges.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_clean() {
            return write!(f, "ok");
        }
        let mut parts = Vec::new();
        for s in &self.sinks {
            parts.push(format!("sink `{s}`"));
        }
        for (s, d, l) in &self.duplicate_edges {
            parts.push(format!("duplicate edge `{s} {d} {l}`"));
        }
        write!(f, "{}", parts.join("; "))
    }
}

impl LabelledGraph {
    /// Parses the line-oriented graph format: `# comment`, `vertex <id>`
    /// (optional pre-declaration) and `edge <src> <dst> <label>`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut vertex_ids: Vec<String> = Vec::new();
        let mut vertex_index: HashMap<String, u32> = HashMap::new();
        let mut raw_edges: Vec<(u32, u32, String, usize)> = Vec::new();
        let mut label_names: BTreeSet<String> = BTreeSet::new();

        let intern = |id: &str,
                      vertex_ids: &mut Vec<String>,
                      vertex_index: &mut HashMap<String, u32>|
         -> u32 {
            if let Some(&i) = vertex_index.get(id) {
                i
            } else {
                let i = vertex_ids.len() as u32;
                vertex_ids.push(id.to_string());
                vertex_index.insert(id.to_string(), i);
                i
            }
        };

        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let content = raw.split('#').next().unwrap_or("").trim();
            if content.is_empty() {
                continue;
            }
            let tokens: Vec<&str> = content.split_whitespace().collect();
            match tokens[0] {
                "vertex" => {
                    if tokens.len() != 2 {
                        return Err(Error::Syntax {
                            line,
                            msg: format!("expected `vertex <id>`, got `{content}`"),
                        });
                    }
                    intern(tokens[1], &mut vertex_ids, &mut vertex_index);
                }
                "edge" => {
                    if tokens.len() != 4 {
                        return Err(Error::Syntax {
                            line,
                            msg: format!("expected `edge <src> <dst> <label>`, got `{content}`"),
                        });
                    }
                    let src = intern(tokens[1], &mut vertex_ids, &mut vertex_index);
                    let dst = intern(tokens[2], &mut vertex_ids, &mut vertex_index);
                    label_names.insert(tokens[3].to_string());
                    raw_edges.push((src, dst, tokens[3].to_string(), line));
                }
                other => {
                    return Err(Error::Syntax {
                        line,
                        msg: format!("unknown directive `{other}`"),
                    });
                }
            }
        }

        let labels: Vec<String> = label_names.into_iter().collect();
        let label_index: HashMap<&str, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i as u32))
            .collect();

        let mut seen: BTreeSet<(u32, u32, u32)> = BTreeSet::new();
        let mut edges = Vec::with_capacity(raw_edges.len());
        for (src, dst, label, line) in raw_edges {
            let label_id = label_index[label.as_str()];
            if !seen.insert((src, dst, label_id)) {
                return Err(Error::DuplicateEdge {
                    line,
                    src: vertex_ids[src as usize].clone(),
                    dst: vertex_ids[dst as usize].clone(),
                    label,
                });
            }
            edges.push(LabelledEdge {
                src: VertexId(src),
                dst: VertexId(dst),
                label: LabelId(label_id),
            });
        }

        Ok(Self::build(vertex_ids, labels, edges, vertex_index))
    }

    /// Builds a graph from explicit edge triples; vertex order is first
    /// appearance, label order lexicographic.  Duplicate triples are kept and
    /// surface in `validate`.
    pub fn from_edges(edges: &[(&str, &str, &str)]) -> Self {
        let mut vertex_ids: Vec<String> = Vec::new();
        let mut vertex_index: HashMap<String, u32> = HashMap::new();
        let intern = |id: &str,
                      vertex_ids: &mut Vec<String>,
                      vertex_index: &mut HashMap<String, u32>|
         -> u32 {
            if let Some(&i) = vertex_index.get(id) {
                i
            } else {
                let i = vertex_ids.len() as u32;
                vertex_ids.push(id.to_string());
                vertex_index.insert(id.to_string(), i);
                i
            }
        };
        let mut label_names: BTreeSet<String> = BTreeSet::new();
        let mut raw = Vec::new();
        for &(s, d, l) in edges {
            let si = intern(s, &mut vertex_ids, &mut vertex_index);
            let di = intern(d, &mut vertex_ids, &mut vertex_index);
            label_names.insert(l.to_string());
            raw.push((si, di, l.to_string()));
        }
        let labels: Vec<String> = label_names.into_iter().collect();
        let label_index: HashMap<&str, u32> = labels
            .iter()
            .enumerate()
            .map(|(i, l)| (l.as_str(), i as u32))
            .collect();
        let edges = raw
            .into_iter()
            .map(|(s, d, l)| LabelledEdge {
                src: VertexId(s),
                dst: VertexId(d),
                label: LabelId(label_index[l.as_str()]),
            })
            .collect();
        Self::build(vertex_ids, labels, edges, vertex_index)
    }

    fn build(
        vertex_ids: Vec<String>,
        labels: Vec<String>,
        mut edges: Vec<LabelledEdge>,
        vertex_index: HashMap<String, u32>,
    ) -> Self {
        edges.sort_by_key(|e| (e.src, e.label, e.dst));
        let n = vertex_ids.len();
        let mut step = vec![vec![VertexSet::empty(); n]; labels.len()];
        let mut rstep = vec![vec![VertexSet::empty(); n]; labels.len()];
        for e in &edges {
            step[e.label.0 as usize][e.src.0 as usize].insert(e.dst);
            rstep[e.label.0 as usize][e.dst.0 as usize].insert(e.src);
        }
        LabelledGraph {
            vertex_ids,
            labels,
            edges,
            step,
            rstep,
            vertex_index,
        }
    }

    /// Canonical serialization: all vertices pre-declared in order, edges
    /// sorted by (src, label, dst).  `parse(serialize(g))` reproduces `g`.
    pub fn serialize(&self) -> String {
        let mut out = String::new();
        for id in &self.vertex_ids {
            out.push_str(&format!("vertex {id}\n"));
        }
        for e in &self.edges {
            out.push_str(&format!(
                "edge {} {} {}\n",
                self.vertex_ids[e.src.0 as usize],
                self.vertex_ids[e.dst.0 as usize],
                self.labels[e.label.0 as usize]
            ));
        }
        out
    }

    /// Checks the standing assumptions: no sinks, no duplicate-labelled
    /// parallel edges.  Findings are reported, not raised.
    pub fn validate(&self) -> ValidationReport {
        let mut report = ValidationReport::default();
        'vertices: for v in 0..self.vertex_count() {
            for l in 0..self.labels.len() {
                if !self.step[l][v].is_empty() {
                    continue 'vertices;
                }
            }
            report.sinks.push(self.vertex_ids[v].clone());
        }
        let mut seen = BTreeSet::new();
        for e in &self.edges {
            if !seen.insert((e.src, e.dst, e.label)) {
                report.duplicate_edges.push((
                    self.vertex_ids[e.src.0 as usize].clone(),
                    self.vertex_ids[e.dst.0 as usize].clone(),
                    self.labels[e.label.0 as usize].clone(),
                ));
            }
        }
        report
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_ids.len()
    }

    pub fn label_count(&self) -> usize {
        self.labels.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> {
        (0..self.vertex_ids.len() as u32).map(VertexId)
    }

    pub fn labels(&self) -> impl Iterator<Item = LabelId> {
        (0..self.labels.len() as u32).map(LabelId)
    }

    pub fn edges(&self) -> &[LabelledEdge] {
        &self.edges
    }

    pub fn vertex_id(&self, v: VertexId) -> &str {
        &self.vertex_ids[v.0 as usize]
    }

    pub fn label_symbol(&self, l: LabelId) -> &str {
        &self.labels[l.0 as usize]
    }

    pub fn vertex_by_id(&self, id: &str) -> Result<VertexId> {
        self.vertex_index
            .get(id)
            .map(|&i| VertexId(i))
            .ok_or_else(|| Error::UnknownVertex(id.to_string()))
    }

    pub fn label_by_symbol(&self, symbol: &str) -> Result<LabelId> {
        self.labels
            .iter()
            .position(|l| l == symbol)
            .map(|i| LabelId(i as u32))
            .ok_or_else(|| Error::UnknownLabel(symbol.to_string()))
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::from_indices((0..self.vertex_ids.len() as u32).collect())
    }

    /// One-letter relative range: `r(A, a)`.
    pub fn step_set(&self, set: &VertexSet, label: LabelId) -> VertexSet {
        let mut out = VertexSet::empty();
        for v in set.iter() {
            out.union_in_place(&self.step[label.0 as usize][v.0 as usize]);
        }
        out
    }

    /// One-letter reversed step: sources of `a`-edges into `set`.
    pub fn rstep_set(&self, set: &VertexSet, label: LabelId) -> VertexSet {
        let mut out = VertexSet::empty();
        for v in set.iter() {
            out.union_in_place(&self.rstep[label.0 as usize][v.0 as usize]);
        }
        out
    }

    /// The relative range `r(A, w)`, computed letter by letter.  The empty
    /// word acts as the identity (internal sentinel only).
    pub fn relative_range(&self, set: &VertexSet, word: &LabelWord) -> VertexSet {
        let mut current = set.clone();
        for &l in &word.0 {
            if current.is_empty() {
                break;
            }
            current = self.step_set(&current, l);
        }
        current
    }

    /// `r(w) = r(E^0, w)`: ranges of all paths labelled `w`.
    pub fn range_of_word(&self, word: &LabelWord) -> VertexSet {
        self.relative_range(&self.full_set(), word)
    }

    /// Labels of all paths of length `1..=level` ending at `v`.
    pub fn in_label_words(&self, v: VertexId, level: u32) -> BTreeSet<LabelWord> {
        let mut out = BTreeSet::new();
        // frontier: (word read backwards will be reversed at emit) — walk
        // backwards from v, extending on the left.
        let mut frontier: Vec<(VertexId, Vec<LabelId>)> = vec![(v, Vec::new())];
        for _ in 0..level {
            let mut next = Vec::new();
            let mut emitted: BTreeSet<Vec<LabelId>> = BTreeSet::new();
            for (u, word) in frontier {
                for l in self.labels() {
                    let preds = &self.rstep[l.0 as usize][u.0 as usize];
                    if preds.is_empty() {
                        continue;
                    }
                    let mut w = word.clone();
                    w.push(l);
                    emitted.insert(w.clone());
                    for p in preds.iter() {
                        next.push((p, w.clone()));
                    }
                }
            }
            for w in &emitted {
                let mut fwd = w.clone();
                fwd.reverse();
                out.insert(LabelWord(fwd));
            }
            frontier = next;
            // dedup identical (vertex, word) pairs to keep the walk polynomial
            frontier.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
            frontier.dedup();
        }
        out
    }

    /// Labels available on out-edges from `set`: `L(AE^1)`.
    pub fn out_labels(&self, set: &VertexSet) -> Vec<LabelId> {
        self.labels()
            .filter(|&l| !self.step_set(set, l).is_empty())
            .collect()
    }

    /// Renders a word with the graph's label symbols, dot-separated.
    pub fn format_word(&self, word: &LabelWord) -> String {
        word.0
            .iter()
            .map(|&l| self.label_symbol(l).to_string())
            .collect::<Vec<_>>()
            .join(".")
    }

    /// Parses a dot-separated word of label symbols; empty string is ε.
    pub fn parse_word(&self, text: &str) -> Result<LabelWord> {
        if text.is_empty() {
            return Ok(LabelWord::empty());
        }
        let mut word = LabelWord::empty();
        for part in text.split('.') {
            word.push(self.label_by_symbol(part)?);
        }
        Ok(word)
    }

    /// Renders a vertex set as `{id, id, ...}` in canonical order.
    pub fn format_set(&self, set: &VertexSet) -> String {
        let ids: Vec<&str> = set.iter().map(|v| self.vertex_id(v)).collect();
        format!("{{{}}}", ids.join(","))
    }

    pub fn set_from_ids<'a, I: IntoIterator<Item = &'a str>>(&self, ids: I) -> Result<VertexSet> {
        let mut set = VertexSet::empty();
        for id in ids {
            set.insert(self.vertex_by_id(id)?);
        }
        Ok(set)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn word(g: &LabelledGraph, s: &str) -> LabelWord {
        g.parse_word(s).unwrap()
    }

    #[test]
    fn parse_smallest_legal_graph() {
        let g = LabelledGraph::parse("edge v v a").unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.label_count(), 1);
        assert_eq!(g.edges().len(), 1);
        assert!(g.validate().is_clean());
    }

    #[test]
    fn parse_fixture_a() {
        let g = LabelledGraph::parse(fixtures::FIXTURE_A).unwrap();
        assert_eq!(g.vertex_count(), 8);
        assert_eq!(
            g.vertices().map(|v| g.vertex_id(v)).collect::<Vec<_>>(),
            vec!["u0", "p", "q", "v1", "v2", "v3", "v4", "v5"]
        );
        assert_eq!(
            g.labels().map(|l| g.label_symbol(l)).collect::<Vec<_>>(),
            vec!["a", "b", "c", "d", "e", "f"]
        );
    }

    #[test]
    fn duplicate_edge_rejected() {
        let err = LabelledGraph::parse("edge u w a\nedge u w a").unwrap_err();
        match err {
            Error::DuplicateEdge { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn syntax_error_carries_line() {
        let err = LabelledGraph::parse("edge a b c\nfrobnicate x").unwrap_err();
        match err {
            Error::Syntax { line, .. } => assert_eq!(line, 2),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn validate_reports_sink() {
        let g = LabelledGraph::parse("vertex v").unwrap();
        let report = g.validate();
        assert_eq!(report.sinks, vec!["v".to_string()]);
    }

    #[test]
    fn validate_fixtures_clean() {
        for text in [fixtures::FIXTURE_A, fixtures::FIXTURE_B] {
            let g = LabelledGraph::parse(text).unwrap();
            assert!(g.validate().is_clean());
        }
    }

    #[test]
    fn relative_range_fixture_a() {
        let g = LabelledGraph::parse(fixtures::FIXTURE_A).unwrap();
        let full = g.full_set();
        assert_eq!(
            g.relative_range(&full, &word(&g, "a.b")),
            g.set_from_ids(["v1", "v2"]).unwrap()
        );
        assert_eq!(g.format_set(&g.range_of_word(&word(&g, "a.c"))), "{v2,v3}");
        assert!(g
            .relative_range(&VertexSet::empty(), &word(&g, "a.b"))
            .is_empty());
    }

    #[test]
    fn relative_range_fixture_b() {
        let g = LabelledGraph::parse(fixtures::FIXTURE_B).unwrap();
        let a3 = word(&g, "a3");
        let from = g.set_from_ids(["v2", "v3"]).unwrap();
        assert_eq!(
            g.relative_range(&from, &a3),
            g.set_from_ids(["v4", "v5"]).unwrap()
        );
        assert_eq!(g.range_of_word(&a3), g.set_from_ids(["v4", "v5"]).unwrap());
    }

    #[test]
    fn unrealizable_word_has_empty_range() {
        let g = LabelledGraph::parse(fixtures::FIXTURE_A).unwrap();
        assert!(g.range_of_word(&word(&g, "f.a")).is_empty());
    }

    #[test]
    fn in_label_words_fixture_a() {
        let g = LabelledGraph::parse(fixtures::FIXTURE_A).unwrap();
        let v1 = g.vertex_by_id("v1").unwrap();
        let words: Vec<String> = g
            .in_label_words(v1, 2)
            .iter()
            .map(|w| g.format_word(w))
            .collect();
        assert_eq!(words, vec!["a.b", "b"]);
        let v2 = g.vertex_by_id("v2").unwrap();
        let words: Vec<String> = g
            .in_label_words(v2, 2)
            .iter()
            .map(|w| g.format_word(w))
            .collect();
        assert_eq!(words, vec!["a.b", "a.c", "b", "c"]);
        let u0 = g.vertex_by_id("u0").unwrap();
        assert!(g.in_label_words(u0, 3).is_empty());
    }

    #[test]
    fn roundtrip_canonical_form() {
        let g = LabelledGraph::parse(fixtures::FIXTURE_A).unwrap();
        let canon = g.serialize();
        let g2 = LabelledGraph::parse(&canon).unwrap();
        assert_eq!(g2.serialize(), canon);
    }

    #[test]
    fn vertex_set_ops() {
        let a = VertexSet::from_indices(vec![0, 2, 4]);
        let b = VertexSet::from_indices(vec![2, 3]);
        assert_eq!(a.union(&b), VertexSet::from_indices(vec![0, 2, 3, 4]));
        assert_eq!(a.intersect(&b), VertexSet::from_indices(vec![2]));
        assert_eq!(a.difference(&b), VertexSet::from_indices(vec![0, 4]));
        assert!(VertexSet::from_indices(vec![2]).is_subset(&a));
        assert!(!a.is_subset(&b));
    }
}
