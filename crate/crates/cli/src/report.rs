//! Serializable analysis reports and witness replay.
//!
//! The structured report is plain JSON over strings in the graph's own
//! vocabulary (vertex ids, dotted label words), so a witness survives a
//! round trip through a file and can be re-verified later against the same
//! graph.

use serde::{Deserialize, Serialize};

use labelspace::accommodating::SetFamily;
use labelspace::cofinality::CofinalityVerdict;
use labelspace::disagreeable::{check_disagreeable, DisagreeableVerdict};
use labelspace::verdict::SimplicityReport;
use labelspace::words::{lasso_least_pure_period, Lasso};
use labelspace::wlr::WlrVerdict;
use labelspace::{Analysis, LabelWord, LabelledGraph, VertexSet};

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Report {
    pub graph: GraphInfo,
    pub verdicts: Verdicts,
    pub witnesses: Vec<Witness>,
    pub citations: Vec<CitationOut>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct GraphInfo {
    pub vertices: Vec<String>,
    pub labels: Vec<String>,
    pub edges: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct Verdicts {
    pub simplicity: String,
    pub rule: String,
    pub weakly_left_resolving_class_family: bool,
    pub strongly_cofinal: bool,
    pub cofinal: bool,
    pub disagreeable: bool,
    pub singletons_in_class_family: bool,
    pub stable_level: u32,
    pub stable_classes: Vec<Vec<String>>,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Witness {
    /// An infinite word whose class range never enters the reach of the
    /// target block; `property` names the violated condition.
    CofinalityEscape {
        property: String,
        w: String,
        block: Vec<String>,
        prefix: String,
        cycle: String,
    },
    /// `r(a, word) ∩ r(b, word) ≠ r(a ∩ b, word)`.
    ResolvingCounterexample {
        a: Vec<String>,
        b: Vec<String>,
        word: String,
    },
    /// Every sequence readable from the block is purely periodic with
    /// period at most `level`.
    AgreeableClass {
        block: Vec<String>,
        level: u32,
        lassos: Vec<LassoOut>,
    },
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct LassoOut {
    pub prefix: String,
    pub cycle: String,
}

#[derive(Debug, Clone, Serialize, Deserialize, PartialEq, Eq)]
pub struct CitationOut {
    pub tag: String,
    pub statement: String,
}

fn set_ids(g: &LabelledGraph, s: &VertexSet) -> Vec<String> {
    s.iter().map(|v| g.vertex_id(v).to_string()).collect()
}

pub fn build_report(analysis: &Analysis, simplicity: &SimplicityReport) -> Report {
    let g = analysis.graph();
    let mut witnesses = Vec::new();
    if let WlrVerdict::Fails { a, b, word } = &simplicity.wlr_class_family {
        witnesses.push(Witness::ResolvingCounterexample {
            a: set_ids(g, a),
            b: set_ids(g, b),
            word: g.format_word(word),
        });
    }
    if let CofinalityVerdict::Fails(w) = &simplicity.strong_cofinality {
        witnesses.push(Witness::CofinalityEscape {
            property: "strong-cofinality".into(),
            w: g.vertex_id(w.from).to_string(),
            block: set_ids(g, &w.target),
            prefix: g.format_word(&w.prefix),
            cycle: g.format_word(&w.cycle),
        });
    }
    if let CofinalityVerdict::Fails(w) = &simplicity.cofinality {
        witnesses.push(Witness::CofinalityEscape {
            property: "cofinality".into(),
            w: g.vertex_id(w.from).to_string(),
            block: set_ids(g, &w.target),
            prefix: g.format_word(&w.prefix),
            cycle: g.format_word(&w.cycle),
        });
    }
    if let DisagreeableVerdict::Fails(f) = &simplicity.disagreeable {
        witnesses.push(Witness::AgreeableClass {
            block: set_ids(g, &f.block),
            level: f.level,
            lassos: f
                .lassos
                .iter()
                .map(|x| LassoOut {
                    prefix: g.format_word(x.prefix()),
                    cycle: g.format_word(x.cycle()),
                })
                .collect(),
        });
    }

    Report {
        graph: GraphInfo {
            vertices: g.vertices().map(|v| g.vertex_id(v).to_string()).collect(),
            labels: g.labels().map(|l| g.label_symbol(l).to_string()).collect(),
            edges: g.edges().len(),
        },
        verdicts: Verdicts {
            simplicity: simplicity.verdict.as_str().to_string(),
            rule: simplicity.rule.to_string(),
            weakly_left_resolving_class_family: simplicity.wlr_class_family.holds(),
            strongly_cofinal: simplicity.strong_cofinality.holds(),
            cofinal: simplicity.cofinality.holds(),
            disagreeable: simplicity.disagreeable.holds(),
            singletons_in_class_family: simplicity.singletons_in_class_family,
            stable_level: simplicity.stable_level,
            stable_classes: analysis
                .stable_partition()
                .blocks()
                .iter()
                .map(|b| set_ids(g, b))
                .collect(),
        },
        witnesses,
        citations: simplicity
            .citations
            .iter()
            .map(|c| CitationOut {
                tag: c.tag.to_string(),
                statement: c.statement.to_string(),
            })
            .collect(),
    }
}

pub fn render_text(report: &Report) -> String {
    let mut out = String::new();
    let g = &report.graph;
    out.push_str(&format!(
        "graph: {} vertices, {} labels, {} edges\n",
        g.vertices.len(),
        g.labels.len(),
        g.edges
    ));
    let v = &report.verdicts;
    let classes: Vec<String> = v
        .stable_classes
        .iter()
        .map(|c| format!("{{{}}}", c.join(",")))
        .collect();
    out.push_str(&format!(
        "stable classes (level {}): {}\n",
        v.stable_level,
        classes.join(" ")
    ));
    let yn = |b: bool| if b { "yes" } else { "no" };
    out.push_str(&format!(
        "weakly left-resolving over class family: {}\n",
        yn(v.weakly_left_resolving_class_family)
    ));
    out.push_str(&format!("strongly cofinal: {}\n", yn(v.strongly_cofinal)));
    out.push_str(&format!("cofinal: {}\n", yn(v.cofinal)));
    out.push_str(&format!("disagreeable: {}\n", yn(v.disagreeable)));
    out.push_str(&format!(
        "singleton classes: {}\n",
        yn(v.singletons_in_class_family)
    ));
    for w in &report.witnesses {
        match w {
            Witness::CofinalityEscape {
                property,
                w,
                block,
                prefix,
                cycle,
            } => out.push_str(&format!(
                "witness ({property}): from {w}, target {{{}}}, word {}({})^∞\n",
                block.join(","),
                if prefix.is_empty() {
                    String::new()
                } else {
                    format!("{prefix}.")
                },
                cycle
            )),
            Witness::ResolvingCounterexample { a, b, word } => out.push_str(&format!(
                "witness (weak left-resolving): sets {{{}}} and {{{}}} merge along {word}\n",
                a.join(","),
                b.join(",")
            )),
            Witness::AgreeableClass {
                block,
                level,
                lassos,
            } => {
                let shown: Vec<String> = lassos
                    .iter()
                    .map(|x| {
                        if x.prefix.is_empty() {
                            format!("({})^∞", x.cycle)
                        } else {
                            format!("{}.({})^∞", x.prefix, x.cycle)
                        }
                    })
                    .collect();
                out.push_str(&format!(
                    "witness (agreeable class): {{{}}} at level {level} emits only {}\n",
                    block.join(","),
                    shown.join(" ")
                ));
            }
        }
    }
    out.push_str(&format!("verdict: {} ({})\n", v.simplicity, v.rule));
    for c in &report.citations {
        out.push_str(&format!("note [{}]: {}\n", c.tag, c.statement));
    }
    out
}

/// Re-verifies a serialized witness against a graph.  Errors explain what
/// failed to replay.
pub fn replay_witness(analysis: &Analysis, witness: &Witness) -> anyhow::Result<()> {
    let g = analysis.graph();
    match witness {
        Witness::ResolvingCounterexample { a, b, word } => {
            let a = g.set_from_ids(a.iter().map(|s| s.as_str()))?;
            let b = g.set_from_ids(b.iter().map(|s| s.as_str()))?;
            let word = g.parse_word(word)?;
            let lhs = g.relative_range(&a, &word).intersect(&g.relative_range(&b, &word));
            let rhs = g.relative_range(&a.intersect(&b), &word);
            anyhow::ensure!(
                lhs != rhs,
                "the ranges agree along `{}`; no violation",
                g.format_word(&word)
            );
            Ok(())
        }
        Witness::CofinalityEscape {
            property,
            w,
            block,
            prefix,
            cycle,
        } => {
            let from = g.vertex_by_id(w)?;
            let target = g.set_from_ids(block.iter().map(|s| s.as_str()))?;
            let prefix = g.parse_word(prefix)?;
            let cycle = g.parse_word(cycle)?;
            anyhow::ensure!(!cycle.is_empty(), "cycle must be nonempty");
            let source_class = match property.as_str() {
                "strong-cofinality" => analysis.level_one_partition().block_of(from),
                "cofinality" => analysis.stable_partition().block_of(from),
                other => anyhow::bail!("unknown property `{other}`"),
            };
            anyhow::ensure!(
                analysis
                    .stable_partition()
                    .blocks()
                    .iter()
                    .any(|b| *b == target),
                "target is not a stable class"
            );
            let automaton = labelspace::automaton::SubsetAutomaton::build(
                g,
                std::slice::from_ref(&target),
                analysis.caps(),
            )?;
            let union = automaton.reach_union(automaton.find(&target).unwrap());

            // walk the lasso: every state from step 1 on must keep the path
            // alive and the class range outside the union, and the pair
            // state must close up after one cycle
            let mut path = labelspace::VertexSet::singleton(from);
            let mut class = source_class.clone();
            let step_all = |word: &LabelWord,
                                path: &mut VertexSet,
                                class: &mut VertexSet|
             -> anyhow::Result<()> {
                for &l in &word.0 {
                    *path = g.step_set(path, l);
                    *class = g.step_set(class, l);
                    anyhow::ensure!(!path.is_empty(), "the word dies out");
                    anyhow::ensure!(
                        !class.is_subset(&union),
                        "a prefix is absorbed by the target"
                    );
                }
                Ok(())
            };
            step_all(&prefix, &mut path, &mut class)?;
            let at_base = (path.clone(), class.clone());
            step_all(&cycle, &mut path, &mut class)?;
            anyhow::ensure!(
                (path, class) == at_base,
                "the cycle does not close; the witness is not periodic"
            );
            Ok(())
        }
        Witness::AgreeableClass { block, level, lassos } => {
            let block = g.set_from_ids(block.iter().map(|s| s.as_str()))?;
            let parsed: anyhow::Result<Vec<Lasso>> = lassos
                .iter()
                .map(|x| {
                    Ok(Lasso::new(
                        g.parse_word(&x.prefix)?,
                        g.parse_word(&x.cycle)?,
                    ))
                })
                .collect();
            let parsed = parsed?;
            for x in &parsed {
                anyhow::ensure!(
                    lasso_least_pure_period(x, *level as usize).is_some(),
                    "a listed sequence has no period at most {level}"
                );
            }
            // completeness is re-established by running the decider
            let verdict = check_disagreeable(
                g,
                analysis.stable_partition(),
                analysis.stable_level(),
                analysis.caps(),
            )?;
            match verdict {
                DisagreeableVerdict::Fails(f)
                    if f.block == block && f.level == *level =>
                {
                    Ok(())
                }
                _ => anyhow::bail!("the decider does not reproduce this failure"),
            }
        }
    }
}

/// Text rendering of an explicit family, for `check accommodating`.
pub fn render_family(g: &LabelledGraph, family: &SetFamily) -> String {
    match family {
        SetFamily::Explicit(members) => {
            let mut out = format!("{} members\n", members.len());
            for m in members {
                out.push_str(&format!("{}\n", g.format_set(m)));
            }
            out
        }
        SetFamily::BlockImplicit { blocks } => {
            let shown: Vec<String> = blocks.iter().map(|b| g.format_set(b)).collect();
            format!("unions of {} classes: {}\n", blocks.len(), shown.join(" "))
        }
    }
}
