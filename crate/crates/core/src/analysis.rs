//! A validated analysis session over one graph: the partitions and families
//! every decider needs, computed once.

use crate::accommodating::{
    omega, smallest_accommodating, stable_partition, Partition, SetFamily,
};
use crate::caps::Caps;
use crate::cofinality::{check_cofinality, check_strong_cofinality, CofinalityVerdict};
use crate::disagreeable::{check_disagreeable, DisagreeableVerdict};
use crate::error::{Error, Result};
use crate::graph::LabelledGraph;
use crate::wlr::{check_wlr, WlrVerdict};

#[derive(Debug)]
pub struct Analysis {
    graph: LabelledGraph,
    caps: Caps,
    stable: Partition,
    stable_level: u32,
    level_one: Partition,
    bar: SetFamily,
}

impl Analysis {
    /// Validates the standing assumptions (no sinks, no duplicate labelled
    /// edges) and precomputes the partitions.
    pub fn new(graph: LabelledGraph, caps: Caps) -> Result<Analysis> {
        let report = graph.validate();
        if !report.is_clean() {
            return Err(Error::InvalidGraph(report.to_string()));
        }
        let (stable, stable_level) = stable_partition(&graph, &caps)?;
        let level_one = omega(&graph, 1, &caps)?;
        let bar = SetFamily::BlockImplicit {
            blocks: stable.blocks().to_vec(),
        };
        Ok(Analysis {
            graph,
            caps,
            stable,
            stable_level,
            level_one,
            bar,
        })
    }

    pub fn graph(&self) -> &LabelledGraph {
        &self.graph
    }

    pub fn caps(&self) -> &Caps {
        &self.caps
    }

    pub fn stable_partition(&self) -> &Partition {
        &self.stable
    }

    /// Least level at which the class partition stops refining.
    pub fn stable_level(&self) -> u32 {
        self.stable_level
    }

    pub fn level_one_partition(&self) -> &Partition {
        &self.level_one
    }

    /// The family of unions of stable classes.
    pub fn class_family(&self) -> &SetFamily {
        &self.bar
    }

    /// The smallest accommodating family, materialized on demand.
    pub fn smallest_family(&self) -> Result<SetFamily> {
        smallest_accommodating(&self.graph, &self.caps)
    }

    pub fn wlr_class_family(&self) -> Result<WlrVerdict> {
        check_wlr(&self.graph, &self.bar, &self.caps)
    }

    pub fn wlr_smallest_family(&self) -> Result<WlrVerdict> {
        check_wlr(&self.graph, &self.smallest_family()?, &self.caps)
    }

    pub fn strong_cofinality(&self) -> Result<CofinalityVerdict> {
        check_strong_cofinality(&self.graph, &self.level_one, &self.stable, &self.caps)
    }

    pub fn cofinality(&self) -> Result<CofinalityVerdict> {
        check_cofinality(&self.graph, &self.stable, &self.caps)
    }

    pub fn disagreeable(&self) -> Result<DisagreeableVerdict> {
        check_disagreeable(&self.graph, &self.stable, self.stable_level, &self.caps)
    }

    /// Every singleton a member of the class family, i.e. the stable
    /// partition is discrete.
    pub fn singletons_in_class_family(&self) -> bool {
        self.stable.is_discrete()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn rejects_graphs_with_sinks() {
        let g = LabelledGraph::parse("edge u v a").unwrap();
        assert!(matches!(
            Analysis::new(g, Caps::default()),
            Err(Error::InvalidGraph(_))
        ));
    }

    #[test]
    fn session_over_fixture_b() {
        let g = LabelledGraph::parse(fixtures::FIXTURE_B).unwrap();
        let analysis = Analysis::new(g, Caps::default()).unwrap();
        assert_eq!(analysis.stable_level(), 1);
        assert!(analysis.singletons_in_class_family());
        assert!(analysis.wlr_class_family().unwrap().holds());
        assert!(analysis.strong_cofinality().unwrap().holds());
        assert!(analysis.disagreeable().unwrap().holds());
    }
}
