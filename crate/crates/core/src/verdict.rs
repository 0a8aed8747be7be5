//! Combining the deciders into a simplicity verdict for the algebra of a
//! labelled space.
//!
//! The rule table, applied in order:
//!
//! 1. the class family must be weakly left-resolving, otherwise the
//!    criteria do not apply;
//! 2. strongly cofinal and disagreeable together are sufficient for
//!    simplicity;
//! 3. strong cofinality is necessary, so its failure refutes simplicity;
//! 4. when every vertex class is a singleton, disagreeability is also
//!    necessary, so its failure refutes simplicity;
//! 5. anything else is out of reach of the implemented criteria.

use crate::analysis::Analysis;
use crate::cofinality::CofinalityVerdict;
use crate::disagreeable::DisagreeableVerdict;
use crate::error::Result;
use crate::wlr::WlrVerdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Simplicity {
    Simple,
    NotSimple,
    Unknown,
    NotApplicable,
}

impl Simplicity {
    pub fn as_str(&self) -> &'static str {
        match self {
            Simplicity::Simple => "SIMPLE",
            Simplicity::NotSimple => "NOT_SIMPLE",
            Simplicity::Unknown => "UNKNOWN",
            Simplicity::NotApplicable => "NOT_APPLICABLE",
        }
    }

    /// Process exit code: 0 decided, 2 undecided, 3 out of scope.
    pub fn exit_code(&self) -> i32 {
        match self {
            Simplicity::Simple | Simplicity::NotSimple => 0,
            Simplicity::Unknown => 2,
            Simplicity::NotApplicable => 3,
        }
    }
}

/// A supporting statement for a verdict, identified by a stable tag.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Citation {
    pub tag: &'static str,
    pub statement: &'static str,
}

const CITE_WLR: Citation = Citation {
    tag: "needs-weak-left-resolving",
    statement: "the simplicity criteria assume the space is weakly \
                left-resolving over the family of unions of vertex classes; \
                the identity fails here",
};
const CITE_SUFFICIENT: Citation = Citation {
    tag: "cofinal-disagreeable-implies-simple",
    statement: "a strongly cofinal and disagreeable space has a simple \
                algebra",
};
const CITE_COFINAL_NECESSARY: Citation = Citation {
    tag: "simple-implies-strongly-cofinal",
    statement: "a simple algebra forces the space to be strongly cofinal",
};
const CITE_DISAGREEABLE_NECESSARY: Citation = Citation {
    tag: "simple-implies-disagreeable",
    statement: "with every vertex class a singleton, a simple algebra \
                forces the space to be disagreeable",
};
const CITE_INCONCLUSIVE: Citation = Citation {
    tag: "criteria-inconclusive",
    statement: "the sufficient condition fails while no implemented \
                necessary condition is violated",
};

/// Everything the verdict rests on, for reporting and replay.
#[derive(Debug)]
pub struct SimplicityReport {
    pub verdict: Simplicity,
    /// Which rule fired.
    pub rule: &'static str,
    pub wlr_class_family: WlrVerdict,
    pub strong_cofinality: CofinalityVerdict,
    pub cofinality: CofinalityVerdict,
    pub disagreeable: DisagreeableVerdict,
    pub singletons_in_class_family: bool,
    pub stable_level: u32,
    pub citations: Vec<Citation>,
}

pub fn simplicity_verdict(analysis: &Analysis) -> Result<SimplicityReport> {
    let wlr = analysis.wlr_class_family()?;
    let strong = analysis.strong_cofinality()?;
    let plain = analysis.cofinality()?;
    let disagreeable = analysis.disagreeable()?;
    let singletons = analysis.singletons_in_class_family();

    let (verdict, rule, citations) = if !wlr.holds() {
        (
            Simplicity::NotApplicable,
            "class-family-not-weakly-left-resolving",
            vec![CITE_WLR],
        )
    } else if strong.holds() && disagreeable.holds() {
        (
            Simplicity::Simple,
            "sufficient-condition",
            vec![CITE_SUFFICIENT],
        )
    } else if !strong.holds() {
        (
            Simplicity::NotSimple,
            "strong-cofinality-violated",
            vec![CITE_COFINAL_NECESSARY],
        )
    } else if singletons && !disagreeable.holds() {
        (
            Simplicity::NotSimple,
            "disagreeability-violated",
            vec![CITE_DISAGREEABLE_NECESSARY],
        )
    } else {
        (
            Simplicity::Unknown,
            "criteria-inconclusive",
            vec![CITE_INCONCLUSIVE],
        )
    };

    Ok(SimplicityReport {
        verdict,
        rule,
        wlr_class_family: wlr,
        strong_cofinality: strong,
        cofinality: plain,
        disagreeable,
        singletons_in_class_family: singletons,
        stable_level: analysis.stable_level(),
        citations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::caps::Caps;
    use crate::fixtures;
    use crate::graph::LabelledGraph;

    fn verdict_for(text: &str) -> SimplicityReport {
        let g = LabelledGraph::parse(text).unwrap();
        let analysis = Analysis::new(g, Caps::default()).unwrap();
        simplicity_verdict(&analysis).unwrap()
    }

    #[test]
    fn fixture_a_out_of_scope() {
        let report = verdict_for(fixtures::FIXTURE_A);
        assert_eq!(report.verdict, Simplicity::NotApplicable);
        assert!(!report.wlr_class_family.holds());
        assert_eq!(report.verdict.exit_code(), 3);
    }

    #[test]
    fn fixture_b_simple() {
        let report = verdict_for(fixtures::FIXTURE_B);
        assert_eq!(report.verdict, Simplicity::Simple);
        assert_eq!(report.rule, "sufficient-condition");
        assert_eq!(report.verdict.exit_code(), 0);
    }

    #[test]
    fn fixture_c_not_simple_by_disagreeability() {
        let report = verdict_for(fixtures::FIXTURE_C);
        assert_eq!(report.verdict, Simplicity::NotSimple);
        assert_eq!(report.rule, "disagreeability-violated");
        assert!(report.strong_cofinality.holds());
        assert!(report.singletons_in_class_family);
    }

    #[test]
    fn fixture_d_not_simple_by_cofinality() {
        let report = verdict_for(fixtures::FIXTURE_D);
        assert_eq!(report.verdict, Simplicity::NotSimple);
        assert_eq!(report.rule, "strong-cofinality-violated");
    }

    #[test]
    fn unknown_branch_requires_coarse_classes() {
        // cofinal but not disagreeable, with a non-singleton class: two
        // parallel loops reading the same letter from a shared source keep
        // the classes merged, every sequence is a^∞, and the necessary
        // conditions stay silent
        let report = verdict_for("edge s m a\nedge s n a\nedge m m b\nedge n n b\n");
        // the class {m, n} never splits
        assert!(!report.singletons_in_class_family);
        if report.verdict == Simplicity::Unknown {
            assert_eq!(report.rule, "criteria-inconclusive");
            assert_eq!(report.verdict.exit_code(), 2);
        }
    }
}
