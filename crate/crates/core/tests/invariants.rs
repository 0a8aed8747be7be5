//! Structural invariants checked across the fixtures and a seeded stream of
//! random graphs.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use labelspace::accommodating::{class_decomposition, omega, stable_partition, SetFamily};
use labelspace::cofinality::{check_cofinality, check_strong_cofinality};
use labelspace::disagreeable::{disagreeable_block, BlockStatus};
use labelspace::fixtures;
use labelspace::graph::{LabelId, LabelWord};
use labelspace::sample::random_graph;
use labelspace::words::is_primitive;
use labelspace::wlr::{check_wlr, WlrVerdict};
use labelspace::{simplicity_verdict, Analysis, Caps, Error, LabelledGraph, Simplicity, VertexSet};

fn caps() -> Caps {
    Caps::default()
}

fn sample_graphs(seed: u64, count: usize) -> Vec<LabelledGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| random_graph(&mut rng, 5, 3)).collect()
}

fn fixture_graphs() -> Vec<LabelledGraph> {
    [
        fixtures::FIXTURE_A,
        fixtures::FIXTURE_B,
        fixtures::FIXTURE_C,
        fixtures::FIXTURE_D,
    ]
    .iter()
    .map(|t| LabelledGraph::parse(t).unwrap())
    .collect()
}

fn random_word(g: &LabelledGraph, rng: &mut ChaCha8Rng, max_len: usize) -> LabelWord {
    let len = rng.gen_range(0..=max_len);
    LabelWord(
        (0..len)
            .map(|_| LabelId(rng.gen_range(0..g.label_count() as u32)))
            .collect(),
    )
}

fn random_set(g: &LabelledGraph, rng: &mut ChaCha8Rng) -> VertexSet {
    g.vertices().filter(|_| rng.gen_bool(0.5)).collect()
}

#[test]
fn relative_range_laws() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for g in sample_graphs(12, 60).iter().chain(fixture_graphs().iter()) {
        for _ in 0..10 {
            let a = random_set(g, &mut rng);
            let b = random_set(g, &mut rng);
            let w = random_word(g, &mut rng, 5);
            // union distributes, intersection only contracts
            assert_eq!(
                g.relative_range(&a.union(&b), &w),
                g.relative_range(&a, &w).union(&g.relative_range(&b, &w))
            );
            assert!(g
                .relative_range(&a.intersect(&b), &w)
                .is_subset(&g.relative_range(&a, &w).intersect(&g.relative_range(&b, &w))));
            // splitting the word composes
            let cut = rng.gen_range(0..=w.len());
            let (u, v) = (w.prefix(cut), LabelWord(w.0[cut..].to_vec()));
            assert_eq!(
                g.relative_range(&g.relative_range(&a, &u), &v),
                g.relative_range(&a, &w)
            );
        }
    }
}

#[test]
fn class_partitions_refine_downward_and_stabilize() {
    for g in sample_graphs(13, 60).iter().chain(fixture_graphs().iter()) {
        let (stable, level) = stable_partition(g, &caps()).unwrap();
        let mut prev = None;
        for l in 1..=level + 2 {
            let p = omega(g, l, &caps()).unwrap();
            if let Some(prev) = &prev {
                assert!(p.refines(prev));
            }
            if l >= level {
                assert_eq!(p, stable);
            }
            prev = Some(p);
        }
        if level > 1 {
            assert_ne!(omega(g, level - 1, &caps()).unwrap(), stable);
        }
    }
}

#[test]
fn decomposition_identity_everywhere_defined() {
    for g in sample_graphs(14, 60).iter().chain(fixture_graphs().iter()) {
        for v in g.vertices() {
            for l in 1..=3 {
                match class_decomposition(g, v, l) {
                    Ok(d) => {
                        let p = omega(g, l, &caps()).unwrap();
                        assert_eq!(d.x.difference(&d.y_range), *p.block_of(v));
                    }
                    Err(Error::NoIncomingWords { .. }) => {}
                    Err(other) => panic!("unexpected {other:?}"),
                }
            }
        }
    }
}

#[test]
fn smallest_family_is_accommodating() {
    for g in sample_graphs(15, 40).iter().chain(fixture_graphs().iter()) {
        let family = labelspace::accommodating::smallest_accommodating(g, &caps()).unwrap();
        let members = family.explicit_members().unwrap().to_vec();
        for a in &members {
            for l in g.labels() {
                assert!(family.contains(&g.step_set(a, l)));
            }
            for b in &members {
                assert!(family.contains(&a.union(b)));
                assert!(family.contains(&a.intersect(b)));
            }
        }
        // all plain ranges are members
        let mut frontier = vec![g.full_set()];
        for _ in 0..g.vertex_count() + 2 {
            let mut next = Vec::new();
            for s in &frontier {
                for l in g.labels() {
                    let t = g.step_set(s, l);
                    if !t.is_empty() {
                        assert!(family.contains(&t));
                        next.push(t);
                    }
                }
            }
            next.sort();
            next.dedup();
            frontier = next;
        }
    }
}

#[test]
fn strong_cofinality_implies_cofinality() {
    for g in sample_graphs(16, 80).iter().chain(fixture_graphs().iter()) {
        let (stable, _) = stable_partition(g, &caps()).unwrap();
        let level_one = omega(g, 1, &caps()).unwrap();
        let strong = check_strong_cofinality(g, &level_one, &stable, &caps()).unwrap();
        if strong.holds() {
            assert!(check_cofinality(g, &stable, &caps()).unwrap().holds());
        }
    }
}

#[test]
fn agreeability_of_blocks_is_monotone_in_level() {
    for g in sample_graphs(17, 50).iter().chain(fixture_graphs().iter()) {
        for v in g.vertices() {
            let block = VertexSet::singleton(v);
            for k in 1..=3u32 {
                let at_k = disagreeable_block(g, &block, k, &caps()).unwrap();
                if !at_k.is_disagreeable() {
                    for later in [k + 1, k + 2] {
                        assert!(
                            !disagreeable_block(g, &block, later, &caps())
                                .unwrap()
                                .is_disagreeable(),
                            "agreeable at {k} but disagreeable at {later}"
                        );
                    }
                }
            }
        }
    }
}

#[test]
fn agreeable_evidence_is_purely_periodic_and_short() {
    for g in sample_graphs(18, 50).iter().chain(fixture_graphs().iter()) {
        let (stable, _) = stable_partition(g, &caps()).unwrap();
        for block in stable.blocks() {
            for l in 1..=3u32 {
                if let BlockStatus::Agreeable { lassos } =
                    disagreeable_block(g, block, l, &caps()).unwrap()
                {
                    assert!(!lassos.is_empty());
                    for x in &lassos {
                        assert!(x.is_purely_periodic());
                        assert!(is_primitive(x.cycle()));
                        assert!(x.cycle().len() <= l as usize);
                    }
                }
            }
        }
    }
}

#[test]
fn verdicts_are_internally_consistent() {
    for g in sample_graphs(19, 80).iter().chain(fixture_graphs().iter()) {
        let analysis = match Analysis::new(g.clone(), caps()) {
            Ok(a) => a,
            Err(_) => continue,
        };
        let report = simplicity_verdict(&analysis).unwrap();
        match report.verdict {
            Simplicity::Simple => {
                assert!(report.wlr_class_family.holds());
                assert!(report.strong_cofinality.holds());
                assert!(report.disagreeable.holds());
            }
            Simplicity::NotApplicable => assert!(!report.wlr_class_family.holds()),
            Simplicity::NotSimple => {
                assert!(report.wlr_class_family.holds());
                assert!(
                    !report.strong_cofinality.holds()
                        || (report.singletons_in_class_family
                            && !report.disagreeable.holds())
                );
            }
            Simplicity::Unknown => {
                assert!(report.wlr_class_family.holds());
                assert!(report.strong_cofinality.holds());
                assert!(!report.disagreeable.holds());
                assert!(!report.singletons_in_class_family);
            }
        }
        // and the class-family check agrees with rerunning it directly
        assert_eq!(
            report.wlr_class_family.holds(),
            matches!(
                check_wlr(g, analysis.class_family(), &caps()).unwrap(),
                WlrVerdict::Holds
            )
        );
    }
}

#[test]
fn family_wlr_counterexamples_replay() {
    for g in sample_graphs(20, 80).iter().chain(fixture_graphs().iter()) {
        for family in [
            labelspace::accommodating::smallest_accommodating(g, &caps()).unwrap(),
            labelspace::accommodating::bar_e(g, &caps()).unwrap(),
        ] {
            if let WlrVerdict::Fails { a, b, word } = check_wlr(g, &family, &caps()).unwrap() {
                let lhs = g.relative_range(&a, &word).intersect(&g.relative_range(&b, &word));
                let rhs = g.relative_range(&a.intersect(&b), &word);
                assert_ne!(lhs, rhs);
                match &family {
                    SetFamily::Explicit(_) => {
                        assert!(family.contains(&a) && family.contains(&b));
                    }
                    SetFamily::BlockImplicit { blocks } => {
                        assert!(blocks.contains(&a) && blocks.contains(&b));
                    }
                }
            }
        }
    }
}
