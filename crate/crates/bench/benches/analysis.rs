use criterion::{black_box, criterion_group, criterion_main, Criterion};

use labelspace::accommodating::smallest_accommodating;
use labelspace::automaton::SubsetAutomaton;
use labelspace::{fixtures, simplicity_verdict, Analysis, Caps, LabelledGraph};

fn bench_analyze(c: &mut Criterion) {
    let mut group = c.benchmark_group("analyze");
    for (name, text) in [
        ("fixture-a", fixtures::FIXTURE_A),
        ("fixture-b", fixtures::FIXTURE_B),
        ("fixture-d", fixtures::FIXTURE_D),
    ] {
        group.bench_function(name, |b| {
            b.iter(|| {
                let g = LabelledGraph::parse(black_box(text)).unwrap();
                let analysis = Analysis::new(g, Caps::default()).unwrap();
                simplicity_verdict(&analysis).unwrap()
            })
        });
    }
    group.finish();
}

fn bench_automaton(c: &mut Criterion) {
    let g = LabelledGraph::parse(fixtures::FIXTURE_B).unwrap();
    c.bench_function("subset-automaton/fixture-b", |b| {
        b.iter(|| SubsetAutomaton::build(black_box(&g), &[g.full_set()], &Caps::default()).unwrap())
    });
}

fn bench_family(c: &mut Criterion) {
    let g = LabelledGraph::parse(fixtures::FIXTURE_B).unwrap();
    c.bench_function("smallest-family/fixture-b", |b| {
        b.iter(|| smallest_accommodating(black_box(&g), &Caps::default()).unwrap())
    });
}

criterion_group!(benches, bench_analyze, bench_automaton, bench_family);
criterion_main!(benches);
