use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use complicial::axioms::SampleSpec;
use complicial::exec::Execution;
use complicial::suite::{run_suite_with, Suite};

fn execution(c: &mut Criterion) {
    let mut group = c.benchmark_group("suite");
    group.sample_size(10);
    for (suite, count) in [(Suite::AxiomsHoeq, 60), (Suite::QisDeciders, 300), (Suite::Cones, 300)] {
        let spec = SampleSpec::new(42, count);
        for (label, exec) in [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)] {
            group.bench_with_input(BenchmarkId::new(suite.name(), label), &spec, |b, spec| {
                b.iter(|| black_box(run_suite_with(suite, spec, exec).unwrap().pass))
            });
        }
    }
    group.finish();
}

criterion_group!(benches, execution);
criterion_main!(benches);
