use alcove::sweep::{run, Execution, Suite, SweepSpec};
use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

fn spec(system: &str, suite: Suite, execution: Execution) -> SweepSpec {
    let mut s = SweepSpec::new(&[system], &[suite]);
    s.execution = execution;
    s
}

fn sweeps(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(10);
    let modes: &[(&str, Execution)] = &[
        ("sequential", Execution::Sequential),
        #[cfg(feature = "parallel")]
        ("parallel", Execution::Parallel),
    ];
    for (system, suite) in [
        ("A2", Suite::LengthFormula),
        ("B2", Suite::Prop44),
        ("G2", Suite::Kottwitz),
    ] {
        for (name, mode) in modes {
            let id = BenchmarkId::new(format!("{}/{system}", suite.name()), name);
            group.bench_with_input(id, &spec(system, suite, *mode), |b, s| b.iter(|| run(s).unwrap()));
        }
    }
    group.finish();
}

criterion_group!(benches, sweeps);
criterion_main!(benches);
