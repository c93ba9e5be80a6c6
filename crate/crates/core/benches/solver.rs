use std::hint::black_box;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use cyquot_core::lefschetz::solve_configs_with;
use cyquot_core::pipeline::{run_example_with, ExampleDef};
use cyquot_core::Execution;

const MODES: [(&str, Execution); 2] = [
    ("sequential", Execution::Sequential),
    ("parallel", Execution::Parallel),
];

fn solver(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_configs");
    group.sample_size(10);
    for (p, r, max) in [(5u64, 4i64, 15u32), (5, 4, 30), (7, 3, 12), (3, 0, 24)] {
        for (name, exec) in MODES {
            group.bench_with_input(
                BenchmarkId::new(name, format!("p{p}-r{r}-max{max}")),
                &(p, r, max),
                |b, &(p, r, max)| {
                    b.iter(|| {
                        solve_configs_with(exec, black_box(p), black_box(r), black_box(max))
                            .unwrap()
                    })
                },
            );
        }
    }
    group.finish();
}

fn examples(c: &mut Criterion) {
    let mut group = c.benchmark_group("example");
    group.sample_size(10);
    let def = ExampleDef::builtin("d16xz2").unwrap();
    for (name, exec) in MODES {
        group.bench_function(BenchmarkId::new(name, "d16xz2"), |b| {
            b.iter(|| run_example_with(exec, black_box(&def)).unwrap())
        });
    }
    group.finish();
}

criterion_group!(benches, solver, examples);
criterion_main!(benches);
