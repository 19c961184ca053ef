use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use planar_sssp::io::{generate, Family, GeneratorSpec};
use planar_sssp::pipeline::{solve_with, Options};

fn sequential_vs_parallel(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve");
    group.sample_size(10);
    for (family, name) in [(Family::Grid, "grid"), (Family::Delaunay, "delaunay")] {
        for n in [2_000usize, 10_000] {
            let g = generate(&GeneratorSpec::new(family, n, 0.2, 1)).unwrap();
            for parallel in [false, true] {
                let opts = Options {
                    parallel,
                    ..Options::default()
                };
                let id = format!("{name}/{}", if parallel { "parallel" } else { "sequential" });
                group.bench_with_input(BenchmarkId::new(id, n), &g, |b, g| {
                    b.iter(|| solve_with(g, 0, &opts).unwrap())
                });
            }
        }
    }
    group.finish();
}

criterion_group!(benches, sequential_vs_parallel);
criterion_main!(benches);
