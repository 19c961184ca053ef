use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use planar_sssp::monge::{
    brute_force_column_minima, is_convex_monge, smawk_column_minima, staircase_column_minima, DenseMatrix,
    Staircase,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// 2D prefix sums of a nonnegative density plus row and column offsets
fn random_monge(n: usize, seed: u64) -> DenseMatrix {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let f: Vec<i64> = (0..n).map(|_| rng.gen_range(-500..=500)).collect();
    let g: Vec<i64> = (0..n).map(|_| rng.gen_range(-500..=500)).collect();
    let mut acc = vec![0i64; n * n];
    for i in 0..n {
        let mut run = 0;
        for j in 0..n {
            run += rng.gen_range(0..3);
            let above = if i > 0 { acc[(i - 1) * n + j] } else { 0 };
            acc[i * n + j] = above + run;
        }
    }
    let data = (0..n * n).map(|x| f[x / n] + g[x % n] + acc[x]).collect();
    DenseMatrix { rows: n, cols: n, data }
}

fn column_minima(c: &mut Criterion) {
    let mut group = c.benchmark_group("column_minima");
    for n in [64usize, 256, 1024] {
        let m = random_monge(n, n as u64);
        assert!(is_convex_monge(&m));
        bench_pair(&mut group, n, &m);
    }
    group.finish();
}

fn bench_pair(group: &mut criterion::BenchmarkGroup<'_, criterion::measurement::WallTime>, n: usize, m: &DenseMatrix) {
    group.bench_with_input(BenchmarkId::new("smawk", n), m, |b, m| b.iter(|| smawk_column_minima(m)));
    group.bench_with_input(BenchmarkId::new("brute_force", n), m, |b, m| {
        b.iter(|| brute_force_column_minima(m))
    });
    group.bench_with_input(BenchmarkId::new("staircase_upper", n), m, |b, m| {
        b.iter(|| staircase_column_minima(m, Staircase::Upper))
    });
}

criterion_group!(benches, column_minima);
criterion_main!(benches);
