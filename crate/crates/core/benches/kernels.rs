use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use gallai_core::constructions;
use gallai_core::exec;
use gallai_core::gallai;
use gallai_core::search::{self, Budget, Mode, Pruning, SearchConfig, SearchProblem};
use gallai_core::{StarUnionPattern, Threads};

fn thread_counts() -> Vec<usize> {
    let par = Threads::available().0.clamp(2, 8);
    vec![1, par]
}

fn bench_decide(c: &mut Criterion) {
    let mut group = c.benchmark_group("decide");
    group.sample_size(20);
    let problems = [
        (
            "gallai k3 (2,2) N8",
            SearchProblem::new(3, StarUnionPattern::new(2, 2).unwrap(), Mode::Gallai, 8).unwrap(),
        ),
        (
            "ramsey (3,2) N8",
            SearchProblem::new(2, StarUnionPattern::new(3, 2).unwrap(), Mode::Ramsey, 8).unwrap(),
        ),
        (
            "gallai k4 (1,1) N7",
            SearchProblem::new(4, StarUnionPattern::new(1, 1).unwrap(), Mode::Gallai, 7).unwrap(),
        ),
    ];
    for (name, p) in problems {
        for t in thread_counts() {
            let cfg = SearchConfig {
                threads: Threads(t),
                pruning: Pruning::Full,
                shard_depth: 8,
            };
            group.bench_with_input(BenchmarkId::new(name, t), &p, |b, p| {
                b.iter(|| search::decide(black_box(p), &Budget::nodes(u64::MAX), &cfg).unwrap())
            });
        }
    }
    group.finish();
}

fn bench_partitions(c: &mut Criterion) {
    let mut group = c.benchmark_group("partition batch");
    group.sample_size(10);
    let graphs: Vec<_> = (0..400u64).map(|s| gallai::random_gallai(s, 30, 4, 4).unwrap()).collect();
    for t in thread_counts() {
        group.bench_with_input(BenchmarkId::new("random_gallai N30", t), &graphs, |b, gs| {
            b.iter(|| exec::map(Threads(t), gs, |g| gallai::find_gallai_partition(g).unwrap().map(|p| p.num_parts())))
        });
    }
    group.finish();
}

fn bench_witness_grid(c: &mut Criterion) {
    let mut group = c.benchmark_group("witness grid");
    group.sample_size(10);
    let points: Vec<(usize, usize, usize)> = (9..=51usize)
        .step_by(2)
        .flat_map(|n| (1..=(n - 8).div_ceil(6).max(1)).flat_map(move |m| (3..=6).map(move |k| (n, m, k))))
        .collect();
    for t in thread_counts() {
        group.bench_with_input(BenchmarkId::new("small-m", t), &points, |b, pts| {
            b.iter(|| {
                exec::map(Threads(t), pts, |&(n, m, k)| {
                    constructions::build_small_m_lower(n, m, k).unwrap().passed()
                })
            })
        });
    }
    group.finish();
}

fn bench_detectors(c: &mut Criterion) {
    let w = constructions::build_small_m_lower(51, 8, 6).unwrap();
    let pat = StarUnionPattern::new(51, 8).unwrap();
    c.bench_function("star union detector N129", |b| {
        b.iter(|| black_box(&w.coloring).find_mono_star_union(pat))
    });
    c.bench_function("rainbow detector N129", |b| {
        b.iter(|| black_box(&w.coloring).find_rainbow_triangle())
    });
}

criterion_group!(benches, bench_decide, bench_partitions, bench_witness_grid, bench_detectors);
criterion_main!(benches);
