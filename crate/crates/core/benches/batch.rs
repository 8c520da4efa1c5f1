use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use ganita::batch::{self, sequential};
use ganita::cyclic_geometry::{cyclic_quad_generator, orthodiagonal_generator};

fn quad_checks(c: &mut Criterion) {
    let mut group = c.benchmark_group("check_quads");
    for count in [32usize, 256] {
        let mut quads = orthodiagonal_generator(1, count / 2);
        quads.extend(cyclic_quad_generator(1, count / 2));
        group.bench_with_input(BenchmarkId::new("sequential", count), &quads, |b, q| {
            b.iter(|| sequential::check_quads(black_box(q)))
        });
        #[cfg(feature = "parallel")]
        group.bench_with_input(BenchmarkId::new("parallel", count), &quads, |b, q| {
            b.iter(|| batch::parallel::check_quads(black_box(q)))
        });
    }
    group.finish();
}

fn xii24(c: &mut Criterion) {
    let mut group = c.benchmark_group("xii24_sweep");
    let instances = batch::xii24_instances(7, 1000);
    group.bench_function("sequential", |b| b.iter(|| sequential::xii24_sweep(black_box(&instances))));
    #[cfg(feature = "parallel")]
    group.bench_function("parallel", |b| b.iter(|| batch::parallel::xii24_sweep(black_box(&instances))));
    group.finish();
}

criterion_group!(benches, quad_checks, xii24);
criterion_main!(benches);
