use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use waveset_bench::{diag_rot_set, ring};
use waveset_core::geometry::{indicator_fourier, monte_carlo_area, raster_area};
use waveset_core::{Point, Region};

fn boolean_ops(c: &mut Criterion) {
    let mut g = c.benchmark_group("boolean");
    for n in [16, 64, 256] {
        let a = ring(n);
        let b = ring(n).translate(Point::new(0.3, 0.1));
        g.bench_with_input(BenchmarkId::new("subtract", n), &n, |bch, _| {
            bch.iter(|| black_box(&a).subtract(black_box(&b)))
        });
        g.bench_with_input(BenchmarkId::new("intersect", n), &n, |bch, _| {
            bch.iter(|| black_box(&a).intersect(black_box(&b)))
        });
    }
    g.finish();
}

fn fourier(c: &mut Criterion) {
    let w = diag_rot_set(10);
    c.bench_function("fourier/generic", |b| {
        b.iter(|| indicator_fourier(black_box(&w), Point::new(1.3, -2.7)))
    });
    c.bench_function("fourier/near-origin", |b| {
        b.iter(|| indicator_fourier(black_box(&w), Point::new(1e-7, 2e-7)))
    });
}

fn oracles(c: &mut Criterion) {
    let w = diag_rot_set(8);
    let window = Region::square(0.0, 2.0).unwrap();
    let mut g = c.benchmark_group("oracle");
    g.sample_size(20);
    g.bench_function("raster-1024", |b| b.iter(|| raster_area(black_box(&w), &window, 1024)));
    g.bench_function("monte-carlo-1e6", |b| {
        b.iter(|| monte_carlo_area(black_box(&w), &window, 1_000_000, 7))
    });
    g.finish();
}

criterion_group!(benches, boolean_ops, fourier, oracles);
criterion_main!(benches);
