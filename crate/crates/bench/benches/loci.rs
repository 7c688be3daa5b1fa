use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use std::hint::black_box;

use spectype::quadrature::winding_quadrature;
use spectype::{evaluate_loci, spectral_type};
use spectype_bench::random_invariants;

fn bench_points(c: &mut Criterion) {
    let mut g = c.benchmark_group("point");
    for m in [3, 4, 6, 8] {
        let points = random_invariants(m, 64, 11);
        g.bench_with_input(BenchmarkId::new("spectral_type", m), &points, |b, pts| {
            b.iter(|| {
                for p in pts {
                    let _ = black_box(spectral_type(black_box(p)));
                }
            })
        });
        g.bench_with_input(BenchmarkId::new("evaluate_loci", m), &points, |b, pts| {
            b.iter(|| {
                for p in pts {
                    let _ = black_box(evaluate_loci(black_box(p)));
                }
            })
        });
    }
    let points = random_invariants(4, 16, 12);
    g.bench_function("winding_quadrature/4", |b| {
        b.iter(|| {
            for p in &points {
                let _ = black_box(winding_quadrature(black_box(p)));
            }
        })
    });
    g.finish();
}

criterion_group!(benches, bench_points);
criterion_main!(benches);
