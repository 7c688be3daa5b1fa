use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use spectype::lorenz::lorenz_matrix;
use spectype::{check_transitions, detect_crossings, run_sweep};
use spectype_bench::{lorenz_b_line, lorenz_c_slice};

fn bench_sweeps(c: &mut Criterion) {
    let pm = lorenz_matrix();
    let line = lorenz_b_line(201);
    let slice = lorenz_c_slice(24);
    let mut g = c.benchmark_group("sweep");
    g.sample_size(20);
    g.bench_function("lorenz_b_line_201", |b| {
        b.iter(|| black_box(run_sweep(&pm, black_box(&line)).unwrap()))
    });
    g.bench_function("lorenz_c_slice_24x24", |b| {
        b.iter(|| black_box(run_sweep(&pm, black_box(&slice)).unwrap()))
    });
    let result = run_sweep(&pm, &slice).unwrap();
    g.bench_function("crossings_and_transitions_24x24", |b| {
        b.iter(|| {
            let report = detect_crossings(black_box(&result));
            black_box(check_transitions(&result, &report))
        })
    });
    g.finish();
}

criterion_group!(benches, bench_sweeps);
criterion_main!(benches);
