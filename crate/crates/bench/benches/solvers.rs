use std::time::Duration;

use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};
use m5gb_bench::dense_instance;
use m5gb_core::{m5gb_run, sb_run, SigOrderKind, SolverConfig};

fn solvers(c: &mut Criterion) {
    let cfg = SolverConfig::new(SigOrderKind::Top);
    let mut group = c.benchmark_group("dense_quadratic");
    group.sample_size(10).measurement_time(Duration::from_secs(10));
    for n in [6, 8, 10] {
        let sys = dense_instance(n, 0);
        group.bench_with_input(BenchmarkId::new("m5gb", n), &sys, |b, sys| {
            b.iter(|| m5gb_run(&sys.ring, &sys.polys, &cfg).expect("solves"))
        });
        group.bench_with_input(BenchmarkId::new("sb", n), &sys, |b, sys| {
            b.iter(|| sb_run(&sys.ring, &sys.polys, &cfg).expect("solves"))
        });
    }
    group.finish();
}

fn arithmetic(c: &mut Criterion) {
    let sys = dense_instance(10, 1);
    let ring = &sys.ring;
    let (f, g) = (&sys.polys[0], &sys.polys[1]);
    let u = g.lead_term().expect("nonzero").clone();
    let fu = ring.mul_term(f, &u);
    c.bench_function("linear_combination/4", |b| {
        let parts: Vec<_> = sys.polys[1..5].iter().map(|p| (ring.field().element(3), p)).collect();
        b.iter(|| ring.linear_combination(&fu, &parts))
    });
    c.bench_function("reduce_ordinary/20", |b| b.iter(|| ring.reduce_ordinary(&fu, &sys.polys)));
}

criterion_group!(benches, solvers, arithmetic);
criterion_main!(benches);
