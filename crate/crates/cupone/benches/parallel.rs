use criterion::{criterion_group, criterion_main, BenchmarkId, Criterion};

use cupone::binomial_ring::RingSpec;
use cupone::delta_cochains::{borromean_presentation, heisenberg_presentation, presentation_complex};
use cupone::minimal_model::{build_model, d_matrix, realize_group, WordBasis};
use cupone::par::Execution;

const MODES: [(&str, Execution); 2] = [("sequential", Execution::Sequential), ("parallel", Execution::Parallel)];

fn d_squared(c: &mut Criterion) {
    let x = presentation_complex(&borromean_presentation(2), RingSpec::Z).unwrap().delta;
    let m2 = build_model(&x, 2, Execution::Parallel).unwrap().pop().unwrap();
    let mut g = c.benchmark_group("d_squared_borromean_stage2");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| assert!(m2.diff.check_d_squared(4, e).passed()))
        });
    }
    g.finish();
}

fn d_matrix_t1_t2(c: &mut Criterion) {
    let x = presentation_complex(&borromean_presentation(1), RingSpec::Z).unwrap().delta;
    let m2 = build_model(&x, 2, Execution::Parallel).unwrap().pop().unwrap();
    let levels = &m2.diff.gens().levels;
    let t1 = WordBasis::weighted(levels, 1, 1, 4, None);
    let t2 = WordBasis::weighted(levels, 2, 2, 4, None);
    let mut g = c.benchmark_group("d_matrix_weight4");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| d_matrix(&m2.diff, &t1, &t2, e).unwrap())
        });
    }
    g.finish();
}

fn group_audit(c: &mut Criterion) {
    let ring = RingSpec::zp(3).unwrap();
    let x = presentation_complex(&heisenberg_presentation(1), ring).unwrap().delta;
    let stage = build_model(&x, 1, Execution::Parallel).unwrap().pop().unwrap();
    let mut g = c.benchmark_group("group_axioms_z3");
    g.sample_size(10);
    for (name, exec) in MODES {
        g.bench_with_input(BenchmarkId::from_parameter(name), &exec, |b, &e| {
            b.iter(|| realize_group(&stage.diff, 0, e).unwrap())
        });
    }
    g.finish();
}

criterion_group!(benches, d_squared, d_matrix_t1_t2, group_audit);
criterion_main!(benches);
