//! Benchmarks for the hot paths: single-point Riccati solves at production
//! and reduced step counts, the Lanczos log-gamma kernel, the closed-form
//! tanh coefficients, and a small end-to-end sweep.

use criterion::{criterion_group, criterion_main, Criterion};
use std::hint::black_box;

use kgscatter::{
    analytic_coefficients, log_gamma, run_sweep, solve_point, ComplexScalar, PotentialSpec,
    ScatteringProblem, SweepConfig,
};

fn tanh_problem(step_count: usize) -> ScatteringProblem {
    let potential = PotentialSpec::hyperbolic_tangent(5.0, 1.0).expect("valid potential");
    ScatteringProblem::with_default_domain(potential, 1.0, step_count).expect("valid problem")
}

fn bench_solve_point(c: &mut Criterion) {
    let mut group = c.benchmark_group("solve_point");
    for &step_count in &[20_000usize, 80_000] {
        let problem = tanh_problem(step_count);
        group.bench_function(format!("tanh_e0_n{step_count}"), |b| {
            b.iter(|| solve_point(black_box(&problem), black_box(0.0)).expect("solvable"))
        });
    }
    group.finish();
}

fn bench_log_gamma(c: &mut Criterion) {
    let z = ComplexScalar::new(0.5, -7.483_314_773_547_883);
    c.bench_function("log_gamma_complex", |b| {
        b.iter(|| log_gamma(black_box(z)).expect("regular point"))
    });
}

fn bench_analytic(c: &mut Criterion) {
    let potential = PotentialSpec::hyperbolic_tangent(5.0, 1.0).expect("valid potential");
    c.bench_function("analytic_coefficients_e10", |b| {
        b.iter(|| {
            analytic_coefficients(black_box(&potential), black_box(1.0), black_box(10.0))
                .expect("propagating energy")
        })
    });
}

fn bench_sweep(c: &mut Criterion) {
    let mut group = c.benchmark_group("sweep");
    group.sample_size(20);
    let config = SweepConfig {
        problem: tanh_problem(5_000),
        e_min: -8.0,
        e_max: 12.0,
        n_energies: 50,
        parallel: false,
    };
    group.bench_function("tanh_50x5000_serial", |b| {
        b.iter(|| run_sweep(black_box(&config)).expect("sweep succeeds"))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_solve_point,
    bench_log_gamma,
    bench_analytic,
    bench_sweep
);
criterion_main!(benches);
