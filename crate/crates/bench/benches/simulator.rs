use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};
use swaptest_bench::{random_circuit, random_state};
use swaptest_core::simulator::Gate;

fn gate_application(c: &mut Criterion) {
    let mut group = c.benchmark_group("gate_application");
    for &n in &[10usize, 14, 18] {
        let state = random_state(1, n);
        group.bench_with_input(BenchmarkId::new("hadamard", n), &n, |b, _| {
            b.iter_batched(
                || state.clone(),
                |mut s| s.apply(black_box(&Gate::H(n / 2))).unwrap(),
                criterion::BatchSize::LargeInput,
            )
        });
        group.bench_with_input(BenchmarkId::new("cnot", n), &n, |b, _| {
            b.iter_batched(
                || state.clone(),
                |mut s| s.apply(black_box(&Gate::Cnot(0, n - 1))).unwrap(),
                criterion::BatchSize::LargeInput,
            )
        });
        group.bench_with_input(BenchmarkId::new("cswap", n), &n, |b, _| {
            b.iter_batched(
                || state.clone(),
                |mut s| s.apply(black_box(&Gate::Cswap(0, 1, n - 1))).unwrap(),
                criterion::BatchSize::LargeInput,
            )
        });
    }
    group.finish();
}

fn circuit_simulation(c: &mut Criterion) {
    let mut group = c.benchmark_group("circuit_simulation");
    for &n in &[8usize, 12, 14] {
        let circuit = random_circuit(2, n, 40);
        group.bench_with_input(BenchmarkId::new("forty_gates", n), &n, |b, _| {
            b.iter(|| {
                let mut state = swaptest_core::simulator::StateVector::zero(n);
                state.apply_all(black_box(&circuit)).unwrap();
                state
            })
        });
    }
    group.finish();
}

fn measurement_sampling(c: &mut Criterion) {
    let state = random_state(3, 14);
    c.bench_function("sample_8192_shots", |b| {
        b.iter(|| state.sample_measurements(black_box(&[0, 13]), 8192, 7).unwrap())
    });
}

criterion_group!(benches, gate_application, circuit_simulation, measurement_sampling);
criterion_main!(benches);
