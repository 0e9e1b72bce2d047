use criterion::{black_box, criterion_group, criterion_main, Criterion};
use swaptest_bench::random_circuit;
use swaptest_core::encoding::{fit_product_state, FIT_DEFAULT_MAX_ITER, FIT_DEFAULT_TOL};
use swaptest_core::pipeline::{self, examples};
use swaptest_core::router::{route, CouplingGraph};
use swaptest_core::simulator::StateVector;

fn example_runs(c: &mut Criterion) {
    let five = examples::five_qubit_example_1();
    c.bench_function("run_5q_example_exact", |b| {
        b.iter(|| pipeline::run(black_box(&five.dataset), &five.test, &five.config()).unwrap())
    });
    let fourteen = examples::fourteen_qubit_example_1();
    c.bench_function("run_14q_example_exact", |b| {
        b.iter(|| {
            pipeline::run(black_box(&fourteen.dataset), &fourteen.test, &fourteen.config())
                .unwrap()
        })
    });
}

fn product_fitting(c: &mut Criterion) {
    let uniform = StateVector::from_real_unnormalized(&vec![1.0; 64]).unwrap();
    c.bench_function("fit_product_state_6q", |b| {
        b.iter(|| fit_product_state(black_box(&uniform), FIT_DEFAULT_TOL, FIT_DEFAULT_MAX_ITER))
    });
}

fn routing(c: &mut Criterion) {
    let circuit: Vec<_> = random_circuit(4, 6, 25)
        .into_iter()
        .filter(|g| g.operands().len() <= 2)
        .collect();
    let graph = CouplingGraph::path(6);
    let layout: Vec<usize> = (0..6).collect();
    c.bench_function("route_25_gates_path6", |b| {
        b.iter(|| route(black_box(&circuit), &graph, &layout).unwrap())
    });
}

criterion_group!(benches, example_runs, product_fitting, routing);
criterion_main!(benches);
