//! Shared input builders for the benchmark targets.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use swaptest_core::simulator::{Gate, StateVector};

fn distinct(rng: &mut ChaCha8Rng, num_qubits: usize, count: usize) -> Vec<usize> {
    let mut picks: Vec<usize> = Vec::with_capacity(count);
    while picks.len() < count {
        let q = rng.gen_range(0..num_qubits);
        if !picks.contains(&q) {
            picks.push(q);
        }
    }
    picks
}

/// A reproducible random circuit over the full gate kit.
pub fn random_circuit(seed: u64, num_qubits: usize, num_gates: usize) -> Vec<Gate> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..num_gates)
        .map(|_| match rng.gen_range(0..6) {
            0 => Gate::H(rng.gen_range(0..num_qubits)),
            1 => Gate::Ry(rng.gen_range(0..num_qubits), rng.gen::<f64>()),
            2 => {
                let q = distinct(&mut rng, num_qubits, 2);
                Gate::Cnot(q[0], q[1])
            }
            3 => {
                let q = distinct(&mut rng, num_qubits, 2);
                Gate::Swap(q[0], q[1])
            }
            4 => {
                let q = distinct(&mut rng, num_qubits, 3);
                Gate::Cswap(q[0], q[1], q[2])
            }
            _ => {
                let q = distinct(&mut rng, num_qubits, 3);
                Gate::Toffoli(q[0], q[1], q[2])
            }
        })
        .collect()
}

/// A spread-out state to measure gate application against.
pub fn random_state(seed: u64, num_qubits: usize) -> StateVector {
    let mut state = StateVector::zero(num_qubits);
    state
        .apply_all(&random_circuit(seed, num_qubits, 3 * num_qubits))
        .expect("generated gates are valid");
    state
}
