//! Exact complex-amplitude statevector engine.
//!
//! A [`StateVector`] holds the 2^n amplitudes of an n-qubit register. Gates
//! are applied by bitmask iteration over amplitude pairs, so no 2^n x 2^n
//! matrices are ever materialized; registers up to ~20 qubits are practical.
//!
//! # Basis convention
//!
//! Qubit 0 carries the most significant bit of a basis label: |q0 q1 ... ⟩
//! sits at index `q0·2^(n-1) + q1·2^(n-2) + ...`. The convention is fixed for
//! the whole library and funnelled through [`basis_index`].
//!
//! # Concurrency
//!
//! A `StateVector` is mutated only through `&mut self`; once prepared it can
//! be read from any number of threads. Measurement sampling is sequential
//! over shots with a ChaCha stream seeded from the caller's seed, so a given
//! (state, qubits, shots, seed) tuple always produces the same histogram.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::ser::SerializeMap;
use serde::{Serialize, Serializer};
use std::f64::consts::FRAC_1_SQRT_2;

/// Norm drift beyond this after a gate application is a bug, not noise.
pub const NORM_TOLERANCE: f64 = 1e-10;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum SimulatorError {
    #[error("qubit index {index} out of range for {num_qubits}-qubit state")]
    QubitOutOfRange { index: usize, num_qubits: usize },
    #[error("duplicate qubit operand {index}")]
    DuplicateOperand { index: usize },
    #[error("shots must be at least 1")]
    ZeroShots,
    #[error("amplitude vector length {len} is not a positive power of two")]
    BadLength { len: usize },
    #[error("state norm is {norm}, expected 1 within {NORM_TOLERANCE}")]
    NotNormalized { norm: f64 },
}

/// Index of the basis state |bits[0] bits[1] ...⟩, big-endian.
///
/// `basis_index(&[1, 0]) == 2`: qubit 0 holds the most significant bit.
pub fn basis_index(bits: &[u8]) -> usize {
    bits.iter().fold(0, |acc, &b| (acc << 1) | usize::from(b & 1))
}

/// Value of `qubit`'s bit within basis label `index` of an n-qubit register.
pub fn bit_of(index: usize, qubit: usize, num_qubits: usize) -> u8 {
    ((index >> (num_qubits - 1 - qubit)) & 1) as u8
}

/// A gate from the fixed kit the classifier circuits are built from.
///
/// Multi-qubit variants list their operands in (control, target) order; the
/// first operand of [`Gate::Cswap`] and the first two of [`Gate::Toffoli`]
/// are controls.
#[derive(Debug, Clone, PartialEq)]
pub enum Gate {
    H(usize),
    X(usize),
    /// Rotation about Y by the given angle in radians:
    /// Ry(θ)|0⟩ = cos(θ/2)|0⟩ + sin(θ/2)|1⟩.
    Ry(usize, f64),
    /// Controlled-X: (control, target).
    Cnot(usize, usize),
    Swap(usize, usize),
    /// Fredkin gate: (control, a, b) swaps a and b when the control is set.
    Cswap(usize, usize, usize),
    /// (control, control, target).
    Toffoli(usize, usize, usize),
}

impl Gate {
    pub fn operands(&self) -> Vec<usize> {
        match *self {
            Gate::H(q) | Gate::X(q) | Gate::Ry(q, _) => vec![q],
            Gate::Cnot(a, b) | Gate::Swap(a, b) => vec![a, b],
            Gate::Cswap(a, b, c) | Gate::Toffoli(a, b, c) => vec![a, b, c],
        }
    }

    /// Same gate kind with operands replaced by `map(old_index)`.
    pub fn remapped(&self, map: impl Fn(usize) -> usize) -> Gate {
        match *self {
            Gate::H(q) => Gate::H(map(q)),
            Gate::X(q) => Gate::X(map(q)),
            Gate::Ry(q, theta) => Gate::Ry(map(q), theta),
            Gate::Cnot(c, t) => Gate::Cnot(map(c), map(t)),
            Gate::Swap(a, b) => Gate::Swap(map(a), map(b)),
            Gate::Cswap(c, a, b) => Gate::Cswap(map(c), map(a), map(b)),
            Gate::Toffoli(c1, c2, t) => Gate::Toffoli(map(c1), map(c2), map(t)),
        }
    }

    fn validate(&self, num_qubits: usize) -> Result<(), SimulatorError> {
        let ops = self.operands();
        for (i, &q) in ops.iter().enumerate() {
            if q >= num_qubits {
                return Err(SimulatorError::QubitOutOfRange { index: q, num_qubits });
            }
            if ops[..i].contains(&q) {
                return Err(SimulatorError::DuplicateOperand { index: q });
            }
        }
        Ok(())
    }

    /// Dense matrix of the gate on its own operands (first operand = most
    /// significant bit), as rows of a 2^k x 2^k array. Columns are obtained
    /// by running each basis state through [`StateVector::apply`], so the
    /// matrix reflects exactly what the engine does.
    pub fn matrix(&self) -> Vec<Vec<Complex64>> {
        let ops = self.operands();
        let k = ops.len();
        let canonical = self.remapped(|q| ops.iter().position(|&o| o == q).unwrap());
        let dim = 1 << k;
        let mut rows = vec![vec![Complex64::new(0.0, 0.0); dim]; dim];
        for col in 0..dim {
            let mut state = StateVector::zero(k);
            state.amplitudes[0] = Complex64::new(0.0, 0.0);
            state.amplitudes[col] = Complex64::new(1.0, 0.0);
            state.apply(&canonical).expect("canonical operands are valid");
            for (row, amp) in state.amplitudes.iter().enumerate() {
                rows[row][col] = *amp;
            }
        }
        rows
    }
}

/// 2^n complex amplitudes of an n-qubit register, kept at unit norm.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    num_qubits: usize,
    amplitudes: Vec<Complex64>,
}

impl StateVector {
    /// The all-zeros basis state |0...0⟩.
    pub fn zero(num_qubits: usize) -> Self {
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); 1 << num_qubits];
        amplitudes[0] = Complex64::new(1.0, 0.0);
        StateVector { num_qubits, amplitudes }
    }

    /// The basis state |bits[0] bits[1] ...⟩.
    pub fn computational_basis(bits: &[u8]) -> Self {
        let mut state = StateVector::zero(bits.len());
        state.amplitudes[0] = Complex64::new(0.0, 0.0);
        state.amplitudes[basis_index(bits)] = Complex64::new(1.0, 0.0);
        state
    }

    /// Wraps an amplitude vector, enforcing power-of-two length and unit norm.
    pub fn from_amplitudes(amplitudes: Vec<Complex64>) -> Result<Self, SimulatorError> {
        let len = amplitudes.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(SimulatorError::BadLength { len });
        }
        let state = StateVector {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes,
        };
        let norm = state.norm();
        if (norm - 1.0).abs() > NORM_TOLERANCE {
            return Err(SimulatorError::NotNormalized { norm });
        }
        Ok(state)
    }

    /// Builds a unit-norm state from unnormalized real coefficients.
    pub fn from_real_unnormalized(coeffs: &[f64]) -> Result<Self, SimulatorError> {
        let len = coeffs.len();
        if len == 0 || !len.is_power_of_two() {
            return Err(SimulatorError::BadLength { len });
        }
        let norm = coeffs.iter().map(|c| c * c).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(SimulatorError::NotNormalized { norm: 0.0 });
        }
        Ok(StateVector {
            num_qubits: len.trailing_zeros() as usize,
            amplitudes: coeffs.iter().map(|&c| Complex64::new(c / norm, 0.0)).collect(),
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        self.amplitudes.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// ⟨self|other⟩.
    pub fn inner_product(&self, other: &StateVector) -> Complex64 {
        debug_assert_eq!(self.num_qubits, other.num_qubits);
        self.amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// |self⟩ ⊗ |other⟩; `self`'s qubits come first (high bits).
    pub fn tensor(&self, other: &StateVector) -> StateVector {
        let dim_other = other.amplitudes.len();
        let mut amplitudes = Vec::with_capacity(self.amplitudes.len() * dim_other);
        for a in &self.amplitudes {
            for b in &other.amplitudes {
                amplitudes.push(a * b);
            }
        }
        StateVector {
            num_qubits: self.num_qubits + other.num_qubits,
            amplitudes,
        }
    }

    /// Reorders qubits: the qubit at position `l` moves to `dest[l]`.
    ///
    /// `dest` must be a permutation of `0..n`.
    pub fn permute_qubits(&self, dest: &[usize]) -> Result<StateVector, SimulatorError> {
        let n = self.num_qubits;
        if dest.len() != n {
            return Err(SimulatorError::BadLength { len: dest.len() });
        }
        let mut seen = vec![false; n];
        for &d in dest {
            if d >= n {
                return Err(SimulatorError::QubitOutOfRange { index: d, num_qubits: n });
            }
            if seen[d] {
                return Err(SimulatorError::DuplicateOperand { index: d });
            }
            seen[d] = true;
        }
        let mut amplitudes = vec![Complex64::new(0.0, 0.0); self.amplitudes.len()];
        for (i, amp) in self.amplitudes.iter().enumerate() {
            let mut j = 0usize;
            for (l, &d) in dest.iter().enumerate() {
                j |= usize::from(bit_of(i, l, n)) << (n - 1 - d);
            }
            amplitudes[j] = *amp;
        }
        Ok(StateVector { num_qubits: n, amplitudes })
    }

    fn mask(&self, qubit: usize) -> usize {
        1 << (self.num_qubits - 1 - qubit)
    }

    /// Applies a gate in place. Norm is preserved to within [`NORM_TOLERANCE`].
    pub fn apply(&mut self, gate: &Gate) -> Result<(), SimulatorError> {
        gate.validate(self.num_qubits)?;
        let dim = self.amplitudes.len();
        match *gate {
            Gate::H(q) => {
                let m = self.mask(q);
                for i in 0..dim {
                    if i & m == 0 {
                        let a = self.amplitudes[i];
                        let b = self.amplitudes[i | m];
                        self.amplitudes[i] = (a + b) * FRAC_1_SQRT_2;
                        self.amplitudes[i | m] = (a - b) * FRAC_1_SQRT_2;
                    }
                }
            }
            Gate::X(q) => {
                let m = self.mask(q);
                for i in 0..dim {
                    if i & m == 0 {
                        self.amplitudes.swap(i, i | m);
                    }
                }
            }
            Gate::Ry(q, theta) => {
                let m = self.mask(q);
                let (sin, cos) = (theta / 2.0).sin_cos();
                for i in 0..dim {
                    if i & m == 0 {
                        let a = self.amplitudes[i];
                        let b = self.amplitudes[i | m];
                        self.amplitudes[i] = a * cos - b * sin;
                        self.amplitudes[i | m] = a * sin + b * cos;
                    }
                }
            }
            Gate::Cnot(c, t) => {
                let (mc, mt) = (self.mask(c), self.mask(t));
                for i in 0..dim {
                    if i & mc != 0 && i & mt == 0 {
                        self.amplitudes.swap(i, i | mt);
                    }
                }
            }
            Gate::Swap(a, b) => {
                let (ma, mb) = (self.mask(a), self.mask(b));
                for i in 0..dim {
                    if i & ma != 0 && i & mb == 0 {
                        self.amplitudes.swap(i, i ^ ma ^ mb);
                    }
                }
            }
            Gate::Cswap(c, a, b) => {
                let (mc, ma, mb) = (self.mask(c), self.mask(a), self.mask(b));
                for i in 0..dim {
                    if i & mc != 0 && i & ma != 0 && i & mb == 0 {
                        self.amplitudes.swap(i, i ^ ma ^ mb);
                    }
                }
            }
            Gate::Toffoli(c1, c2, t) => {
                let (m1, m2, mt) = (self.mask(c1), self.mask(c2), self.mask(t));
                for i in 0..dim {
                    if i & m1 != 0 && i & m2 != 0 && i & mt == 0 {
                        self.amplitudes.swap(i, i | mt);
                    }
                }
            }
        }
        debug_assert!(
            (self.norm() - 1.0).abs() <= NORM_TOLERANCE,
            "norm drifted to {} after {:?}",
            self.norm(),
            gate
        );
        Ok(())
    }

    pub fn apply_all(&mut self, gates: &[Gate]) -> Result<(), SimulatorError> {
        for gate in gates {
            self.apply(gate)?;
        }
        Ok(())
    }

    /// Marginal probability of each bitstring outcome on the listed qubits.
    ///
    /// Outcomes are indexed big-endian in the caller's qubit order: with
    /// `qubits = [s, m]`, outcome index 2 is s=1, m=0.
    pub fn exact_probabilities(&self, qubits: &[usize]) -> Result<Vec<f64>, SimulatorError> {
        self.validate_qubit_list(qubits)?;
        let k = qubits.len();
        let mut probs = vec![0.0f64; 1 << k];
        for (i, amp) in self.amplitudes.iter().enumerate() {
            let p = amp.norm_sqr();
            if p == 0.0 {
                continue;
            }
            let mut outcome = 0usize;
            for &q in qubits {
                outcome = (outcome << 1) | usize::from(bit_of(i, q, self.num_qubits));
            }
            probs[outcome] += p;
        }
        Ok(probs)
    }

    /// Draws `shots` independent measurements of the listed qubits.
    ///
    /// The same (qubits, shots, seed) always yields the same histogram.
    pub fn sample_measurements(
        &self,
        qubits: &[usize],
        shots: u64,
        seed: u64,
    ) -> Result<Histogram, SimulatorError> {
        if shots == 0 {
            return Err(SimulatorError::ZeroShots);
        }
        let probs = self.exact_probabilities(qubits)?;
        let mut cumulative = Vec::with_capacity(probs.len());
        let mut acc = 0.0f64;
        for &p in &probs {
            acc += p;
            cumulative.push(acc);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut counts = vec![0u64; probs.len()];
        for _ in 0..shots {
            let u: f64 = rng.gen();
            let outcome = cumulative.partition_point(|&c| c <= u).min(counts.len() - 1);
            counts[outcome] += 1;
        }
        Ok(Histogram { num_bits: qubits.len(), counts })
    }

    fn validate_qubit_list(&self, qubits: &[usize]) -> Result<(), SimulatorError> {
        for (i, &q) in qubits.iter().enumerate() {
            if q >= self.num_qubits {
                return Err(SimulatorError::QubitOutOfRange {
                    index: q,
                    num_qubits: self.num_qubits,
                });
            }
            if qubits[..i].contains(&q) {
                return Err(SimulatorError::DuplicateOperand { index: q });
            }
        }
        Ok(())
    }
}

/// Shot counts over measurement outcomes of a fixed set of qubits.
#[derive(Debug, Clone, PartialEq)]
pub struct Histogram {
    num_bits: usize,
    counts: Vec<u64>,
}

impl Histogram {
    pub fn num_bits(&self) -> usize {
        self.num_bits
    }

    /// Counts indexed by outcome (big-endian over the measured qubit list).
    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.iter().sum()
    }

    pub fn count_of(&self, bits: &[u8]) -> u64 {
        self.counts[basis_index(bits)]
    }

    pub fn frequencies(&self) -> Vec<f64> {
        let total = self.total() as f64;
        self.counts.iter().map(|&c| c as f64 / total).collect()
    }

    /// "01"-style label for an outcome index.
    pub fn label(outcome: usize, num_bits: usize) -> String {
        (0..num_bits)
            .map(|b| if outcome >> (num_bits - 1 - b) & 1 == 1 { '1' } else { '0' })
            .collect()
    }

    pub fn iter_labeled(&self) -> impl Iterator<Item = (String, u64)> + '_ {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &c)| (Self::label(i, self.num_bits), c))
    }
}

impl Serialize for Histogram {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut map = serializer.serialize_map(Some(self.counts.len()))?;
        for (label, count) in self.iter_labeled() {
            map.serialize_entry(&label, &count)?;
        }
        map.end()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_close(a: f64, b: f64, tol: f64) {
        assert!((a - b).abs() <= tol, "{a} vs {b}");
    }

    #[test]
    fn basis_convention_is_big_endian() {
        // |q0=1, q1=0⟩ lands on index 2 of a 2-qubit register.
        assert_eq!(basis_index(&[1, 0]), 2);
        let state = StateVector::computational_basis(&[1, 0]);
        assert_eq!(state.amplitudes()[2], Complex64::new(1.0, 0.0));
        assert_eq!(bit_of(2, 0, 2), 1);
        assert_eq!(bit_of(2, 1, 2), 0);
    }

    #[test]
    fn hadamard_on_zero() {
        let mut state = StateVector::zero(1);
        state.apply(&Gate::H(0)).unwrap();
        assert_close(state.amplitudes()[0].re, FRAC_1_SQRT_2, 1e-15);
        assert_close(state.amplitudes()[1].re, FRAC_1_SQRT_2, 1e-15);
    }

    #[test]
    fn ry_half_pi_on_zero() {
        // Multiplying the 2x2 Ry matrix into (1, 0) gives (cos π/4, sin π/4).
        let mut state = StateVector::zero(1);
        state.apply(&Gate::Ry(0, std::f64::consts::FRAC_PI_2)).unwrap();
        let quarter = std::f64::consts::FRAC_PI_4;
        assert_close(state.amplitudes()[0].re, quarter.cos(), 1e-15);
        assert_close(state.amplitudes()[1].re, quarter.sin(), 1e-15);
    }

    #[test]
    fn cswap_with_control_off_is_identity() {
        let mut state = StateVector::computational_basis(&[0, 0, 1]);
        let before = state.clone();
        state.apply(&Gate::Cswap(0, 1, 2)).unwrap();
        assert_eq!(state, before);
    }

    #[test]
    fn cswap_with_control_on_swaps() {
        let mut state = StateVector::computational_basis(&[1, 0, 1]);
        state.apply(&Gate::Cswap(0, 1, 2)).unwrap();
        assert_eq!(state, StateVector::computational_basis(&[1, 1, 0]));
    }

    #[test]
    fn toffoli_flips_only_when_both_controls_set() {
        let mut state = StateVector::computational_basis(&[1, 1, 0]);
        state.apply(&Gate::Toffoli(0, 1, 2)).unwrap();
        assert_eq!(state, StateVector::computational_basis(&[1, 1, 1]));

        let mut state = StateVector::computational_basis(&[1, 0, 0]);
        state.apply(&Gate::Toffoli(0, 1, 2)).unwrap();
        assert_eq!(state, StateVector::computational_basis(&[1, 0, 0]));
    }

    #[test]
    fn rejects_bad_operands() {
        let mut state = StateVector::zero(2);
        assert_eq!(
            state.apply(&Gate::Cnot(0, 2)),
            Err(SimulatorError::QubitOutOfRange { index: 2, num_qubits: 2 })
        );
        assert_eq!(
            state.apply(&Gate::Cnot(1, 1)),
            Err(SimulatorError::DuplicateOperand { index: 1 })
        );
    }

    #[test]
    fn exact_probabilities_basis_state() {
        let state = StateVector::computational_basis(&[0, 0]);
        let probs = state.exact_probabilities(&[0, 1]).unwrap();
        assert_eq!(probs, vec![1.0, 0.0, 0.0, 0.0]);
    }

    #[test]
    fn exact_probabilities_bell_marginal() {
        // (|00⟩ + |11⟩)/√2, marginal on qubit 0: summing |amplitude|² by
        // hand gives 1/2 each.
        let amps = vec![
            Complex64::new(FRAC_1_SQRT_2, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(FRAC_1_SQRT_2, 0.0),
        ];
        let state = StateVector::from_amplitudes(amps).unwrap();
        let probs = state.exact_probabilities(&[0]).unwrap();
        assert_close(probs[0], 0.5, 1e-12);
        assert_close(probs[1], 0.5, 1e-12);
    }

    #[test]
    fn sampling_fixed_basis_state() {
        let state = StateVector::computational_basis(&[1]);
        let hist = state.sample_measurements(&[0], 1000, 7).unwrap();
        assert_eq!(hist.counts(), &[0, 1000]);
    }

    #[test]
    fn sampling_is_seed_deterministic() {
        let mut state = StateVector::zero(2);
        state.apply(&Gate::H(0)).unwrap();
        state.apply(&Gate::Cnot(0, 1)).unwrap();
        let a = state.sample_measurements(&[0, 1], 4096, 42).unwrap();
        let b = state.sample_measurements(&[0, 1], 4096, 42).unwrap();
        assert_eq!(a, b);
        let c = state.sample_measurements(&[0, 1], 4096, 43).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn sampling_converges_on_uniform_qubit() {
        // Binomial 5σ bound at 10^5 shots is well under 0.01.
        let mut state = StateVector::zero(1);
        state.apply(&Gate::H(0)).unwrap();
        let hist = state.sample_measurements(&[0], 100_000, 11).unwrap();
        let freqs = hist.frequencies();
        assert!((freqs[0] - 0.5).abs() < 0.01);
        assert!((freqs[1] - 0.5).abs() < 0.01);
    }

    #[test]
    fn zero_shots_rejected() {
        let state = StateVector::zero(1);
        assert_eq!(
            state.sample_measurements(&[0], 0, 0).unwrap_err(),
            SimulatorError::ZeroShots
        );
    }

    #[test]
    fn tensor_orders_high_bits_first() {
        let a = StateVector::computational_basis(&[1]);
        let b = StateVector::computational_basis(&[0]);
        let ab = a.tensor(&b);
        assert_eq!(ab, StateVector::computational_basis(&[1, 0]));
    }

    #[test]
    fn permute_qubits_roundtrip() {
        let mut state = StateVector::zero(3);
        state.apply(&Gate::H(0)).unwrap();
        state.apply(&Gate::Cnot(0, 2)).unwrap();
        let perm = [2, 0, 1];
        let permuted = state.permute_qubits(&perm).unwrap();
        // invert
        let mut inverse = [0usize; 3];
        for (l, &d) in perm.iter().enumerate() {
            inverse[d] = l;
        }
        assert_eq!(permuted.permute_qubits(&inverse).unwrap(), state);
    }

    #[test]
    fn gate_matrices_are_unitary() {
        let gates = [
            Gate::H(0),
            Gate::X(0),
            Gate::Ry(0, 0.37),
            Gate::Cnot(0, 1),
            Gate::Swap(0, 1),
            Gate::Cswap(0, 1, 2),
            Gate::Toffoli(0, 1, 2),
        ];
        for gate in &gates {
            let m = gate.matrix();
            let dim = m.len();
            for i in 0..dim {
                for j in 0..dim {
                    // (G·G†)[i][j] = Σ_k G[i][k]·conj(G[j][k])
                    let entry: Complex64 = (0..dim).map(|k| m[i][k] * m[j][k].conj()).sum();
                    let expected = if i == j { 1.0 } else { 0.0 };
                    assert!(
                        (entry - expected).norm() < 1e-12,
                        "{gate:?} not unitary at ({i},{j})"
                    );
                }
            }
        }
    }

    #[test]
    fn histogram_labels() {
        assert_eq!(Histogram::label(2, 2), "10");
        assert_eq!(Histogram::label(0, 3), "000");
    }
}
