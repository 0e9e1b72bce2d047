//! Swap-test classifier circuit construction.
//!
//! A classifier circuit acts on four named registers: a swapper qubit `s`, a
//! class-index qubit `m`, a class-vector register `d` and a test-vector
//! register `t` of the same width. State preparation entangles `m` with the
//! two encoded class vectors,
//!
//! ```text
//!   |0⟩_s ⊗ |t⟩_t ⊗ (|0⟩_m|d0⟩ + |1⟩_m|d1⟩)/√2
//! ```
//!
//! and the swap test (H on s, controlled swaps of each (d_i, t_i) pair, H on
//! s) turns the squared inner products into the joint probabilities of the
//! swapper and class-index qubits:
//!
//! ```text
//!   ρ_1k = (1 − |⟨t|d_k⟩|²) / (2M),   M = 2
//! ```
//!
//! All encoded states are real, so preparation needs nothing beyond Ry
//! rotations multiplexed with CNOTs; the synthesis here is exact for any
//! real-amplitude target.

use crate::encoding::{fit_product_state, Metric, FIT_DEFAULT_MAX_ITER};
use crate::simulator::{Gate, SimulatorError, StateVector};

/// Residual below which a fitted state is trusted to be a genuine product
/// state (true products fit to ~1e-16).
const PRODUCT_FORM_RESIDUAL: f64 = 1e-13;
/// Two single-qubit factors are the same physical state when the magnitude
/// of their dot product is this close to one.
const PAIR_EQUALITY: f64 = 1e-12;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CircuitError {
    #[error(transparent)]
    Simulator(#[from] SimulatorError),
    #[error("class and test registers differ in width: {class} vs {test}")]
    RegisterWidthMismatch { class: usize, test: usize },
    #[error("qubit roles must cover 0..{total} exactly once")]
    RolesNotAPartition { total: usize },
    #[error("state spans {found} qubits, expected {expected}")]
    WrongRegisterWidth { expected: usize, found: usize },
    #[error("state has non-real amplitudes and is not preparable by the Ry/CNOT kit")]
    NotPreparable,
    #[error("swap pair ({a}, {b}) does not match any (class, test) qubit pair")]
    SwapPairNotInRoles { a: usize, b: usize },
}

/// Which physical wire each functional role occupies.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct QubitRoles {
    swapper: usize,
    class_index: usize,
    class_vector: Vec<usize>,
    test_vector: Vec<usize>,
}

impl QubitRoles {
    /// Builds a role assignment, checking that the indices partition
    /// `0..(2 + |d| + |t|)` and that the data registers match in width.
    pub fn new(
        swapper: usize,
        class_index: usize,
        class_vector: Vec<usize>,
        test_vector: Vec<usize>,
    ) -> Result<Self, CircuitError> {
        if class_vector.len() != test_vector.len() {
            return Err(CircuitError::RegisterWidthMismatch {
                class: class_vector.len(),
                test: test_vector.len(),
            });
        }
        let total = 2 + class_vector.len() + test_vector.len();
        let mut seen = vec![false; total];
        let all = class_vector
            .iter()
            .chain(test_vector.iter())
            .chain([&swapper, &class_index]);
        for &q in all {
            if q >= total || seen[q] {
                return Err(CircuitError::RolesNotAPartition { total });
            }
            seen[q] = true;
        }
        Ok(QubitRoles { swapper, class_index, class_vector, test_vector })
    }

    /// The layout used throughout: class index first, then the class-vector
    /// and test-vector registers in decreasing bit place-value, swapper last.
    pub fn standard(data_qubits: usize) -> Self {
        QubitRoles {
            class_index: 0,
            class_vector: (1..=data_qubits).collect(),
            test_vector: (data_qubits + 1..=2 * data_qubits).collect(),
            swapper: 2 * data_qubits + 1,
        }
    }

    pub fn swapper(&self) -> usize {
        self.swapper
    }

    pub fn class_index(&self) -> usize {
        self.class_index
    }

    pub fn class_vector(&self) -> &[usize] {
        &self.class_vector
    }

    pub fn test_vector(&self) -> &[usize] {
        &self.test_vector
    }

    pub fn num_qubits(&self) -> usize {
        2 + self.class_vector.len() + self.test_vector.len()
    }

    /// All (d_i, t_i) pairs in register order.
    pub fn swap_pairs(&self) -> Vec<(usize, usize)> {
        self.class_vector
            .iter()
            .zip(&self.test_vector)
            .map(|(&d, &t)| (d, t))
            .collect()
    }
}

/// A complete two-class swap-test circuit.
#[derive(Debug, Clone)]
pub struct ClassifierCircuit {
    gates: Vec<Gate>,
    roles: QubitRoles,
    num_classes: usize,
    metric: Metric,
    swap_pair_count: usize,
}

impl ClassifierCircuit {
    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn roles(&self) -> &QubitRoles {
        &self.roles
    }

    pub fn num_classes(&self) -> usize {
        self.num_classes
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    pub fn num_qubits(&self) -> usize {
        self.roles.num_qubits()
    }

    /// Number of controlled swaps in the swap-test stage.
    pub fn swap_pair_count(&self) -> usize {
        self.swap_pair_count
    }

    /// Runs the circuit on |0...0⟩.
    pub fn simulate(&self) -> Result<StateVector, SimulatorError> {
        let mut state = StateVector::zero(self.num_qubits());
        state.apply_all(&self.gates)?;
        Ok(state)
    }

    /// Joint (swapper, class index) probabilities of the final state,
    /// indexed by the two-bit outcome with the swapper first: [ρ00, ρ01,
    /// ρ10, ρ11].
    pub fn swapper_class_probabilities(&self) -> Result<[f64; 4], SimulatorError> {
        let state = self.simulate()?;
        let probs = state.exact_probabilities(&[self.roles.swapper, self.roles.class_index])?;
        Ok([probs[0], probs[1], probs[2], probs[3]])
    }
}

/// Entangles the class-index qubit with a one-qubit class register holding
/// |1⟩ for class 0 and (sin θ, cos θ) for class 1, θ = arctan(r_c).
///
/// From |00⟩ on (`m`, `d`) this prepares the normalized
/// |01⟩ + sin θ|10⟩ + cos θ|11⟩.
pub fn rotation_routine(r_c: f64, m: usize, d: usize) -> Vec<Gate> {
    assert!(r_c > 0.0, "class-vector component ratio must be positive");
    let theta = r_c.atan();
    // Branch states: class 0 at angle π (|1⟩), class 1 at the angle whose
    // Ry image is (sin θ, cos θ).
    let theta_v = 2.0 * theta.cos().atan2(theta.sin());
    let mut gates = vec![Gate::H(m), Gate::Ry(d, std::f64::consts::PI)];
    gates.extend(controlled_ry(theta_v - std::f64::consts::PI, m, d));
    gates
}

/// Controlled-Ry from the base kit: X-conjugation flips the rotation sense,
/// so Ry(φ/2)·CNOT·Ry(−φ/2)·CNOT rotates by φ exactly when the control is
/// set. A zero angle emits nothing.
fn controlled_ry(phi: f64, control: usize, target: usize) -> Vec<Gate> {
    if phi == 0.0 {
        return Vec::new();
    }
    vec![
        Gate::Ry(target, phi / 2.0),
        Gate::Cnot(control, target),
        Gate::Ry(target, -phi / 2.0),
        Gate::Cnot(control, target),
    ]
}

fn real_amplitudes(state: &StateVector) -> Result<Vec<f64>, CircuitError> {
    let mut out = Vec::with_capacity(state.amplitudes().len());
    for amp in state.amplitudes() {
        if amp.im.abs() > 1e-12 {
            return Err(CircuitError::NotPreparable);
        }
        out.push(amp.re);
    }
    Ok(out)
}

/// Exact preparation of a real-amplitude state on a register, walking the
/// amplitude tree: qubit j receives a rotation multiplexed over the j
/// preceding qubits, with leaf-level angles carrying the amplitude signs.
/// Gate operands are local register positions 0..k.
fn real_state_prep(amplitudes: &[f64]) -> Vec<Gate> {
    let k = amplitudes.len().trailing_zeros() as usize;
    // levels[j] holds the 2^j signed node values; inner nodes are the
    // non-negative norms of their children, leaves keep their signs.
    let mut levels: Vec<Vec<f64>> = vec![amplitudes.to_vec()];
    while levels.last().unwrap().len() > 1 {
        let child = levels.last().unwrap();
        let parent: Vec<f64> = child.chunks(2).map(|pair| pair[0].hypot(pair[1])).collect();
        levels.push(parent);
    }
    levels.reverse(); // levels[j] now has 2^j entries

    let mut gates = Vec::new();
    for j in 0..k {
        let child = &levels[j + 1];
        let angles: Vec<f64> = (0..1 << j)
            .map(|c| 2.0 * child[2 * c + 1].atan2(child[2 * c]))
            .collect();
        let controls: Vec<usize> = (0..j).collect();
        multiplexed_ry(&controls, j, &angles, &mut gates);
    }
    gates
}

/// Rotation of `target` by `angles[c]` for each basis pattern `c` of the
/// control qubits (big-endian over the listed controls). Recursion on the
/// last control halves the multiplexor: sums pass through, differences are
/// CNOT-conjugated so they flip sign exactly on the control's |1⟩ branch.
fn multiplexed_ry(controls: &[usize], target: usize, angles: &[f64], out: &mut Vec<Gate>) {
    if controls.is_empty() {
        if angles[0] != 0.0 {
            out.push(Gate::Ry(target, angles[0]));
        }
        return;
    }
    let rest = &controls[..controls.len() - 1];
    let last = controls[controls.len() - 1];
    let sums: Vec<f64> = angles.chunks(2).map(|p| (p[0] + p[1]) / 2.0).collect();
    let diffs: Vec<f64> = angles.chunks(2).map(|p| (p[0] - p[1]) / 2.0).collect();
    if diffs.iter().all(|&d| d.abs() < 1e-15) {
        // both control branches rotate identically; no entangler needed
        multiplexed_ry(rest, target, &sums, out);
        return;
    }
    multiplexed_ry(rest, target, &sums, out);
    out.push(Gate::Cnot(last, target));
    multiplexed_ry(rest, target, &diffs, out);
    out.push(Gate::Cnot(last, target));
}

struct ProductFactors {
    pairs: Vec<(f64, f64)>,
    /// Sign relating the canonicalized product to the fitted state.
    sign: f64,
}

/// Per-qubit factorization of a state, when it has one.
fn product_factors(state: &StateVector) -> Option<ProductFactors> {
    let fit = fit_product_state(state, 1e-14, FIT_DEFAULT_MAX_ITER);
    if fit.residual() > PRODUCT_FORM_RESIDUAL {
        return None;
    }
    let overlap = state.inner_product(&fit.product_state()).re;
    Some(ProductFactors {
        pairs: fit.pairs().to_vec(),
        sign: if overlap < 0.0 { -1.0 } else { 1.0 },
    })
}

fn pair_angle(p: (f64, f64)) -> f64 {
    2.0 * p.1.atan2(p.0)
}

fn pair_dot(a: (f64, f64), b: (f64, f64)) -> f64 {
    a.0 * b.0 + a.1 * b.1
}

/// Gates taking |0...0⟩ to |0⟩_s ⊗ |t⟩ ⊗ (|0⟩_m|d0⟩ + |1⟩_m|d1⟩)/√2,
/// up to global sign.
///
/// Product-form states are prepared qubit by qubit — like-valued class
/// branches share a plain rotation, differing ones get a rotation
/// controlled on the class index — and anything else falls back to exact
/// multiplexed-rotation synthesis over the combined (m, d) register. Both
/// routes are exact for real amplitudes; complex targets are rejected.
pub fn build_initial_state_prep(
    class_states: (&StateVector, &StateVector),
    test_state: &StateVector,
    roles: &QubitRoles,
) -> Result<Vec<Gate>, CircuitError> {
    let (d0, d1) = class_states;
    let k = roles.class_vector.len();
    for (state, expected) in [(d0, k), (d1, k), (test_state, roles.test_vector.len())] {
        if state.num_qubits() != expected {
            return Err(CircuitError::WrongRegisterWidth {
                expected,
                found: state.num_qubits(),
            });
        }
    }
    let d0_amps = real_amplitudes(d0)?;
    let d1_amps = real_amplitudes(d1)?;
    let test_amps = real_amplitudes(test_state)?;

    let mut gates = Vec::new();

    // Class registers: branch superposition on m, then the branch contents.
    let branch_overlap = d0.inner_product(d1).re;
    if branch_overlap.abs() >= 1.0 - PAIR_EQUALITY {
        if branch_overlap < 0.0 {
            gates.push(Gate::X(roles.class_index));
        }
        gates.push(Gate::H(roles.class_index));
        gates.extend(register_prep(&d0_amps, &roles.class_vector));
    } else if let (Some(f0), Some(f1)) = (product_factors(d0), product_factors(d1)) {
        gates.push(Gate::H(roles.class_index));
        gates.extend(branch_product_prep(&f0, &f1, roles));
    } else {
        // Combined prep over (m, d): the target amplitude vector is the two
        // branches concatenated, m being the high bit.
        let combined: Vec<f64> = d0_amps
            .iter()
            .chain(d1_amps.iter())
            .map(|&a| a * std::f64::consts::FRAC_1_SQRT_2)
            .collect();
        let register: Vec<usize> = std::iter::once(roles.class_index)
            .chain(roles.class_vector.iter().copied())
            .collect();
        gates.extend(register_prep(&combined, &register));
    }

    // Test register.
    gates.extend(register_prep(&test_amps, &roles.test_vector));
    Ok(gates)
}

/// Synthesis of one register, remapped from local positions to the given
/// qubits. Product states go through per-qubit rotations.
fn register_prep(amplitudes: &[f64], register: &[usize]) -> Vec<Gate> {
    let state = StateVector::from_real_unnormalized(amplitudes).expect("normalized input");
    let gates = match product_factors(&state) {
        Some(factors) => factors
            .pairs
            .iter()
            .enumerate()
            .filter(|(_, &p)| pair_angle(p) != 0.0)
            .map(|(q, &p)| Gate::Ry(q, pair_angle(p)))
            .collect(),
        None => real_state_prep(amplitudes),
    };
    gates
        .into_iter()
        .map(|g| g.remapped(|q| register[q]))
        .collect()
}

/// Per-qubit preparation of two product-form class branches behind the
/// class-index superposition.
fn branch_product_prep(f0: &ProductFactors, f1: &ProductFactors, roles: &QubitRoles) -> Vec<Gate> {
    let mut pairs1 = f1.pairs.clone();
    // The canonicalized factors may carry opposite overall signs; fold the
    // relative sign into one factor that already differs between branches,
    // so the prepared superposition keeps the true relative phase.
    if f0.sign * f1.sign < 0.0 {
        let i = pairs1
            .iter()
            .zip(&f0.pairs)
            .position(|(&v, &u)| pair_dot(u, v).abs() < 1.0 - PAIR_EQUALITY)
            .expect("branches with unit overlap are handled by the like-branch route");
        pairs1[i] = (-pairs1[i].0, -pairs1[i].1);
    }

    let m = roles.class_index;
    let mut gates = Vec::new();
    for (i, (&u, &v)) in f0.pairs.iter().zip(&pairs1).enumerate() {
        let wire = roles.class_vector[i];
        let dot = pair_dot(u, v);
        if dot >= 1.0 - PAIR_EQUALITY {
            let theta = pair_angle(u);
            if theta != 0.0 {
                gates.push(Gate::Ry(wire, theta));
            }
        } else if pair_dot(u, (1.0, 0.0)).abs() >= 1.0 - PAIR_EQUALITY
            && pair_dot(v, (0.0, 1.0)).abs() >= 1.0 - PAIR_EQUALITY
            && u.0 > 0.0
            && v.1 > 0.0
        {
            // |0⟩ vs |1⟩ branches reduce to a single entangler
            gates.push(Gate::Cnot(m, wire));
        } else {
            let theta_u = pair_angle(u);
            if theta_u != 0.0 {
                gates.push(Gate::Ry(wire, theta_u));
            }
            gates.extend(controlled_ry(pair_angle(v) - theta_u, m, wire));
        }
    }
    gates
}

/// Appends the swap test — H on the swapper, a Fredkin per pair, H again —
/// and seals the circuit. `swap_pairs` defaults to every (d_i, t_i) pair;
/// explicit pairs must come from the role assignment.
pub fn append_swap_test(
    mut gates: Vec<Gate>,
    roles: QubitRoles,
    swap_pairs: Option<Vec<(usize, usize)>>,
    metric: Metric,
) -> Result<ClassifierCircuit, CircuitError> {
    let all_pairs = roles.swap_pairs();
    let pairs = match swap_pairs {
        Some(pairs) => {
            for &(a, b) in &pairs {
                if !all_pairs.contains(&(a, b)) {
                    return Err(CircuitError::SwapPairNotInRoles { a, b });
                }
            }
            pairs
        }
        None => all_pairs,
    };
    gates.push(Gate::H(roles.swapper));
    for &(d, t) in &pairs {
        gates.push(Gate::Cswap(roles.swapper, d, t));
    }
    gates.push(Gate::H(roles.swapper));
    Ok(ClassifierCircuit {
        gates,
        roles,
        num_classes: 2,
        metric,
        swap_pair_count: pairs.len(),
    })
}

/// The (d_i, t_i) pairs whose swap actually matters: a pair drops out when
/// its class-branch factors and test factor agree up to sign, because the
/// controlled swap then leaves every branch of the state untouched. States
/// without product form fall back to the full pair list.
pub fn elide_like_valued_pairs(
    class_states: (&StateVector, &StateVector),
    test_state: &StateVector,
    roles: &QubitRoles,
) -> Vec<(usize, usize)> {
    let all_pairs = roles.swap_pairs();
    let (Some(f0), Some(f1), Some(ft)) = (
        product_factors(class_states.0),
        product_factors(class_states.1),
        product_factors(test_state),
    ) else {
        return all_pairs;
    };
    all_pairs
        .into_iter()
        .enumerate()
        .filter(|&(i, _)| {
            let t = ft.pairs[i];
            pair_dot(f0.pairs[i], t).abs() < 1.0 - PAIR_EQUALITY
                || pair_dot(f1.pairs[i], t).abs() < 1.0 - PAIR_EQUALITY
        })
        .map(|(_, pair)| pair)
        .collect()
}

/// Fredkin gate over the base kit: CSWAP(c, a, b) = CNOT(b,a) · TOFFOLI(c,a,b)
/// · CNOT(b,a), exact including phases.
pub fn decompose_cswap(control: usize, a: usize, b: usize) -> [Gate; 3] {
    [Gate::Cnot(b, a), Gate::Toffoli(control, a, b), Gate::Cnot(b, a)]
}

/// Rewrites every CSWAP in a gate list through [`decompose_cswap`].
pub fn decompose_cswaps(gates: &[Gate]) -> Vec<Gate> {
    let mut out = Vec::with_capacity(gates.len());
    for gate in gates {
        match *gate {
            Gate::Cswap(c, a, b) => out.extend(decompose_cswap(c, a, b)),
            ref g => out.push(g.clone()),
        }
    }
    out
}
