//! SWAP-insertion routing onto a hardware coupling graph.
//!
//! Routing is greedy: whenever a two-qubit gate lands on non-adjacent
//! physical wires, one operand walks along a BFS shortest path (ties broken
//! toward the lowest physical index) with an inserted SWAP per step. That
//! matches what was done by hand on the star- and ring-shaped devices the
//! classifier circuits originally targeted; no lookahead is attempted.
//!
//! Three-qubit gates have no native pairing on any coupling graph, so they
//! pass through with remapped operands; the conformance guarantee covers
//! two-qubit gates. Decompose controlled swaps first (see
//! [`crate::circuits::decompose_cswaps`]) so that only CNOT/SWAP need edges.

use crate::simulator::Gate;
use serde::{Deserialize, Serialize};
use std::collections::VecDeque;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum RouterError {
    #[error("coupling graph is disconnected")]
    Disconnected,
    #[error("edge ({a}, {b}) out of range for {n} physical qubits")]
    EdgeOutOfRange { a: usize, b: usize, n: usize },
    #[error("self-loop on qubit {qubit}")]
    SelfLoop { qubit: usize },
    #[error("circuit needs {needed} qubits but the graph has {available}")]
    CircuitTooWide { needed: usize, available: usize },
    #[error("initial layout must map logical qubits injectively into the physical qubits")]
    BadLayout,
    #[error("gate operand {qubit} is outside the {num_logical} logical qubits of the layout")]
    OperandOutsideLayout { qubit: usize, num_logical: usize },
}

/// Hardware connectivity: which physical qubit pairs admit two-qubit gates.
///
/// Serialized as `{"n": 5, "edges": [[0,1],[0,2],...]}`. With `"directed"`
/// set, a CNOT may only run control→target along a listed edge orientation;
/// reversed CNOTs are rewritten by Hadamard conjugation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCouplingGraph")]
pub struct CouplingGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    directed: bool,
}

#[derive(Deserialize)]
struct RawCouplingGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    #[serde(default)]
    directed: bool,
}

impl TryFrom<RawCouplingGraph> for CouplingGraph {
    type Error = RouterError;

    fn try_from(raw: RawCouplingGraph) -> Result<Self, RouterError> {
        CouplingGraph::with_direction(raw.n, raw.edges, raw.directed)
    }
}

impl CouplingGraph {
    /// A connected, loop-free undirected graph on `n` physical qubits.
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, RouterError> {
        Self::with_direction(n, edges, false)
    }

    pub fn with_direction(
        n: usize,
        edges: Vec<(usize, usize)>,
        directed: bool,
    ) -> Result<Self, RouterError> {
        for &(a, b) in &edges {
            if a >= n || b >= n {
                return Err(RouterError::EdgeOutOfRange { a, b, n });
            }
            if a == b {
                return Err(RouterError::SelfLoop { qubit: a });
            }
        }
        let graph = CouplingGraph { n, edges, directed };
        if !graph.is_connected() {
            return Err(RouterError::Disconnected);
        }
        Ok(graph)
    }

    /// Linear chain 0–1–...–(n−1).
    pub fn path(n: usize) -> Self {
        Self::new(n, (1..n).map(|i| (i - 1, i)).collect()).expect("path is connected")
    }

    /// Hub-and-spoke graph with qubit `hub` adjacent to every other qubit.
    pub fn star(n: usize, hub: usize) -> Self {
        Self::new(n, (0..n).filter(|&i| i != hub).map(|i| (hub, i)).collect())
            .expect("star is connected")
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn is_directed(&self) -> bool {
        self.directed
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.edges.iter().any(|&(x, y)| (x, y) == (a, b) || (x, y) == (b, a))
    }

    /// True when the edge orientation a→b is directly executable.
    pub fn oriented(&self, a: usize, b: usize) -> bool {
        if self.directed {
            self.edges.contains(&(a, b))
        } else {
            self.adjacent(a, b)
        }
    }

    /// Neighbors in ascending order (for deterministic tie-breaking).
    fn neighbors(&self, q: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .edges
            .iter()
            .filter_map(|&(a, b)| {
                if a == q {
                    Some(b)
                } else if b == q {
                    Some(a)
                } else {
                    None
                }
            })
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }

    fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        while let Some(q) = queue.pop_front() {
            for next in self.neighbors(q) {
                if !seen[next] {
                    seen[next] = true;
                    queue.push_back(next);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// BFS shortest path, neighbors visited in ascending index order.
    fn shortest_path(&self, from: usize, to: usize) -> Vec<usize> {
        let mut parent: Vec<Option<usize>> = vec![None; self.n];
        let mut seen = vec![false; self.n];
        let mut queue = VecDeque::from([from]);
        seen[from] = true;
        while let Some(q) = queue.pop_front() {
            if q == to {
                break;
            }
            for next in self.neighbors(q) {
                if !seen[next] {
                    seen[next] = true;
                    parent[next] = Some(q);
                    queue.push_back(next);
                }
            }
        }
        let mut path = vec![to];
        let mut cursor = to;
        while let Some(p) = parent[cursor] {
            path.push(p);
            cursor = p;
        }
        path.reverse();
        debug_assert_eq!(path[0], from, "graph is connected");
        path
    }
}

/// A circuit rewritten onto physical wires.
#[derive(Debug, Clone, PartialEq)]
pub struct RoutedCircuit {
    /// Gates over physical qubit indices.
    pub gates: Vec<Gate>,
    /// Where each logical qubit ended up, completed to a permutation of all
    /// physical qubits (trailing entries track idle wires).
    pub final_layout: Vec<usize>,
}

/// Rewrites a circuit so every two-qubit gate acts on a coupled pair.
///
/// `initial_layout[l]` is the physical wire initially holding logical qubit
/// `l`; unused physical wires are assigned to virtual idle logicals. The
/// routed circuit applied to |0...0⟩ equals the original statevector with
/// qubits permuted by the returned final layout.
pub fn route(
    circuit: &[Gate],
    graph: &CouplingGraph,
    initial_layout: &[usize],
) -> Result<RoutedCircuit, RouterError> {
    let n_phys = graph.num_qubits();
    let n_logical = initial_layout.len();
    if n_logical > n_phys {
        return Err(RouterError::CircuitTooWide { needed: n_logical, available: n_phys });
    }

    // Complete the layout to a bijection over physical qubits.
    let mut position: Vec<usize> = Vec::with_capacity(n_phys);
    let mut taken = vec![false; n_phys];
    for &p in initial_layout {
        if p >= n_phys || taken[p] {
            return Err(RouterError::BadLayout);
        }
        taken[p] = true;
        position.push(p);
    }
    position.extend((0..n_phys).filter(|&p| !taken[p]));

    let mut occupant = vec![0usize; n_phys];
    for (l, &p) in position.iter().enumerate() {
        occupant[p] = l;
    }

    let mut out = Vec::with_capacity(circuit.len());
    let swap_in = |a: usize, b: usize, position: &mut Vec<usize>, occupant: &mut Vec<usize>, out: &mut Vec<Gate>| {
        out.push(Gate::Swap(a, b));
        let (la, lb) = (occupant[a], occupant[b]);
        occupant.swap(a, b);
        position[la] = b;
        position[lb] = a;
    };

    for gate in circuit {
        for &q in &gate.operands() {
            if q >= n_logical {
                return Err(RouterError::OperandOutsideLayout { qubit: q, num_logical: n_logical });
            }
        }
        match *gate {
            Gate::Cnot(c, t) | Gate::Swap(c, t) => {
                // Walk the first operand toward the second until coupled.
                let target = position[t];
                let path = graph.shortest_path(position[c], target);
                for step in path.windows(2).take(path.len().saturating_sub(2)) {
                    swap_in(step[0], step[1], &mut position, &mut occupant, &mut out);
                }
                let (pc, pt) = (position[c], position[t]);
                match gate {
                    Gate::Swap(_, _) => out.push(Gate::Swap(pc, pt)),
                    _ if graph.oriented(pc, pt) => out.push(Gate::Cnot(pc, pt)),
                    _ => {
                        // reversed CNOT via Hadamard conjugation
                        out.extend([
                            Gate::H(pc),
                            Gate::H(pt),
                            Gate::Cnot(pt, pc),
                            Gate::H(pc),
                            Gate::H(pt),
                        ]);
                    }
                }
            }
            ref g => out.push(g.remapped(|q| position[q])),
        }
    }

    Ok(RoutedCircuit { gates: out, final_layout: position })
}

/// SWAP gates the router added beyond those already in the input.
pub fn swap_count(original: &[Gate], routed: &[Gate]) -> usize {
    let swaps = |gates: &[Gate]| gates.iter().filter(|g| matches!(g, Gate::Swap(_, _))).count();
    swaps(routed) - swaps(original)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::simulator::StateVector;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn identity_layout(n: usize) -> Vec<usize> {
        (0..n).collect()
    }

    /// Simulates `circuit` on `n_logical` wires padded up to the graph size,
    /// permutes by the final layout and compares with the routed execution.
    fn assert_equivalent(circuit: &[Gate], graph: &CouplingGraph, layout: &[usize]) {
        let routed = route(circuit, graph, layout).unwrap();
        let n_phys = graph.num_qubits();

        let mut original = StateVector::zero(layout.len());
        original.apply_all(circuit).unwrap();
        let padded = if n_phys > layout.len() {
            original.tensor(&StateVector::zero(n_phys - layout.len()))
        } else {
            original
        };
        let expected = padded.permute_qubits(&routed.final_layout).unwrap();

        let mut actual = StateVector::zero(n_phys);
        actual.apply_all(&routed.gates).unwrap();
        for (a, e) in actual.amplitudes().iter().zip(expected.amplitudes()) {
            assert!((a - e).norm() < 1e-9);
        }

        for gate in &routed.gates {
            if let Gate::Cnot(a, b) | Gate::Swap(a, b) = *gate {
                assert!(graph.adjacent(a, b), "{gate:?} off the coupling graph");
            }
        }
    }

    #[test]
    fn distant_cnot_on_a_path() {
        let graph = CouplingGraph::path(3);
        let circuit = [Gate::Cnot(0, 2)];
        let routed = route(&circuit, &graph, &identity_layout(3)).unwrap();
        assert_eq!(routed.gates, vec![Gate::Swap(0, 1), Gate::Cnot(1, 2)]);
        assert_eq!(routed.final_layout, vec![1, 0, 2]);
        assert_eq!(swap_count(&circuit, &routed.gates), 1);
        assert_equivalent(&circuit, &graph, &identity_layout(3));
    }

    #[test]
    fn conformant_circuit_is_untouched() {
        let graph = CouplingGraph::path(3);
        let circuit = vec![Gate::H(0), Gate::Cnot(0, 1), Gate::Cnot(1, 2), Gate::Ry(2, 0.4)];
        let routed = route(&circuit, &graph, &identity_layout(3)).unwrap();
        assert_eq!(routed.gates, circuit);
        assert_eq!(swap_count(&circuit, &routed.gates), 0);
    }

    #[test]
    fn two_swaps_across_a_path_of_four() {
        let graph = CouplingGraph::path(4);
        let circuit = [Gate::Cnot(0, 3)];
        let routed = route(&circuit, &graph, &identity_layout(4)).unwrap();
        assert_eq!(swap_count(&circuit, &routed.gates), 2);
        assert_equivalent(&circuit, &graph, &identity_layout(4));
    }

    #[test]
    fn routes_onto_star_graph() {
        // hub-and-spoke with the hub at 2, like the 5-qubit device
        let graph = CouplingGraph::star(5, 2);
        let circuit = [Gate::H(0), Gate::Cnot(0, 1), Gate::Cnot(3, 4), Gate::Cnot(0, 4)];
        assert_equivalent(&circuit, &graph, &identity_layout(5));
    }

    #[test]
    fn respects_initial_layout() {
        let graph = CouplingGraph::path(4);
        let circuit = [Gate::H(0), Gate::Cnot(0, 1)];
        assert_equivalent(&circuit, &graph, &[3, 1]);
    }

    #[test]
    fn directed_graph_reverses_cnot_with_hadamards() {
        let graph = CouplingGraph::with_direction(2, vec![(0, 1)], true).unwrap();
        let circuit = [Gate::Cnot(1, 0)];
        let routed = route(&circuit, &graph, &identity_layout(2)).unwrap();
        assert!(routed.gates.contains(&Gate::Cnot(0, 1)));
        assert_eq!(routed.gates.len(), 5);

        let mut original = StateVector::zero(2);
        original.apply_all(&circuit).unwrap();
        let expected = original.permute_qubits(&routed.final_layout).unwrap();
        let mut actual = StateVector::zero(2);
        actual.apply_all(&routed.gates).unwrap();
        for (a, e) in actual.amplitudes().iter().zip(expected.amplitudes()) {
            assert!((a - e).norm() < 1e-9);
        }
    }

    #[test]
    fn rejects_bad_graphs_and_layouts() {
        assert_eq!(
            CouplingGraph::new(3, vec![(0, 1)]).unwrap_err(),
            RouterError::Disconnected
        );
        assert_eq!(
            CouplingGraph::new(2, vec![(0, 0), (0, 1)]).unwrap_err(),
            RouterError::SelfLoop { qubit: 0 }
        );
        assert_eq!(
            CouplingGraph::new(2, vec![(0, 2)]).unwrap_err(),
            RouterError::EdgeOutOfRange { a: 0, b: 2, n: 2 }
        );
        let graph = CouplingGraph::path(2);
        assert_eq!(
            route(&[], &graph, &[0, 1, 2]).unwrap_err(),
            RouterError::CircuitTooWide { needed: 3, available: 2 }
        );
        assert_eq!(
            route(&[], &graph, &[0, 0]).unwrap_err(),
            RouterError::BadLayout
        );
        assert_eq!(
            route(&[Gate::H(1)], &graph, &[0]).unwrap_err(),
            RouterError::OperandOutsideLayout { qubit: 1, num_logical: 1 }
        );
    }

    #[test]
    fn graph_json_round_trip() {
        let graph = CouplingGraph::star(5, 2);
        let json = serde_json::to_string(&graph).unwrap();
        let back: CouplingGraph = serde_json::from_str(&json).unwrap();
        assert_eq!(graph, back);
        let err = serde_json::from_str::<CouplingGraph>(r#"{"n":3,"edges":[[0,1]]}"#);
        assert!(err.is_err());
    }

    fn random_connected_graph(rng: &mut ChaCha8Rng, n: usize) -> CouplingGraph {
        // random spanning tree plus a few extra edges
        let mut edges = Vec::new();
        for v in 1..n {
            edges.push((rng.gen_range(0..v), v));
        }
        for _ in 0..rng.gen_range(0..=n) {
            let a = rng.gen_range(0..n);
            let b = rng.gen_range(0..n);
            if a != b {
                edges.push((a.min(b), a.max(b)));
            }
        }
        CouplingGraph::new(n, edges).unwrap()
    }

    fn random_circuit(rng: &mut ChaCha8Rng, n: usize, max_gates: usize) -> Vec<Gate> {
        let gates = rng.gen_range(1..=max_gates);
        (0..gates)
            .map(|_| {
                let q = rng.gen_range(0..n);
                match rng.gen_range(0..5) {
                    0 => Gate::H(q),
                    1 => Gate::X(q),
                    2 => Gate::Ry(q, rng.gen::<f64>() * std::f64::consts::TAU),
                    kind => {
                        let mut r = rng.gen_range(0..n - 1);
                        if r >= q {
                            r += 1;
                        }
                        if kind == 3 {
                            Gate::Cnot(q, r)
                        } else {
                            Gate::Swap(q, r)
                        }
                    }
                }
            })
            .collect()
    }

    #[test]
    fn random_circuits_preserve_semantics() {
        let mut rng = ChaCha8Rng::seed_from_u64(1234);
        for _ in 0..60 {
            let n_logical = rng.gen_range(2..=5usize);
            let n_phys = rng.gen_range(n_logical..=6usize);
            let graph = random_connected_graph(&mut rng, n_phys);
            let circuit = random_circuit(&mut rng, n_logical, 20);
            let mut layout: Vec<usize> = (0..n_phys).collect();
            for i in (1..layout.len()).rev() {
                layout.swap(i, rng.gen_range(0..=i));
            }
            layout.truncate(n_logical);
            assert_equivalent(&circuit, &graph, &layout);
        }
    }
}
