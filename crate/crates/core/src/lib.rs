//! Statevector simulation and swap-test inner-product classification over
//! binary feature data.
//!
//! The crate is organized around a small exact simulator and the pieces that
//! turn a binary feature matrix into a two-class swap-test classifier:
//!
//! - [`simulator`] — complex-amplitude statevector engine with gate
//!   application and seeded measurement sampling.
//! - [`encoding`] — maps binary feature vectors to computational-basis
//!   amplitudes under the active (AIP) or symmetric (SIP) inner-product
//!   convention, plus product-state fitting and basis reduction.
//! - [`circuits`] — builds the generic swap-test classifier circuit and its
//!   optimizations (like-valued pair elision, Fredkin decomposition).
//! - [`router`] — adapts circuits to a hardware coupling graph by SWAP
//!   insertion.
//! - [`oracle`] — classical ground truth: Hamming distance, match counts,
//!   AIP/SIP scores and decision rules.
//! - [`pipeline`] — end-to-end classification runs with oracle cross-checks.
//!
//! # Qubit ordering
//!
//! Qubit 0 carries the most significant bit of a basis label throughout the
//! library: the basis state |q0 q1 ... q(n-1)⟩ sits at the big-endian integer
//! index formed from the qubit values. See [`simulator::basis_index`].

pub mod circuits;
pub mod encoding;
pub mod oracle;
pub mod pipeline;
pub mod router;
pub mod simulator;

pub use circuits::{ClassifierCircuit, QubitRoles};
pub use encoding::{FeatureVector, Metric, ProductFit};
pub use oracle::{ClassScore, Decision, OracleCounts, SignPrecondition};
pub use pipeline::{Dataset, RunConfig, RunReport};
pub use router::CouplingGraph;
pub use simulator::{Gate, Histogram, StateVector};
