//! Amplitude encodings for binary feature data.
//!
//! Feature vectors live over F ordered regions; a sample marks each region
//! with 1 (feature present) or 0, and a class vector is the componentwise sum
//! of its member samples. Two encodings map these to computational-basis
//! amplitudes:
//!
//! - **AIP** (active inner product): the amplitude at basis index f is the
//!   raw component, normalized. Regions without the feature get coefficient 0.
//! - **SIP** (symmetric inner product): regions without the feature get
//!   coefficient -1 instead of 0, so the inner product rewards 0-0 matches
//!   and penalizes mismatches. For a class vector of W members the signed
//!   component per region is 2·count − W.
//!
//! The module also carries the product-state fitting recipe used for circuit
//! synthesis and the zero-coefficient basis reduction for AIP.

use crate::simulator::{bit_of, Gate, StateVector};
use serde::{Deserialize, Serialize};

pub const FIT_DEFAULT_TOL: f64 = 1e-9;
pub const FIT_DEFAULT_MAX_ITER: usize = 10_000;
/// Random restarts used by [`fit_product_state`] after the marginal-derived
/// initial guess.
pub const FIT_RESTARTS: usize = 8;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum EncodingError {
    #[error("{len} regions is not a power of two; pad the vectors explicitly")]
    NotPowerOfTwo { len: usize },
    #[error("vector is identically zero and cannot be normalized")]
    AllZero,
    #[error("sample component at region {index} is {value}; samples must be binary")]
    NonBinarySample { index: usize, value: u64 },
    #[error("class component at region {index} is {value}, exceeding {members} members")]
    ComponentExceedsMembers { index: usize, value: u64, members: u64 },
    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("coefficient pair at qubit {index} is (0, 0)")]
    ZeroPair { index: usize },
    #[error("class has no member samples")]
    EmptyClass,
}

/// Which inner-product convention an encoding or run uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Metric {
    Aip,
    Sip,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum VectorKind {
    /// A single binary sample.
    Sample,
    /// Componentwise sum of `members` sample vectors.
    Class { members: u64 },
}

/// Integer components over F ordered feature regions.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FeatureVector {
    components: Vec<u64>,
    kind: VectorKind,
}

impl FeatureVector {
    /// A binary sample vector.
    pub fn sample(components: Vec<u64>) -> Result<Self, EncodingError> {
        for (index, &value) in components.iter().enumerate() {
            if value > 1 {
                return Err(EncodingError::NonBinarySample { index, value });
            }
        }
        Ok(FeatureVector { components, kind: VectorKind::Sample })
    }

    /// Componentwise sum of the given samples.
    pub fn class_sum(samples: &[FeatureVector]) -> Result<Self, EncodingError> {
        let first = samples.first().ok_or(EncodingError::EmptyClass)?;
        let mut components = vec![0u64; first.len()];
        let mut members = 0u64;
        for sample in samples {
            if sample.len() != components.len() {
                return Err(EncodingError::LengthMismatch {
                    expected: components.len(),
                    found: sample.len(),
                });
            }
            for (acc, &c) in components.iter_mut().zip(&sample.components) {
                *acc += c;
            }
            members += sample.members();
        }
        Ok(FeatureVector { components, kind: VectorKind::Class { members } })
    }

    /// A class vector given directly as component sums over `members` samples.
    pub fn class_from_components(components: Vec<u64>, members: u64) -> Result<Self, EncodingError> {
        for (index, &value) in components.iter().enumerate() {
            if value > members {
                return Err(EncodingError::ComponentExceedsMembers { index, value, members });
            }
        }
        Ok(FeatureVector { components, kind: VectorKind::Class { members } })
    }

    pub fn components(&self) -> &[u64] {
        &self.components
    }

    pub fn kind(&self) -> VectorKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    /// Number of member samples (1 for a sample vector).
    pub fn members(&self) -> u64 {
        match self.kind {
            VectorKind::Sample => 1,
            VectorKind::Class { members } => members,
        }
    }

    /// SIP-framework components: per region, members with the feature minus
    /// members without, i.e. 2·count − W.
    pub fn signed_components(&self) -> Vec<i64> {
        let members = self.members() as i64;
        self.components.iter().map(|&c| 2 * c as i64 - members).collect()
    }

    /// Feature-basis normalization constant η under the given metric.
    pub fn eta(&self, metric: Metric) -> f64 {
        match metric {
            Metric::Aip => self.components.iter().map(|&c| (c * c) as f64).sum::<f64>().sqrt(),
            Metric::Sip => self
                .signed_components()
                .iter()
                .map(|&s| (s * s) as f64)
                .sum::<f64>()
                .sqrt(),
        }
    }

    /// Extends the vector with zero-count regions up to the next power of
    /// two, returning the number of regions added. Pad regions carry no
    /// feature for any member, so under SIP they become matches between any
    /// pair of identically padded vectors.
    pub fn padded_to_power_of_two(&self) -> (FeatureVector, usize) {
        let len = self.len().max(1);
        let target = len.next_power_of_two();
        let pad = target - self.len();
        let mut components = self.components.clone();
        components.resize(target, 0);
        (FeatureVector { components, kind: self.kind }, pad)
    }
}

/// Amplitude at basis index f is the raw component, normalized.
pub fn encode_aip(v: &FeatureVector) -> Result<StateVector, EncodingError> {
    if !v.len().is_power_of_two() {
        return Err(EncodingError::NotPowerOfTwo { len: v.len() });
    }
    if v.components.iter().all(|&c| c == 0) {
        return Err(EncodingError::AllZero);
    }
    let coeffs: Vec<f64> = v.components.iter().map(|&c| c as f64).collect();
    Ok(StateVector::from_real_unnormalized(&coeffs).expect("nonzero power-of-two vector"))
}

/// Amplitude at basis index f is proportional to the signed component
/// 2·count − W (for a sample: +1 with the feature, −1 without).
pub fn encode_sip(v: &FeatureVector) -> Result<StateVector, EncodingError> {
    if !v.len().is_power_of_two() {
        return Err(EncodingError::NotPowerOfTwo { len: v.len() });
    }
    let signed = v.signed_components();
    if signed.iter().all(|&s| s == 0) {
        return Err(EncodingError::AllZero);
    }
    let coeffs: Vec<f64> = signed.iter().map(|&s| s as f64).collect();
    Ok(StateVector::from_real_unnormalized(&coeffs).expect("nonzero power-of-two vector"))
}

/// Best per-qubit product approximation of a state.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductFit {
    pairs: Vec<(f64, f64)>,
    residual: f64,
    converged: bool,
}

impl ProductFit {
    /// Normalized (a_i, b_i) per qubit, signs canonicalized so the larger
    /// component of each pair is positive.
    pub fn pairs(&self) -> &[(f64, f64)] {
        &self.pairs
    }

    /// 1 − |⟨target|product⟩| at the fitted point.
    pub fn residual(&self) -> f64 {
        self.residual
    }

    /// False when the sweep budget ran out before the overlap settled.
    pub fn converged(&self) -> bool {
        self.converged
    }

    /// Assembles the fitted product state.
    pub fn product_state(&self) -> StateVector {
        product_state(&self.pairs)
    }
}

fn product_state(pairs: &[(f64, f64)]) -> StateVector {
    let n = pairs.len();
    let mut coeffs = vec![0.0f64; 1 << n];
    for (i, coeff) in coeffs.iter_mut().enumerate() {
        *coeff = pairs
            .iter()
            .enumerate()
            .map(|(q, &(a, b))| if bit_of(i, q, n) == 0 { a } else { b })
            .product();
    }
    StateVector::from_real_unnormalized(&coeffs).expect("pairs are unit norm")
}

/// Overlap magnitude |⟨target|⊗(a_i|0⟩+b_i|1⟩)⟩|.
fn overlap_magnitude(target: &StateVector, pairs: &[(f64, f64)]) -> f64 {
    let n = pairs.len();
    let amps = target.amplitudes();
    let mut overlap = num_complex::Complex64::new(0.0, 0.0);
    for (i, amp) in amps.iter().enumerate() {
        let product: f64 = pairs
            .iter()
            .enumerate()
            .map(|(q, &(a, b))| if bit_of(i, q, n) == 0 { a } else { b })
            .product();
        overlap += amp.conj() * product;
    }
    overlap.norm()
}

/// Finds per-qubit coefficient pairs maximizing the overlap with `target`
/// by coordinate ascent with random restarts.
///
/// The residual 1 − |overlap| drops below `tol` whenever the target is a
/// product state; otherwise the fit reports the best residual found. A fit
/// that exhausts `max_iter` sweeps without the overlap settling is returned
/// flagged as non-converged rather than erroring.
pub fn fit_product_state(target: &StateVector, tol: f64, max_iter: usize) -> ProductFit {
    use rand::{Rng, SeedableRng};

    let n = target.num_qubits();
    let mut best: Option<ProductFit> = None;

    for restart in 0..=FIT_RESTARTS {
        let mut pairs: Vec<(f64, f64)> = if restart == 0 {
            // Marginal-derived guess: per-qubit amplitudes from the
            // measurement probabilities of each qubit alone.
            (0..n)
                .map(|q| {
                    let probs = target.exact_probabilities(&[q]).expect("valid qubit");
                    (probs[0].sqrt(), probs[1].sqrt())
                })
                .collect()
        } else {
            let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(0x9e37 + restart as u64);
            (0..n)
                .map(|_| {
                    let theta: f64 = rng.gen::<f64>() * std::f64::consts::TAU;
                    (theta.cos(), theta.sin())
                })
                .collect()
        };

        let mut overlap = overlap_magnitude(target, &pairs);
        let mut converged = n == 0;
        for _ in 0..max_iter {
            for q in 0..n {
                let (o0, o1) = branch_overlaps(target, &pairs, q);
                let g00 = o0.norm_sqr();
                let g11 = o1.norm_sqr();
                let g01 = (o0 * o1.conj()).re;
                if g00 + g11 < 1e-300 {
                    continue; // every other factor is orthogonal; leave the pair
                }
                let phi = 0.5 * (2.0 * g01).atan2(g00 - g11);
                pairs[q] = (phi.cos(), phi.sin());
            }
            let next = overlap_magnitude(target, &pairs);
            if (next - overlap).abs() <= tol {
                overlap = next;
                converged = true;
                break;
            }
            overlap = next;
        }

        let fit = ProductFit {
            pairs: canonicalize_signs(pairs),
            residual: 1.0 - overlap,
            converged,
        };
        let better = match &best {
            None => true,
            Some(b) => fit.residual < b.residual,
        };
        if better {
            best = Some(fit);
        }
        if let Some(b) = &best {
            if b.converged && b.residual <= tol {
                break;
            }
        }
    }

    best.expect("at least one restart ran")
}

/// (O_0, O_1): overlap of target against the product with qubit q pinned
/// to |0⟩ resp. |1⟩.
fn branch_overlaps(
    target: &StateVector,
    pairs: &[(f64, f64)],
    q: usize,
) -> (num_complex::Complex64, num_complex::Complex64) {
    let n = pairs.len();
    let mut o0 = num_complex::Complex64::new(0.0, 0.0);
    let mut o1 = num_complex::Complex64::new(0.0, 0.0);
    for (i, amp) in target.amplitudes().iter().enumerate() {
        let mut partial = 1.0f64;
        for (j, &(a, b)) in pairs.iter().enumerate() {
            if j != q {
                partial *= if bit_of(i, j, n) == 0 { a } else { b };
            }
        }
        let term = amp.conj() * partial;
        if bit_of(i, q, n) == 0 {
            o0 += term;
        } else {
            o1 += term;
        }
    }
    (o0, o1)
}

fn canonicalize_signs(pairs: Vec<(f64, f64)>) -> Vec<(f64, f64)> {
    pairs
        .into_iter()
        .map(|(a, b)| {
            let flip = if a.abs() >= b.abs() { a < 0.0 } else { b < 0.0 };
            if flip {
                (-a, -b)
            } else {
                (a, b)
            }
        })
        .collect()
}

/// Ry rotations preparing the product state described by per-qubit pairs,
/// one gate per qubit (qubit index = position in the slice). Pairs already
/// at |0⟩ emit nothing.
pub fn binomial_pattern_gates(pairs: &[(f64, f64)]) -> Result<Vec<Gate>, EncodingError> {
    let mut gates = Vec::new();
    for (index, &(a, b)) in pairs.iter().enumerate() {
        let hyp = a.hypot(b);
        if hyp < 1e-12 {
            return Err(EncodingError::ZeroPair { index });
        }
        let theta = 2.0 * b.atan2(a);
        if theta != 0.0 {
            gates.push(Gate::Ry(index, theta));
        }
    }
    Ok(gates)
}

/// Drops every feature dimension where the test component is zero; those
/// dimensions cannot contribute to an active inner product.
///
/// Returns the reduced test, the classes mapped to the same reduced basis,
/// and `index_map` with `index_map[new] = old`.
pub fn zero_coefficient_exclusion(
    test: &FeatureVector,
    classes: &[FeatureVector],
) -> Result<(FeatureVector, Vec<FeatureVector>, Vec<usize>), EncodingError> {
    let index_map: Vec<usize> = test
        .components
        .iter()
        .enumerate()
        .filter(|(_, &c)| c != 0)
        .map(|(f, _)| f)
        .collect();
    if index_map.is_empty() {
        return Err(EncodingError::AllZero);
    }
    let reduce = |v: &FeatureVector| -> Result<FeatureVector, EncodingError> {
        if v.len() != test.len() {
            return Err(EncodingError::LengthMismatch { expected: test.len(), found: v.len() });
        }
        Ok(FeatureVector {
            components: index_map.iter().map(|&f| v.components[f]).collect(),
            kind: v.kind,
        })
    };
    let reduced_test = reduce(test)?;
    let reduced_classes = classes.iter().map(reduce).collect::<Result<Vec<_>, _>>()?;
    Ok((reduced_test, reduced_classes, index_map))
}
