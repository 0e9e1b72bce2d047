//! End-to-end classification runs.
//!
//! A run ingests a labelled dataset, sums each class into its class vector,
//! encodes everything under the chosen metric, builds the swap-test circuit,
//! optionally routes it onto a coupling graph, and reads the decision off
//! the exact or sampled (swapper, class index) probabilities. Every report
//! carries the classical oracle's verdict alongside the quantum one.

use crate::circuits::{
    append_swap_test, build_initial_state_prep, decompose_cswaps, elide_like_valued_pairs,
    CircuitError, QubitRoles,
};
use crate::encoding::{
    encode_aip, encode_sip, zero_coefficient_exclusion, EncodingError, FeatureVector, Metric,
};
use crate::oracle::{self, ClassScore, Decision, OracleError, SignPrecondition};
use crate::router::{route, swap_count, CouplingGraph, RouterError};
use crate::simulator::{Histogram, SimulatorError, StateVector};
use serde::Serialize;

/// Version tag carried by every serialized report.
pub const REPORT_SCHEMA_VERSION: u32 = 1;

/// Exact ρ10 below this is reported as zero and the ratio flagged undefined.
const RHO_FLOOR: f64 = 1e-15;
/// Exact probabilities closer than this are an ambiguous decision.
const EXACT_TIE: f64 = 1e-12;
/// Relative η spread beyond this triggers the similarity warning.
const ETA_SIMILARITY: f64 = 1e-9;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum PipelineError {
    #[error(transparent)]
    Encoding(#[from] EncodingError),
    #[error(transparent)]
    Circuit(#[from] CircuitError),
    #[error(transparent)]
    Router(#[from] RouterError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Simulator(#[from] SimulatorError),
    #[error("dataset defines {found} classes; at least 2 are required")]
    TooFewClasses { found: usize },
    #[error("test vector has {found} regions, dataset has {expected}")]
    RegionMismatch { expected: usize, found: usize },
    #[error("{len} regions is not a power of two; enable pad_to_pow2")]
    PadRequired { len: usize },
    #[error("symmetric inner-product runs require a sign precondition")]
    MissingSignPrecondition,
    #[error("dataset row {row} has {found} regions, expected {expected}")]
    RaggedRow { row: usize, expected: usize, found: usize },
}

/// A labelled binary feature matrix. Class ids follow first appearance of
/// each label.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    num_regions: usize,
    labels: Vec<String>,
    samples: Vec<(FeatureVector, usize)>,
}

impl Dataset {
    pub fn from_rows(
        num_regions: usize,
        rows: Vec<(String, Vec<u64>)>,
    ) -> Result<Self, PipelineError> {
        let mut dataset = Dataset { num_regions, labels: Vec::new(), samples: Vec::new() };
        for (row, (label, components)) in rows.into_iter().enumerate() {
            if components.len() != num_regions {
                return Err(PipelineError::RaggedRow {
                    row,
                    expected: num_regions,
                    found: components.len(),
                });
            }
            let sample = FeatureVector::sample(components)?;
            let class = match dataset.labels.iter().position(|l| l == &label) {
                Some(id) => id,
                None => {
                    dataset.labels.push(label);
                    dataset.labels.len() - 1
                }
            };
            dataset.samples.push((sample, class));
        }
        Ok(dataset)
    }

    pub fn num_regions(&self) -> usize {
        self.num_regions
    }

    pub fn num_classes(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn samples(&self) -> &[(FeatureVector, usize)] {
        &self.samples
    }

    pub fn class_members(&self, class: usize) -> Vec<&FeatureVector> {
        self.samples
            .iter()
            .filter(|(_, c)| *c == class)
            .map(|(s, _)| s)
            .collect()
    }

    /// Classes as plain binary vectors for the oracle.
    pub fn classes_as_binary(&self) -> Vec<Vec<Vec<u8>>> {
        (0..self.num_classes())
            .map(|class| {
                self.class_members(class)
                    .iter()
                    .map(|s| s.components().iter().map(|&c| c as u8).collect())
                    .collect()
            })
            .collect()
    }
}

/// Componentwise class sums with their feature-basis norms η.
pub fn build_class_vectors(dataset: &Dataset) -> Result<Vec<(FeatureVector, f64)>, PipelineError> {
    (0..dataset.num_classes())
        .map(|class| {
            let members: Vec<FeatureVector> =
                dataset.class_members(class).into_iter().cloned().collect();
            let vector = FeatureVector::class_sum(&members)?;
            let eta = vector.eta(Metric::Aip);
            Ok((vector, eta))
        })
        .collect()
}

/// How a run is executed. `shots = 0` requests exact probabilities only.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub metric: Metric,
    pub shots: u64,
    pub seed: u64,
    pub sign_precondition: Option<SignPrecondition>,
    pub coupling_graph: Option<CouplingGraph>,
    pub pad_to_pow2: bool,
    /// Data-register width above which AIP runs attempt zero-coefficient
    /// exclusion before encoding.
    pub qubit_budget: Option<usize>,
    /// Skip controlled swaps of qubit pairs whose states already agree.
    pub elide_like_pairs: bool,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            metric: Metric::Aip,
            shots: 0,
            seed: 0,
            sign_precondition: None,
            coupling_graph: None,
            pad_to_pow2: false,
            qubit_budget: None,
            elide_like_pairs: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ProbabilityBlock {
    pub rho10: f64,
    pub rho11: f64,
    /// ρ11/ρ10; absent (with a warning) when ρ10 is zero.
    pub ratio: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EmpiricalBlock {
    /// Shot counts over the (swapper, class index) outcomes.
    pub histogram: Histogram,
    pub rho10: f64,
    pub rho11: f64,
    pub ratio: Option<f64>,
}

/// Everything a classification run produced.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub metric: Metric,
    pub shots: u64,
    pub seed: u64,
    pub class_labels: Vec<String>,
    /// Feature-basis normalization constant per class under the run metric.
    pub eta: Vec<f64>,
    pub exact: Option<ProbabilityBlock>,
    pub empirical: Option<EmpiricalBlock>,
    /// Decision from the measured (or exact) probabilities; absent when the
    /// quantum path was skipped.
    pub predicted: Option<Decision>,
    /// The classical oracle's decision on the same data.
    pub oracle: Decision,
    pub oracle_scores: Vec<ClassScore>,
    /// SWAPs inserted by routing, when a coupling graph was supplied.
    pub swap_count: Option<usize>,
    pub pad_count: usize,
    /// Original feature dimensions kept by zero-coefficient exclusion.
    pub kept_dimensions: Option<Vec<usize>>,
    pub warnings: Vec<String>,
}

impl RunReport {
    pub fn predicted_label(&self) -> Option<&str> {
        match self.predicted {
            Some(Decision::Class(id)) => Some(&self.class_labels[id]),
            _ => None,
        }
    }
}

fn ratio_of(rho10: f64, rho11: f64) -> Option<f64> {
    (rho10 > RHO_FLOOR).then(|| rho11 / rho10)
}

/// Decision from the two ρ1k values. A higher inner product means a lower
/// ρ1k, so the winner is the argmin — except under a mismatches-dominate
/// precondition, where only |σ| is visible and the least negative σ is the
/// one with the smaller magnitude, i.e. the larger ρ1k.
fn decide(rho10: f64, rho11: f64, metric: Metric, sign: Option<SignPrecondition>, tie: f64) -> Decision {
    if (rho10 - rho11).abs() <= tie {
        return Decision::Ambiguous;
    }
    let take_larger = metric == Metric::Sip && sign == Some(SignPrecondition::MismatchesDominate);
    let class0_wins = if take_larger { rho10 > rho11 } else { rho10 < rho11 };
    Decision::Class(usize::from(!class0_wins))
}

/// Runs the full classification pipeline for one test vector.
pub fn run(
    dataset: &Dataset,
    test: &FeatureVector,
    config: &RunConfig,
) -> Result<RunReport, PipelineError> {
    let num_classes = dataset.num_classes();
    if num_classes < 2 {
        return Err(PipelineError::TooFewClasses { found: num_classes });
    }
    if test.len() != dataset.num_regions() {
        return Err(PipelineError::RegionMismatch {
            expected: dataset.num_regions(),
            found: test.len(),
        });
    }

    let mut warnings = Vec::new();

    // Classical side first: scores and decision on the raw binary data.
    let classes_binary = dataset.classes_as_binary();
    let test_binary: Vec<u8> = test.components().iter().map(|&c| c as u8).collect();
    let oracle_scores = oracle::class_scores(&test_binary, &classes_binary)?;
    let oracle_decision = if config.metric == Metric::Sip && config.sign_precondition.is_none() {
        return Err(PipelineError::MissingSignPrecondition);
    } else {
        oracle::classify(&test_binary, &classes_binary, config.metric, config.sign_precondition)?
    };

    let class_vectors = build_class_vectors(dataset)?;
    let member_counts: Vec<u64> = class_vectors.iter().map(|(v, _)| v.members()).collect();
    if member_counts.windows(2).any(|w| w[0] != w[1]) {
        warnings.push(format!(
            "classes have unequal training counts {member_counts:?}; scores are not directly comparable"
        ));
    }

    let eta: Vec<f64> =
        class_vectors.iter().map(|(v, _)| v.eta(config.metric)).collect();
    let eta_max = eta.iter().cloned().fold(0.0f64, f64::max);
    let eta_min = eta.iter().cloned().fold(f64::INFINITY, f64::min);
    if eta_max > 0.0 && (eta_max - eta_min) / eta_max > ETA_SIMILARITY {
        warnings.push(format!(
            "class normalization constants differ (eta = {eta:?}); inner-product classification assumes similar eta"
        ));
    }

    let mut report = RunReport {
        schema_version: REPORT_SCHEMA_VERSION,
        metric: config.metric,
        shots: config.shots,
        seed: config.seed,
        class_labels: dataset.labels().to_vec(),
        eta,
        exact: None,
        empirical: None,
        predicted: None,
        oracle: oracle_decision,
        oracle_scores,
        swap_count: None,
        pad_count: 0,
        kept_dimensions: None,
        warnings,
    };

    if num_classes > 2 {
        report.warnings.push(format!(
            "{num_classes} classes exceed the one-qubit class index; quantum path skipped, oracle decision only"
        ));
        return Ok(report);
    }

    // Optional basis reduction, then padding, then encoding.
    let mut test_vec = test.clone();
    let mut class_vecs: Vec<FeatureVector> =
        class_vectors.into_iter().map(|(v, _)| v).collect();

    let needed_qubits = test_vec.len().next_power_of_two().trailing_zeros() as usize;
    if config.metric == Metric::Aip
        && config.qubit_budget.map_or(false, |budget| needed_qubits > budget)
    {
        let (reduced_test, reduced_classes, kept) =
            zero_coefficient_exclusion(&test_vec, &class_vecs)?;
        report.warnings.push(format!(
            "zero-coefficient exclusion reduced {} regions to {}",
            test_vec.len(),
            reduced_test.len()
        ));
        test_vec = reduced_test;
        class_vecs = reduced_classes;
        report.kept_dimensions = Some(kept);
    }

    if !test_vec.len().is_power_of_two() {
        if !config.pad_to_pow2 && report.kept_dimensions.is_none() {
            return Err(PipelineError::PadRequired { len: test_vec.len() });
        }
        let (padded, pad) = test_vec.padded_to_power_of_two();
        test_vec = padded;
        report.pad_count = pad;
        class_vecs = class_vecs
            .iter()
            .map(|v| v.padded_to_power_of_two().0)
            .collect();
    }

    let encode = |v: &FeatureVector| match config.metric {
        Metric::Aip => encode_aip(v),
        Metric::Sip => encode_sip(v),
    };
    let d0 = encode(&class_vecs[0])?;
    let d1 = encode(&class_vecs[1])?;
    let t = encode(&test_vec)?;

    let roles = QubitRoles::standard(d0.num_qubits());
    let prep = build_initial_state_prep((&d0, &d1), &t, &roles)?;
    let pairs = config
        .elide_like_pairs
        .then(|| elide_like_valued_pairs((&d0, &d1), &t, &roles));
    let swapper = roles.swapper();
    let class_index = roles.class_index();
    let circuit = append_swap_test(prep, roles, pairs, config.metric)?;

    // Route if a coupling graph was supplied; measurement wires follow the
    // final layout.
    let (final_state, measure_wires) = match &config.coupling_graph {
        Some(graph) => {
            let decomposed = decompose_cswaps(circuit.gates());
            let routed = route(&decomposed, graph, &(0..circuit.num_qubits()).collect::<Vec<_>>())?;
            report.swap_count = Some(swap_count(&decomposed, &routed.gates));
            let mut state = StateVector::zero(graph.num_qubits());
            state.apply_all(&routed.gates)?;
            let wires = [routed.final_layout[swapper], routed.final_layout[class_index]];
            (state, wires)
        }
        None => (circuit.simulate()?, [swapper, class_index]),
    };

    let probs = final_state.exact_probabilities(&measure_wires)?;
    let (rho10, rho11) = (probs[2], probs[3]);
    let exact_ratio = ratio_of(rho10, rho11);
    if exact_ratio.is_none() {
        report
            .warnings
            .push("ratio ρ11/ρ10 is undefined: ρ10 is zero".to_string());
    }
    report.exact = Some(ProbabilityBlock { rho10, rho11, ratio: exact_ratio });

    if config.shots > 0 {
        let histogram =
            final_state.sample_measurements(&measure_wires, config.shots, config.seed)?;
        let shots = config.shots as f64;
        let rho10_hat = histogram.counts()[2] as f64 / shots;
        let rho11_hat = histogram.counts()[3] as f64 / shots;
        report.predicted = Some(decide(
            rho10_hat,
            rho11_hat,
            config.metric,
            config.sign_precondition,
            0.0,
        ));
        report.empirical = Some(EmpiricalBlock {
            histogram,
            rho10: rho10_hat,
            rho11: rho11_hat,
            ratio: ratio_of(rho10_hat, rho11_hat),
        });
    } else {
        report.predicted = Some(decide(
            rho10,
            rho11,
            config.metric,
            config.sign_precondition,
            EXACT_TIE,
        ));
    }

    Ok(report)
}

/// The worked example problems: datasets, test vectors and the class the
/// paper assigns to each.
pub mod examples {
    use super::*;

    pub struct ExampleProblem {
        pub name: &'static str,
        pub dataset: Dataset,
        pub test: FeatureVector,
        pub metric: Metric,
        pub sign_precondition: Option<SignPrecondition>,
        pub expected_class: usize,
    }

    impl ExampleProblem {
        pub fn config(&self) -> RunConfig {
            RunConfig {
                metric: self.metric,
                sign_precondition: self.sign_precondition,
                ..RunConfig::default()
            }
        }
    }

    fn block_vector(regions: usize, ones: impl Fn(usize) -> bool) -> Vec<u64> {
        (0..regions).map(|f| u64::from(ones(f))).collect()
    }

    /// Two-region problem on the 5-qubit device: the disease class has one
    /// training vector in the second region, the normal class one vector
    /// covering both, and the test sits in the first region.
    pub fn five_qubit_example_1() -> ExampleProblem {
        let dataset = Dataset::from_rows(
            2,
            vec![
                ("disease".to_string(), vec![0, 1]),
                ("normal".to_string(), vec![1, 1]),
            ],
        )
        .expect("static data");
        ExampleProblem {
            name: "5q-ex1",
            dataset,
            test: FeatureVector::sample(vec![1, 0]).expect("static data"),
            metric: Metric::Aip,
            sign_precondition: None,
            expected_class: 1,
        }
    }

    /// 64-region problem: class 0 covers regions 1–32, class 1 regions
    /// 33–64, the test regions 1–16.
    pub fn fourteen_qubit_example_1() -> ExampleProblem {
        let dataset = Dataset::from_rows(
            64,
            vec![
                ("disease".to_string(), block_vector(64, |f| f < 32)),
                ("normal".to_string(), block_vector(64, |f| f >= 32)),
            ],
        )
        .expect("static data");
        ExampleProblem {
            name: "14q-ex1",
            dataset,
            test: FeatureVector::sample(block_vector(64, |f| f < 16)).expect("static data"),
            metric: Metric::Aip,
            sign_precondition: None,
            expected_class: 0,
        }
    }

    /// 64-region symmetric-product problem: class 0 covers every region,
    /// class 1 regions 33–64, the test regions 1–32. Mismatches dominate.
    pub fn fourteen_qubit_example_2() -> ExampleProblem {
        let dataset = Dataset::from_rows(
            64,
            vec![
                ("class0".to_string(), block_vector(64, |_| true)),
                ("class1".to_string(), block_vector(64, |f| f >= 32)),
            ],
        )
        .expect("static data");
        ExampleProblem {
            name: "14q-ex2",
            dataset,
            test: FeatureVector::sample(block_vector(64, |f| f < 32)).expect("static data"),
            metric: Metric::Sip,
            sign_precondition: Some(SignPrecondition::MismatchesDominate),
            expected_class: 0,
        }
    }

    pub fn by_name(name: &str) -> Option<ExampleProblem> {
        match name {
            "5q-ex1" => Some(five_qubit_example_1()),
            "14q-ex1" => Some(fourteen_qubit_example_1()),
            "14q-ex2" => Some(fourteen_qubit_example_2()),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn five_qubit_example_exact() {
        let ex = examples::five_qubit_example_1();
        let report = run(&ex.dataset, &ex.test, &ex.config()).unwrap();
        let exact = report.exact.as_ref().unwrap();
        assert!((exact.rho10 - 0.25).abs() < 1e-9);
        assert!((exact.rho11 - 0.125).abs() < 1e-9);
        assert!((exact.ratio.unwrap() - 0.5).abs() < 1e-9);
        assert_eq!(report.predicted, Some(Decision::Class(1)));
        assert_eq!(report.oracle, Decision::Class(1));
        assert_eq!(report.predicted_label(), Some("normal"));
    }

    #[test]
    fn fourteen_qubit_example_1_exact() {
        let ex = examples::fourteen_qubit_example_1();
        let report = run(&ex.dataset, &ex.test, &ex.config()).unwrap();
        let exact = report.exact.as_ref().unwrap();
        assert!((exact.rho10 - 0.125).abs() < 1e-9);
        assert!((exact.rho11 - 0.25).abs() < 1e-9);
        assert!((exact.ratio.unwrap() - 2.0).abs() < 1e-9);
        assert_eq!(report.predicted, Some(Decision::Class(0)));
        assert_eq!(report.oracle, Decision::Class(0));
    }

    #[test]
    fn fourteen_qubit_example_2_exact() {
        let ex = examples::fourteen_qubit_example_2();
        let report = run(&ex.dataset, &ex.test, &ex.config()).unwrap();
        let exact = report.exact.as_ref().unwrap();
        assert!(exact.rho11.abs() < 1e-12);
        assert!((exact.rho10 - 0.25).abs() < 1e-9);
        assert_eq!(report.predicted, Some(Decision::Class(0)));
        assert!(exact.ratio.unwrap().abs() < 1e-9);
    }

    #[test]
    fn exact_mode_is_deterministic() {
        let ex = examples::five_qubit_example_1();
        let a = run(&ex.dataset, &ex.test, &ex.config()).unwrap();
        let b = run(&ex.dataset, &ex.test, &ex.config()).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn sampled_mode_is_seed_deterministic_and_close() {
        let ex = examples::five_qubit_example_1();
        let config = RunConfig { shots: 8192, seed: 5, ..ex.config() };
        let a = run(&ex.dataset, &ex.test, &config).unwrap();
        let b = run(&ex.dataset, &ex.test, &config).unwrap();
        assert_eq!(a, b);
        let emp = a.empirical.as_ref().unwrap();
        assert_eq!(emp.histogram.total(), 8192);
        // 5σ binomial bounds around the exact values
        for (hat, p) in [(emp.rho10, 0.25f64), (emp.rho11, 0.125)] {
            let sigma = (p * (1.0 - p) / 8192.0).sqrt();
            assert!((hat - p).abs() <= 5.0 * sigma, "{hat} vs {p}");
        }
    }

    #[test]
    fn sampled_convergence_over_many_seeds() {
        let ex = examples::five_qubit_example_1();
        let mut inside = 0u32;
        let trials = 50;
        for seed in 0..trials {
            let config = RunConfig { shots: 8192, seed, ..ex.config() };
            let report = run(&ex.dataset, &ex.test, &config).unwrap();
            let emp = report.empirical.unwrap();
            let ok = [(emp.rho10, 0.25), (emp.rho11, 0.125)].iter().all(|&(hat, p)| {
                (hat - p).abs() <= 5.0 * (p * (1.0 - p) / 8192.0).sqrt()
            });
            inside += u32::from(ok);
        }
        assert!(inside as f64 / trials as f64 >= 0.99, "{inside}/{trials}");
    }

    #[test]
    fn routed_run_matches_unrouted() {
        let ex = examples::five_qubit_example_1();
        let unrouted = run(&ex.dataset, &ex.test, &ex.config()).unwrap();
        // star-shaped 5-qubit device, hub at 2
        let config = RunConfig {
            coupling_graph: Some(CouplingGraph::star(5, 2)),
            ..ex.config()
        };
        let routed = run(&ex.dataset, &ex.test, &config).unwrap();
        assert!(routed.swap_count.is_some());
        let (a, b) = (unrouted.exact.unwrap(), routed.exact.unwrap());
        assert!((a.rho10 - b.rho10).abs() < 1e-9);
        assert!((a.rho11 - b.rho11).abs() < 1e-9);
        assert_eq!(unrouted.predicted, routed.predicted);
    }

    #[test]
    fn sip_requires_sign() {
        let ex = examples::fourteen_qubit_example_2();
        let config = RunConfig { sign_precondition: None, ..ex.config() };
        assert_eq!(
            run(&ex.dataset, &ex.test, &config).unwrap_err(),
            PipelineError::MissingSignPrecondition
        );
    }

    #[test]
    fn three_classes_fall_back_to_oracle() {
        let dataset = Dataset::from_rows(
            4,
            vec![
                ("a".into(), vec![1, 0, 0, 0]),
                ("b".into(), vec![0, 1, 0, 0]),
                ("c".into(), vec![0, 0, 1, 0]),
            ],
        )
        .unwrap();
        let test = FeatureVector::sample(vec![0, 1, 0, 0]).unwrap();
        let report = run(&dataset, &test, &RunConfig::default()).unwrap();
        assert_eq!(report.oracle, Decision::Class(1));
        assert_eq!(report.predicted, None);
        assert!(report.exact.is_none());
        assert!(report.warnings.iter().any(|w| w.contains("quantum path skipped")));
    }

    #[test]
    fn padding_is_explicit() {
        let dataset = Dataset::from_rows(
            3,
            vec![("a".into(), vec![1, 0, 0]), ("b".into(), vec![0, 1, 1])],
        )
        .unwrap();
        let test = FeatureVector::sample(vec![1, 1, 0]).unwrap();
        assert_eq!(
            run(&dataset, &test, &RunConfig::default()).unwrap_err(),
            PipelineError::PadRequired { len: 3 }
        );
        let config = RunConfig { pad_to_pow2: true, ..RunConfig::default() };
        let report = run(&dataset, &test, &config).unwrap();
        assert_eq!(report.pad_count, 1);
        assert_eq!(report.predicted, Some(Decision::Class(0)));
    }

    #[test]
    fn qubit_budget_triggers_exclusion() {
        // 8 regions (3 qubits), test occupies only 2 of them
        let dataset = Dataset::from_rows(
            8,
            vec![
                ("a".into(), vec![1, 0, 0, 0, 1, 0, 0, 0]),
                ("b".into(), vec![0, 0, 0, 0, 1, 0, 1, 0]),
            ],
        )
        .unwrap();
        let test = FeatureVector::sample(vec![1, 0, 0, 0, 1, 0, 0, 0]).unwrap();
        let plain = run(&dataset, &test, &RunConfig::default()).unwrap();
        let config = RunConfig { qubit_budget: Some(1), ..RunConfig::default() };
        let reduced = run(&dataset, &test, &config).unwrap();
        assert_eq!(reduced.kept_dimensions, Some(vec![0, 4]));
        assert_eq!(plain.oracle, reduced.oracle);
        assert_eq!(plain.predicted, reduced.predicted);
    }

    #[test]
    fn symmetric_instance_is_ambiguous() {
        let dataset = Dataset::from_rows(
            2,
            vec![("a".into(), vec![1, 0]), ("b".into(), vec![0, 1])],
        )
        .unwrap();
        let test = FeatureVector::sample(vec![1, 1]).unwrap();
        let report = run(&dataset, &test, &RunConfig::default()).unwrap();
        assert_eq!(report.predicted, Some(Decision::Ambiguous));
        assert_eq!(report.oracle, Decision::Ambiguous);
    }

    #[test]
    fn quantum_and_oracle_agree_on_equal_eta_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 40 {
            let regions = 1usize << rng.gen_range(1..=3u32);
            // one sample per class under SIP: η is √F for every class
            let rows: Vec<(String, Vec<u64>)> = vec![
                ("a".into(), (0..regions).map(|_| rng.gen_range(0..=1)).collect()),
                ("b".into(), (0..regions).map(|_| rng.gen_range(0..=1)).collect()),
            ];
            let Ok(dataset) = Dataset::from_rows(regions, rows) else { continue };
            if dataset.num_classes() != 2 {
                continue;
            }
            let test =
                FeatureVector::sample((0..regions).map(|_| rng.gen_range(0..=1)).collect())
                    .unwrap();

            // pick a valid precondition from the true σ signs; skip mixed
            let binary = dataset.classes_as_binary();
            let tb: Vec<u8> = test.components().iter().map(|&c| c as u8).collect();
            let scores = oracle::class_scores(&tb, &binary).unwrap();
            let sign = if scores.iter().all(|s| s.sigma >= 0) {
                SignPrecondition::MatchesDominate
            } else if scores.iter().all(|s| s.sigma <= 0) {
                SignPrecondition::MismatchesDominate
            } else {
                continue;
            };
            let config = RunConfig {
                metric: Metric::Sip,
                sign_precondition: Some(sign),
                ..RunConfig::default()
            };
            let Ok(report) = run(&dataset, &test, &config) else { continue };
            assert_eq!(report.predicted, Some(report.oracle), "scores {scores:?}");
            checked += 1;
        }
    }
}
