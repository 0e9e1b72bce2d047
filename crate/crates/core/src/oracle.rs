//! Classical ground truth for the classifiers.
//!
//! Everything here is exact integer arithmetic over binary vectors: Hamming
//! distances, match counts, the two inner-product scores and their decision
//! rules. The quantum pipeline cross-checks every run against these.

use serde::Serialize;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum OracleError {
    #[error("vector length mismatch: expected {expected}, found {found}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("component at index {index} is {value}; vectors must be binary")]
    NonBinary { index: usize, value: u8 },
    #[error("class {class} has no member vectors")]
    EmptyClass { class: usize },
    #[error("need at least {needed} classes, found {found}")]
    TooFewClasses { needed: usize, found: usize },
    #[error("symmetric inner-product classification requires a sign precondition")]
    MissingSignPrecondition,
    #[error("class vector {class} is identically zero")]
    ZeroClassVector { class: usize },
}

/// A priori knowledge of whether matches or mismatches dominate, required
/// before a symmetric inner product measured as a square can be interpreted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, serde::Deserialize)]
pub enum SignPrecondition {
    #[serde(rename = "matches")]
    MatchesDominate,
    #[serde(rename = "mismatches")]
    MismatchesDominate,
}

/// Outcome of a decision rule. Exact ties are surfaced, never broken.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Decision {
    Class(usize),
    Ambiguous,
}

/// Positional agreement counts between a test and one training vector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct OracleCounts {
    pub s11: u64,
    pub s00: u64,
    pub s01: u64,
    pub s10: u64,
}

impl OracleCounts {
    pub fn total(&self) -> u64 {
        self.s11 + self.s00 + self.s01 + self.s10
    }

    /// Matches minus mismatches: S11 + S00 − S01 − S10.
    pub fn symmetric(&self) -> i64 {
        self.s11 as i64 + self.s00 as i64 - self.s01 as i64 - self.s10 as i64
    }

    pub fn hamming(&self) -> u64 {
        self.s01 + self.s10
    }
}

/// Per-class totals of the score quantities.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ClassScore {
    pub class_id: usize,
    /// Symmetric inner product σ = Σ_D (S11 + S00 − S01 − S10).
    pub sigma: i64,
    /// Active inner product σ11 = Σ_D S11.
    pub sigma11: u64,
    /// Summed Hamming distance χ = Σ_D H.
    pub chi: u64,
    /// Number of training vectors W.
    pub members: u64,
}

fn check_binary(v: &[u8]) -> Result<(), OracleError> {
    for (index, &value) in v.iter().enumerate() {
        if value > 1 {
            return Err(OracleError::NonBinary { index, value });
        }
    }
    Ok(())
}

fn check_same_len(a: &[u8], b: &[u8]) -> Result<(), OracleError> {
    if a.len() != b.len() {
        return Err(OracleError::LengthMismatch { expected: a.len(), found: b.len() });
    }
    Ok(())
}

/// Number of positional mismatches between two equal-length binary vectors.
pub fn hamming(a: &[u8], b: &[u8]) -> Result<u64, OracleError> {
    check_same_len(a, b)?;
    check_binary(a)?;
    check_binary(b)?;
    Ok(a.iter().zip(b).filter(|(x, y)| x != y).count() as u64)
}

/// Partitions the positions of a (test, training) pair by agreement kind.
pub fn match_counts(test: &[u8], training: &[u8]) -> Result<OracleCounts, OracleError> {
    check_same_len(test, training)?;
    check_binary(test)?;
    check_binary(training)?;
    let mut counts = OracleCounts { s11: 0, s00: 0, s01: 0, s10: 0 };
    for (&b, &a) in test.iter().zip(training) {
        match (a, b) {
            (1, 1) => counts.s11 += 1,
            (0, 0) => counts.s00 += 1,
            (0, 1) => counts.s01 += 1,
            _ => counts.s10 += 1,
        }
    }
    Ok(counts)
}

/// Active inner product of a test vector with a class: total 1-1 matches
/// over all members, equal to the dot product with the summed class vector.
pub fn aip(test: &[u8], class_members: &[Vec<u8>]) -> Result<u64, OracleError> {
    if class_members.is_empty() {
        return Err(OracleError::EmptyClass { class: 0 });
    }
    let mut total = 0u64;
    for member in class_members {
        total += match_counts(test, member)?.s11;
    }
    Ok(total)
}

/// Symmetric inner product of a test vector with a class: matches minus
/// mismatches summed over all members.
pub fn sip(test: &[u8], class_members: &[Vec<u8>]) -> Result<i64, OracleError> {
    if class_members.is_empty() {
        return Err(OracleError::EmptyClass { class: 0 });
    }
    let mut total = 0i64;
    for member in class_members {
        total += match_counts(test, member)?.symmetric();
    }
    Ok(total)
}

/// Scores every class against the test vector.
pub fn class_scores(
    test: &[u8],
    classes: &[Vec<Vec<u8>>],
) -> Result<Vec<ClassScore>, OracleError> {
    let mut scores = Vec::with_capacity(classes.len());
    for (class_id, members) in classes.iter().enumerate() {
        if members.is_empty() {
            return Err(OracleError::EmptyClass { class: class_id });
        }
        let mut score =
            ClassScore { class_id, sigma: 0, sigma11: 0, chi: 0, members: members.len() as u64 };
        for member in members {
            let counts = match_counts(test, member)?;
            score.sigma += counts.symmetric();
            score.sigma11 += counts.s11;
            score.chi += counts.hamming();
        }
        scores.push(score);
    }
    Ok(scores)
}

fn argmax_unique<T: PartialOrd + Copy>(values: impl Iterator<Item = T>) -> Decision {
    let mut best: Option<(usize, T)> = None;
    let mut tied = false;
    for (i, v) in values.enumerate() {
        match &best {
            None => best = Some((i, v)),
            Some((_, b)) => {
                if v > *b {
                    best = Some((i, v));
                    tied = false;
                } else if v == *b {
                    tied = true;
                }
            }
        }
    }
    match best {
        Some((i, _)) if !tied => Decision::Class(i),
        _ => Decision::Ambiguous,
    }
}

/// Applies the classical decision rule: highest active inner product for
/// AIP, highest symmetric inner product for SIP. SIP refuses to run without
/// a sign precondition, mirroring what the measured |σ|² requires.
pub fn classify(
    test: &[u8],
    classes: &[Vec<Vec<u8>>],
    metric: crate::encoding::Metric,
    sign_precondition: Option<SignPrecondition>,
) -> Result<Decision, OracleError> {
    if classes.len() < 2 {
        return Err(OracleError::TooFewClasses { needed: 2, found: classes.len() });
    }
    let scores = class_scores(test, classes)?;
    match metric {
        crate::encoding::Metric::Aip => Ok(argmax_unique(scores.iter().map(|s| s.sigma11))),
        crate::encoding::Metric::Sip => {
            if sign_precondition.is_none() {
                return Err(OracleError::MissingSignPrecondition);
            }
            Ok(argmax_unique(scores.iter().map(|s| s.sigma)))
        }
    }
}

/// Decision for three or more classes: the class whose normalized class
/// vector takes the largest dot product with the test, which is exactly the
/// class preferred in every pairwise bisector comparison it appears in.
pub fn multiclass_region(test: &[u8], class_vectors: &[Vec<u64>]) -> Result<Decision, OracleError> {
    if class_vectors.len() < 3 {
        return Err(OracleError::TooFewClasses { needed: 3, found: class_vectors.len() });
    }
    check_binary(test)?;
    let mut dots = Vec::with_capacity(class_vectors.len());
    for (class, vector) in class_vectors.iter().enumerate() {
        if vector.len() != test.len() {
            return Err(OracleError::LengthMismatch {
                expected: test.len(),
                found: vector.len(),
            });
        }
        let norm = vector.iter().map(|&c| (c * c) as f64).sum::<f64>().sqrt();
        if norm == 0.0 {
            return Err(OracleError::ZeroClassVector { class });
        }
        let dot: f64 = vector
            .iter()
            .zip(test)
            .map(|(&c, &t)| (c * t as u64) as f64)
            .sum();
        dots.push(dot / norm);
    }
    Ok(argmax_unique(dots.into_iter()))
}
