//! On-disk formats: the dataset CSV, the one-gate-per-line circuit text and
//! the coupling-graph JSON.

use crate::Failure;
use std::path::Path;
use swaptest_core::pipeline::Dataset;
use swaptest_core::router::CouplingGraph;
use swaptest_core::simulator::Gate;
use swaptest_core::FeatureVector;

/// Reads `label,r1,...,rF` rows into a dataset. Cells must be 0 or 1 and
/// labels non-empty; errors carry the offending line.
pub fn read_dataset(path: &Path) -> Result<Dataset, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_dataset(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn parse_dataset(text: &str) -> Result<Dataset, String> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .trim(csv::Trim::All)
        .from_reader(text.as_bytes());
    let headers = reader.headers().map_err(|e| e.to_string())?.clone();
    if headers.is_empty() || headers.get(0) != Some("label") {
        return Err("line 1: header must start with \"label\"".to_string());
    }
    let num_regions = headers.len() - 1;

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record.map_err(|e| e.to_string())?;
        let line = record.position().map_or(0, |p| p.line());
        if record.len() != num_regions + 1 {
            return Err(format!(
                "line {line}: expected {} cells, found {}",
                num_regions + 1,
                record.len()
            ));
        }
        let label = record.get(0).unwrap_or_default().to_string();
        if label.is_empty() {
            return Err(format!("line {line}: empty label"));
        }
        let mut components = Vec::with_capacity(num_regions);
        for cell in record.iter().skip(1) {
            match cell {
                "0" => components.push(0),
                "1" => components.push(1),
                other => {
                    return Err(format!("line {line}: cell {other:?} is not 0 or 1"));
                }
            }
        }
        rows.push((label, components));
    }
    if rows.is_empty() {
        return Err("no sample rows".to_string());
    }
    Dataset::from_rows(num_regions, rows).map_err(|e| e.to_string())
}

/// Dataset back to its CSV form.
pub fn write_dataset(dataset: &Dataset) -> String {
    let mut out = String::from("label");
    for region in 1..=dataset.num_regions() {
        out.push_str(&format!(",r{region}"));
    }
    out.push('\n');
    for (sample, class) in dataset.samples() {
        out.push_str(&dataset.labels()[*class]);
        for &c in sample.components() {
            out.push_str(&format!(",{c}"));
        }
        out.push('\n');
    }
    out
}

/// Reads a test vector: same CSV shape as a dataset, exactly one row. The
/// label cell is carried along but ignored for classification.
pub fn read_test_vector(path: &Path) -> Result<FeatureVector, Failure> {
    let dataset = read_dataset(path)?;
    if dataset.samples().len() != 1 {
        return Err(Failure::input(format!(
            "{}: test file must contain exactly one sample row, found {}",
            path.display(),
            dataset.samples().len()
        )));
    }
    Ok(dataset.samples()[0].0.clone())
}

pub fn read_graph(path: &Path) -> Result<CouplingGraph, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Parses the one-gate-per-line circuit text: `H 0`, `CNOT 0 1`,
/// `RY 0 1.5707963`, `CSWAP 2 0 1`. Blank lines and `#` comments pass.
pub fn parse_circuit(text: &str) -> Result<Vec<Gate>, String> {
    let mut gates = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let stripped = raw.split('#').next().unwrap_or("").trim();
        if stripped.is_empty() {
            continue;
        }
        let mut parts = stripped.split_whitespace();
        let name = parts.next().unwrap().to_ascii_uppercase();
        let rest: Vec<&str> = parts.collect();
        let qubit = |idx: usize| -> Result<usize, String> {
            rest.get(idx)
                .ok_or_else(|| format!("line {line}: missing operand"))?
                .parse::<usize>()
                .map_err(|_| format!("line {line}: bad qubit index {:?}", rest[idx]))
        };
        let arity = |want: usize| -> Result<(), String> {
            if rest.len() == want {
                Ok(())
            } else {
                Err(format!(
                    "line {line}: {name} takes {want} argument(s), found {}",
                    rest.len()
                ))
            }
        };
        let gate = match name.as_str() {
            "H" => {
                arity(1)?;
                Gate::H(qubit(0)?)
            }
            "X" => {
                arity(1)?;
                Gate::X(qubit(0)?)
            }
            "RY" => {
                arity(2)?;
                let theta: f64 = rest[1]
                    .parse()
                    .map_err(|_| format!("line {line}: bad angle {:?}", rest[1]))?;
                Gate::Ry(qubit(0)?, theta)
            }
            "CNOT" => {
                arity(2)?;
                Gate::Cnot(qubit(0)?, qubit(1)?)
            }
            "SWAP" => {
                arity(2)?;
                Gate::Swap(qubit(0)?, qubit(1)?)
            }
            "CSWAP" => {
                arity(3)?;
                Gate::Cswap(qubit(0)?, qubit(1)?, qubit(2)?)
            }
            "TOFFOLI" => {
                arity(3)?;
                Gate::Toffoli(qubit(0)?, qubit(1)?, qubit(2)?)
            }
            other => return Err(format!("line {line}: unknown gate {other:?}")),
        };
        gates.push(gate);
    }
    Ok(gates)
}

pub fn read_circuit(path: &Path) -> Result<Vec<Gate>, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    parse_circuit(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

pub fn write_circuit(gates: &[Gate]) -> String {
    let mut out = String::new();
    for gate in gates {
        let line = match *gate {
            Gate::H(q) => format!("H {q}"),
            Gate::X(q) => format!("X {q}"),
            Gate::Ry(q, theta) => format!("RY {q} {theta}"),
            Gate::Cnot(c, t) => format!("CNOT {c} {t}"),
            Gate::Swap(a, b) => format!("SWAP {a} {b}"),
            Gate::Cswap(c, a, b) => format!("CSWAP {c} {a} {b}"),
            Gate::Toffoli(c1, c2, t) => format!("TOFFOLI {c1} {c2} {t}"),
        };
        out.push_str(&line);
        out.push('\n');
    }
    out
}
