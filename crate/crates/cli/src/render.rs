//! Human-readable run output: the (swapper, class index) histogram and a
//! one-line verdict.

use swaptest_core::oracle::Decision;
use swaptest_core::pipeline::RunReport;

const BAR_WIDTH: usize = 50;

fn bar(value: f64, max: f64) -> String {
    let filled = if max > 0.0 {
        ((value / max) * BAR_WIDTH as f64).round() as usize
    } else {
        0
    };
    let filled = filled.min(BAR_WIDTH);
    format!("|{}{}|", "#".repeat(filled), " ".repeat(BAR_WIDTH - filled))
}

fn decision_line(report: &RunReport, decision: Decision) -> String {
    match decision {
        Decision::Class(id) => format!("class {id} ({})", report.class_labels[id]),
        Decision::Ambiguous => "ambiguous (exact tie)".to_string(),
    }
}

/// Renders the histogram block: sampled counts when shots were taken,
/// otherwise the exact ρ10/ρ11 probabilities.
pub fn render(report: &RunReport) -> String {
    let mut out = String::new();
    if let Some(empirical) = &report.empirical {
        let total = empirical.histogram.total() as f64;
        let freqs = empirical.histogram.frequencies();
        let max = freqs.iter().cloned().fold(0.0f64, f64::max);
        out.push_str(&format!("measured (s m), {} shots, seed {}\n", total, report.seed));
        for ((label, count), freq) in empirical.histogram.iter_labeled().zip(&freqs) {
            out.push_str(&format!("{label}  {count:>8}  {freq:.6}  {}\n", bar(*freq, max)));
        }
        match empirical.ratio {
            Some(ratio) => out.push_str(&format!("measured rho11/rho10 = {ratio:.6}\n")),
            None => out.push_str("measured rho11/rho10 undefined (rho10 = 0)\n"),
        }
    } else if let Some(exact) = &report.exact {
        let max = exact.rho10.max(exact.rho11);
        out.push_str("exact probabilities (s m)\n");
        out.push_str(&format!("10  {:.6}  {}\n", exact.rho10, bar(exact.rho10, max)));
        out.push_str(&format!("11  {:.6}  {}\n", exact.rho11, bar(exact.rho11, max)));
        match exact.ratio {
            Some(ratio) => out.push_str(&format!("exact rho11/rho10 = {ratio:.6}\n")),
            None => out.push_str("exact rho11/rho10 undefined (rho10 = 0)\n"),
        }
    }
    if let Some(predicted) = report.predicted {
        out.push_str(&format!("predicted: {}\n", decision_line(report, predicted)));
    }
    out.push_str(&format!("oracle:    {}\n", decision_line(report, report.oracle)));
    for warning in &report.warnings {
        out.push_str(&format!("warning: {warning}\n"));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bars_scale_to_fifty_columns() {
        assert_eq!(bar(1.0, 1.0), format!("|{}|", "#".repeat(50)));
        assert_eq!(bar(0.0, 1.0), format!("|{}|", " ".repeat(50)));
        assert_eq!(bar(0.5, 1.0).matches('#').count(), 25);
    }
}
