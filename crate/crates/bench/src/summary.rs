//! Six-number summaries of run times and the result files.
//!
//! Quartiles interpolate linearly between closest ranks: for sorted values
//! `x[0..n]` and probability `p`, let `h = (n - 1) * p`; the quantile is
//! `x[floor(h)] + (h - floor(h)) * (x[floor(h) + 1] - x[floor(h)])`.

use std::collections::BTreeMap;
use std::fmt::Write;

use crate::run::{BenchConfigId, RunRecord};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum SummaryError {
    #[error("cannot summarize an empty run list")]
    Empty,
    #[error("run times must be finite and non-negative")]
    InvalidTime,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SummaryRow {
    pub min: f64,
    pub q1: f64,
    pub median: f64,
    pub q3: f64,
    pub max: f64,
    pub mean: f64,
}

fn quantile(sorted: &[f64], p: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * p;
    let lo = h.floor() as usize;
    match sorted.get(lo + 1) {
        Some(next) => sorted[lo] + (h - lo as f64) * (next - sorted[lo]),
        None => sorted[lo],
    }
}

pub fn summarize(values: &[f64]) -> Result<SummaryRow, SummaryError> {
    if values.is_empty() {
        return Err(SummaryError::Empty);
    }
    if values.iter().any(|v| !v.is_finite() || *v < 0.0) {
        return Err(SummaryError::InvalidTime);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(SummaryRow {
        min: sorted[0],
        q1: quantile(&sorted, 0.25),
        median: quantile(&sorted, 0.5),
        q3: quantile(&sorted, 0.75),
        max: sorted[sorted.len() - 1],
        mean: sorted.iter().sum::<f64>() / sorted.len() as f64,
    })
}

/// Per configuration: validation-time summary, creation-plus-validation
/// summary, mean creation time and the error count of the last run.
#[derive(Clone, Debug, PartialEq)]
pub struct ConfigSummary {
    pub config: BenchConfigId,
    pub runs: usize,
    pub validation: SummaryRow,
    pub total: SummaryRow,
    pub creation_mean: f64,
    pub errors: usize,
}

pub fn summarize_runs(runs: &[RunRecord]) -> Result<Vec<ConfigSummary>, SummaryError> {
    if runs.is_empty() {
        return Err(SummaryError::Empty);
    }
    let mut grouped: BTreeMap<BenchConfigId, Vec<&RunRecord>> = BTreeMap::new();
    for r in runs {
        grouped.entry(r.config).or_default().push(r);
    }
    grouped
        .into_iter()
        .map(|(config, rs)| {
            let validation: Vec<f64> = rs.iter().map(|r| r.validation_s).collect();
            let total: Vec<f64> = rs.iter().map(|r| r.creation_s + r.validation_s).collect();
            let creation = summarize(&rs.iter().map(|r| r.creation_s).collect::<Vec<_>>())?;
            Ok(ConfigSummary {
                config,
                runs: rs.len(),
                validation: summarize(&validation)?,
                total: summarize(&total)?,
                creation_mean: creation.mean,
                errors: rs.last().map_or(0, |r| r.errors),
            })
        })
        .collect()
}

pub fn runs_to_csv(runs: &[RunRecord]) -> String {
    let mut out = String::from("config,run,creation_s,validation_s,errors\n");
    for r in runs {
        writeln!(out, "{},{},{:.6},{:.6},{}", r.config, r.run, r.creation_s, r.validation_s, r.errors).unwrap();
    }
    out
}

/// One row per configuration; times are validation times in seconds.
pub fn summary_to_csv(summaries: &[ConfigSummary]) -> String {
    let mut out = String::from("config,runs,errors,min_s,q1_s,median_s,q3_s,max_s,mean_s,creation_mean_s\n");
    for s in summaries {
        let v = &s.validation;
        writeln!(
            out,
            "{},{},{},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6},{:.6}",
            s.config, s.runs, s.errors, v.min, v.q1, v.median, v.q3, v.max, v.mean, s.creation_mean
        )
        .unwrap();
    }
    out
}

/// Aligned table of validation times; configurations with a creation phase get
/// an extra row for creation plus validation.
pub fn summary_to_text(summaries: &[ConfigSummary]) -> String {
    let mut rows: Vec<(String, &SummaryRow)> = Vec::new();
    for s in summaries {
        rows.push((s.config.label().to_owned(), &s.validation));
        if let Some(phase) = s.config.creation_label() {
            rows.push((format!("  + {phase}"), &s.total));
        }
    }
    let width = rows.iter().map(|(l, _)| l.len()).max().unwrap_or(0).max("Configuration".len());
    let mut out = format!(
        "{:<width$}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}  {:>10}\n",
        "Configuration", "Min (s)", "Q1 (s)", "Median (s)", "Q3 (s)", "Max (s)", "Mean (s)"
    );
    for (label, r) in rows {
        writeln!(
            out,
            "{label:<width$}  {:>10.4}  {:>10.4}  {:>10.4}  {:>10.4}  {:>10.4}  {:>10.4}",
            r.min, r.q1, r.median, r.q3, r.max, r.mean
        )
        .unwrap();
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn record(config: BenchConfigId, run: usize, creation_s: f64, validation_s: f64) -> RunRecord {
        RunRecord { config, run, creation_s, validation_s, errors: 4 }
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(summarize(&[]), Err(SummaryError::Empty));
        assert_eq!(summarize(&[1.0, f64::NAN]), Err(SummaryError::InvalidTime));
        let one = summarize(&[2.5]).unwrap();
        assert_eq!(one, SummaryRow { min: 2.5, q1: 2.5, median: 2.5, q3: 2.5, max: 2.5, mean: 2.5 });
        let flat = summarize(&[3.0; 4]).unwrap();
        assert!(flat.min == flat.max && flat.max == flat.mean);
    }

    #[test]
    fn per_config_rows() {
        let runs = [
            record(BenchConfigId::DsTarget, 1, 0.0, 2.0),
            record(BenchConfigId::ShaclBaseline, 1, 1.0, 3.0),
            record(BenchConfigId::DsTarget, 2, 0.0, 4.0),
        ];
        let s = summarize_runs(&runs).unwrap();
        assert_eq!(s.len(), 2);
        assert_eq!(s[0].config, BenchConfigId::ShaclBaseline);
        assert_eq!(s[0].total.min, 4.0);
        assert_eq!(s[1].validation.median, 3.0);
        let csv = summary_to_csv(&s);
        assert_eq!(csv.lines().count(), 3);
        assert!(csv.lines().nth(2).unwrap().starts_with("ds-target,2,4,2.000000,2.500000,3.000000"));
        let text = summary_to_text(&s);
        assert!(text.contains("  + Merge"));
        assert!(!text.contains("Target\n  +"));
        assert_eq!(runs_to_csv(&runs[..1]), "config,run,creation_s,validation_s,errors\nds-target,1,0.000000,2.000000,4\n");
    }
}
