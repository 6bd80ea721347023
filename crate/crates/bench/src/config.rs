//! Benchmark configuration files and the end-to-end driver.
//!
//! ```toml
//! repeats = 10
//! warmup = true
//! parallelism = 1
//! configs = ["shacl-baseline", "ds-target"]   # optional, default all six
//!
//! [generator]
//! seed = 1
//! operators = 20
//! triples-per-operator = 5000
//! violations = [{ kind = "pattern", per-operator = 2 }]
//! ```

use std::fs;
use std::path::{Path, PathBuf};

use serde::Deserialize;

use crate::generator::{generate, GeneratorConfig, GeneratorError};
use crate::run::{run_config, shapes_for, unpinned_warnings, BenchConfigId, BenchShapes, RunError, RunOptions, RunRecord};
use crate::summary::{runs_to_csv, summarize_runs, summary_to_csv, summary_to_text, ConfigSummary, SummaryError};

#[derive(Debug, thiserror::Error)]
pub enum BenchError {
    #[error("config: {0}")]
    Config(String),
    #[error(transparent)]
    Generator(#[from] GeneratorError),
    #[error(transparent)]
    Run(#[from] RunError),
    #[error(transparent)]
    Summary(#[from] SummaryError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
struct RawConfig {
    generator: GeneratorConfig,
    #[serde(default = "default_repeats")]
    repeats: usize,
    #[serde(default = "default_true")]
    warmup: bool,
    #[serde(default = "default_parallelism")]
    parallelism: usize,
    configs: Option<Vec<String>>,
}

fn default_repeats() -> usize {
    10
}

fn default_true() -> bool {
    true
}

fn default_parallelism() -> usize {
    1
}

#[derive(Clone, Debug)]
pub struct BenchConfig {
    pub generator: GeneratorConfig,
    pub configs: Vec<BenchConfigId>,
    pub options: RunOptions,
}

impl BenchConfig {
    pub fn parse(text: &str) -> Result<Self, BenchError> {
        let raw: RawConfig = toml::from_str(text).map_err(|e| BenchError::Config(e.to_string()))?;
        let configs = match raw.configs {
            None => BenchConfigId::ALL.to_vec(),
            Some(names) => names
                .iter()
                .map(|n| n.parse::<BenchConfigId>().map_err(|e| BenchError::Config(e.to_string())))
                .collect::<Result<_, _>>()?,
        };
        if raw.repeats == 0 {
            return Err(BenchError::Config("repeats must be at least 1".into()));
        }
        if raw.parallelism == 0 {
            return Err(BenchError::Config("parallelism must be at least 1".into()));
        }
        raw.generator.validate()?;
        Ok(BenchConfig {
            generator: raw.generator,
            configs,
            options: RunOptions { repeats: raw.repeats, warmup: raw.warmup, parallelism: raw.parallelism },
        })
    }

    pub fn load(path: &Path) -> Result<Self, BenchError> {
        let text = fs::read_to_string(path).map_err(|source| BenchError::Io { path: path.to_owned(), source })?;
        Self::parse(&text)
    }
}

#[derive(Clone, Debug)]
pub struct BenchOutput {
    pub runs: Vec<RunRecord>,
    pub summaries: Vec<ConfigSummary>,
    pub triples: usize,
    pub warnings: Vec<String>,
}

/// Generates the dataset, runs every configuration and summarizes.
pub fn run_bench(config: &BenchConfig) -> Result<BenchOutput, BenchError> {
    let generated = generate(&config.generator)?;
    let mut runs = Vec::new();
    let mut warnings = Vec::new();
    for &id in &config.configs {
        let shapes = shapes_for(id, &generated.operators)?;
        if let (BenchShapes::Dataset(sd), BenchConfigId::DsTarget | BenchConfigId::DsTargetExtra) = (&shapes, id) {
            warnings.extend(unpinned_warnings(sd).into_iter().map(|w| format!("{id}: {w}")));
        }
        runs.extend(run_config(id, &generated.dataset, &shapes, &config.options)?);
    }
    let summaries = summarize_runs(&runs)?;
    Ok(BenchOutput { runs, summaries, triples: generated.dataset.len(), warnings })
}

/// Writes `results.csv`, `summary.csv` and `summary.txt` into `dir`.
pub fn write_outputs(output: &BenchOutput, config: &BenchConfig, dir: &Path) -> Result<(), BenchError> {
    let io = |path: PathBuf| move |source| BenchError::Io { path, source };
    fs::create_dir_all(dir).map_err(io(dir.to_owned()))?;
    let mut text = format!(
        "triples: {}\noperators: {}\nrepeats: {}\nwarmup: {}\nparallelism: {}\n\n",
        output.triples, config.generator.operators, config.options.repeats, config.options.warmup, config.options.parallelism
    );
    text.push_str(&summary_to_text(&output.summaries));
    for (name, body) in [
        ("results.csv", runs_to_csv(&output.runs)),
        ("summary.csv", summary_to_csv(&output.summaries)),
        ("summary.txt", text),
    ] {
        let path = dir.join(name);
        fs::write(&path, body).map_err(io(path.clone()))?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const SMALL: &str = r#"
        repeats = 2
        warmup = false
        [generator]
        seed = 1
        operators = 3
        triples-per-operator = 40
        violations = [{ kind = "pattern", per-operator = 1 }]
    "#;

    #[test]
    fn parse_defaults_and_errors() {
        let c = BenchConfig::parse(SMALL).unwrap();
        assert_eq!(c.configs.len(), 6);
        assert_eq!(c.options.parallelism, 1);
        assert!(BenchConfig::parse(&SMALL.replace("repeats = 2", "repeats = 2\nconfigs = [\"ds-tarjet\"]")).is_err());
        assert!(BenchConfig::parse(&SMALL.replace("repeats = 2", "repeats = 0")).is_err());
        assert!(BenchConfig::parse(&SMALL.replace("operators = 3", "operators = 0")).is_err());
    }

    #[test]
    fn writes_six_summary_rows() {
        let config = BenchConfig::parse(SMALL).unwrap();
        let out = run_bench(&config).unwrap();
        assert_eq!(out.runs.len(), 12);
        let dir = tempfile::tempdir().unwrap();
        write_outputs(&out, &config, dir.path()).unwrap();
        let summary = fs::read_to_string(dir.path().join("summary.csv")).unwrap();
        assert_eq!(summary.lines().count(), 7);
        let results = fs::read_to_string(dir.path().join("results.csv")).unwrap();
        assert_eq!(results.lines().count(), 13);
        assert!(fs::read_to_string(dir.path().join("summary.txt")).unwrap().contains("SHACL-DS Combo Extra"));
    }
}
