//! Synthetic multi-operator railway datasets, the six validation
//! configurations, timed runs and their summaries, plus the random case
//! generators used to check the query and shape engines against reference
//! implementations.

pub mod config;
pub mod era;
pub mod generator;
pub mod run;
pub mod shaclgen;
pub mod shapes;
pub mod sparqlgen;
pub mod summary;

pub use config::{run_bench, write_outputs, BenchConfig, BenchError, BenchOutput};
pub use generator::{generate, Generated, GeneratorConfig, GroundTruth, View, ViolationKind};
pub use run::{run_config, run_once, shapes_for, BenchConfigId, BenchShapes, RunOptions, RunRecord};
pub use summary::{summarize, summarize_runs, SummaryRow};
