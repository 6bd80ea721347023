use std::borrow::Cow;
use std::path::{Path, PathBuf};

use anyhow::{anyhow, bail, Context, Result};
use shaclds::ds::{flatten, load_shapes_dataset, merge_graphs, validate_dataset, EvaluationDataset, ValidateOptions};
use shaclds::io::PrefixMap;
use shaclds::report::{counts_to_csv, counts_to_text, dedup, diff_counts, diff_to_csv, group_counts};
use shaclds::shacl::{load_shapes, validate_graph, ValidationReport};
use shaclds::sparql::{evaluate, parse_query, Bindings};
use shaclds::vocab::{shds, RDF, SKOS, XSD};
use shaclds::Dataset;
use shaclds_bench::config::{run_bench, write_outputs, BenchConfig};
use shaclds_bench::era;
use shaclds_bench::generator::{generate, GeneratorConfig};
use shaclds_bench::run::unpinned_warnings;
use shaclds_bench::summary::summary_to_text;

use crate::formats::{self, Format, Selector};
use crate::{Command, Mode, Outcome, ReportCommand};

pub fn run(command: Command) -> Result<Outcome> {
    match command {
        Command::Validate { data, shapes, mode, graphs, output, dedup, parallel } => {
            validate(&data, &shapes, mode, &graphs, output.as_deref(), dedup, usize::from(parallel))
        }
        Command::Report { command } => report(command),
        Command::Bench { config, out_dir } => bench(&config, &out_dir),
        Command::Generate { config, output } => generate_cmd(&config, &output),
        Command::Query { data, query, focus } => query_cmd(&data, &query, focus.as_deref()),
    }
}

fn outcome(conforms: bool) -> Outcome {
    if conforms {
        Outcome::Success
    } else {
        Outcome::Violations
    }
}

/// The data's default graph plus the selected named graphs.
fn restrict(data: &Dataset, selectors: &[Selector]) -> Dataset {
    let (names, _) = formats::select(data, selectors);
    let mut out = Dataset::new();
    *out.default_graph_mut() = data.default_graph().clone();
    for name in names {
        if let Some(g) = data.named_graph(&name) {
            out.insert_graph(name, g.clone());
        }
    }
    out
}

fn validate(
    data: &Path,
    shapes: &Path,
    mode: Mode,
    graphs: &[String],
    output: Option<&Path>,
    dedup_results: bool,
    parallelism: usize,
) -> Result<Outcome> {
    let selectors = graphs.iter().map(|g| Selector::parse(g)).collect::<Result<Vec<_>>>()?;
    let data = formats::load_dataset(data)?;
    let report = match mode {
        Mode::Ds => {
            if !matches!(Format::of(shapes)?, Format::TriG | Format::NQuads) {
                bail!("{}: ds mode needs a shapes dataset (.trig or .nq)", shapes.display());
            }
            let sd = load_shapes_dataset(&formats::load_dataset(shapes)?).with_context(|| format!("{}", shapes.display()))?;
            for (graph, d) in sd.diagnostics() {
                eprintln!("warning: shapes graph {graph}: {d}");
            }
            for w in unpinned_warnings(&sd) {
                eprintln!("warning: {w}");
            }
            let data = if selectors.is_empty() { data } else { restrict(&data, &selectors) };
            validate_dataset(&sd, &data, &ValidateOptions { parallelism })?
        }
        Mode::Flat => {
            let sg = load_shapes(&formats::load_graph(shapes)?).with_context(|| format!("{}", shapes.display()))?;
            for d in sg.diagnostics() {
                eprintln!("warning: {d}");
            }
            let merged = if selectors.is_empty() {
                flatten(&data)
            } else {
                let (names, default) = formats::select(&data, &selectors);
                let mut g = merge_graphs(&data, &names);
                if default {
                    g.extend_from(data.default_graph());
                }
                g
            };
            validate_graph(&sg, &merged, None)
        }
    };
    let (report, removed) = if dedup_results { dedup(&report) } else { (report, 0) };
    eprint!("{}", counts_to_text(&group_counts(&report)));
    if let Some(path) = output {
        formats::write_report(path, &report)?;
    }
    println!("conforms={} results={} removed={}", report.conforms(), report.len(), removed);
    Ok(outcome(report.conforms()))
}

fn write_optional(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => formats::write(p, text),
        None => Ok(()),
    }
}

fn report(command: ReportCommand) -> Result<Outcome> {
    match command {
        ReportCommand::Dedup { input, output } => {
            let report = formats::load_report(&input)?;
            let (d, removed) = dedup(&report);
            if let Some(path) = &output {
                formats::write_report(path, &d)?;
            }
            println!("input={} output={} removed={}", report.len(), d.len(), removed);
            Ok(Outcome::Success)
        }
        ReportCommand::Counts { input, output } => {
            let table = group_counts(&formats::load_report(&input)?);
            eprint!("{}", counts_to_text(&table));
            write_optional(output.as_deref(), &counts_to_csv(&table))?;
            println!("results={} deduplicated={} shapes={}", table.total, table.deduped_total, table.per_shape.len());
            Ok(Outcome::Success)
        }
        ReportCommand::Diff { a, b, output } => {
            let load = |p: &PathBuf| -> Result<ValidationReport> { formats::load_report(p) };
            let diff = diff_counts(&group_counts(&load(&a)?), &group_counts(&load(&b)?));
            let csv = diff_to_csv(&diff);
            if !diff.is_empty() {
                eprint!("{csv}");
            }
            write_optional(output.as_deref(), &csv)?;
            println!("differences={}", diff.len());
            Ok(outcome(diff.is_empty()))
        }
    }
}

fn bench(config: &Path, out_dir: &Path) -> Result<Outcome> {
    let config = BenchConfig::load(config)?;
    let output = run_bench(&config)?;
    for w in &output.warnings {
        eprintln!("warning: {w}");
    }
    write_outputs(&output, &config, out_dir)?;
    eprint!("{}", summary_to_text(&output.summaries));
    println!(
        "configs={} runs={} triples={} output={}",
        output.summaries.len(),
        output.runs.len(),
        output.triples,
        out_dir.display()
    );
    Ok(Outcome::Success)
}

fn load_generator_config(path: &Path) -> Result<GeneratorConfig> {
    let mut value: toml::Table = formats::read(path)?.parse().with_context(|| format!("{}", path.display()))?;
    let table = match value.remove("generator") {
        Some(toml::Value::Table(t)) => t,
        Some(_) => bail!("{}: `generator` must be a table", path.display()),
        None => value,
    };
    let config: GeneratorConfig = table.try_into().with_context(|| format!("{}", path.display()))?;
    config.validate()?;
    Ok(config)
}

fn era_prefixes() -> PrefixMap {
    [
        ("era", era::BASE),
        ("era-g", era::GRAPH_BASE),
        ("rdf", RDF),
        ("skos", SKOS),
        ("xsd", XSD),
    ]
    .into_iter()
    .map(|(p, ns)| (p.to_owned(), ns.to_owned()))
    .collect()
}

fn generate_cmd(config: &Path, output: &Path) -> Result<Outcome> {
    let config = load_generator_config(config)?;
    let generated = generate(&config)?;
    formats::write_dataset(output, &generated.dataset, &era_prefixes())?;
    let truth = output.with_extension("truth.csv");
    formats::write(&truth, &generated.truth.to_csv())?;
    println!(
        "triples={} graphs={} operators={} truth={}",
        generated.dataset.len(),
        generated.dataset.graph_names().count(),
        generated.operators.len(),
        truth.display()
    );
    Ok(Outcome::Success)
}

fn query_cmd(data: &Path, query: &Path, focus: Option<&str>) -> Result<Outcome> {
    let data = formats::load_dataset(data)?;
    let q = parse_query(&formats::read(query)?).with_context(|| format!("{}", query.display()))?;
    let graph = match focus {
        None => data.default_graph(),
        Some(name) => {
            let term = match Selector::parse(name)? {
                Selector::Iri(t) => t,
                _ => bail!("--focus takes a graph IRI"),
            };
            if term.is(shds::DEFAULT) {
                data.default_graph()
            } else {
                data.named_graph(&term).ok_or_else(|| anyhow!("no graph named {term} in the data"))?
            }
        }
    };
    let eds = EvaluationDataset::new(&data, Cow::Borrowed(graph));
    let solutions = evaluate(&q, &eds, &Bindings::new());
    print!("{}", solutions.to_tsv());
    eprintln!("{} solutions", solutions.len());
    Ok(Outcome::Success)
}
