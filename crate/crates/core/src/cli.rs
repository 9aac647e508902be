//! Command-line interface. [`run`] is the whole program minus process
//! plumbing, so it can be driven from tests with in-memory streams.

use std::fs::File;
use std::io::{BufRead, BufReader, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::error::{Error, Result};
use crate::graph::canon::canonical_form;
use crate::graph::graph6::{parse_graph6, write_graph6};
use crate::graph::Graph;
use crate::hairing::{dehair, hair_k, Dehair};
use crate::poly::classify;
use crate::spectral::char_poly;
use crate::survey::{
    classify_survey, enumerate_all, enumerate_connected, enumerate_trees, ingest_stream, reconcile_table2,
    run_survey, RunOptions, Source, SurveyFilter, SurveyReport,
};
use crate::tensor::{bald_seed, bipartite_split, family_generator, product_charpoly, tensor_product};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(name = "palgraph", version, about = "Palindromic characteristic polynomials of graphs")]
pub struct Cli {
    /// Output format; defaults to text on a terminal and json otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Characteristic polynomial coefficients, leading first.
    Charpoly { input: Option<PathBuf> },
    /// Palindromic class of each graph.
    Classify {
        input: Option<PathBuf>,
        /// Print one survey report over all input graphs instead.
        #[arg(long)]
        tally: bool,
        /// With --tally, skip disconnected graphs.
        #[arg(long, requires = "tally")]
        connected_only: bool,
        /// With --tally, skip graphs with a triangle.
        #[arg(long, requires = "tally")]
        triangle_free: bool,
    },
    /// Attach k pendant vertices to every vertex.
    Hair {
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        k: u32,
        input: Option<PathBuf>,
    },
    /// Recognize hairings and print the core graph or an obstruction.
    Dehair { input: Option<PathBuf> },
    /// Kronecker product of two graphs and its bipartite split.
    Tensor { left: String, right: String },
    /// Graph6 lines of every class of the given order, in canonical form.
    Enumerate {
        #[arg(long)]
        n: usize,
        #[arg(long, conflicts_with = "trees")]
        connected_only: bool,
        #[arg(long)]
        trees: bool,
        #[arg(long, env = "PALGRAPH_WORKERS")]
        workers: Option<usize>,
    },
    /// Classify every graph of one order.
    Survey {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        connected_only: bool,
        #[arg(long)]
        triangle_free: bool,
        /// Read graph6 lines from a file ("-" for stdin) instead of generating.
        #[arg(long, conflicts_with_all = ["resume", "checkpoint"])]
        input: Option<PathBuf>,
        #[arg(long, requires = "checkpoint")]
        resume: bool,
        #[arg(long)]
        checkpoint: Option<PathBuf>,
        #[arg(long, env = "PALGRAPH_WORKERS")]
        workers: Option<usize>,
    },
    /// Run the invariant suite; exits nonzero on any failure.
    Verify,
    /// Compare derived tallies with the published results table.
    Reconcile {
        /// Also survey order 10 (hours).
        #[arg(long)]
        with_order_10: bool,
        #[arg(long, env = "PALGRAPH_WORKERS")]
        workers: Option<usize>,
    },
    /// Emit palindromic family members built from a seed and trees.
    Family {
        /// Seed graph in graph6; defaults to a bald 8-vertex seed.
        #[arg(long)]
        seed: Option<String>,
        /// Number of members to emit.
        #[arg(long, default_value_t = 3)]
        count: usize,
        /// Write the JSON sidecar here.
        #[arg(long)]
        sidecar: Option<PathBuf>,
    },
}

pub struct Io<'a> {
    pub stdin: &'a mut dyn BufRead,
    pub stdout: &'a mut dyn Write,
    pub stderr: &'a mut dyn Write,
    pub stdout_is_terminal: bool,
}

/// Parses `argv` and runs the command. Returns 0 on success, 1 on a domain
/// error and 2 on a usage error.
pub fn run<I, T>(argv: I, io: &mut Io<'_>) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let usage = e.use_stderr();
            let rendered = e.render().to_string();
            if usage {
                let _ = write!(io.stderr, "{rendered}");
                return 2;
            }
            let _ = write!(io.stdout, "{rendered}");
            return 0;
        }
    };
    let format = cli
        .format
        .unwrap_or(if io.stdout_is_terminal { Format::Text } else { Format::Json });
    match execute(cli.command, format, io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.stderr, "error: {e}");
            1
        }
    }
}

fn open_input<'a>(path: &Option<PathBuf>, stdin: &'a mut dyn BufRead) -> Result<Box<dyn BufRead + 'a>> {
    match path {
        Some(p) if p.as_os_str() != "-" => Ok(Box::new(BufReader::new(File::open(p)?))),
        _ => Ok(Box::new(stdin)),
    }
}

/// Applies `f` to each graph6 line; parse failures go to stderr and make
/// the final exit code 1 without stopping the stream.
fn per_graph(
    input: &Option<PathBuf>,
    io: &mut Io<'_>,
    mut f: impl FnMut(&str, &Graph, &mut dyn Write) -> Result<()>,
) -> Result<i32> {
    let reader = open_input(input, io.stdin)?;
    let mut failed = false;
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let text = line.trim();
        if text.is_empty() {
            continue;
        }
        match parse_graph6(text).map_err(Error::from).and_then(|g| f(text, &g, io.stdout)) {
            Ok(()) => {}
            Err(e) => {
                failed = true;
                writeln!(io.stderr, "line {}: {e}", i + 1)?;
            }
        }
    }
    Ok(i32::from(failed))
}

fn worker_options(workers: Option<usize>) -> RunOptions {
    RunOptions {
        workers,
        ..RunOptions::default()
    }
}

fn with_pool<T: Send>(workers: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    let mut b = rayon::ThreadPoolBuilder::new();
    if let Some(w) = workers {
        b = b.num_threads(w.max(1));
    }
    let pool = b.build().map_err(|e| Error::Io(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn write_report(report: &SurveyReport, format: Format, out: &mut dyn Write) -> Result<()> {
    match format {
        Format::Text => write!(out, "{}", report.to_text())?,
        Format::Json => writeln!(out, "{}", report.to_json())?,
        Format::Csv => {
            writeln!(out, "order,population,graphs,subset,palindromic,antipalindromic,absolute_inclusive,absolute_exclusive")?;
            for (name, c) in [
                ("all", &report.counts),
                ("hairings", &report.hairings),
                ("trees", &report.trees),
                ("bald", &report.bald),
            ] {
                writeln!(
                    out,
                    "{},{},{},{name},{},{},{},{}",
                    report.filter.order,
                    report.filter.population(),
                    report.graphs,
                    c.palindromic,
                    c.antipalindromic,
                    c.absolute_inclusive,
                    c.absolute_exclusive
                )?;
            }
        }
    }
    Ok(())
}

fn execute(command: Command, format: Format, io: &mut Io<'_>) -> Result<i32> {
    match command {
        Command::Charpoly { input } => per_graph(&input, io, |code, g, out| {
            let p = char_poly(g)?;
            let coeffs = p.to_decimal_strings();
            match format {
                Format::Text => writeln!(out, "{}", coeffs.join(" "))?,
                Format::Json => writeln!(out, "{}", json!({ "graph6": code, "coefficients": coeffs }))?,
                Format::Csv => writeln!(out, "{code},{}", coeffs.join(" "))?,
            }
            Ok(())
        }),
        Command::Classify { input, tally: false, .. } => per_graph(&input, io, |code, g, out| {
            let p = char_poly(g)?;
            let class = classify(&p)?;
            match format {
                Format::Text => writeln!(out, "{class}")?,
                Format::Json => writeln!(
                    out,
                    "{}",
                    json!({
                        "graph6": code,
                        "class": class.label(),
                        "absolute": class.absolute,
                        "coefficients": p.to_decimal_strings(),
                    })
                )?,
                Format::Csv => writeln!(out, "{code},{class}")?,
            }
            Ok(())
        }),
        Command::Classify {
            input,
            tally: true,
            connected_only,
            triangle_free,
        } => {
            let reader = open_input(&input, io.stdin)?;
            // the tally takes its order from the first graph
            let lines: Vec<String> = reader.lines().collect::<std::io::Result<_>>()?;
            let first = lines.iter().find_map(|l| parse_graph6(l.trim()).ok());
            let order = first.map_or(0, |g| g.order());
            let filter = SurveyFilter {
                order,
                connected_only,
                triangle_free,
                source: Source::Graph6Stream,
            };
            let ingested = ingest_stream(lines.join("\n").as_bytes(), &filter, false);
            for e in &ingested.errors {
                writeln!(io.stderr, "line {}: {}", e.line, e.message)?;
            }
            if ingested.filtered > 0 {
                writeln!(io.stderr, "{} graphs rejected by the filter", ingested.filtered)?;
            }
            let report = classify_survey(&ingested.graphs, filter);
            write_report(&report, format, io.stdout)?;
            Ok(i32::from(!ingested.errors.is_empty()))
        }
        Command::Hair { k, input } => per_graph(&input, io, |_, g, out| {
            writeln!(out, "{}", write_graph6(&hair_k(g, k as usize))?)?;
            Ok(())
        }),
        Command::Dehair { input } => per_graph(&input, io, |code, g, out| {
            let outcome = dehair(g);
            match (&outcome, format) {
                (Dehair::Hairing(c), Format::Text) => writeln!(out, "{}", write_graph6(&c.core_graph)?)?,
                (Dehair::NotAHairing(why), Format::Text) => writeln!(out, "not a hairing: {why}")?,
                (Dehair::Hairing(c), Format::Json) => writeln!(
                    out,
                    "{}",
                    json!({
                        "graph6": code,
                        "hairing": true,
                        "core": write_graph6(&c.core_graph)?,
                        "core_vertices": c.core,
                        "hairs": c.hair_of,
                    })
                )?,
                (Dehair::NotAHairing(why), Format::Json) => writeln!(
                    out,
                    "{}",
                    json!({ "graph6": code, "hairing": false, "obstruction": why })
                )?,
                (Dehair::Hairing(c), Format::Csv) => writeln!(out, "{code},true,{}", write_graph6(&c.core_graph)?)?,
                (Dehair::NotAHairing(why), Format::Csv) => writeln!(out, "{code},false,{why}")?,
            }
            Ok(())
        }),
        Command::Tensor { left, right } => {
            let a = parse_graph6(&left)?;
            let b = parse_graph6(&right)?;
            let product = tensor_product(&a, &b);
            let code = write_graph6(&product)?;
            let poly = product_charpoly(&char_poly(&a)?, &char_poly(&b)?)?;
            let split = bipartite_split(&a, &b);
            let mut components = Vec::new();
            if let Ok(s) = &split {
                for c in [&s.even_component, &s.odd_component] {
                    components.push(json!({
                        "graph6": write_graph6(&c.graph)?,
                        "class": c.class.map(|k| k.label()),
                        "vertices": c.vertices,
                        "hairing": dehair(&c.graph).is_hairing(),
                    }));
                }
            }
            let class = classify(&poly)?;
            match format {
                Format::Text | Format::Csv => {
                    writeln!(io.stdout, "{code}")?;
                    writeln!(io.stdout, "{} {class}", poly.to_decimal_strings().join(" "))?;
                    match &split {
                        Ok(_) => {
                            for c in &components {
                                writeln!(
                                    io.stdout,
                                    "{} {}",
                                    c["graph6"].as_str().unwrap_or(""),
                                    c["class"].as_str().unwrap_or("-")
                                )?;
                            }
                        }
                        Err(e) => writeln!(io.stdout, "no bipartite split: {e}")?,
                    }
                }
                Format::Json => writeln!(
                    io.stdout,
                    "{}",
                    serde_json::to_string_pretty(&json!({
                        "product": code,
                        "coefficients": poly.to_decimal_strings(),
                        "class": class.label(),
                        "components": components,
                        "split_error": split.as_ref().err().map(|e| e.to_string()),
                    }))
                    .expect("json")
                )?,
            }
            Ok(0)
        }
        Command::Enumerate {
            n,
            connected_only,
            trees,
            workers,
        } => {
            let graphs = with_pool(workers, || {
                if trees {
                    enumerate_trees(n)
                } else if connected_only {
                    enumerate_connected(n)
                } else {
                    enumerate_all(n)
                }
            })??;
            for g in &graphs {
                writeln!(io.stdout, "{}", write_graph6(g)?)?;
            }
            Ok(0)
        }
        Command::Survey {
            n,
            connected_only,
            triangle_free,
            input,
            resume,
            checkpoint,
            workers,
        } => {
            let mut filter = SurveyFilter::builtin(n, connected_only);
            filter.triangle_free = triangle_free;
            let report = if input.is_some() {
                filter.source = Source::Graph6Stream;
                let reader = open_input(&input, io.stdin)?;
                let ingested = ingest_stream(reader, &filter, true);
                for e in &ingested.errors {
                    writeln!(io.stderr, "line {}: {}", e.line, e.message)?;
                }
                with_pool(workers, || classify_survey(&ingested.graphs, filter))?
            } else {
                let opts = RunOptions {
                    checkpoint,
                    resume,
                    ..worker_options(workers)
                };
                run_survey(&filter, &opts)?
            };
            write_report(&report, format, io.stdout)?;
            Ok(i32::from(!report.violations.is_empty()))
        }
        Command::Verify => {
            let checks = crate::verify::run_all()?;
            let failed = checks.iter().any(|c| !c.passed);
            match format {
                Format::Json => writeln!(io.stdout, "{}", serde_json::to_string_pretty(&checks).expect("json"))?,
                Format::Text | Format::Csv => {
                    for c in &checks {
                        let status = if c.passed { "PASS" } else { "FAIL" };
                        write!(io.stdout, "{status} {} ({} cases)", c.name, c.cases)?;
                        if let Some(x) = &c.counterexample {
                            write!(io.stdout, " counterexample {x}")?;
                        }
                        writeln!(io.stdout)?;
                    }
                }
            }
            Ok(i32::from(failed))
        }
        Command::Reconcile { with_order_10, workers } => {
            let mut orders = vec![2, 4, 6, 8];
            if with_order_10 {
                orders.push(10);
            }
            let opts = worker_options(workers);
            let mut reports = Vec::new();
            for &n in &orders {
                for connected_only in [true, false] {
                    reports.push(run_survey(&SurveyFilter::builtin(n, connected_only), &opts)?);
                }
            }
            let mut tf = SurveyFilter::builtin(8, true);
            tf.triangle_free = true;
            reports.push(run_survey(&tf, &opts)?);
            let doc = reconcile_table2(&reports)?;
            match format {
                Format::Json => writeln!(io.stdout, "{}", doc.to_json())?,
                Format::Text | Format::Csv => write!(io.stdout, "{}", doc.to_text())?,
            }
            Ok(i32::from(!doc.violations.is_empty()))
        }
        Command::Family { seed, count, sidecar } => {
            let seed = match seed {
                Some(code) => parse_graph6(&code)?,
                None => bald_seed(),
            };
            let trees = family_trees();
            let mut members = Vec::new();
            for m in family_generator(seed, trees, count)? {
                let m = m?;
                match format {
                    Format::Json => writeln!(io.stdout, "{}", serde_json::to_string(&m).expect("json"))?,
                    Format::Text | Format::Csv => writeln!(io.stdout, "{}", m.graph6)?,
                }
                members.push(m);
            }
            if let Some(path) = sidecar {
                std::fs::write(path, serde_json::to_string_pretty(&members).expect("json") + "\n")?;
            }
            Ok(0)
        }
    }
}

/// `P4`, then hairings of the trees of orders 3, 4, 5, ... in canonical
/// order: every one is (anti)palindromic.
pub fn family_trees() -> impl Iterator<Item = Graph> {
    std::iter::once(Graph::path(4)).chain((3..=crate::survey::generate::TREE_LIMIT).flat_map(|k| {
        enumerate_trees(k)
            .unwrap_or_default()
            .into_iter()
            .map(|t| {
                let h = hair_k(&t, 1);
                canonical_form(&h).map(|c| c.graph(&h)).unwrap_or(h)
            })
    }))
}
