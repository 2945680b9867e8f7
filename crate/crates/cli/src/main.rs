use std::fs;
use std::path::{Path as FsPath, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use grism_core::branching::BranchingSystem;
use grism_core::eval::{EvalError, Evaluator};
use grism_core::lenz::{EquivFailure, Lenz, DEFAULT_MAX_ARROW_DEPTH};
use grism_core::props::{run_suite, PropsOptions, Suite, SuiteReport, SCHEMA_VERSION};
use grism_core::{DirectedGraph, OrthoSet};

const EXIT_OK: u8 = 0;
const EXIT_CHECK_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(name = "grism", version, about = "Graph inverse semigroups and their Cuntz-Krieger completions")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Args)]
struct Common {
    /// Path length bound used by the property suites.
    #[arg(long, global = true, default_value_t = 2)]
    depth: usize,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Cap on the extension depth explored by one arrow search.
    #[arg(long, global = true, default_value_t = DEFAULT_MAX_ARROW_DEPTH)]
    max_arrow_depth: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate an expression and print the normalized result.
    Eval { graph: PathBuf, expr: String },
    /// Decide whether two orthogonal sets are equivalent. Exits 1 on "no".
    Equiv { graph: PathBuf, left: String, right: String },
    /// Reduce an orthogonal set to its canonical representative.
    Canon { graph: PathBuf, expr: String },
    /// Run a property suite. Exits 1 if any check fails.
    Props {
        graph: PathBuf,
        /// One of gis-laws, lemma-1-7, lemma-2-9, lemma-3-8, thm-3-13,
        /// thm-3-20, ck-laws, bratteli, branching.
        suite: String,
        /// Branching-system file for the branching suite.
        #[arg(long)]
        system: Option<PathBuf>,
    },
}

/// A failure that maps to exit code 2.
struct UsageError(String);

impl<E: std::fmt::Display> From<E> for UsageError {
    fn from(e: E) -> Self {
        UsageError(e.to_string())
    }
}

fn load_graph(path: &FsPath) -> Result<DirectedGraph, UsageError> {
    let text = fs::read_to_string(path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
    DirectedGraph::parse(&text).map_err(|e| UsageError(format!("{}: {e}", path.display())))
}

#[derive(Serialize)]
struct ValueReport<'a> {
    schema: u32,
    command: &'a str,
    result: String,
}

#[derive(Serialize)]
struct EquivReport {
    schema: u32,
    command: &'static str,
    equivalent: bool,
    /// Which arrow failed: "left-to-right" or "right-to-left".
    direction: Option<&'static str>,
    source: Option<String>,
    witness_path: Option<String>,
    witness_element: Option<String>,
}

fn print_json<T: Serialize>(value: &T) {
    println!("{}", serde_json::to_string_pretty(value).expect("reports serialize"));
}

fn as_set(ev: &Evaluator<'_>, src: &str) -> Result<OrthoSet, EvalError> {
    Ok(ev.eval_str(src)?.to_set())
}

fn run(cli: Cli) -> Result<u8, UsageError> {
    let common = &cli.common;
    match cli.command {
        Command::Eval { graph, expr } => {
            let g = load_graph(&graph)?;
            let ev = Evaluator::new(&g).with_max_arrow_depth(common.max_arrow_depth);
            let value = ev.eval_str(&expr)?;
            let shown = value.display(&g).to_string();
            match common.format {
                Format::Text => println!("{shown}"),
                Format::Json => print_json(&ValueReport {
                    schema: SCHEMA_VERSION,
                    command: "eval",
                    result: shown,
                }),
            }
            Ok(EXIT_OK)
        }
        Command::Canon { graph, expr } => {
            let g = load_graph(&graph)?;
            let ev = Evaluator::new(&g).with_max_arrow_depth(common.max_arrow_depth);
            let set = as_set(&ev, &expr)?;
            let reduced = Lenz::new(&g).with_max_depth(common.max_arrow_depth).reduce(&set);
            let shown = reduced.display(&g).to_string();
            match common.format {
                Format::Text => println!("{shown}"),
                Format::Json => print_json(&ValueReport {
                    schema: SCHEMA_VERSION,
                    command: "canon",
                    result: shown,
                }),
            }
            Ok(EXIT_OK)
        }
        Command::Equiv { graph, left, right } => {
            let g = load_graph(&graph)?;
            let ev = Evaluator::new(&g).with_max_arrow_depth(common.max_arrow_depth);
            let a = as_set(&ev, &left)?;
            let b = as_set(&ev, &right)?;
            let lenz = Lenz::new(&g).with_max_depth(common.max_arrow_depth);
            let failure = lenz.bi_arrow_witness(&a, &b)?;
            let mut report = EquivReport {
                schema: SCHEMA_VERSION,
                command: "equiv",
                equivalent: failure.is_none(),
                direction: None,
                source: None,
                witness_path: None,
                witness_element: None,
            };
            let mut explanation = None;
            if let Some(f) = &failure {
                let (dir, arrow, target) = match f {
                    EquivFailure::LeftToRight(x) => ("left-to-right", x, &b),
                    EquivFailure::RightToLeft(x) => ("right-to-left", x, &a),
                };
                let witness = arrow.witness_element();
                report.direction = Some(dir);
                report.source = Some(arrow.source.display(&g).to_string());
                report.witness_path = Some(g.display_path(&arrow.path).to_string());
                report.witness_element = Some(witness.display(&g).to_string());
                explanation = Some(format!(
                    "  {} -> {} fails: {} meets no member of the target",
                    arrow.source.display(&g),
                    target.display(&g),
                    witness.display(&g)
                ));
            }
            match common.format {
                Format::Text => match (&report.witness_path, explanation) {
                    (Some(p), Some(why)) => {
                        println!("no");
                        println!("witness: {p}");
                        println!("{why}");
                    }
                    _ => println!("yes"),
                },
                Format::Json => print_json(&report),
            }
            Ok(if report.equivalent { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
        Command::Props { graph, suite, system } => {
            let g = load_graph(&graph)?;
            let Some(suite) = Suite::from_name(&suite) else {
                let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
                return Err(UsageError(format!("unknown suite `{suite}`; expected one of {}", names.join(", "))));
            };
            let system = match system {
                Some(path) => {
                    let text = fs::read_to_string(&path).map_err(|e| UsageError(format!("{}: {e}", path.display())))?;
                    Some(BranchingSystem::parse(&g, &text).map_err(|e| UsageError(format!("{}: {e}", path.display())))?)
                }
                None => None,
            };
            let opts = PropsOptions {
                depth: common.depth,
                max_arrow_depth: common.max_arrow_depth,
                system,
            };
            let report = run_suite(&g, suite, &opts);
            match common.format {
                Format::Text => print_text_report(&report),
                Format::Json => print_json(&report),
            }
            Ok(if report.passed { EXIT_OK } else { EXIT_CHECK_FAILED })
        }
    }
}

fn print_text_report(r: &SuiteReport) {
    println!(
        "{} (depth {}, {} vertices, {} edges): {}",
        r.suite.name(),
        r.depth,
        r.vertices,
        r.edges,
        if r.passed { "PASS" } else { "FAIL" }
    );
    println!("  {}", r.suite.summary());
    if let Some(why) = &r.precondition {
        println!("  precondition not met: {why}");
    }
    for f in &r.facts {
        println!("  {}: {}", f.name, f.value);
    }
    for c in &r.checks {
        if c.passed() {
            println!("  ok    {} ({} checked)", c.name, c.checked);
        } else {
            println!("  FAIL  {} ({} of {} failed)", c.name, c.failures, c.checked);
            for e in &c.examples {
                println!("          {e}");
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(UsageError(msg)) => {
            eprintln!("grism: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
