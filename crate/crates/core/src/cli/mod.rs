//! File-driven front end: `cohomoforge <command> <input.json> [flags]`.
//!
//! Exit codes are 0 when every check passes, 1 when a check fails and 2 on
//! input errors (unreadable or invalid documents, unknown commands, budget
//! overruns).

mod commands;
pub mod document;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::Parser;
use thiserror::Error;

use crate::limits::Limits;

pub use document::{emit, parse_input, parse_str, InputDocument, Payload, SCHEMA};
pub use report::{Entry, Overall, RunReport, Status};

pub const COMMANDS: &[&str] = &[
    "cohomology",
    "h1",
    "inf-res",
    "les",
    "vanishing",
    "frattini",
    "maschke",
    "schur",
    "lie-cohomology",
    "lie-h1",
    "lie-inf-res",
    "lie-six-term",
    "lie-restricted",
    "lie-theorems",
    "suite",
    "emit",
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CliError {
    #[error("cannot read input: {0}")]
    Io(String),
    #[error("schema error at line {line}: {field}")]
    Schema { line: usize, field: String },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("unknown command \"{0}\"")]
    UnknownCommand(String),
    #[error("command {command} does not accept a {kind} document")]
    WrongKind { command: String, kind: String },
    #[error("budget exceeded: {0}")]
    Budget(String),
}

#[derive(Parser, Debug, Clone)]
#[command(name = "cohomoforge", version, about = "Exact low-degree cohomology of finite groups and Lie rings")]
pub struct Args {
    /// One of cohomology, h1, inf-res, les, vanishing, frattini, maschke,
    /// schur, lie-cohomology, lie-h1, lie-inf-res, lie-six-term,
    /// lie-restricted, lie-theorems, suite, emit.
    pub command: String,
    pub input: PathBuf,
    /// Print the report as JSON.
    #[arg(long)]
    pub json: bool,
    #[arg(long)]
    pub degree: Option<usize>,
    #[arg(long, env = "COHOMOFORGE_ORDER_CAP")]
    pub order_cap: Option<usize>,
    #[arg(long, env = "COHOMOFORGE_DEGREE_CAP")]
    pub degree_cap: Option<usize>,
    #[arg(long, env = "COHOMOFORGE_SIZE_BUDGET")]
    pub size_budget: Option<usize>,
    /// Catalog for `suite`.
    #[arg(long)]
    pub catalog: Option<String>,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub limits: Limits,
    pub degree: Option<usize>,
    pub catalog: Option<String>,
}

impl Options {
    pub fn from_args(args: &Args) -> Options {
        let mut limits = Limits::from_env();
        if let Some(v) = args.order_cap {
            limits.order_cap = v;
        }
        if let Some(v) = args.degree_cap {
            limits.degree_cap = v;
        }
        if let Some(v) = args.size_budget {
            limits.size_budget = v;
        }
        Options {
            limits,
            degree: args.degree,
            catalog: args.catalog.clone(),
        }
    }
}

impl Default for Options {
    fn default() -> Self {
        Options {
            limits: Limits::default(),
            degree: None,
            catalog: None,
        }
    }
}

/// Runs one command on a parsed document.
pub fn run_command(doc: &InputDocument, command: &str, input: &str, opts: &Options) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let entries = commands::run(command, doc, opts)?;
    Ok(RunReport::new(command, input, entries, start.elapsed().as_millis() as u64))
}

pub fn exit_code(report: &RunReport) -> i32 {
    if report.passed() {
        0
    } else {
        1
    }
}

/// Entry point behind the binary. Reports go to stdout, diagnostics to
/// stderr.
pub fn main_with_args(args: Args) -> i32 {
    let opts = Options::from_args(&args);
    if !COMMANDS.contains(&args.command.as_str()) {
        eprintln!("error: {}", CliError::UnknownCommand(args.command.clone()));
        return 2;
    }
    let doc = match parse_input(&args.input, &opts.limits) {
        Ok(d) => d,
        Err(e) => {
            eprintln!("error: {e}");
            return 2;
        }
    };
    if args.command == "emit" {
        print!("{}", emit(&doc));
        return 0;
    }
    let input = args.input.display().to_string();
    match run_command(&doc, &args.command, &input, &opts) {
        Ok(report) => {
            if args.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.render_text());
            }
            exit_code(&report)
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
