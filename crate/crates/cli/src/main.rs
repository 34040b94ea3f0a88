//! Command-line front end: parse a JSON job naming an ambient group and
//! subgroup generators, dispatch to the structural criteria, the definition
//! oracles, or the reductions, and emit a deterministic JSON report.
//!
//! Exit codes: 0 means pronormal or a true predicate, 1 means not pronormal
//! or a false predicate, 2 means the input was inapplicable or an error
//! occurred. Reports are byte-identical across runs on identical input, so
//! timings go to standard error only.

mod commands;
mod input;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::Result;
use clap::{Parser, Subcommand};
use serde_json::{Map, Value};

use pronormal::group::DEFAULT_SUBGROUP_BUDGET;

const DEFAULT_SCAN_BUDGET: usize = 1 << 17;

#[derive(Parser)]
#[command(
    name = "pronormal",
    about = "Decide pronormality of odd-index subgroups in products of wreath factors"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Element budget for definition scans, or subgroup-count budget for
    /// enumeration commands.
    #[arg(long, global = true)]
    budget: Option<usize>,

    /// Write the JSON report to this path instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    json: Option<PathBuf>,

    /// Suppress the human-readable summary on standard error.
    #[arg(long, global = true)]
    quiet: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Decide pronormality by the structural factor criterion.
    Decide { input: Option<PathBuf> },
    /// Settle pronormality from the definition by brute force.
    Oracle { input: Option<PathBuf> },
    /// Run decide and oracle on the same input and insist they agree.
    Crosscheck { input: Option<PathBuf> },
    /// Collapse an instance to a smaller one through the normalizer of the
    /// Sylow overlap with a normal subgroup.
    Reduce { input: Option<PathBuf> },
    /// List the odd-index overgroups of a fixed Sylow 2-subgroup.
    Enumerate { input: Option<PathBuf> },
    /// Evaluate the full-scale product predicate on symplectic shapes.
    Classify { input: Option<PathBuf> },
    /// Walk the matrix wreath product demo end to end.
    Example1,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Decide { .. } => "decide",
            Command::Oracle { .. } => "oracle",
            Command::Crosscheck { .. } => "crosscheck",
            Command::Reduce { .. } => "reduce",
            Command::Enumerate { .. } => "enumerate",
            Command::Classify { .. } => "classify",
            Command::Example1 => "example1",
        }
    }

    fn input_path(&self) -> Option<&PathBuf> {
        match self {
            Command::Decide { input }
            | Command::Oracle { input }
            | Command::Crosscheck { input }
            | Command::Reduce { input }
            | Command::Enumerate { input }
            | Command::Classify { input } => input.as_ref(),
            Command::Example1 => None,
        }
    }
}

fn run(cli: &Cli) -> Result<(Value, commands::Outcome)> {
    let scan_budget = cli.budget.unwrap_or(DEFAULT_SCAN_BUDGET);
    let subgroup_budget = cli.budget.unwrap_or(DEFAULT_SUBGROUP_BUDGET);
    match &cli.command {
        Command::Example1 => Ok((
            Value::Null,
            commands::example_walkthrough(subgroup_budget)?,
        )),
        Command::Classify { .. } => {
            let job = input::read_job(cli.command.input_path().map(|p| p.as_path()))?;
            let outcome = commands::classify(&job)?;
            Ok((job, outcome))
        }
        other => {
            let job = input::read_job(other.input_path().map(|p| p.as_path()))?;
            let ambient = input::parse_ambient(&job)?;
            let outcome = match other {
                Command::Decide { .. } => commands::decide(&job, &ambient, scan_budget)?,
                Command::Oracle { .. } => commands::oracle_command(&job, &ambient, scan_budget)?,
                Command::Crosscheck { .. } => commands::crosscheck(&job, &ambient, scan_budget)?,
                Command::Reduce { .. } => commands::reduce(&job, &ambient, scan_budget)?,
                Command::Enumerate { .. } => {
                    commands::enumerate(&job, &ambient, subgroup_budget)?
                }
                Command::Classify { .. } | Command::Example1 => unreachable!(),
            };
            Ok((job, outcome))
        }
    }
}

fn emit(cli: &Cli, report: &Value) -> Result<()> {
    let text = format!("{}\n", serde_json::to_string_pretty(report)?);
    match &cli.json {
        Some(path) => std::fs::write(path, text)?,
        None => print!("{text}"),
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let started = Instant::now();
    let mut report = Map::new();
    report.insert("command".into(), Value::String(cli.command.name().into()));
    if let Some(budget) = cli.budget {
        report.insert("budget".into(), Value::from(budget as u64));
    }
    let exit = match run(&cli) {
        Ok((job, outcome)) => {
            if !job.is_null() {
                report.insert("input".into(), job);
            }
            report.extend(outcome.fields);
            outcome.exit
        }
        Err(e) => {
            report.insert("error".into(), Value::String(format!("{e:#}")));
            if !cli.quiet {
                eprintln!("error: {e:#}");
            }
            2
        }
    };
    let report = Value::Object(report);
    if let Err(e) = emit(&cli, &report) {
        eprintln!("error: cannot write the report: {e:#}");
        return ExitCode::from(2);
    }
    if !cli.quiet {
        let verdict = report
            .get("verdict")
            .or_else(|| report.get("predicate"))
            .map(|v| format!("{v}"))
            .unwrap_or_else(|| "done".into());
        eprintln!(
            "{}: {} in {:.3}s (exit {})",
            cli.command.name(),
            verdict.trim_matches('"'),
            started.elapsed().as_secs_f64(),
            exit
        );
    }
    ExitCode::from(exit)
}
