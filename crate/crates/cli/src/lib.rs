//! Command-line front end: `validate`, `transform` and `corpus-check`.
//!
//! Reports are JSON with a fixed field order and exact number strings, so
//! the same input always produces the same bytes. Exit status is 0 on
//! success, 1 on a domain failure and 2 on unreadable or malformed input.

pub mod corpus;
pub mod report;

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;

pub use corpus::corpus_check;
pub use report::{run_connection, run_document, Mode, Outcome, RunReport, Stage};

#[derive(Debug, Parser)]
#[command(name = "minlap", version, about = "Exact minimal Laplace transform of parabolic connections")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check resonance-freeness and admissibility.
    Validate {
        /// A connection document or a directory of them.
        path: PathBuf,
        /// Write the report here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Predict and compute the transform of a document or a directory of
    /// documents.
    Transform(TransformArgs),
    /// Recompute every fixture's report and diff it against the goldens.
    CorpusCheck {
        dir: PathBuf,
        /// Rewrite the golden reports instead of comparing.
        #[arg(long)]
        bless: bool,
    },
}

#[derive(Debug, Args)]
pub struct TransformArgs {
    /// A connection document or a directory of them.
    pub path: PathBuf,
    /// Stationary-phase prediction only; no cokernel computation.
    #[arg(long, conflicts_with = "full")]
    pub predict_only: bool,
    /// Include the entries of X(ξ).
    #[arg(long)]
    pub full: bool,
    /// Append the round trip through the inverse transform.
    #[arg(long)]
    pub involution: bool,
    /// Report wall-clock time per stage.
    #[arg(long)]
    pub timing: bool,
    /// Write the report here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

impl TransformArgs {
    fn mode(&self) -> Mode {
        Mode {
            stage: if self.predict_only { Stage::Predict } else { Stage::Transform },
            full: self.full,
            involution: self.involution,
            timing: self.timing,
        }
    }
}

/// Runs `mode` on one file or on every `*.json` in a directory. A
/// directory yields a JSON array in file-name order.
fn run_path(path: &Path, mode: Mode, err: &mut dyn Write) -> (String, Outcome) {
    if path.is_dir() {
        let paths = match corpus::fixtures(path) {
            Ok(p) => p,
            Err(e) => {
                let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
                return (String::new(), Outcome::Input);
            }
        };
        if paths.is_empty() {
            let _ = writeln!(err, "warning: no documents in {}", path.display());
        }
        let results: Vec<(RunReport, Outcome)> = paths
            .par_iter()
            .map(|p| {
                let name = corpus::display_name(p);
                let text = fs::read_to_string(p).unwrap_or_default();
                run_document(&name, &text, mode).unwrap_or_else(|message| {
                    (report::error_report(&name, &text, message), Outcome::Input)
                })
            })
            .collect();
        let outcome = results.iter().map(|(_, o)| *o).max().unwrap_or(Outcome::Pass);
        for (r, _) in &results {
            if let Some(e) = r.error.as_ref().filter(|_| r.verdict == "error") {
                let _ = writeln!(err, "{e}");
            }
        }
        let reports: Vec<&RunReport> = results.iter().map(|(r, _)| r).collect();
        let mut text = serde_json::to_string_pretty(&reports).expect("reports serialize");
        text.push('\n');
        return (text, outcome);
    }

    let name = corpus::display_name(path);
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {}: {e}", path.display());
            return (String::new(), Outcome::Input);
        }
    };
    match run_document(&name, &text, mode) {
        Ok((report, outcome)) => (report.to_json(), outcome),
        Err(message) => {
            let _ = writeln!(err, "error: {message}");
            (String::new(), Outcome::Input)
        }
    }
}

fn emit(text: &str, target: Option<&Path>, out: &mut dyn Write, err: &mut dyn Write) -> bool {
    if text.is_empty() {
        return true;
    }
    match target {
        Some(p) => match fs::write(p, text) {
            Ok(()) => true,
            Err(e) => {
                let _ = writeln!(err, "error: cannot write {}: {e}", p.display());
                false
            }
        },
        None => out.write_all(text.as_bytes()).is_ok(),
    }
}

/// Executes a parsed command line and returns the process exit status.
pub fn run(cli: Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let (text, outcome, target) = match &cli.command {
        Command::Validate { path, out: target } => {
            let (text, outcome) = run_path(path, Mode::validate(), err);
            (text, outcome, target.clone())
        }
        Command::Transform(args) => {
            let (text, outcome) = run_path(&args.path, args.mode(), err);
            (text, outcome, args.out.clone())
        }
        Command::CorpusCheck { dir, bless } => {
            return corpus_check(dir, *bless, out, err).code();
        }
    };
    if !emit(&text, target.as_deref(), out, err) {
        return Outcome::Input.code();
    }
    outcome.code()
}
