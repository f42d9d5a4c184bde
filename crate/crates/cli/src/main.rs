//! `req2uml` — transforms natural-language requirement texts into a UML
//! class model via a staged annotation pipeline.
//!
//! Exit codes: 0 success, 1 input or resource error, 2 rule syntax error.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use req2uml_cli::runner;
use req2uml_core::{ControlMode, DiagramDialect, ResourceError, RuleParseError};

#[derive(Parser)]
#[command(
    name = "req2uml",
    version,
    about = "Extracts a UML class model from requirement texts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum DialectArg {
    Plantuml,
    Mermaid,
}

impl From<DialectArg> for DiagramDialect {
    fn from(value: DialectArg) -> Self {
        match value {
            DialectArg::Plantuml => DiagramDialect::PlantUml,
            DialectArg::Mermaid => DiagramDialect::Mermaid,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ControlArg {
    Appelt,
    All,
    First,
}

impl From<ControlArg> for ControlMode {
    fn from(value: ControlArg) -> Self {
        match value {
            ControlArg::Appelt => ControlMode::Appelt,
            ControlArg::All => ControlMode::All,
            ControlArg::First => ControlMode::First,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Annotate inputs and write annotated XML, model XML, and diagram source
    Run {
        /// Resource root (lexicon, gazetteer, rules, determiners)
        #[arg(long, env = "REQ2UML_RESOURCES")]
        resources: PathBuf,
        /// Output directory
        #[arg(long)]
        out: PathBuf,
        /// Diagram language for the emitted source
        #[arg(long, value_enum, default_value = "plantuml")]
        dialect: DialectArg,
        /// Override the control mode of every rule phase
        #[arg(long, value_enum)]
        control: Option<ControlArg>,
        /// Input files or directories of *.txt files
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Score pipeline output against gold annotation files
    Eval {
        #[arg(long, env = "REQ2UML_RESOURCES")]
        resources: PathBuf,
        /// Directory of `<input stem>.gold.tsv` files
        #[arg(long)]
        gold: PathBuf,
        /// Where to write the machine-readable report
        #[arg(long, default_value = "eval-report.json")]
        report: PathBuf,
        #[arg(long, value_enum)]
        control: Option<ControlArg>,
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Parse a rule file and report its structure
    CheckRules { file: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(exit_code_for(&err))
        }
    }
}

fn exit_code_for(err: &anyhow::Error) -> u8 {
    let rule_syntax = err
        .downcast_ref::<ResourceError>()
        .map(ResourceError::is_rule_syntax)
        .unwrap_or(false)
        || err.downcast_ref::<RuleParseError>().is_some();
    if rule_syntax {
        2
    } else {
        1
    }
}

fn dispatch(command: Command) -> Result<()> {
    match command {
        Command::Run {
            resources,
            out,
            dialect,
            control,
            inputs,
        } => {
            let resources = runner::load_resources(&resources, control.map(Into::into))?;
            let inputs = runner::collect_inputs(&inputs)?;
            runner::run(&resources, &inputs, &out, dialect.into())?;
            Ok(())
        }
        Command::Eval {
            resources,
            gold,
            report,
            control,
            inputs,
        } => {
            let resources = runner::load_resources(&resources, control.map(Into::into))?;
            let inputs = runner::collect_inputs(&inputs)?;
            let eval = runner::evaluate(&resources, &inputs, &gold)?;
            print!("{}", eval.table());
            for skipped in &eval.skipped {
                eprintln!("skipped (no gold file): {skipped}");
            }
            std::fs::write(&report, eval.to_json())
                .with_context(|| format!("writing report {}", report.display()))?;
            println!("report written to {}", report.display());
            Ok(())
        }
        Command::CheckRules { file } => {
            let source = std::fs::read_to_string(&file)
                .with_context(|| format!("reading rule file {}", file.display()))?;
            let phase = req2uml_core::parse_rule_file(&source)
                .map_err(|e| anyhow::Error::new(e).context(file.display().to_string()))?;
            println!(
                "{}: phase {} (control {}, {} rule{}, input: {})",
                file.display(),
                phase.name,
                phase.control,
                phase.rules.len(),
                if phase.rules.len() == 1 { "" } else { "s" },
                phase
                    .input_types
                    .iter()
                    .cloned()
                    .collect::<Vec<_>>()
                    .join(" ")
            );
            Ok(())
        }
    }
}
