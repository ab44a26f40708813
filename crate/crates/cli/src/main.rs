//! `schemoid-lab`: JSON reports on stdout, diagnostics on stderr.
//!
//! Exit codes: 0 ok, 1 an asserted predicate is false, 2 input error,
//! 3 undecided within the completion caps.

mod commands;
mod fixtures;
mod input;

use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

use commands::{fixture_text, GenKind, Outcome, Predicate, SchemeKind};
use input::{caps_from_env, Digest256, Input, InputError};

#[derive(Parser)]
#[command(
    name = "schemoid-lab",
    version,
    about = "Colored categories, schemoids and their quotients"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure constants, natural coloring and tameness of a colored category
    Analyze {
        /// colored.json, or `-` for stdin
        #[arg(default_value = "-")]
        file: String,
        /// Exit with 1 unless the predicate holds (repeatable)
        #[arg(long = "assert", value_enum)]
        asserts: Vec<Predicate>,
    },
    /// The quotient category by completion of its presentation
    Quotient {
        #[arg(default_value = "-")]
        file: String,
    },
    /// Association schemes
    Scheme {
        #[command(subcommand)]
        command: SchemeCommand,
    },
    /// Cohomology with constant coefficients
    Cohomology {
        #[arg(default_value = "-")]
        file: String,
        /// `Z` or `Z/m`
        #[arg(long, default_value = "Z")]
        coeffs: String,
        /// Highest degree
        #[arg(long, default_value_t = 5)]
        degree: usize,
    },
    /// Write a fixture to stdout
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Sheafification of a set-valued functor on a colored category
    Sheafify { colored: String, functor: String },
    /// Run the acceptance table and compare with committed expectations
    Golden {
        /// Expectations file; defaults to the copy built into the binary
        #[arg(long)]
        expect: Option<String>,
        /// Print the current rows as an expectations file instead
        #[arg(long)]
        emit: bool,
    },
}

#[derive(Subcommand)]
enum SchemeCommand {
    /// Write a scheme.json to stdout
    Gen {
        #[command(subcommand)]
        kind: SchemeKind,
    },
    /// Check the scheme axioms
    Validate {
        #[arg(default_value = "-")]
        file: String,
    },
    /// Quotient group, compared with the thin-residue factor group
    Quo {
        #[arg(default_value = "-")]
        file: String,
    },
    /// The schemoid of a scheme, as colored.json
    Schemoid {
        #[arg(default_value = "-")]
        file: String,
    },
    /// The built-in catalog
    List,
}

#[derive(Serialize)]
struct Report {
    command: Vec<String>,
    inputs: Vec<Digest256>,
    result: Value,
    summary: String,
    exit_code: i32,
}

enum Output {
    Report(Outcome, Vec<Input>),
    Fixture(String),
}

fn with_input(
    path: &str,
    run: impl FnOnce(&Input) -> Result<Outcome, InputError>,
) -> Result<Output, InputError> {
    let input = Input::read(path)?;
    let outcome = run(&input)?;
    Ok(Output::Report(outcome, vec![input]))
}

fn run(cli: Cli) -> Result<Output, InputError> {
    match cli.command {
        Command::Analyze { file, asserts } => with_input(&file, |i| commands::analyze(i, &asserts)),
        Command::Quotient { file } => {
            let caps = caps_from_env()?;
            with_input(&file, |i| commands::quotient(i, caps))
        }
        Command::Cohomology {
            file,
            coeffs,
            degree,
        } => {
            let caps = caps_from_env()?;
            with_input(&file, |i| commands::cohomology(i, &coeffs, degree, caps))
        }
        Command::Scheme { command } => match command {
            SchemeCommand::Gen { kind } => Ok(Output::Fixture(fixture_text(
                &commands::scheme_gen(&kind)?.to_file(),
            ))),
            SchemeCommand::Validate { file } => with_input(&file, commands::scheme_validate),
            SchemeCommand::Quo { file } => {
                let caps = caps_from_env()?;
                with_input(&file, |i| commands::scheme_quo(i, caps))
            }
            SchemeCommand::Schemoid { file } => {
                let input = Input::read(&file)?;
                let a = fixtures::load_scheme(&input)?;
                let text = fixture_text(&schemoid_core::scheme::as_schemoid(&a).to_file());
                Ok(Output::Fixture(text))
            }
            SchemeCommand::List => Ok(Output::Report(commands::scheme_list(), vec![])),
        },
        Command::Gen { kind } => Ok(Output::Fixture(commands::gen(&kind)?)),
        Command::Sheafify { colored, functor } => {
            let caps = caps_from_env()?;
            let c = Input::read(&colored)?;
            let f = Input::read(&functor)?;
            let outcome = commands::sheafify(&c, &f, caps)?;
            Ok(Output::Report(outcome, vec![c, f]))
        }
        Command::Golden { expect, emit } => {
            if emit {
                let rows = schemoid_core::golden::run_all();
                return Ok(Output::Fixture(fixture_text(&rows)));
            }
            let (text, inputs) = match &expect {
                Some(path) => {
                    let input = Input::read(path)?;
                    (
                        String::from_utf8_lossy(&input.bytes).into_owned(),
                        vec![input],
                    )
                }
                None => (commands::EXPECTED_GOLDEN.to_string(), vec![]),
            };
            let (outcome, rows) =
                commands::golden(&text, expect.as_deref().unwrap_or("built-in expectations"))?;
            for row in &rows {
                eprintln!("{row}");
            }
            Ok(Output::Report(outcome, inputs))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let command: Vec<String> = std::env::args().skip(1).collect();
    match run(cli) {
        Ok(Output::Fixture(text)) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Report(outcome, inputs)) => {
            let code = outcome.status.code();
            let report = Report {
                command,
                inputs: inputs.iter().map(Input::digest).collect(),
                result: outcome.result,
                summary: outcome.summary,
                exit_code: code,
            };
            eprintln!("{}", report.summary);
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            let report = Report {
                command,
                inputs: vec![],
                result: json!({ "error": e.to_string(), "pointer": e.pointer() }),
                summary: e.to_string(),
                exit_code: 2,
            };
            println!(
                "{}",
                serde_json::to_string_pretty(&report).expect("report serializes")
            );
            ExitCode::from(2)
        }
    }
}
