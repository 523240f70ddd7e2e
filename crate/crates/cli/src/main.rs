use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use schur_cli::suite::{run_suite, DEFAULT_SEED};
use schur_cli::{run, Command, JobRequest, EXIT_MALFORMED, EXIT_OK, EXIT_SUITE_FAILED};

/// Schur functors on explicit matrices and slopes of trianguline points.
///
/// Reads a JSON payload from standard input (or `--input`) and writes one
/// JSON document to standard output.
#[derive(Parser, Debug)]
#[command(name = "schur", version)]
struct Args {
    /// Run the acceptance batteries and print the report.
    #[arg(long, conflicts_with_all = ["command", "input"])]
    suite: bool,

    /// Seed for the randomized batteries.
    #[arg(long)]
    seed: Option<u64>,

    /// Read the payload from this file instead of standard input.
    #[arg(long, short)]
    input: Option<PathBuf>,

    #[arg(value_enum, required_unless_present = "suite")]
    command: Option<Command>,
}

fn emit(doc: &str, diagnostics: &[String], code: i32) -> ExitCode {
    let mut out = std::io::stdout().lock();
    let _ = out.write_all(doc.as_bytes());
    let _ = out.flush();
    for d in diagnostics {
        eprintln!("{d}");
    }
    ExitCode::from(code as u8)
}

fn main() -> ExitCode {
    let args = Args::parse();
    if args.suite {
        let report = run_suite(args.seed.unwrap_or(DEFAULT_SEED));
        let doc = serde_json::to_string_pretty(&report).expect("report serializes") + "\n";
        let failed: Vec<String> = report
            .criteria
            .iter()
            .filter(|c| !c.passed)
            .map(|c| format!("criterion {} ({}) failed: {}", c.id, c.name, c.detail))
            .collect();
        let code = if report.passed { EXIT_OK } else { EXIT_SUITE_FAILED };
        return emit(&doc, &failed, code);
    }
    let command = args.command.expect("clap enforces a command");
    let text = match &args.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| format!("stdin: {e}"))
        }
    };
    let payload = text.and_then(|t| serde_json::from_str(&t).map_err(|e| format!("payload is not JSON: {e}")));
    let payload = match payload {
        Ok(p) => p,
        Err(msg) => {
            let doc = serde_json::json!({ "error": { "kind": "malformed", "message": msg } });
            let doc = serde_json::to_string_pretty(&doc).expect("value serializes") + "\n";
            return emit(&doc, &[format!("error: {msg}")], EXIT_MALFORMED);
        }
    };
    let outcome = run(&JobRequest { command, payload, seed: args.seed });
    emit(&outcome.render(), &outcome.diagnostics, outcome.code)
}
