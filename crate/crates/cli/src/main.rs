use std::io::Read;
use std::process::ExitCode;

use clap::Parser;
use serde_json::Value;

use padic_spectral_cli::{resolve_seed, run, Command, JobError};

/// Runs one p-adic spectral job described by a JSON document.
#[derive(Parser)]
#[command(name = "padic-spectral", version)]
struct Args {
    command: Command,
    /// JSON input file; stdin when omitted.
    #[arg(long)]
    input: Option<std::path::PathBuf>,
    /// Seed for randomized factoring and audits.
    #[arg(long)]
    seed: Option<u64>,
    /// Compact single-line output.
    #[arg(long)]
    compact: bool,
}

fn read_input(args: &Args) -> Result<Value, JobError> {
    let text = match &args.input {
        Some(path) => std::fs::read_to_string(path),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s)
        }
    }
    .map_err(|e| JobError::Invalid {
        kind: "io".into(),
        message: e.to_string(),
    })?;
    serde_json::from_str(&text).map_err(|e| JobError::Invalid {
        kind: "parse".into(),
        message: e.to_string(),
    })
}

fn main() -> ExitCode {
    let args = Args::parse();
    let outcome = read_input(&args).and_then(|input| {
        let seed = resolve_seed(&input, args.seed)?;
        run(args.command, &input, seed)
    });
    let (doc, code) = match outcome {
        Ok(v) => (v, 0),
        Err(e) => (e.to_json(), e.exit_code()),
    };
    let text = if args.compact {
        serde_json::to_string(&doc)
    } else {
        serde_json::to_string_pretty(&doc)
    }
    .expect("json output");
    println!("{text}");
    ExitCode::from(code as u8)
}
