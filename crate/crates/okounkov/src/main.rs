use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use serde_json::json;

use okounkov::cli::{parse_document, parse_rat, run, Flags, Format};

/// Exact Newton-Okounkov body computations for graded linear series.
#[derive(Parser)]
#[command(name = "okounkov", version)]
struct Cli {
    /// One of: analyze, body, limit, degree, sumset, decompose.
    command: String,
    /// Input document (JSON); reads stdin when omitted.
    file: Option<PathBuf>,
    /// Truncation degree for tables and sampling.
    #[arg(long)]
    max_degree: Option<u64>,
    /// Veronese multipliers, comma-separated (degree/sumset commands).
    #[arg(long, value_delimiter = ',')]
    p: Option<Vec<u64>>,
    /// Output format.
    #[arg(long, default_value = "json", value_parser = ["json", "csv"])]
    format: String,
    /// Component order for decompose, comma-separated 1-based permutation.
    #[arg(long, value_delimiter = ',')]
    ordering: Option<Vec<usize>>,
    /// Convergence diagnostic threshold as an exact rational "p/q".
    #[arg(long)]
    tolerance: Option<String>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run_cli(&cli) {
        Ok(out) => {
            if out.ends_with('\n') {
                print!("{out}");
            } else {
                println!("{out}");
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            let report = json!({"error": e.code(), "message": e.to_string()});
            eprintln!("{report}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}

fn run_cli(cli: &Cli) -> okounkov::Result<String> {
    let text = match &cli.file {
        Some(path) => std::fs::read_to_string(path).map_err(|e| okounkov::Error::SchemaError {
            pointer: String::new(),
            message: format!("cannot read {}: {e}", path.display()),
        })?,
        None => {
            let mut buf = String::new();
            std::io::stdin()
                .read_to_string(&mut buf)
                .map_err(|e| okounkov::Error::SchemaError {
                    pointer: String::new(),
                    message: format!("cannot read stdin: {e}"),
                })?;
            buf
        }
    };
    let doc = parse_document(&text)?;
    let mut flags = Flags {
        max_degree: cli.max_degree,
        format: if cli.format == "csv" {
            Format::Csv
        } else {
            Format::Json
        },
        ordering: cli.ordering.clone(),
        ..Flags::default()
    };
    if let Some(p) = &cli.p {
        flags.p = p.clone();
    }
    if let Some(t) = &cli.tolerance {
        flags.tolerance = Some(parse_rat(t, "--tolerance")?);
    }
    run(&cli.command, &doc, &flags)
}
