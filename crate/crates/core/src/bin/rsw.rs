use std::fs;
use std::process::ExitCode;

use clap::Parser;
use rayon::prelude::*;

use swan_rsw::pipeline::{self, JobSpec, OutputFormat, Report, EXIT_INPUT};

/// Swan conductor and refined Swan conductor of a rank-p Heisenberg sheaf
/// given by T^p - T = f, S^p - S = g, U^p - U = fS + h.
#[derive(Parser, Debug)]
#[command(name = "rsw", version)]
struct Cli {
    /// Characteristic, a prime between 2 and 97.
    #[arg(long)]
    p: Option<u32>,
    #[arg(long, allow_hyphen_values = true)]
    f: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    g: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    h: Option<String>,
    /// Emit the JSON report instead of text.
    #[arg(long)]
    json: bool,
    /// Cross-check the result against the blow-up engine.
    #[arg(long)]
    verify: bool,
    /// Expansion precision for the blow-up engine.
    #[arg(long)]
    precision: Option<u32>,
    /// File with one JSON job per line.
    #[arg(long, conflicts_with_all = ["p", "f", "g", "h"])]
    batch: Option<String>,
}

fn emit(report: &Report, format: OutputFormat) {
    match format {
        OutputFormat::Json => println!("{}", report.to_json()),
        OutputFormat::Text => print!("{}", report.to_text()),
    }
}

fn run_batch(path: &str, force_json: bool) -> u8 {
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("cannot read {path}: {e}");
            return EXIT_INPUT as u8;
        }
    };
    let lines: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .collect();
    let results: Vec<Result<(Report, OutputFormat), String>> = lines
        .par_iter()
        .map(|(i, line)| {
            let job: JobSpec =
                serde_json::from_str(line).map_err(|e| format!("line {}: {e}", i + 1))?;
            let format = if force_json { OutputFormat::Json } else { job.format };
            Ok((pipeline::run(&job), format))
        })
        .collect();
    let mut code = 0;
    for r in results {
        match r {
            Ok((report, format)) => {
                if format == OutputFormat::Json {
                    println!("{}", serde_json::to_string(&report).expect("report serializes"));
                } else {
                    println!("{}", report.to_text());
                }
                code = code.max(report.exit_code());
            }
            Err(msg) => {
                eprintln!("{msg}");
                code = code.max(EXIT_INPUT);
            }
        }
    }
    code as u8
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(path) = &cli.batch {
        return ExitCode::from(run_batch(path, cli.json));
    }
    let (Some(p), Some(f), Some(g), Some(h)) = (cli.p, cli.f, cli.g, cli.h) else {
        eprintln!("--p, --f, --g and --h are required unless --batch is given");
        return ExitCode::from(EXIT_INPUT as u8);
    };
    let format = if cli.json { OutputFormat::Json } else { OutputFormat::Text };
    let job = JobSpec {
        p,
        f,
        g,
        h,
        verify: cli.verify,
        precision: cli.precision,
        format,
    };
    let report = pipeline::run(&job);
    emit(&report, format);
    ExitCode::from(report.exit_code() as u8)
}
