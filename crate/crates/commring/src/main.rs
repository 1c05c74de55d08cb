use std::io::Write;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use commring::request::{load_inputs, DEFAULT_SAMPLES, DEFAULT_SEED, DEFAULT_WINDOW};
use commring::{run, Command, InputError, Request};

/// Decompose and certify sums of commutators.
#[derive(Parser, Debug)]
#[command(name = "commring", version)]
struct Cli {
    command: Command,
    /// Ring descriptor, e.g. `matrix(mod 6, 3)` or `weyl(Z)`.
    #[arg(long)]
    ring: Option<String>,
    /// Input fields separated by `;` or newlines; a file path is read.
    #[arg(long)]
    input: Option<String>,
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    #[arg(long, default_value_t = DEFAULT_WINDOW)]
    window: usize,
    #[arg(long)]
    p: Option<u64>,
    /// Sample count for lemma-check with p > 3.
    #[arg(long, default_value_t = DEFAULT_SAMPLES)]
    samples: u64,
    /// weyl-integrate: clear denominators before integrating.
    #[arg(long)]
    scaled: bool,
    /// Saved report to re-run.
    #[arg(long)]
    replay: Option<String>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<String>,
    /// Print elapsed time to stderr.
    #[arg(long)]
    timing: bool,
}

fn request(cli: &Cli) -> Result<Request, InputError> {
    let mut req = Request::new(cli.command);
    req.ring = cli.ring.clone();
    req.seed = cli.seed;
    req.window = cli.window;
    req.p = cli.p;
    req.samples = cli.samples;
    req.scaled = cli.scaled;
    req.replay = cli.replay.clone();
    if let Some(input) = &cli.input {
        req.inputs = load_inputs(input)?;
    }
    Ok(req)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let report = match request(&cli).and_then(|r| run(&r)) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = report.to_string();
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text),
        None => std::io::stdout().write_all(text.as_bytes()),
    };
    if let Err(e) = written {
        eprintln!("error: cannot write report: {e}");
        return ExitCode::from(2);
    }
    if cli.timing {
        eprintln!("elapsed: {} ms", start.elapsed().as_millis());
    }
    ExitCode::from(report.outcome().exit_code() as u8)
}
