mod cli;
mod commands;
mod config;
mod output;

use std::io::{self, Write};
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use hyperred::Error;

use cli::{Cli, Command, Format};
use config::Config;
use output::{Report, Timing};

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::InvalidCurve(_) | Error::Invariant(_) | Error::NotClosed(_) | Error::GenusMismatch(..) => 3,
        Error::UnsupportedField(_) => 4,
        Error::NotAConstellation(_) => 1,
        _ => 2,
    }
}

/// Worker count from `HW_THREADS`, else rayon's default.
fn init_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("HW_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().map_err(|_| format!("HW_THREADS={raw:?} is not a thread count"))?;
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn run(cli: &Cli, cfg: &Config) -> Result<Report, Error> {
    match &cli.command {
        Command::Reduce(a) => commands::reduce(a),
        Command::Sunit(a) => commands::sunit(a, cfg),
        Command::Enumerate(a) => commands::enumerate(a, cfg),
        Command::Bounds(a) => commands::bounds(a, cfg),
        Command::Forge(c) => commands::forge(c, cfg),
        Command::Exceptional(a) => commands::exceptional(a, cfg),
        Command::PiOdd(a) => commands::pi_odd_cmd(a, cfg),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Err(msg) = init_threads() {
        eprintln!("error: {msg}");
        return ExitCode::from(2);
    }
    let cfg = match &cli.config {
        Some(path) => match Config::load(path) {
            Ok(c) => c,
            Err(msg) => {
                eprintln!("error: config {msg}");
                return ExitCode::from(2);
            }
        },
        None => Config::default(),
    };
    let start = Instant::now();
    let report = match run(&cli, &cfg) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(exit_code(&e));
        }
    };
    let timing = cli.timing.then(|| Timing { elapsed_ms: start.elapsed().as_secs_f64() * 1e3 });
    let code = report.code as u8;
    let out = match cli.format {
        Format::Text => match &timing {
            Some(t) => format!("{}\nelapsed: {:.1} ms", report.text, t.elapsed_ms),
            None => report.text,
        },
        Format::Json => serde_json::to_string_pretty(&report.into_record(timing)).expect("record serializes"),
    };
    // A closed pipe is not an error worth reporting.
    let _ = writeln!(io::stdout().lock(), "{out}");
    ExitCode::from(code)
}
