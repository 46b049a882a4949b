use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use reldep::invariants::Bounds;
use reldep_cli::{run_source, Options};

/// Run a reldep session script.
#[derive(Parser, Debug)]
#[command(name = "reldep", version, about)]
struct Cli {
    /// Script file; standard input when omitted.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Write the JSON report here (`-` for standard output).
    #[arg(long)]
    json: Option<PathBuf>,
    /// Largest Tor index computed.
    #[arg(long, default_value_t = 12)]
    tor_bound: usize,
    /// Tate homology is computed on [-N, 0] unless a command overrides it.
    #[arg(long, default_value_t = 8)]
    tate_window: i32,
    /// Largest internal degree for graded dimensions and oracle checks.
    #[arg(long, default_value_t = 20)]
    max_degree: i32,
    /// Seed for fuzz commands that do not name one.
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let source = match &cli.input {
        Some(path) => std::fs::read_to_string(path).map_err(|e| format!("cannot read {}: {e}", path.display())),
        None => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map(|_| s).map_err(|e| format!("cannot read standard input: {e}"))
        }
    };
    let source = match source {
        Ok(s) => s,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let options = Options {
        bounds: Bounds { tor_bound: cli.tor_bound, tate_window: cli.tate_window, max_degree: cli.max_degree },
        seed: cli.seed,
    };
    let outcome = run_source(&source, &options);
    let json_to_stdout = cli.json.as_deref().is_some_and(|p| p.as_os_str() == "-");
    match &cli.json {
        Some(_) if json_to_stdout => print!("{}", outcome.json()),
        Some(path) => {
            if let Err(e) = std::fs::write(path, outcome.json()) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => {}
    }
    if json_to_stdout {
        eprint!("{}", outcome.text);
    } else {
        print!("{}", outcome.text);
    }
    ExitCode::from(outcome.exit_code as u8)
}
