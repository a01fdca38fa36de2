use clap::Parser;
use stoichos_cli::{run, CliError, RunConfig};

fn main() {
    let cfg = RunConfig::try_parse().unwrap_or_else(|e| e.exit());
    match run(&cfg) {
        Ok(out) => print!("{}", out),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {}", msg);
            std::process::exit(2);
        }
        Err(CliError::Domain(msg)) => {
            eprintln!("error: {}", msg);
            std::process::exit(1);
        }
    }
}
