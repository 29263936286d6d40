use std::process::ExitCode;

use clap::Parser;
use polariton_cli::{run, Cli};

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(w) => {
            if w.failed_points > 0 {
                eprintln!("warning: {} grid point(s) could not be evaluated (NaN rows)", w.failed_points);
            }
            println!("{}", w.csv.display());
            println!("{}", w.manifest.display());
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
