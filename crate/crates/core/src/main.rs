//! Binary entry point; all behavior lives in [`monoverify::cli`].

use clap::Parser;
use monoverify::cli::{run, Cli};

fn main() {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests exit 0; every other parse problem
            // is a usage error.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            std::process::exit(code);
        }
    };
    let mut stdout = std::io::stdout().lock();
    let mut stderr = std::io::stderr().lock();
    let code = run(cli, &mut stdout, &mut stderr);
    std::process::exit(code);
}
