use clap::Parser;

use hopfchi_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(status) => std::process::exit(status),
        Err(e) => {
            eprintln!("error: {}", e.message);
            std::process::exit(e.status);
        }
    }
}
