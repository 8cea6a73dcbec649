use clap::Parser;
use tswave_cli::commands::{execute, Cli};

fn main() {
    let cli = Cli::parse();
    if let Err(e) = execute(&cli) {
        eprintln!("tswave: {e}");
        std::process::exit(e.exit_code());
    }
}
