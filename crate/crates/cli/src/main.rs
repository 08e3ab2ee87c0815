use clap::Parser;
use dipole_fade_cli::{config::Cli, execute, exit};

fn main() {
    // clap reports malformed flags with status 2.
    let cli = Cli::parse();
    match execute(&cli) {
        Ok(()) => std::process::exit(exit::OK),
        Err(e) => {
            eprintln!("dipole-fade: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
