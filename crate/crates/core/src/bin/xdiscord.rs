use clap::Parser;
use xdiscord::cli::{run, Cli};

fn main() {
    if let Err(err) = run(Cli::parse()) {
        eprintln!("error: {err}");
        std::process::exit(1);
    }
}
