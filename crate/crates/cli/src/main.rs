use std::io::Write;

use clap::Parser;
use vpv_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let result = run(&cli);
    let text = if cli.global.json {
        result.to_json() + "\n"
    } else {
        result.to_human()
    };
    // a closed pipe (e.g. `| head`) is not an error worth reporting
    let _ = if result.exit_code() == 0 || cli.global.json {
        std::io::stdout().write_all(text.as_bytes())
    } else {
        std::io::stderr().write_all(text.as_bytes())
    };
    std::process::exit(result.exit_code());
}
