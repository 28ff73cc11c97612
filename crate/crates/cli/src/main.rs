use clap::Parser;
use wdforge_cli::commands::{render, run, Cli};

fn main() {
    let cli = Cli::parse();
    let outcome = run(&cli.command);
    if let Some(err) = outcome.doc.get("error") {
        eprintln!("error: {}", err["message"].as_str().unwrap_or_default());
    }
    println!("{}", render(&outcome.doc, cli.pretty));
    std::process::exit(outcome.code);
}
