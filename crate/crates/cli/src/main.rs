use clap::Parser;
use nss_cli::{run, Cli};

fn main() {
    let cli = Cli::parse();
    let report = run(&cli);
    let text = report.to_json();
    println!("{text}");
    if let Some(path) = &cli.json {
        if let Err(e) = std::fs::write(path, format!("{text}\n")) {
            eprintln!("nss: cannot write {}: {e}", path.display());
            std::process::exit(2);
        }
    }
    std::process::exit(report.exit_code());
}
