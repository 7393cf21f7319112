use std::io::Write;

use clap::Parser;
use salem_dist::cli::RunConfig;

fn main() {
    let cfg = RunConfig::parse();
    let out = cfg.run();
    match &cfg.output {
        Some(path) if !out.stdout.is_empty() => {
            if let Err(e) = std::fs::write(path, &out.stdout) {
                eprintln!("cannot write {}: {e}", path.display());
                std::process::exit(1);
            }
        }
        _ => {
            let _ = std::io::stdout().write_all(out.stdout.as_bytes());
        }
    }
    let _ = std::io::stderr().write_all(out.stderr.as_bytes());
    std::process::exit(out.code);
}
