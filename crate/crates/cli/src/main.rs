//! `zerolab` command-line front end.

mod config;
mod run;

use clap::Parser;

use config::{parse_config, Cli, ConfigError};
use run::{EXIT_IO, EXIT_USAGE};

fn main() {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("info")).init();
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    let cfg = match parse_config(&cli) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(match e {
                ConfigError::Usage(_) => EXIT_USAGE,
                ConfigError::Io(_) => EXIT_IO,
            });
        }
    };
    log::info!("config {}", serde_json::to_string(&cfg).expect("config serializes"));
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cfg.threads).build_global() {
        log::warn!("thread pool: {e}");
    }
    let code = run::run(&cfg).unwrap_or_else(|e| {
        eprintln!("error: {}", e.message);
        e.code
    });
    std::process::exit(code);
}
