use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use floquet_forge_cli::{run, Scenario};

#[derive(Parser, Debug)]
#[command(
    name = "floquet-forge",
    version,
    about = "Run a floquet-forge scenario from a key = value config"
)]
struct Cli {
    scenario: Scenario,

    /// Config file of `key = value` lines; `#` starts a comment.
    #[arg(long)]
    config: PathBuf,

    #[arg(long, default_value = "out")]
    out: PathBuf,

    /// Worker threads. Outputs do not depend on it.
    #[arg(long, env = "FF_THREADS")]
    threads: Option<usize>,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    if let Some(n) = cli.threads {
        if n == 0 {
            eprintln!("config error: --threads must be at least 1");
            return ExitCode::from(1);
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .expect("thread pool already built");
    }
    match run(cli.scenario, &cli.config, &cli.out) {
        Ok(files) => {
            for f in files {
                println!("{}", f.display());
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("floquet-forge {}: {e}", cli.scenario.name());
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
