use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use infoflow_cli::{output, registry, run_file, RunOptions};

#[derive(Parser)]
#[command(name = "infoflow", version, about = "Run information-flow scenarios")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a scenario file and print its report.
    Run {
        file: PathBuf,
        /// Print a flat path/value table instead of JSON.
        #[arg(long)]
        pretty: bool,
        /// Seed for tasks that sample; overrides the scenario's seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Largest sequent width when deriving local logics.
        #[arg(long, value_name = "K")]
        max_width: Option<usize>,
        /// Write the report here instead of stdout.
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// List the available tasks.
    Tasks,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Tasks => {
            let width = registry::TASKS.iter().map(|t| t.name.len()).max().unwrap_or(0);
            for t in &registry::TASKS {
                println!("{:width$}  {:<12} {}: {}", t.name, t.module, t.model, t.summary);
            }
            ExitCode::SUCCESS
        }
        Command::Run {
            file,
            pretty,
            seed,
            max_width,
            out,
        } => {
            let outcome = run_file(&file, &RunOptions { seed, max_width });
            let text = if pretty {
                output::render_table(&outcome.report)
            } else {
                output::render_json(&outcome.report)
            };
            if let Some(err) = outcome.report.get("error") {
                eprintln!("error [{}]: {}", err["kind"].as_str().unwrap_or("?"), err["message"].as_str().unwrap_or(""));
            }
            match out {
                Some(path) => {
                    if let Err(e) = std::fs::write(&path, text) {
                        eprintln!("cannot write {}: {e}", path.display());
                        return ExitCode::from(2);
                    }
                }
                None => print!("{text}"),
            }
            ExitCode::from(outcome.exit_code as u8)
        }
    }
}
