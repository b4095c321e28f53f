use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use selforg::harness::{parse_config, parse_population, run_experiment, HarnessError};
use selforg::physical_complexity_variable;

#[derive(Parser)]
#[command(
    version,
    about = "Physical Complexity and Efficiency of evolving agent populations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run an evolutionary experiment described by a key=value config file.
    Run {
        #[arg(long)]
        config: PathBuf,
    },
    /// Measure complexity and efficiency of a population file.
    Analyze {
        #[arg(long)]
        population: PathBuf,
    },
}

fn read(path: &Path) -> Result<String, HarnessError> {
    fs::read_to_string(path).map_err(|e| HarnessError::io(path, e))
}

fn run(path: &Path) -> Result<(), HarnessError> {
    let config = parse_config(&read(path)?)?;
    let summary = run_experiment(&config)?;
    let last = summary.last();
    let efficiency = last
        .efficiency
        .map_or_else(|| "unmeasurable".to_owned(), |e| format!("{e:.9}"));
    println!("generation {}", last.generation);
    println!("efficiency {efficiency}");
    println!("max_fitness {:.9}", last.max_fitness);
    println!("output {}", config.output_dir.display());
    Ok(())
}

fn analyze(path: &Path) -> Result<(), HarnessError> {
    let population = parse_population(&read(path)?).map_err(|e| e.in_file(path))?;
    let report = physical_complexity_variable::<f64>(&population)?;
    let entropies: Vec<String> = report
        .per_site_entropy
        .iter()
        .map(|h| format!("{h:.9}"))
        .collect();
    println!("alphabet_size {}", population.alphabet_size());
    println!("members {}", population.len());
    println!("max_length {}", report.max_length);
    println!("calculable_length {}", report.calculable_length);
    println!("per_site_entropy {}", entropies.join(" "));
    println!("complexity {:.9}", report.complexity);
    println!("complexity_potential {:.9}", report.complexity_potential);
    println!("efficiency {:.9}", report.efficiency);
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Run { config } => run(config),
        Command::Analyze { population } => analyze(population),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
