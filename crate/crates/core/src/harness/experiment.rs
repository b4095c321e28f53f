use std::fs;
use std::path::{Path, PathBuf};

use log::{debug, info};

use crate::evolution::{run_observed, GenerationStats};

use super::config::RunConfig;
use super::output::{render_snapshot, write_stats_csv, Snapshot};
use super::HarnessError;

#[derive(Debug, Clone)]
pub struct ExperimentSummary {
    pub stats: Vec<GenerationStats<f64>>,
    pub files: Vec<PathBuf>,
}

impl ExperimentSummary {
    pub fn last(&self) -> &GenerationStats<f64> {
        self.stats.last().expect("generation 0 is always recorded")
    }
}

fn write(path: PathBuf, contents: &str, files: &mut Vec<PathBuf>) -> Result<(), HarnessError> {
    fs::write(&path, contents).map_err(|e| HarnessError::io(&path, e))?;
    files.push(path);
    Ok(())
}

/// Runs one experiment and writes `stats.csv` plus a `snap_<g>.txt` /
/// `snap_<g>.ppm` pair every `snapshot_every` generations (generation 0
/// included) into `config.output_dir`.
pub fn run_experiment(config: &RunConfig) -> Result<ExperimentSummary, HarnessError> {
    config.validate()?;
    let evolution = config.evolution_config();
    let dir: &Path = &config.output_dir;
    fs::create_dir_all(dir).map_err(|e| HarnessError::io(dir, e))?;

    info!(
        "seed {} ({:?}): {} generations into {}",
        config.rng_seed,
        config.mode,
        config.generations,
        dir.display()
    );

    let alphabet_size = config.pool_size;
    let mut files = Vec::new();
    let output = run_observed(&evolution, |state, stats| {
        let generation = state.generation();
        debug!(
            "generation {generation}: size {} max_fitness {:.4} efficiency {:?}",
            stats.population_size, stats.max_fitness, stats.efficiency
        );
        if config.snapshot_every > 0 && generation % config.snapshot_every == 0 {
            let snapshot = Snapshot::of(generation, state.population());
            write(
                dir.join(snapshot.text_file_name()),
                &snapshot.to_text(),
                &mut files,
            )?;
            write(
                dir.join(snapshot.pixmap_file_name()),
                &render_snapshot(&snapshot, alphabet_size),
                &mut files,
            )?;
        }
        Ok::<(), HarnessError>(())
    })?;

    let stats_path = dir.join("stats.csv");
    write_stats_csv(&output.stats, &stats_path)?;
    files.push(stats_path);
    info!("wrote {} files", files.len());
    Ok(ExperimentSummary {
        stats: output.stats,
        files,
    })
}
