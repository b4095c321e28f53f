//! Experiment orchestration and file formats for the command-line tool.

pub mod config;
pub mod experiment;
pub mod output;

use std::io;
use std::path::PathBuf;

use thiserror::Error;

pub use config::{parse_config, ConfigError, RunConfig};
pub use experiment::{run_experiment, ExperimentSummary};
pub use output::{
    palette, parse_population, parse_stats_csv, render_snapshot, stats_csv, write_stats_csv,
    Snapshot, STATS_HEADER,
};

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Config(#[from] ConfigError),

    #[error(transparent)]
    Model(#[from] crate::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}: line {line}: {message}")]
    Format {
        path: PathBuf,
        line: usize,
        message: String,
    },
}

impl HarnessError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    /// 0 success, 1 config or input-format error, 2 runtime or unmeasurable
    /// population, 3 I/O.
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Config(_) | Self::Format { .. } => 1,
            Self::Model(_) => 2,
            Self::Io { .. } => 3,
        }
    }
}
