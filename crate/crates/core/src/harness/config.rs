//! `key = value` experiment configuration.
//!
//! One assignment per line; `#` starts a comment; blank lines are ignored.
//! Only `rng_seed` is required. Keys and defaults:
//!
//! | key                     | default            |
//! |-------------------------|--------------------|
//! | `rng_seed`              | required           |
//! | `mode`                  | `discriminating` (or `nondiscriminating`) |
//! | `generations`           | 300                |
//! | `population_floor`      | `2 × pool_size`    |
//! | `crossover_fraction`    | 0.1                |
//! | `mutation_fraction`     | 0.1                |
//! | `parsimony_coefficient` | 0.1                |
//! | `pool_size`             | 16                 |
//! | `attributes_per_agent`  | 2                  |
//! | `request_length`        | 4                  |
//! | `attribute_range`       | `0,9` (inclusive)  |
//! | `snapshot_every`        | 0 (never)          |
//! | `output_dir`            | `output`           |

use std::collections::HashSet;
use std::fmt;
use std::ops::RangeInclusive;
use std::path::PathBuf;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::{Agent, Alphabet, UserRequest};
use crate::evolution::{EvolutionConfig, SelectionMode};

/// Generator stream used to draw the agent pool and request, kept apart
/// from the simulation's stream 0.
const WORLD_STREAM: u64 = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigError {
    pub line: Option<usize>,
    pub key: Option<String>,
    pub message: String,
}

impl ConfigError {
    fn at(line: usize, key: Option<&str>, message: impl Into<String>) -> Self {
        Self {
            line: Some(line),
            key: key.map(str::to_owned),
            message: message.into(),
        }
    }

    fn key(key: &str, message: impl Into<String>) -> Self {
        Self {
            line: None,
            key: Some(key.to_owned()),
            message: message.into(),
        }
    }
}

impl fmt::Display for ConfigError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "config error")?;
        if let Some(line) = self.line {
            write!(f, " at line {line}")?;
        }
        if let Some(key) = &self.key {
            write!(f, " ({key})")?;
        }
        write!(f, ": {}", self.message)
    }
}

impl std::error::Error for ConfigError {}

#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub rng_seed: u64,
    pub mode: SelectionMode,
    pub generations: usize,
    pub population_floor: usize,
    pub crossover_fraction: f64,
    pub mutation_fraction: f64,
    pub parsimony_coefficient: f64,
    pub pool_size: usize,
    pub attributes_per_agent: usize,
    pub request_length: usize,
    pub attribute_range: RangeInclusive<i64>,
    pub snapshot_every: usize,
    pub output_dir: PathBuf,
}

impl RunConfig {
    pub const DEFAULT_POOL_SIZE: usize = 16;

    pub fn with_seed(rng_seed: u64) -> Self {
        Self {
            rng_seed,
            mode: SelectionMode::Discriminating,
            generations: 300,
            population_floor: 2 * Self::DEFAULT_POOL_SIZE,
            crossover_fraction: 0.1,
            mutation_fraction: 0.1,
            parsimony_coefficient: 0.1,
            pool_size: Self::DEFAULT_POOL_SIZE,
            attributes_per_agent: 2,
            request_length: 4,
            attribute_range: 0..=9,
            snapshot_every: 0,
            output_dir: PathBuf::from("output"),
        }
    }

    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.pool_size < 2 {
            return Err(ConfigError::key(
                "pool_size",
                format!(
                    "pool_size is the alphabet size |D| and must be at least 2, got {}",
                    self.pool_size
                ),
            ));
        }
        if self.request_length < 1 {
            return Err(ConfigError::key("request_length", "must be at least 1"));
        }
        if self.attributes_per_agent < 1 {
            return Err(ConfigError::key(
                "attributes_per_agent",
                "must be at least 1",
            ));
        }
        if self.attribute_range.is_empty() {
            return Err(ConfigError::key(
                "attribute_range",
                "minimum exceeds maximum",
            ));
        }
        for (key, value) in [
            ("crossover_fraction", self.crossover_fraction),
            ("mutation_fraction", self.mutation_fraction),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::key(
                    key,
                    format!("must lie in [0, 1], got {value}"),
                ));
            }
        }
        if !(self.parsimony_coefficient.is_finite() && self.parsimony_coefficient >= 0.0) {
            return Err(ConfigError::key(
                "parsimony_coefficient",
                "must be finite and non-negative",
            ));
        }
        if self.population_floor < self.pool_size {
            return Err(ConfigError::key(
                "population_floor",
                format!(
                    "must be at least pool_size ({}), got {}",
                    self.pool_size, self.population_floor
                ),
            ));
        }
        Ok(())
    }

    /// Draws the agent pool and the user request from the seed.
    pub fn world(&self) -> (Alphabet, UserRequest) {
        let mut rng = ChaCha8Rng::seed_from_u64(self.rng_seed);
        rng.set_stream(WORLD_STREAM);
        let range = self.attribute_range.clone();
        let agents = (0..self.pool_size)
            .map(|id| {
                let attributes = (0..self.attributes_per_agent)
                    .map(|_| rng.random_range(range.clone()))
                    .collect();
                Agent::new(id, attributes).expect("attributes_per_agent >= 1")
            })
            .collect();
        let request = (0..self.request_length)
            .map(|_| rng.random_range(range.clone()))
            .collect();
        (
            Alphabet::new(agents).expect("pool_size >= 2"),
            UserRequest::new(request).expect("request_length >= 1"),
        )
    }

    pub fn evolution_config(&self) -> EvolutionConfig<f64> {
        let (alphabet, request) = self.world();
        EvolutionConfig {
            request,
            alphabet,
            crossover_fraction: self.crossover_fraction,
            mutation_fraction: self.mutation_fraction,
            parsimony_coefficient: self.parsimony_coefficient,
            population_floor: self.population_floor,
            generations: self.generations,
            rng_seed: self.rng_seed,
            selection: self.mode,
        }
    }
}

fn parse_value<V: FromStr>(
    line: usize,
    key: &str,
    value: &str,
    what: &str,
) -> Result<V, ConfigError> {
    value
        .parse()
        .map_err(|_| ConfigError::at(line, Some(key), format!("expected {what}, got `{value}`")))
}

fn parse_range(line: usize, key: &str, value: &str) -> Result<RangeInclusive<i64>, ConfigError> {
    let bad = || {
        ConfigError::at(
            line,
            Some(key),
            format!("expected `min,max`, got `{value}`"),
        )
    };
    let (lo, hi) = value.split_once(',').ok_or_else(bad)?;
    let lo: i64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: i64 = hi.trim().parse().map_err(|_| bad())?;
    Ok(lo..=hi)
}

/// Parses and validates a configuration document.
pub fn parse_config(text: &str) -> Result<RunConfig, ConfigError> {
    let mut config = RunConfig::with_seed(0);
    let mut seen = HashSet::new();
    let mut floor = None;

    for (index, raw) in text.lines().enumerate() {
        let line = index + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, value) = content
            .split_once('=')
            .map(|(k, v)| (k.trim(), v.trim()))
            .ok_or_else(|| {
                ConfigError::at(
                    line,
                    None,
                    format!("expected `key = value`, got `{content}`"),
                )
            })?;
        if !seen.insert(key.to_owned()) {
            return Err(ConfigError::at(line, Some(key), "duplicate key"));
        }
        match key {
            "rng_seed" => {
                config.rng_seed = parse_value(line, key, value, "an unsigned 64-bit integer")?
            }
            "mode" => {
                config.mode = match value {
                    "discriminating" => SelectionMode::Discriminating,
                    "nondiscriminating" => SelectionMode::NonDiscriminating,
                    _ => {
                        return Err(ConfigError::at(
                            line,
                            Some(key),
                            format!(
                                "expected `discriminating` or `nondiscriminating`, got `{value}`"
                            ),
                        ))
                    }
                }
            }
            "generations" => {
                config.generations = parse_value(line, key, value, "a non-negative integer")?
            }
            "population_floor" => {
                floor = Some(parse_value(line, key, value, "a positive integer")?)
            }
            "crossover_fraction" => {
                config.crossover_fraction = parse_value(line, key, value, "a real number")?
            }
            "mutation_fraction" => {
                config.mutation_fraction = parse_value(line, key, value, "a real number")?
            }
            "parsimony_coefficient" => {
                config.parsimony_coefficient = parse_value(line, key, value, "a real number")?
            }
            "pool_size" => config.pool_size = parse_value(line, key, value, "a positive integer")?,
            "attributes_per_agent" => {
                config.attributes_per_agent = parse_value(line, key, value, "a positive integer")?
            }
            "request_length" => {
                config.request_length = parse_value(line, key, value, "a positive integer")?
            }
            "attribute_range" => config.attribute_range = parse_range(line, key, value)?,
            "snapshot_every" => {
                config.snapshot_every = parse_value(line, key, value, "a non-negative integer")?
            }
            "output_dir" => {
                if value.is_empty() {
                    return Err(ConfigError::at(line, Some(key), "empty path"));
                }
                config.output_dir = PathBuf::from(value)
            }
            _ => {
                return Err(ConfigError::at(
                    line,
                    Some(key),
                    format!("unknown key `{key}`"),
                ))
            }
        }
    }

    if !seen.contains("rng_seed") {
        return Err(ConfigError::key("rng_seed", "missing required key"));
    }
    config.population_floor = floor.unwrap_or(2 * config.pool_size);
    config.validate()?;
    Ok(config)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn defaults_with_seed_only() {
        let config = parse_config("rng_seed = 42\n").unwrap();
        assert_eq!(config, RunConfig::with_seed(42));
        assert_eq!(config.pool_size, 16);
        assert_eq!(config.mode, SelectionMode::Discriminating);
    }

    #[test]
    fn pool_size_one_rejected() {
        let err = parse_config("rng_seed = 1\npool_size = 1\n").unwrap_err();
        assert_eq!(err.key.as_deref(), Some("pool_size"));
        assert!(err.message.contains("at least 2"), "{err}");
    }

    #[test]
    fn mode_nondiscriminating() {
        let config = parse_config("rng_seed = 1\nmode = nondiscriminating").unwrap();
        assert_eq!(config.mode, SelectionMode::NonDiscriminating);
    }

    #[test]
    fn unknown_key_names_line() {
        let err = parse_config("# comment\nrng_seed = 1\n\ncolour = red\n").unwrap_err();
        assert_eq!(err.line, Some(4));
        assert_eq!(err.key.as_deref(), Some("colour"));
    }

    #[test]
    fn missing_seed() {
        let err = parse_config("pool_size = 4").unwrap_err();
        assert_eq!(err.key.as_deref(), Some("rng_seed"));
    }

    #[test]
    fn type_errors_name_the_key() {
        let err = parse_config("rng_seed = 1\ngenerations = many").unwrap_err();
        assert_eq!(
            (err.line, err.key.as_deref()),
            (Some(2), Some("generations"))
        );
        let err = parse_config("rng_seed = -3").unwrap_err();
        assert_eq!(err.key.as_deref(), Some("rng_seed"));
        let err = parse_config("rng_seed = 1\nattribute_range = 9").unwrap_err();
        assert_eq!(err.key.as_deref(), Some("attribute_range"));
        let err = parse_config("rng_seed = 1\nmutation_fraction = 2").unwrap_err();
        assert_eq!(err.key.as_deref(), Some("mutation_fraction"));
    }

    #[test]
    fn full_document() {
        let text = "\
            rng_seed = 7   # seed\n\
            mode = discriminating\n\
            generations = 50\n\
            population_floor = 12\n\
            pool_size = 6\n\
            attribute_range = -5, 5\n\
            snapshot_every = 10\n\
            output_dir = runs/a\n";
        let config = parse_config(text).unwrap();
        assert_eq!(config.generations, 50);
        assert_eq!(config.population_floor, 12);
        assert_eq!(config.attribute_range, -5..=5);
        assert_eq!(config.output_dir, PathBuf::from("runs/a"));
        let err = parse_config("rng_seed = 1\npool_size = 8\npopulation_floor = 4").unwrap_err();
        assert_eq!(err.key.as_deref(), Some("population_floor"));
    }

    #[test]
    fn duplicate_and_malformed_lines() {
        let err = parse_config("rng_seed = 1\nrng_seed = 2").unwrap_err();
        assert_eq!(err.line, Some(2));
        let err = parse_config("rng_seed 1").unwrap_err();
        assert_eq!(err.line, Some(1));
    }

    #[test]
    fn world_is_seeded() {
        let config = RunConfig::with_seed(42);
        let (alphabet, request) = config.world();
        assert_eq!(alphabet.size(), 16);
        assert!(alphabet.agents().iter().all(
            |a| a.attributes().len() == 2 && a.attributes().iter().all(|v| (0..=9).contains(v))
        ));
        assert_eq!(request.required().len(), 4);
        assert_eq!(config.world(), (alphabet, request));
        assert_ne!(RunConfig::with_seed(43).world(), config.world());
    }
}
