//! Seeded simulation of an evolving population of variable-length
//! agent-sequences.
//!
//! One generation is: raw fitness, parsimony adjustment against the current
//! mean length, fitness-proportional selection to the dynamic target size,
//! one-point crossover on a fraction of the survivors, one point mutation on
//! a fraction of the result, then measurement.
//!
//! All randomness comes from a single [`ChaCha8Rng`] seeded from
//! [`EvolutionConfig::rng_seed`]; the same config always replays the same
//! trajectory.

mod operators;

pub use operators::{
    crossover_at, crossover_pair, fitness, mutate, parsimony_adjusted_fitness, select,
    target_population_size, MutationKind,
};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::complexity::{calculable_length, physical_complexity_variable};
use crate::domain::{AgentSequence, Alphabet, Population, UserRequest};
use crate::error::{Error, Result};
use crate::scalar::Scalar;
use operators::{below, distinct_indices};

/// Longest sequence drawn for the initial population.
pub const INITIAL_MAX_LENGTH: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum SelectionMode {
    /// Survival proportional to parsimony-adjusted fitness.
    #[default]
    Discriminating,
    /// Every member gets fitness 1 on the selection wheel. Nothing else
    /// changes.
    NonDiscriminating,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionConfig<T> {
    pub request: UserRequest,
    pub alphabet: Alphabet,
    pub crossover_fraction: T,
    pub mutation_fraction: T,
    /// Penalty per site above the mean length.
    pub parsimony_coefficient: T,
    pub population_floor: usize,
    pub generations: usize,
    pub rng_seed: u64,
    pub selection: SelectionMode,
}

impl<T: Scalar> EvolutionConfig<T> {
    pub const DEFAULT_GENERATIONS: usize = 300;

    /// Defaults: 10% crossover, 10% mutation, parsimony 0.1, a floor of
    /// `2·|D|`, 300 generations, discriminating selection.
    pub fn new(request: UserRequest, alphabet: Alphabet, rng_seed: u64) -> Self {
        let population_floor = 2 * alphabet.size();
        Self {
            request,
            alphabet,
            crossover_fraction: T::from_f64_lossy(0.1),
            mutation_fraction: T::from_f64_lossy(0.1),
            parsimony_coefficient: T::from_f64_lossy(0.1),
            population_floor,
            generations: Self::DEFAULT_GENERATIONS,
            rng_seed,
            selection: SelectionMode::Discriminating,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let unit = |name: &str, x: T| {
            if x >= T::zero() && x <= T::one() {
                Ok(())
            } else {
                Err(Error::InvalidConfig(format!(
                    "{name} must lie in [0, 1], got {x}"
                )))
            }
        };
        unit("crossover_fraction", self.crossover_fraction)?;
        unit("mutation_fraction", self.mutation_fraction)?;
        if !(self.parsimony_coefficient >= T::zero() && self.parsimony_coefficient.is_finite()) {
            return Err(Error::InvalidConfig(format!(
                "parsimony_coefficient must be finite and non-negative, got {}",
                self.parsimony_coefficient
            )));
        }
        if self.population_floor < self.alphabet.size() {
            return Err(Error::InvalidConfig(format!(
                "population_floor {} is below the alphabet size {}",
                self.population_floor,
                self.alphabet.size()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct EvolutionState {
    generation: usize,
    population: Population,
    rng: ChaCha8Rng,
}

impl EvolutionState {
    /// Generation 0: `population_floor` members, each of uniform length in
    /// `1..=5` with uniform symbols.
    pub fn initial<T: Scalar>(config: &EvolutionConfig<T>) -> Result<Self> {
        config.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(config.rng_seed);
        let size = config.alphabet.size();
        let members = (0..config.population_floor)
            .map(|_| {
                let len = 1 + below(&mut rng, INITIAL_MAX_LENGTH);
                AgentSequence::new((0..len).map(|_| below(&mut rng, size)).collect())
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self {
            generation: 0,
            population: Population::with_alphabet(members, &config.alphabet)?,
            rng,
        })
    }

    /// Resumes from an explicit population and generator.
    pub fn from_parts(generation: usize, population: Population, rng: ChaCha8Rng) -> Result<Self> {
        if population.is_empty() {
            return Err(Error::EmptyPopulation);
        }
        Ok(Self {
            generation,
            population,
            rng,
        })
    }

    pub fn generation(&self) -> usize {
        self.generation
    }

    pub fn population(&self) -> &Population {
        &self.population
    }
}

/// Measurements of one generation's population. Fitness values are raw
/// (without parsimony).
#[derive(Debug, Clone, PartialEq)]
pub struct GenerationStats<T> {
    pub generation: usize,
    pub max_fitness: T,
    pub mean_fitness: T,
    pub mean_length: T,
    pub population_size: usize,
    /// `0` when the population is unmeasurable.
    pub calculable_length: usize,
    /// `None` when the population is unmeasurable.
    pub complexity: Option<T>,
    pub efficiency: Option<T>,
}

fn mean_length<T: Scalar>(population: &Population) -> T {
    T::from_count(population.total_length()) / T::from_count(population.len())
}

fn raw_fitness<T: Scalar>(population: &Population, config: &EvolutionConfig<T>) -> Vec<T> {
    population
        .members()
        .iter()
        .map(|m| fitness(m, &config.request, &config.alphabet))
        .collect()
}

/// Raw fitness, length and complexity statistics of `population`.
pub fn measure<T: Scalar>(
    generation: usize,
    population: &Population,
    config: &EvolutionConfig<T>,
) -> Result<GenerationStats<T>> {
    if population.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let raw = raw_fitness(population, config);
    let max_fitness = raw.iter().copied().fold(T::zero(), T::max);
    // Summation rounding must not lift the mean above the maximum.
    let mean_fitness =
        (raw.iter().fold(T::zero(), |acc, &f| acc + f) / T::from_count(raw.len())).min(max_fitness);
    let (calculable_length, complexity, efficiency) =
        match physical_complexity_variable::<T>(population) {
            Ok(report) => (
                report.calculable_length,
                Some(report.complexity),
                Some(report.efficiency),
            ),
            Err(Error::Unmeasurable { .. }) => (calculable_length(population)?, None, None),
            Err(e) => return Err(e),
        };
    Ok(GenerationStats {
        generation,
        max_fitness,
        mean_fitness,
        mean_length: mean_length(population),
        population_size: population.len(),
        calculable_length,
        complexity,
        efficiency,
    })
}

fn operator_count<T: Scalar>(fraction: T, population_size: usize) -> usize {
    (fraction * T::from_count(population_size))
        .floor()
        .to_usize()
        .unwrap_or(0)
        .min(population_size)
}

/// Advances one generation and returns the new state with the statistics of
/// the population it produced.
pub fn step_generation<T: Scalar>(
    state: EvolutionState,
    config: &EvolutionConfig<T>,
) -> Result<(EvolutionState, GenerationStats<T>)> {
    let EvolutionState {
        generation,
        population,
        mut rng,
    } = state;
    if population.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let alphabet_size = config.alphabet.size();

    let mean = mean_length::<T>(&population);
    let wheel: Vec<T> = match config.selection {
        SelectionMode::Discriminating => raw_fitness(&population, config)
            .into_iter()
            .zip(population.members())
            .map(|(raw, m)| {
                parsimony_adjusted_fitness(raw, m.len(), mean, config.parsimony_coefficient)
            })
            .collect(),
        SelectionMode::NonDiscriminating => vec![T::one(); population.len()],
    };

    let target = target_population_size(mean, alphabet_size, config.population_floor);
    let mut members = select(&population, &wheel, target, &mut rng)?.into_members();

    let crossing = operator_count(config.crossover_fraction, members.len()) & !1;
    let parents = distinct_indices(&mut rng, members.len(), crossing);
    for pair in parents.chunks_exact(2) {
        let (a, b) = crossover_pair(&members[pair[0]], &members[pair[1]], &mut rng);
        members[pair[0]] = a;
        members[pair[1]] = b;
    }

    let mutating = operator_count(config.mutation_fraction, members.len());
    for index in distinct_indices(&mut rng, members.len(), mutating) {
        members[index] = mutate(&members[index], alphabet_size, &mut rng).0;
    }

    let population = Population::with_alphabet(members, &config.alphabet)?;
    let stats = measure(generation + 1, &population, config)?;
    Ok((
        EvolutionState {
            generation: generation + 1,
            population,
            rng,
        },
        stats,
    ))
}

#[derive(Debug, Clone)]
pub struct RunOutput<T> {
    /// One entry per generation, `0..=generations`.
    pub stats: Vec<GenerationStats<T>>,
    pub final_state: EvolutionState,
}

/// Runs `config.generations` generations from a fresh initial population.
pub fn run<T: Scalar>(config: &EvolutionConfig<T>) -> Result<RunOutput<T>> {
    run_observed(config, |_, _| Ok::<(), Error>(()))
}

/// Like [`run`], calling `observe` after generation 0 and after every step.
/// An error from the observer stops the run.
pub fn run_observed<T, E, F>(
    config: &EvolutionConfig<T>,
    mut observe: F,
) -> std::result::Result<RunOutput<T>, E>
where
    T: Scalar,
    E: From<Error>,
    F: FnMut(&EvolutionState, &GenerationStats<T>) -> std::result::Result<(), E>,
{
    let mut state = EvolutionState::initial(config)?;
    let first = measure(0, &state.population, config)?;
    observe(&state, &first)?;
    let mut stats = Vec::with_capacity(config.generations + 1);
    stats.push(first);
    for _ in 0..config.generations {
        let (next, generation_stats) = step_generation(state, config)?;
        observe(&next, &generation_stats)?;
        stats.push(generation_stats);
        state = next;
    }
    Ok(RunOutput {
        stats,
        final_state: state,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::Agent;

    fn small_config(seed: u64) -> EvolutionConfig<f64> {
        let agents = (0..4)
            .map(|i| Agent::new(i, vec![i as i64 * 2, i as i64 * 2 + 1]).unwrap())
            .collect();
        let alphabet = Alphabet::new(agents).unwrap();
        let mut config =
            EvolutionConfig::new(UserRequest::new(vec![1, 4]).unwrap(), alphabet, seed);
        config.generations = 20;
        config
    }

    #[test]
    fn perfect_identical_population_is_a_fixed_point() {
        let mut config = small_config(1);
        config.crossover_fraction = 0.0;
        config.mutation_fraction = 0.0;
        // Agents 0 and 2 offer 1 and 4.
        let members = vec![AgentSequence::new(vec![0, 2]).unwrap(); 8];
        let population = Population::with_alphabet(members, &config.alphabet).unwrap();
        let state = EvolutionState::from_parts(0, population.clone(), ChaCha8Rng::seed_from_u64(5))
            .unwrap();
        let (next, stats) = step_generation(state, &config).unwrap();
        assert_eq!(next.population(), &population);
        assert_eq!(next.generation(), 1);
        assert_eq!(stats.max_fitness, 1.0);
        assert_eq!(stats.efficiency, Some(1.0));
    }

    #[test]
    fn one_step_is_deterministic() {
        let config = small_config(77);
        let a = step_generation(EvolutionState::initial(&config).unwrap(), &config).unwrap();
        let b = step_generation(EvolutionState::initial(&config).unwrap(), &config).unwrap();
        assert_eq!(a.0, b.0);
        assert_eq!(a.1, b.1);
    }

    #[test]
    fn zero_generations_measures_initial_population() {
        let mut config = small_config(3);
        config.generations = 0;
        let out = run(&config).unwrap();
        assert_eq!(out.stats.len(), 1);
        assert_eq!(out.stats[0].generation, 0);
        assert_eq!(out.stats[0].population_size, config.population_floor);
        let lengths = out
            .final_state
            .population()
            .members()
            .iter()
            .map(AgentSequence::len);
        assert!(lengths
            .into_iter()
            .all(|l| (1..=INITIAL_MAX_LENGTH).contains(&l)));
    }

    #[test]
    fn same_seed_same_trajectory() {
        let config = small_config(11);
        let a = run(&config).unwrap();
        let b = run(&config).unwrap();
        assert_eq!(a.stats, b.stats);
        assert_eq!(a.final_state, b.final_state);
        let c = run(&small_config(12)).unwrap();
        assert_ne!(a.stats, c.stats);
    }

    #[test]
    fn population_size_follows_pre_selection_mean_length() {
        let config = small_config(21);
        let mut state = EvolutionState::initial(&config).unwrap();
        for _ in 0..15 {
            let mean = mean_length::<f64>(state.population());
            let expected = target_population_size(mean, 4, config.population_floor);
            let (next, stats) = step_generation(state, &config).unwrap();
            assert_eq!(next.population().len(), expected);
            assert_eq!(stats.population_size, expected);
            assert!(stats.max_fitness >= stats.mean_fitness);
            state = next;
        }
    }

    #[test]
    fn stats_match_direct_measurement() {
        let config = small_config(8);
        let out = run(&config).unwrap();
        let last = out.stats.last().unwrap();
        let direct = measure(last.generation, out.final_state.population(), &config).unwrap();
        assert_eq!(last, &direct);
    }

    #[test]
    fn observer_sees_every_generation() {
        let config = small_config(2);
        let mut seen = Vec::new();
        run_observed(&config, |state, stats| {
            assert_eq!(state.generation(), stats.generation);
            seen.push(stats.generation);
            Ok::<(), Error>(())
        })
        .unwrap();
        assert_eq!(seen, (0..=20).collect::<Vec<_>>());
    }

    #[test]
    fn invalid_config_rejected_before_work() {
        let mut config = small_config(0);
        config.mutation_fraction = 1.5;
        assert!(matches!(run(&config), Err(Error::InvalidConfig(_))));
        let mut config = small_config(0);
        config.population_floor = 3;
        assert!(matches!(run(&config), Err(Error::InvalidConfig(_))));
        let mut config = small_config(0);
        config.parsimony_coefficient = -0.1;
        assert!(matches!(run(&config), Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn operator_counts_round_down() {
        assert_eq!(operator_count(0.1, 48), 4);
        assert_eq!(operator_count(0.1, 59), 5);
        assert_eq!(operator_count(0.0, 59), 0);
        assert_eq!(operator_count(1.0, 7), 7);
        assert_eq!(operator_count(0.1, 59) & !1, 4);
    }
}
