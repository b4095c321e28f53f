//! Fitness, parsimony pressure, roulette selection, one-point crossover and
//! point mutation.
//!
//! Every random draw goes through [`below`] or [`unit`], which consume whole
//! `u64`s from the generator, so a seeded run replays identically on 32- and
//! 64-bit targets.

use rand::Rng;

use crate::domain::{AgentSequence, Alphabet, Population, Symbol, UserRequest};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Uniform integer in `0..n`. `n` must be positive.
pub(crate) fn below<R: Rng + ?Sized>(rng: &mut R, n: usize) -> usize {
    debug_assert!(n > 0);
    rng.random_range(0..n as u64) as usize
}

/// Uniform real in `[0, 1)`.
pub(crate) fn unit<T: Scalar, R: Rng + ?Sized>(rng: &mut R) -> T {
    T::from_f64_lossy(rng.random::<f64>())
}

/// `k` distinct indices from `0..n`, in random order (partial Fisher-Yates).
pub(crate) fn distinct_indices<R: Rng + ?Sized>(rng: &mut R, n: usize, k: usize) -> Vec<usize> {
    let k = k.min(n);
    let mut pool: Vec<usize> = (0..n).collect();
    for i in 0..k {
        let j = i + below(rng, n - i);
        pool.swap(i, j);
    }
    pool.truncate(k);
    pool
}

/// `1 / (1 + Σ_r |r − a|)` where, for each required value `r`, `a` is the
/// closest attribute offered by any agent of the sequence.
pub fn fitness<T: Scalar>(
    individual: &AgentSequence,
    request: &UserRequest,
    alphabet: &Alphabet,
) -> T {
    let offered: Vec<i64> = individual
        .symbols()
        .iter()
        .filter_map(|&s| alphabet.agent(s))
        .flat_map(|agent| agent.attributes().iter().copied())
        .collect();
    let distance: u64 = request
        .required()
        .iter()
        .map(|&r| {
            offered
                .iter()
                .map(|&a| r.abs_diff(a))
                .min()
                .unwrap_or(u64::MAX)
        })
        .fold(0u64, u64::saturating_add);
    T::one() / (T::one() + T::from_u64(distance).unwrap_or_else(T::max_value))
}

/// Divides `raw` by `1 + coefficient · max(0, length − mean_length)`.
pub fn parsimony_adjusted_fitness<T: Scalar>(
    raw: T,
    length: usize,
    mean_length: T,
    coefficient: T,
) -> T {
    let excess = (T::from_count(length) - mean_length).max(T::zero());
    raw / (T::one() + coefficient * excess)
}

/// Fitness-proportional selection with replacement. Nobody is guaranteed a
/// place in the result, the fittest member included.
pub fn select<T: Scalar, R: Rng + ?Sized>(
    population: &Population,
    fitness: &[T],
    target_size: usize,
    rng: &mut R,
) -> Result<Population> {
    if target_size == 0 {
        return Err(Error::ZeroTarget);
    }
    if population.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    if fitness.len() != population.len() {
        return Err(Error::FitnessLengthMismatch {
            fitness: fitness.len(),
            members: population.len(),
        });
    }
    if fitness.iter().any(|f| !(f.is_finite() && *f > T::zero())) {
        return Err(Error::NonPositiveFitness);
    }

    let mut cumulative = Vec::with_capacity(fitness.len());
    let mut total = T::zero();
    for &f in fitness {
        total = total + f;
        cumulative.push(total);
    }
    let last = cumulative.len() - 1;
    let members = population.members();
    let chosen = (0..target_size)
        .map(|_| {
            let spin = unit::<T, _>(rng) * total;
            let index = cumulative.partition_point(|&c| c <= spin).min(last);
            members[index].clone()
        })
        .collect();
    Population::new(chosen, population.alphabet_size())
}

/// Exchanges tails after the first `cut` sites. `cut` must lie in
/// `1..min(len1, len2)`.
pub fn crossover_at(
    first: &AgentSequence,
    second: &AgentSequence,
    cut: usize,
) -> (AgentSequence, AgentSequence) {
    let (a, b) = (first.symbols(), second.symbols());
    assert!(
        cut >= 1 && cut < a.len().min(b.len()),
        "cut {cut} outside 1..{}",
        a.len().min(b.len())
    );
    let splice = |head: &[Symbol], tail: &[Symbol]| {
        AgentSequence::new([&head[..cut], &tail[cut..]].concat())
            .expect("both halves are non-empty")
    };
    (splice(a, b), splice(b, a))
}

/// One-point crossover at a uniform cut in `1..min(len1, len2)`. Pairs whose
/// shorter parent has a single site are returned unchanged.
pub fn crossover_pair<R: Rng + ?Sized>(
    first: &AgentSequence,
    second: &AgentSequence,
    rng: &mut R,
) -> (AgentSequence, AgentSequence) {
    let shortest = first.len().min(second.len());
    if shortest < 2 {
        return (first.clone(), second.clone());
    }
    let cut = 1 + below(rng, shortest - 1);
    crossover_at(first, second, cut)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutationKind {
    Insert,
    Replace,
    Delete,
}

impl MutationKind {
    pub const ALL: [MutationKind; 3] = [Self::Insert, Self::Replace, Self::Delete];
}

/// Applies one point mutation and returns the result with the kind applied.
///
/// The kind is uniform over insert, replace and delete; a delete drawn on a
/// single-site sequence becomes a replace. A replacement symbol always
/// differs from the one it overwrites.
pub fn mutate<R: Rng + ?Sized>(
    individual: &AgentSequence,
    alphabet_size: usize,
    rng: &mut R,
) -> (AgentSequence, MutationKind) {
    assert!(alphabet_size >= 2, "alphabet needs at least two symbols");
    let mut symbols = individual.symbols().to_vec();
    let mut kind = MutationKind::ALL[below(rng, 3)];
    if kind == MutationKind::Delete && symbols.len() == 1 {
        kind = MutationKind::Replace;
    }
    match kind {
        MutationKind::Insert => {
            let position = below(rng, symbols.len() + 1);
            symbols.insert(position, below(rng, alphabet_size));
        }
        MutationKind::Replace => {
            let position = below(rng, symbols.len());
            let current = symbols[position];
            let mut replacement = below(rng, alphabet_size - 1);
            if replacement >= current {
                replacement += 1;
            }
            symbols[position] = replacement;
        }
        MutationKind::Delete => {
            symbols.remove(below(rng, symbols.len()));
        }
    }
    let mutated = AgentSequence::new(symbols).expect("mutation never empties a sequence");
    (mutated, kind)
}

/// `max(floor, ⌈|D| · mean_length⌉)`.
pub fn target_population_size<T: Scalar>(
    mean_length: T,
    alphabet_size: usize,
    floor: usize,
) -> usize {
    let scaled = (T::from_count(alphabet_size) * mean_length).ceil();
    scaled.to_usize().unwrap_or(usize::MAX).max(floor)
}
