//! Per-site entropy, Physical Complexity (fixed and variable length) and
//! Efficiency.
//!
//! Sites are positional and 1-based. The symbol distribution at site `i` is
//! taken over the members long enough to reach it, so its probabilities are
//! normalised by `sample_size(i)`, never by the population size. Entropies
//! use base `|D|` of the population's alphabet, with `0·log 0 = 0`.
//!
//! For a variable-length population only sites `1..=ℓ_V` are measured, where
//! the calculable length `ℓ_V` is the largest `L` with
//! `sample_size(L) >= |D|·L`. Sites past `ℓ_V` take no part in any sum; the
//! report carries `ℓ_max` separately.

use std::collections::BTreeMap;

use log::warn;

use crate::domain::{Population, Symbol};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Symbol counts at one site across all members that reach it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SiteDistribution {
    site: usize,
    counts: BTreeMap<Symbol, usize>,
    sample_size: usize,
}

impl SiteDistribution {
    /// Builds a distribution from raw counts; zero counts are dropped.
    pub fn from_counts(site: usize, counts: impl IntoIterator<Item = (Symbol, usize)>) -> Self {
        let mut table = BTreeMap::new();
        for (symbol, count) in counts {
            if count > 0 {
                *table.entry(symbol).or_insert(0) += count;
            }
        }
        let sample_size = table.values().sum();
        Self {
            site,
            counts: table,
            sample_size,
        }
    }

    pub fn site(&self) -> usize {
        self.site
    }

    pub fn counts(&self) -> &BTreeMap<Symbol, usize> {
        &self.counts
    }

    pub fn count(&self, symbol: Symbol) -> usize {
        self.counts.get(&symbol).copied().unwrap_or(0)
    }

    pub fn sample_size(&self) -> usize {
        self.sample_size
    }

    /// `p_d(i)`; `None` when the distribution has no samples.
    pub fn probability<T: Scalar>(&self, symbol: Symbol) -> Option<T> {
        (self.sample_size > 0)
            .then(|| T::from_count(self.count(symbol)) / T::from_count(self.sample_size))
    }
}

/// Measurements of one population up to its calculable length.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexityReport<T> {
    /// `ℓ_V`.
    pub calculable_length: usize,
    /// `H_V(i)` for sites `1..=ℓ_V`, each in `[0, 1]`.
    pub per_site_entropy: Vec<T>,
    /// `C_V = ℓ_V − Σ H_V(i)`.
    pub complexity: T,
    /// `C_{V_P} = ℓ_V`.
    pub complexity_potential: T,
    /// `E = C_V / ℓ_V`.
    pub efficiency: T,
    /// `ℓ_max`.
    pub max_length: usize,
}

/// `sample_sizes[i]` is the number of members with length `>= i + 1`, for
/// sites `1..=ℓ_max`.
pub fn sample_size_table(population: &Population) -> Vec<usize> {
    let max_length = population.max_length();
    let mut by_length = vec![0usize; max_length + 1];
    for member in population.members() {
        by_length[member.len()] += 1;
    }
    let mut table = vec![0usize; max_length];
    let mut reaching = 0;
    for site in (1..=max_length).rev() {
        reaching += by_length[site];
        table[site - 1] = reaching;
    }
    table
}

/// Number of members whose length is at least `site`.
pub fn sample_size(population: &Population, site: usize) -> Result<usize> {
    if site == 0 {
        return Err(Error::SiteOutOfRange {
            site,
            max_site: population.max_length(),
        });
    }
    Ok(population
        .members()
        .iter()
        .filter(|m| m.len() >= site)
        .count())
}

/// Symbol counts at `site`, which must lie in `1..=ℓ_max`.
pub fn site_distribution(population: &Population, site: usize) -> Result<SiteDistribution> {
    let max_site = population.max_length();
    if site == 0 || site > max_site {
        return Err(Error::SiteOutOfRange { site, max_site });
    }
    let mut counts = BTreeMap::new();
    let mut sample_size = 0;
    for symbol in population.members().iter().filter_map(|m| m.site(site)) {
        *counts.entry(symbol).or_insert(0) += 1;
        sample_size += 1;
    }
    Ok(SiteDistribution {
        site,
        counts,
        sample_size,
    })
}

/// Base-`|D|` Shannon entropy of a site distribution, in `[0, 1]`.
///
/// Returns exactly `0` for a unanimous site and exactly `1` when every one
/// of the `|D|` symbols occurs equally often.
pub fn per_site_entropy<T: Scalar>(
    distribution: &SiteDistribution,
    alphabet_size: usize,
) -> Result<T> {
    if alphabet_size < 2 {
        return Err(Error::AlphabetTooSmall(alphabet_size));
    }
    if distribution.sample_size == 0 {
        return Err(Error::EmptyDistribution);
    }
    if let Some(&symbol) = distribution.counts.keys().find(|&&s| s >= alphabet_size) {
        return Err(Error::SymbolOutOfRange {
            symbol,
            alphabet_size,
        });
    }

    let counts = &distribution.counts;
    if counts.len() == 1 {
        return Ok(T::zero());
    }
    let mut values = counts.values();
    let first = values.next().copied();
    if counts.len() == alphabet_size && values.all(|&c| Some(c) == first) {
        return Ok(T::one());
    }

    let n = T::from_count(distribution.sample_size);
    let nats = counts
        .values()
        .map(|&c| {
            let c = T::from_count(c);
            (c / n) * (n / c).ln()
        })
        .fold(T::zero(), |acc, x| acc + x);
    let h = nats / T::from_count(alphabet_size).ln();
    Ok(h.max(T::zero()).min(T::one()))
}

/// `ℓ_V`: the largest `L` in `1..=ℓ_max` with `sample_size(L) >= |D|·L`, or
/// `0` when no site qualifies.
pub fn calculable_length(population: &Population) -> Result<usize> {
    if population.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    Ok(calculable_length_from_table(
        &sample_size_table(population),
        population.alphabet_size(),
    ))
}

fn calculable_length_from_table(table: &[usize], alphabet_size: usize) -> usize {
    table
        .iter()
        .enumerate()
        .rev()
        .find(|&(i, &samples)| samples >= alphabet_size.saturating_mul(i + 1))
        .map_or(0, |(i, _)| i + 1)
}

fn site_entropies<T: Scalar>(population: &Population, sites: usize) -> Result<Vec<T>> {
    (1..=sites)
        .map(|site| {
            let distribution = site_distribution(population, site)?;
            per_site_entropy(&distribution, population.alphabet_size())
        })
        .collect()
}

fn sum<T: Scalar>(values: &[T]) -> T {
    values.iter().fold(T::zero(), |acc, &h| acc + h)
}

/// `C = ℓ − Σ H(i)` for a population whose members all have length `ℓ`.
///
/// A population smaller than `|D|·ℓ` is still measured, with a warning.
pub fn physical_complexity_fixed<T: Scalar>(population: &Population) -> Result<T> {
    if population.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let (min, max) = (population.min_length(), population.max_length());
    if min != max {
        return Err(Error::MixedLengths { min, max });
    }
    let required = population.alphabet_size().saturating_mul(max);
    if population.len() < required {
        warn!(
            "population of {} is below |D|·ℓ = {required}; complexity estimate is unreliable",
            population.len()
        );
    }
    let entropies = site_entropies::<T>(population, max)?;
    Ok(T::from_count(max) - sum(&entropies))
}

/// Variable-length Physical Complexity and Efficiency.
///
/// Fails with [`Error::Unmeasurable`] (carrying the sample-size table) when
/// `ℓ_V = 0`.
pub fn physical_complexity_variable<T: Scalar>(
    population: &Population,
) -> Result<ComplexityReport<T>> {
    if population.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let table = sample_size_table(population);
    let calculable = calculable_length_from_table(&table, population.alphabet_size());
    if calculable == 0 {
        return Err(Error::Unmeasurable {
            alphabet_size: population.alphabet_size(),
            sample_sizes: table,
        });
    }
    let per_site_entropy = site_entropies::<T>(population, calculable)?;
    let potential = T::from_count(calculable);
    let complexity = potential - sum(&per_site_entropy);
    Ok(ComplexityReport {
        calculable_length: calculable,
        per_site_entropy,
        complexity,
        complexity_potential: potential,
        efficiency: complexity / potential,
        max_length: population.max_length(),
    })
}

/// `E = C_V / ℓ_V`.
pub fn efficiency<T: Scalar>(population: &Population) -> Result<T> {
    physical_complexity_variable(population).map(|r| r.efficiency)
}
