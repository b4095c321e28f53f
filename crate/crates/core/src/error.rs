use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("alphabet size must be at least 2, got {0}")]
    AlphabetTooSmall(usize),

    #[error("sequence length must be at least 1")]
    ZeroLength,

    #[error("agent {id} has no attributes")]
    EmptyAttributes { id: usize },

    #[error("agent at position {position} has id {id}; ids must equal their position")]
    MisnumberedAgent { position: usize, id: usize },

    #[error("agent sequences must not be empty")]
    EmptySequence,

    #[error("symbol {symbol} is outside an alphabet of size {alphabet_size}")]
    SymbolOutOfRange { symbol: usize, alphabet_size: usize },

    #[error("a user request needs at least one required attribute")]
    EmptyRequest,

    #[error("population is empty")]
    EmptyPopulation,

    #[error("site {site} is outside 1..={max_site}")]
    SiteOutOfRange { site: usize, max_site: usize },

    #[error("site distribution has no samples; entropy is undefined")]
    EmptyDistribution,

    #[error("fixed-length complexity needs equal member lengths, found {min} to {max}")]
    MixedLengths { min: usize, max: usize },

    /// No site `L` has `sample_size(L) >= |D|·L`. `sample_sizes[i]` is the
    /// sample size at site `i + 1`.
    #[error(
        "unmeasurable population: no site has at least {alphabet_size}×site samples \
         (sample sizes by site: {sample_sizes:?})"
    )]
    Unmeasurable {
        alphabet_size: usize,
        sample_sizes: Vec<usize>,
    },

    #[error("target population size must be at least 1")]
    ZeroTarget,

    #[error("{fitness} fitness values supplied for {members} members")]
    FitnessLengthMismatch { fitness: usize, members: usize },

    #[error("fitness values must be positive and finite")]
    NonPositiveFitness,

    #[error("invalid evolution config: {0}")]
    InvalidConfig(String),

    #[error("arithmetic overflow computing {0}")]
    Overflow(&'static str),
}
