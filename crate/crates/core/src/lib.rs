//! Information-theoretic self-organisation measures for populations of
//! symbol sequences, and a seeded evolutionary simulator for variable-length
//! agent populations.
//!
//! The measures are:
//!
//! - per-site entropy, in base `|D|` of the population's alphabet;
//! - Physical Complexity for fixed-length populations, `ℓ − Σ H(i)`;
//! - its variable-length extension, measured up to the *calculable length*
//!   `ℓ_V` (the last site with at least `|D|·ℓ_V` samples);
//! - Efficiency, the complexity divided by the complexity potential `ℓ_V`.
//!
//! All real-valued code is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below are what the simulator and CLI use. Genotype-space
//! sizes are exact ([`num_bigint::BigUint`]).
//!
//! ```
//! use selforg::{physical_complexity_variable, AgentSequence, Population};
//!
//! let members = vec![
//!     AgentSequence::new(vec![0, 1]).unwrap(),
//!     AgentSequence::new(vec![0, 1]).unwrap(),
//!     AgentSequence::new(vec![0, 1]).unwrap(),
//!     AgentSequence::new(vec![0, 1]).unwrap(),
//! ];
//! let population = Population::new(members, 2).unwrap();
//! let report = physical_complexity_variable::<f64>(&population).unwrap();
//! assert_eq!(report.calculable_length, 2);
//! assert_eq!(report.efficiency, 1.0);
//! ```

pub mod complexity;
pub mod domain;
pub mod error;
pub mod evolution;
pub mod harness;
pub mod scalar;

pub use complexity::{
    calculable_length, efficiency, per_site_entropy, physical_complexity_fixed,
    physical_complexity_variable, sample_size, site_distribution, ComplexityReport,
    SiteDistribution,
};
pub use domain::{
    genotype_space_size, min_population_size, Agent, AgentSequence, Alphabet, Population, Symbol,
    UserRequest,
};
pub use error::{Error, Result};
pub use evolution::{
    EvolutionConfig, EvolutionState, GenerationStats, MutationKind, SelectionMode,
};
pub use scalar::Scalar;

pub type ComplexityReport64 = ComplexityReport<f64>;
pub type ComplexityReport32 = ComplexityReport<f32>;
pub type EvolutionConfig64 = EvolutionConfig<f64>;
pub type GenerationStats64 = GenerationStats<f64>;
