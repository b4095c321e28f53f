//! Agents, alphabets, agent-sequences, populations and user requests.

use num_bigint::BigUint;

use crate::error::{Error, Result};

/// Index of an agent in its [`Alphabet`]. Sequences are lists of symbols.
pub type Symbol = usize;

/// One entry of the agent pool: a symbol and the attribute values it offers.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Agent {
    id: Symbol,
    attributes: Vec<i64>,
}

impl Agent {
    pub fn new(id: Symbol, attributes: Vec<i64>) -> Result<Self> {
        if attributes.is_empty() {
            return Err(Error::EmptyAttributes { id });
        }
        Ok(Self { id, attributes })
    }

    pub fn id(&self) -> Symbol {
        self.id
    }

    pub fn attributes(&self) -> &[i64] {
        &self.attributes
    }
}

/// The global agent pool. Its size `|D|` is the entropy base for every
/// measure, so it stays fixed for a whole run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Alphabet {
    agents: Vec<Agent>,
}

impl Alphabet {
    /// Agent ids must be `0..n` in order, with `n >= 2`.
    pub fn new(agents: Vec<Agent>) -> Result<Self> {
        if agents.len() < 2 {
            return Err(Error::AlphabetTooSmall(agents.len()));
        }
        if let Some((position, agent)) = agents.iter().enumerate().find(|(i, a)| a.id != *i) {
            return Err(Error::MisnumberedAgent {
                position,
                id: agent.id,
            });
        }
        Ok(Self { agents })
    }

    pub fn size(&self) -> usize {
        self.agents.len()
    }

    pub fn agents(&self) -> &[Agent] {
        &self.agents
    }

    pub fn agent(&self, id: Symbol) -> Option<&Agent> {
        self.agents.get(id)
    }
}

/// One individual: a non-empty ordered list of agent symbols. Site `i`
/// (1-based) is `symbols()[i - 1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AgentSequence(Vec<Symbol>);

impl AgentSequence {
    pub fn new(symbols: Vec<Symbol>) -> Result<Self> {
        if symbols.is_empty() {
            return Err(Error::EmptySequence);
        }
        Ok(Self(symbols))
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// Always false; kept for API symmetry with `len`.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Symbol at 1-based `site`, if the sequence is that long.
    pub fn site(&self, site: usize) -> Option<Symbol> {
        site.checked_sub(1).and_then(|i| self.0.get(i).copied())
    }

    pub fn into_symbols(self) -> Vec<Symbol> {
        self.0
    }

    pub fn check_symbols(&self, alphabet_size: usize) -> Result<()> {
        match self.0.iter().find(|&&s| s >= alphabet_size) {
            Some(&symbol) => Err(Error::SymbolOutOfRange {
                symbol,
                alphabet_size,
            }),
            None => Ok(()),
        }
    }
}

/// A multiset of agent-sequences over an alphabet of `alphabet_size`
/// symbols. Equality ignores member order.
#[derive(Debug, Clone)]
pub struct Population {
    members: Vec<AgentSequence>,
    alphabet_size: usize,
}

impl Population {
    pub fn new(members: Vec<AgentSequence>, alphabet_size: usize) -> Result<Self> {
        if alphabet_size < 2 {
            return Err(Error::AlphabetTooSmall(alphabet_size));
        }
        for member in &members {
            member.check_symbols(alphabet_size)?;
        }
        Ok(Self {
            members,
            alphabet_size,
        })
    }

    pub fn with_alphabet(members: Vec<AgentSequence>, alphabet: &Alphabet) -> Result<Self> {
        Self::new(members, alphabet.size())
    }

    pub fn members(&self) -> &[AgentSequence] {
        &self.members
    }

    pub fn into_members(self) -> Vec<AgentSequence> {
        self.members
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    /// `ℓ_max`; zero for an empty population.
    pub fn max_length(&self) -> usize {
        self.members
            .iter()
            .map(AgentSequence::len)
            .max()
            .unwrap_or(0)
    }

    pub fn min_length(&self) -> usize {
        self.members
            .iter()
            .map(AgentSequence::len)
            .min()
            .unwrap_or(0)
    }

    pub fn total_length(&self) -> usize {
        self.members.iter().map(AgentSequence::len).sum()
    }
}

impl PartialEq for Population {
    fn eq(&self, other: &Self) -> bool {
        if self.alphabet_size != other.alphabet_size || self.len() != other.len() {
            return false;
        }
        let mut a: Vec<&AgentSequence> = self.members.iter().collect();
        let mut b: Vec<&AgentSequence> = other.members.iter().collect();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }
}

impl Eq for Population {}

/// The attribute values a solution must supply.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UserRequest(Vec<i64>);

impl UserRequest {
    pub fn new(required: Vec<i64>) -> Result<Self> {
        if required.is_empty() {
            return Err(Error::EmptyRequest);
        }
        Ok(Self(required))
    }

    pub fn required(&self) -> &[i64] {
        &self.0
    }
}

fn check_domain(alphabet_size: usize, length: usize) -> Result<()> {
    if alphabet_size < 2 {
        return Err(Error::AlphabetTooSmall(alphabet_size));
    }
    if length < 1 {
        return Err(Error::ZeroLength);
    }
    Ok(())
}

/// Number of distinct genotypes of `length` sites, `|D|^ℓ`, computed exactly.
pub fn genotype_space_size(alphabet_size: usize, length: usize) -> Result<BigUint> {
    check_domain(alphabet_size, length)?;
    let exponent = u32::try_from(length).map_err(|_| Error::Overflow("genotype space size"))?;
    Ok(BigUint::from(alphabet_size).pow(exponent))
}

/// Smallest population for which fixed-length complexity at `length` sites
/// is considered measurable: `|D|·ℓ`.
pub fn min_population_size(alphabet_size: usize, length: usize) -> Result<usize> {
    check_domain(alphabet_size, length)?;
    alphabet_size
        .checked_mul(length)
        .ok_or(Error::Overflow("minimum population size"))
}
