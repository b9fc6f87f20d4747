//! End-to-end decomposition of a black-box finite Abelian group into a
//! direct sum of cyclic groups of prime-power order.
//!
//! The pipeline samples a generating set, splits every sample into
//! prime-power pieces, buckets the pieces by prime, and decomposes each
//! Sylow subgroup separately through its relation lattice.

mod record;
mod reduce;
mod sampling;
mod verify;

pub use record::{DecompositionRecord, RecordError, SummandRecord};
pub use reduce::{decompose_group, quotient_generators, reduce_generators, reduce_lattice, CyclicFactor};
pub use sampling::{
    sample_count, sample_generating_set, split_prime_power, sylow_bucket, PrimePowerPart, SylowBucket,
};
pub use verify::{verify_decomposition, Rejection, ENUMERATION_LIMIT};

use num_bigint::BigUint;
use num_traits::One;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::groups::{AbelianGroup, GroupElement};
use crate::hsp::{ClassicalOracle, HiddenSubgroupOracle, HspError, DEFAULT_CAPACITY};
use crate::numtheory::{order, NumTheoryError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error(transparent)]
    Hsp(#[from] HspError),
    #[error(transparent)]
    NumTheory(#[from] NumTheoryError),
    #[error("relation lattice has rank {rank} but there are {generators} generators; the group is infinite")]
    InfiniteOrder { rank: usize, generators: usize },
    #[error("relation lattice has {rows} rows for {generators} generators")]
    LatticeShape { rows: usize, generators: usize },
    #[error("{claimed} is not the order of {element}")]
    WrongOrder { element: String, claimed: BigUint },
    #[error("sampled elements generated a subgroup of order {found}, not {expected}, after {attempts} attempts")]
    GenerationFailed {
        found: BigUint,
        expected: BigUint,
        attempts: u32,
    },
}

/// One cyclic summand `<generator>` of order `prime^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Summand {
    pub generator: GroupElement,
    pub prime: BigUint,
    pub exponent: u32,
}

impl Summand {
    pub fn order(&self) -> BigUint {
        self.prime.pow(self.exponent)
    }
}

/// `G = <g_1> + ... + <g_l>` with prime-power orders, sorted by prime and
/// then exponent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    pub summands: Vec<Summand>,
    pub group_order: BigUint,
    /// Seed of the sampling attempt that produced this result.
    pub seed: u64,
    pub margin_c: u64,
    /// Size parameter used for sampling, `2^k >= |G|`.
    pub k: u64,
    pub attempts: u32,
}

impl Decomposition {
    /// `(prime, exponent)` pairs; canonical for the group.
    pub fn invariants(&self) -> Vec<(BigUint, u32)> {
        self.summands.iter().map(|s| (s.prime.clone(), s.exponent)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposeConfig {
    pub seed: u64,
    /// Sampling margin `c` in `2k + c sqrt(k)`.
    pub margin_c: u64,
    /// Element budget of the classical hidden-subgroup oracle.
    pub capacity: usize,
    /// Extra attempts when the sampled set is detectably not generating.
    pub retries: u32,
    /// Overrides the default size parameter.
    pub k: Option<u64>,
}

impl Default for DecomposeConfig {
    fn default() -> Self {
        DecomposeConfig {
            seed: 0,
            margin_c: 3,
            capacity: DEFAULT_CAPACITY,
            retries: 5,
            k: None,
        }
    }
}

/// `k` with `2^k` at least the best size bound the group exposes.
pub fn default_k(group: &dyn AbelianGroup) -> u64 {
    let bound = group.cardinality().unwrap_or_else(|| group.exponent_bound());
    bound.bits().max(1)
}

/// Splits, buckets and decomposes a given list of elements. Returns the
/// summands generating the same subgroup, sorted by `(prime, exponent)`.
pub fn decompose_elements(
    group: &dyn AbelianGroup,
    elements: &[GroupElement],
    oracle: &dyn HiddenSubgroupOracle,
) -> Result<Vec<Summand>, DecomposeError> {
    let bound = group.exponent_bound();
    let mut parts = Vec::new();
    for a in elements {
        let ord = order(group, a, &bound)?;
        parts.extend(split_prime_power(group, a, &ord)?);
    }
    let mut summands = Vec::new();
    for (prime, bucket) in sylow_bucket(parts) {
        for (generator, d) in decompose_group(group, &bucket.generators, &bucket.q, oracle)? {
            let exponent = prime_exponent(&d, &prime);
            summands.push(Summand {
                generator,
                prime: prime.clone(),
                exponent,
            });
        }
    }
    summands.sort_by(|x, y| (&x.prime, x.exponent).cmp(&(&y.prime, y.exponent)));
    Ok(summands)
}

/// `e` with `d = p^e`; `d` comes from a `p`-bucket so it is a power of `p`.
fn prime_exponent(d: &BigUint, p: &BigUint) -> u32 {
    let mut e = 0;
    let mut x = d.clone();
    while x > BigUint::one() {
        debug_assert!((&x % p) == BigUint::from(0u32));
        x /= p;
        e += 1;
    }
    e
}

/// Full pipeline with retries.
///
/// When |G| is known, a result whose summand orders multiply to less than
/// |G| is rejected and the draw is repeated with the next seed and a
/// doubled `k`, up to `config.retries` times. When |G| is unknown the
/// first result is accepted.
pub fn decompose(group: &dyn AbelianGroup, config: &DecomposeConfig) -> Result<Decomposition, DecomposeError> {
    let oracle = ClassicalOracle {
        capacity: config.capacity,
    };
    decompose_with_oracle(group, config, &oracle)
}

pub fn decompose_with_oracle(
    group: &dyn AbelianGroup,
    config: &DecomposeConfig,
    oracle: &dyn HiddenSubgroupOracle,
) -> Result<Decomposition, DecomposeError> {
    let cardinality = group.cardinality();
    let mut k = config.k.unwrap_or_else(|| default_k(group));
    let mut last_order = BigUint::one();
    for attempt in 0..=config.retries {
        let seed = config.seed.wrapping_add(u64::from(attempt));
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = sample_generating_set(group, k, config.margin_c, &mut rng);
        let summands = decompose_elements(group, &samples, oracle)?;
        let group_order: BigUint = summands.iter().map(Summand::order).product();
        let done = cardinality.as_ref().is_none_or(|c| *c == group_order);
        if done {
            return Ok(Decomposition {
                summands,
                group_order,
                seed,
                margin_c: config.margin_c,
                k,
                attempts: attempt + 1,
            });
        }
        last_order = group_order;
        k = k.saturating_mul(2);
    }
    Err(DecomposeError::GenerationFailed {
        found: last_order,
        expected: cardinality.expect("only known cardinalities trigger retries"),
        attempts: config.retries + 1,
    })
}
