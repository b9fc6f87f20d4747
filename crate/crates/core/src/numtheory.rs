//! Classical number theory used in place of quantum subroutines: integer
//! factoring, element orders from a known exponent multiple, and Bézout
//! coefficients.

use num_bigint::{BigInt, BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::groups::{AbelianGroup, GroupElement};

/// Trial division bound before switching to Pollard rho.
const TRIAL_DIVISION_LIMIT: u64 = 1_000_000;

/// Miller–Rabin bases that are deterministic for all n < 3.18 * 10^23.
const MR_BASES: [u32; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Extra random Miller–Rabin rounds for inputs beyond 64 bits.
const MR_EXTRA_ROUNDS: usize = 16;

pub const DEFAULT_SEED: u64 = 0;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NumTheoryError {
    #[error("cannot factor {0}: input must be positive")]
    NonPositive(BigInt),
    #[error("extended gcd of (0, 0) is undefined")]
    BothZero,
    #[error("exponent bound {bound} does not annihilate the element")]
    InvalidBound { bound: BigUint },
    #[error("exponent bound must be positive")]
    ZeroBound,
}

/// Prime factorization as `(prime, exponent)` pairs in ascending prime order.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Factorization {
    factors: Vec<(BigUint, u32)>,
}

impl Factorization {
    pub fn factors(&self) -> &[(BigUint, u32)] {
        &self.factors
    }

    pub fn primes(&self) -> impl Iterator<Item = &BigUint> {
        self.factors.iter().map(|(p, _)| p)
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// The product of all `p^e`.
    pub fn value(&self) -> BigUint {
        self.factors
            .iter()
            .map(|(p, e)| p.pow(*e))
            .product()
    }

    /// Euler's phi of the factored integer.
    pub fn totient(&self) -> BigUint {
        self.factors
            .iter()
            .map(|(p, e)| p.pow(e - 1) * (p - 1u32))
            .product()
    }

    fn insert(&mut self, p: BigUint, e: u32) {
        match self.factors.binary_search_by(|(q, _)| q.cmp(&p)) {
            Ok(i) => self.factors[i].1 += e,
            Err(i) => self.factors.insert(i, (p, e)),
        }
    }
}

/// Factors a positive integer with the default seed.
pub fn factor(n: &BigInt) -> Result<Factorization, NumTheoryError> {
    factor_seeded(n, DEFAULT_SEED)
}

pub fn factor_seeded(n: &BigInt, seed: u64) -> Result<Factorization, NumTheoryError> {
    match n.to_biguint() {
        Some(u) if !u.is_zero() => Ok(factor_biguint(&u, seed)),
        _ => Err(NumTheoryError::NonPositive(n.clone())),
    }
}

/// Factorization of `n >= 1`: trial division up to 10^6, then Brent's
/// variant of Pollard rho on whatever composite cofactor remains.
pub fn factor_biguint(n: &BigUint, seed: u64) -> Factorization {
    assert!(!n.is_zero(), "factor_biguint requires n >= 1");
    let mut out = Factorization::default();
    let mut rest = n.clone();

    if let Some(mut small) = rest.to_u64() {
        trial_divide_u64(&mut small, &mut out);
        rest = BigUint::from(small);
    } else {
        trial_divide_big(&mut rest, &mut out);
    }
    if rest.is_one() {
        return out;
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m.is_one() {
            continue;
        }
        if is_prime_with(&m, &mut rng) {
            out.insert(m, 1);
            continue;
        }
        let d = pollard_brent(&m, &mut rng);
        stack.push(&m / &d);
        stack.push(d);
    }
    out
}

fn trial_divide_u64(n: &mut u64, out: &mut Factorization) {
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT && d * d <= *n {
        if (*n).is_multiple_of(d) {
            let mut e = 0;
            while (*n).is_multiple_of(d) {
                *n /= d;
                e += 1;
            }
            out.insert(BigUint::from(d), e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    // no divisor below d and n < d^2: n is prime
    if *n > 1 && u128::from(*n) < u128::from(d) * u128::from(d) {
        out.insert(BigUint::from(*n), 1);
        *n = 1;
    }
}

fn trial_divide_big(n: &mut BigUint, out: &mut Factorization) {
    let mut d = 2u64;
    while d <= TRIAL_DIVISION_LIMIT && BigUint::from(d * d) <= *n {
        if (&*n % d).is_zero() {
            let mut e = 0;
            while (&*n % d).is_zero() {
                *n /= d;
                e += 1;
            }
            out.insert(BigUint::from(d), e);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() && *n < BigUint::from(d) * d {
        out.insert(std::mem::replace(n, BigUint::one()), 1);
    }
}

/// Primality test: deterministic below 3.18 * 10^23, probabilistic above.
pub fn is_prime(n: &BigUint) -> bool {
    let mut rng = ChaCha8Rng::seed_from_u64(DEFAULT_SEED);
    is_prime_with(n, &mut rng)
}

fn is_prime_with(n: &BigUint, rng: &mut ChaCha8Rng) -> bool {
    let two = BigUint::from(2u32);
    if *n < two {
        return false;
    }
    for &p in &MR_BASES {
        if (n % p).is_zero() {
            return *n == BigUint::from(p);
        }
    }
    let n1 = n - 1u32;
    let s = n1.trailing_zeros().unwrap_or(0);
    let d = &n1 >> s;
    let witness = |a: &BigUint| -> bool {
        let mut x = a.modpow(&d, n);
        if x.is_one() || x == n1 {
            return false;
        }
        for _ in 1..s {
            x = &x * &x % n;
            if x == n1 {
                return false;
            }
        }
        true
    };
    if MR_BASES.iter().any(|&a| witness(&BigUint::from(a))) {
        return false;
    }
    if n.bits() > 64 {
        for _ in 0..MR_EXTRA_ROUNDS {
            let a = rng.gen_biguint_range(&two, &n1);
            if witness(&a) {
                return false;
            }
        }
    }
    true
}

/// A nontrivial divisor of the odd composite `n`.
fn pollard_brent(n: &BigUint, rng: &mut ChaCha8Rng) -> BigUint {
    if n.is_even() {
        return BigUint::from(2u32);
    }
    let one = BigUint::one();
    let batch = 128u64;
    loop {
        let c = rng.gen_biguint_range(&one, n);
        let f = |x: &BigUint| (x * x + &c) % n;
        let mut y = rng.gen_biguint_range(&one, n);
        let mut x = y.clone();
        let mut ys = y.clone();
        let mut g = one.clone();
        let mut q = one.clone();
        let mut r = 1u64;
        while g.is_one() {
            x = y.clone();
            for _ in 0..r {
                y = f(&y);
            }
            let mut k = 0;
            while k < r && g.is_one() {
                ys = y.clone();
                for _ in 0..batch.min(r - k) {
                    y = f(&y);
                    let diff = if x > y { &x - &y } else { &y - &x };
                    q = q * diff % n;
                }
                g = q.gcd(n);
                k += batch;
            }
            r *= 2;
        }
        if g == *n {
            loop {
                ys = f(&ys);
                let diff = if x > ys { &x - &ys } else { &ys - &x };
                g = diff.gcd(n);
                if !g.is_one() {
                    break;
                }
            }
        }
        if g != *n {
            return g;
        }
    }
}

/// `(g, r, s)` with `r p + s q = g = gcd(p, q) >= 0`.
pub fn ext_gcd(p: &BigInt, q: &BigInt) -> Result<(BigInt, BigInt, BigInt), NumTheoryError> {
    if p.is_zero() && q.is_zero() {
        return Err(NumTheoryError::BothZero);
    }
    let e = p.extended_gcd(q);
    Ok((e.gcd, e.x, e.y))
}

/// Least `n >= 1` with `a^n = e`, given a multiple `bound` of that order.
///
/// Factors the bound and strips each prime while the power stays the
/// identity.
pub fn order(
    group: &dyn AbelianGroup,
    a: &GroupElement,
    bound: &BigUint,
) -> Result<BigUint, NumTheoryError> {
    if bound.is_zero() {
        return Err(NumTheoryError::ZeroBound);
    }
    let id = group.identity();
    if group.pow_u(a, bound) != id {
        return Err(NumTheoryError::InvalidBound {
            bound: bound.clone(),
        });
    }
    let mut r = bound.clone();
    for (p, e) in factor_biguint(bound, DEFAULT_SEED).factors() {
        for _ in 0..*e {
            let candidate = &r / p;
            if group.pow_u(a, &candidate) == id {
                r = candidate;
            } else {
                break;
            }
        }
    }
    Ok(r)
}
