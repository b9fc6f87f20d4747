use num_bigint::{BigUint, RandBigInt};
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::RngCore;

use super::encoding::{put_uint, Reader};
use super::{AbelianGroup, GroupElement, GroupError};
use crate::numtheory::{factor_biguint, Factorization, DEFAULT_SEED};

/// Largest modulus accepted, in bits. Building the group factors N.
pub const MAX_ZN_STAR_BITS: u64 = 80;

/// The multiplicative group of residues modulo N coprime to N.
#[derive(Debug, Clone)]
pub struct ZnStar {
    n: BigUint,
    factorization: Factorization,
    phi: BigUint,
}

impl ZnStar {
    pub fn new(n: impl Into<BigUint>) -> Result<Self, GroupError> {
        let n = n.into();
        if n < BigUint::from(2u32) {
            return Err(GroupError::InvalidModulus(n));
        }
        if n.bits() > MAX_ZN_STAR_BITS {
            return Err(GroupError::TooLarge {
                what: format!("modulus {n}"),
                limit: format!("2^{MAX_ZN_STAR_BITS}"),
            });
        }
        let factorization = factor_biguint(&n, DEFAULT_SEED);
        let phi = factorization.totient();
        Ok(ZnStar {
            n,
            factorization,
            phi,
        })
    }

    pub fn modulus(&self) -> &BigUint {
        &self.n
    }

    pub fn modulus_factorization(&self) -> &Factorization {
        &self.factorization
    }

    /// The element with residue `x`, if `0 < x < N` and `gcd(x, N) = 1`.
    pub fn element(&self, x: impl Into<BigUint>) -> Result<GroupElement, GroupError> {
        let x = x.into();
        if self.is_unit(&x) {
            Ok(self.encode(&x))
        } else {
            Err(GroupError::NotAnElement {
                input: x.to_string(),
                group: self.descriptor(),
            })
        }
    }

    pub fn residue(&self, a: &GroupElement) -> BigUint {
        self.decode(a.as_bytes())
            .unwrap_or_else(|| panic!("{a:?} is not an element of {}", self.descriptor()))
    }

    fn is_unit(&self, x: &BigUint) -> bool {
        !x.is_zero() && *x < self.n && x.gcd(&self.n).is_one()
    }

    fn encode(&self, x: &BigUint) -> GroupElement {
        let mut buf = Vec::new();
        put_uint(&mut buf, x);
        GroupElement::from_bytes(buf)
    }

    fn decode(&self, bytes: &[u8]) -> Option<BigUint> {
        let mut r = Reader::new(bytes);
        let x = r.uint()?;
        r.finish()?;
        self.is_unit(&x).then_some(x)
    }
}

impl AbelianGroup for ZnStar {
    fn descriptor(&self) -> String {
        format!("znstar:{}", self.n)
    }

    fn identity(&self) -> GroupElement {
        self.encode(&BigUint::one())
    }

    fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        self.encode(&(self.residue(a) * self.residue(b) % &self.n))
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        let x = self.residue(a);
        // x^(phi - 1) = x^-1 since x^phi = 1
        self.encode(&x.modpow(&(&self.phi - 1u32), &self.n))
    }

    fn is_element(&self, bytes: &[u8]) -> bool {
        self.decode(bytes).is_some()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> GroupElement {
        let one = BigUint::one();
        loop {
            let x = rng.gen_biguint_range(&one, &self.n);
            if x.gcd(&self.n).is_one() {
                return self.encode(&x);
            }
        }
    }

    fn exponent_bound(&self) -> BigUint {
        self.phi.clone()
    }

    fn cardinality(&self) -> Option<BigUint> {
        Some(self.phi.clone())
    }

    fn display(&self, a: &GroupElement) -> String {
        self.residue(a).to_string()
    }

    fn parse_element(&self, s: &str) -> Result<GroupElement, GroupError> {
        let err = || GroupError::NotAnElement {
            input: s.to_string(),
            group: self.descriptor(),
        };
        if s.is_empty() || !s.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let x: BigUint = s.parse().map_err(|_| err())?;
        if x.to_string() != s {
            // leading zeros
            return Err(err());
        }
        self.element(x).map_err(|_| err())
    }

    fn pow_u(&self, a: &GroupElement, n: &BigUint) -> GroupElement {
        self.encode(&self.residue(a).modpow(n, &self.n))
    }
}
