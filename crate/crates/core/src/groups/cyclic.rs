use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rand::{Rng, RngCore};

use super::encoding::{put_uint, Reader};
use super::{AbelianGroup, GroupElement, GroupError};

/// `Z_{m1} x Z_{m2} x ...` under componentwise addition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicProduct {
    moduli: Vec<u64>,
}

impl CyclicProduct {
    pub fn new(moduli: &[u64]) -> Result<Self, GroupError> {
        if moduli.contains(&0) {
            return Err(GroupError::InvalidCyclicModulus);
        }
        Ok(CyclicProduct {
            moduli: moduli.to_vec(),
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    /// The element with coordinates `xs`, reduced into each factor.
    pub fn element(&self, xs: &[u64]) -> Result<GroupElement, GroupError> {
        if xs.len() != self.moduli.len() {
            return Err(GroupError::NotAnElement {
                input: format!("{xs:?}"),
                group: self.descriptor(),
            });
        }
        let reduced: Vec<u64> = xs.iter().zip(&self.moduli).map(|(x, m)| x % m).collect();
        Ok(encode(&reduced))
    }

    pub fn coords(&self, a: &GroupElement) -> Vec<u64> {
        self.decode(a.as_bytes())
            .unwrap_or_else(|| panic!("{a:?} is not an element of {}", self.descriptor()))
    }

    fn decode(&self, bytes: &[u8]) -> Option<Vec<u64>> {
        let mut r = Reader::new(bytes);
        let mut xs = Vec::with_capacity(self.moduli.len());
        for &m in &self.moduli {
            let x = r.uint()?.to_u64()?;
            if x >= m {
                return None;
            }
            xs.push(x);
        }
        r.finish()?;
        Some(xs)
    }
}

fn encode(xs: &[u64]) -> GroupElement {
    let mut buf = Vec::with_capacity(xs.len() * 5);
    for &x in xs {
        put_uint(&mut buf, &BigUint::from(x));
    }
    GroupElement::from_bytes(buf)
}

impl AbelianGroup for CyclicProduct {
    fn descriptor(&self) -> String {
        let ms: Vec<String> = self.moduli.iter().map(u64::to_string).collect();
        format!("cyclic:{}", ms.join(","))
    }

    fn identity(&self) -> GroupElement {
        encode(&vec![0; self.moduli.len()])
    }

    fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement {
        let (xa, xb) = (self.coords(a), self.coords(b));
        let sum: Vec<u64> = xa
            .iter()
            .zip(&xb)
            .zip(&self.moduli)
            .map(|((x, y), &m)| ((u128::from(*x) + u128::from(*y)) % u128::from(m)) as u64)
            .collect();
        encode(&sum)
    }

    fn inverse(&self, a: &GroupElement) -> GroupElement {
        let neg: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| (m - x) % m)
            .collect();
        encode(&neg)
    }

    fn is_element(&self, bytes: &[u8]) -> bool {
        self.decode(bytes).is_some()
    }

    fn sample(&self, rng: &mut dyn RngCore) -> GroupElement {
        let xs: Vec<u64> = self.moduli.iter().map(|&m| rng.gen_range(0..m)).collect();
        encode(&xs)
    }

    fn exponent_bound(&self) -> BigUint {
        self.moduli
            .iter()
            .fold(BigUint::one(), |acc, &m| acc.lcm(&BigUint::from(m)))
    }

    fn cardinality(&self) -> Option<BigUint> {
        Some(self.moduli.iter().map(|&m| BigUint::from(m)).product())
    }

    fn display(&self, a: &GroupElement) -> String {
        let xs: Vec<String> = self.coords(a).iter().map(u64::to_string).collect();
        xs.join(",")
    }

    fn parse_element(&self, s: &str) -> Result<GroupElement, GroupError> {
        let err = || GroupError::NotAnElement {
            input: s.to_string(),
            group: self.descriptor(),
        };
        let toks: Vec<&str> = if s.is_empty() {
            Vec::new()
        } else {
            s.split(',').collect()
        };
        if toks.len() != self.moduli.len() {
            return Err(err());
        }
        let mut xs = Vec::with_capacity(toks.len());
        for (t, &m) in toks.iter().zip(&self.moduli) {
            if t.is_empty() || !t.bytes().all(|b| b.is_ascii_digit()) || (t.len() > 1 && t.starts_with('0')) {
                return Err(err());
            }
            let x: u64 = t.parse().map_err(|_| err())?;
            if x >= m {
                return Err(err());
            }
            xs.push(x);
        }
        Ok(encode(&xs))
    }

    fn pow_u(&self, a: &GroupElement, n: &BigUint) -> GroupElement {
        let xs: Vec<u64> = self
            .coords(a)
            .iter()
            .zip(&self.moduli)
            .map(|(&x, &m)| {
                let e = (n % m).to_u64().expect("reduced below a u64 modulus");
                ((u128::from(x) * u128::from(e)) % u128::from(m)) as u64
            })
            .collect();
        encode(&xs)
    }
}
