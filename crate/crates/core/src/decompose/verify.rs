use std::collections::HashSet;

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive};
use thiserror::Error;

use super::Decomposition;
use crate::groups::AbelianGroup;
use crate::numtheory::is_prime;

/// Largest product of summand orders for which all products
/// `g_1^x_1 ... g_l^x_l` are enumerated.
pub const ENUMERATION_LIMIT: u64 = 10_000;

/// Why a decomposition was rejected.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Rejection {
    #[error("summand {index} is not an element of the group")]
    NotAnElement { index: usize },
    #[error("summand {index} has non-prime base {prime}")]
    NotPrime { index: usize, prime: BigUint },
    #[error("summand {index} has exponent 0")]
    ZeroExponent { index: usize },
    #[error("summand {index} claims an order larger than the group exponent")]
    ExceedsExponent { index: usize },
    #[error("summand {index} does not have order {expected}")]
    WrongOrder { index: usize, expected: BigUint },
    #[error("recorded group order {recorded} differs from the product of summand orders {product}")]
    RecordedOrder { recorded: BigUint, product: BigUint },
    #[error("summand orders multiply to {product} but |G| = {cardinality}")]
    OrderMismatch { product: BigUint, cardinality: BigUint },
    #[error("only {distinct} distinct products out of {expected}: the sum is not direct")]
    NotDirect { distinct: usize, expected: u64 },
}

/// Independent check of a decomposition:
/// every generator has order exactly `p^e`, the orders multiply to |G|
/// (when known), and for small groups the product map
/// `(x_1, ..., x_l) -> g_1^x_1 ... g_l^x_l` is injective, hence bijective.
pub fn verify_decomposition(group: &dyn AbelianGroup, dec: &Decomposition) -> Result<(), Rejection> {
    let id = group.identity();
    let bound_bits = group.exponent_bound().bits();
    for (index, s) in dec.summands.iter().enumerate() {
        if !group.is_element(s.generator.as_bytes()) {
            return Err(Rejection::NotAnElement { index });
        }
        if s.exponent == 0 {
            return Err(Rejection::ZeroExponent { index });
        }
        // p^e >= 2^(e (bits(p) - 1)); reject before computing it
        if s.prime.bits() > bound_bits
            || u64::from(s.exponent).saturating_mul(s.prime.bits().saturating_sub(1)) > bound_bits
        {
            return Err(Rejection::ExceedsExponent { index });
        }
        if !is_prime(&s.prime) {
            return Err(Rejection::NotPrime {
                index,
                prime: s.prime.clone(),
            });
        }
        let full = s.order();
        let below = s.prime.pow(s.exponent - 1);
        if group.pow_u(&s.generator, &full) != id || group.pow_u(&s.generator, &below) == id {
            return Err(Rejection::WrongOrder {
                index,
                expected: full,
            });
        }
    }

    let product: BigUint = dec.summands.iter().map(|s| s.order()).product();
    if product != dec.group_order {
        return Err(Rejection::RecordedOrder {
            recorded: dec.group_order.clone(),
            product,
        });
    }
    if let Some(cardinality) = group.cardinality() {
        if cardinality != product {
            return Err(Rejection::OrderMismatch { product, cardinality });
        }
    }

    if let Some(n) = product.to_u64().filter(|&n| n <= ENUMERATION_LIMIT) {
        let mut all = vec![id];
        for s in &dec.summands {
            let mut next = Vec::with_capacity(all.len() * s.order().to_usize().unwrap_or(1));
            let mut power = group.identity();
            let mut j = BigUint::from(0u32);
            while j < s.order() {
                next.extend(all.iter().map(|x| group.op(x, &power)));
                power = group.op(&power, &s.generator);
                j += BigUint::one();
            }
            all = next;
        }
        let distinct: HashSet<_> = all.into_iter().collect();
        if distinct.len() as u64 != n {
            return Err(Rejection::NotDirect {
                distinct: distinct.len(),
                expected: n,
            });
        }
    }
    Ok(())
}
