use std::collections::BTreeMap;

use num_bigint::BigUint;
use num_traits::{One, Zero};
use rand::RngCore;

use super::DecomposeError;
use crate::groups::{AbelianGroup, GroupElement};
use crate::numtheory::{factor_biguint, DEFAULT_SEED};

/// `ceil(2k + c * sqrt(k))`, computed without floating point.
pub fn sample_count(k: u64, c: u64) -> u64 {
    let radicand = BigUint::from(c) * c * k;
    let root = radicand.sqrt();
    let ceil_root = if &root * &root == radicand {
        root
    } else {
        root + 1u32
    };
    let extra = u64::try_from(ceil_root).unwrap_or(u64::MAX);
    k.saturating_mul(2).saturating_add(extra)
}

/// Draws `ceil(2k + c sqrt(k))` uniform elements. When `2^k >= |G|` the
/// draw generates `G` except with probability exponentially small in `c`.
pub fn sample_generating_set(
    group: &dyn AbelianGroup,
    k: u64,
    c: u64,
    rng: &mut dyn RngCore,
) -> Vec<GroupElement> {
    (0..sample_count(k, c)).map(|_| group.sample(rng)).collect()
}

/// One prime-power piece of an element: `element` has order `prime^exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimePowerPart {
    pub element: GroupElement,
    pub prime: BigUint,
    pub exponent: u32,
}

impl PrimePowerPart {
    pub fn order(&self) -> BigUint {
        self.prime.pow(self.exponent)
    }
}

/// Splits `a` of order `ord = prod p_i^t_i` into `a^(ord / p_i^t_i)`, each of
/// order exactly `p_i^t_i`. The pieces generate `<a>`.
pub fn split_prime_power(
    group: &dyn AbelianGroup,
    a: &GroupElement,
    ord: &BigUint,
) -> Result<Vec<PrimePowerPart>, DecomposeError> {
    let id = group.identity();
    let wrong = || DecomposeError::WrongOrder {
        element: group.display(a),
        claimed: ord.clone(),
    };
    if ord.is_zero() || group.pow_u(a, ord) != id {
        return Err(wrong());
    }
    let mut parts = Vec::new();
    for (p, t) in factor_biguint(ord, DEFAULT_SEED).factors() {
        let pt = p.pow(*t);
        let x = group.pow_u(a, &(ord / &pt));
        // x^(p^t) = 1 holds already; minimality fails iff x^(p^(t-1)) = 1
        if group.pow_u(&x, &p.pow(t - 1)) == id {
            return Err(wrong());
        }
        parts.push(PrimePowerPart {
            element: x,
            prime: p.clone(),
            exponent: *t,
        });
    }
    Ok(parts)
}

/// Generators of one Sylow subgroup together with `q = p^max_exponent`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SylowBucket {
    pub generators: Vec<GroupElement>,
    pub max_exponent: u32,
    pub q: BigUint,
}

/// Groups prime-power parts by prime.
pub fn sylow_bucket(parts: Vec<PrimePowerPart>) -> BTreeMap<BigUint, SylowBucket> {
    let mut out: BTreeMap<BigUint, SylowBucket> = BTreeMap::new();
    for part in parts {
        let bucket = out.entry(part.prime.clone()).or_insert_with(|| SylowBucket {
            generators: Vec::new(),
            max_exponent: 0,
            q: BigUint::one(),
        });
        bucket.generators.push(part.element);
        if part.exponent > bucket.max_exponent {
            bucket.max_exponent = part.exponent;
            bucket.q = part.prime.pow(part.exponent);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{CyclicProduct, ZnStar};

    #[test]
    fn sample_counts() {
        assert_eq!(sample_count(3, 2), 10);
        assert_eq!(sample_count(4, 3), 14);
        assert_eq!(sample_count(9, 3), 27);
        assert_eq!(sample_count(5, 0), 10);
        assert_eq!(sample_count(0, 3), 0);
    }

    #[test]
    fn trivial_group_samples_identity() {
        let g = CyclicProduct::new(&[1]).unwrap();
        let mut rng = rand::rngs::mock::StepRng::new(0, 1);
        let s = sample_generating_set(&g, 4, 1, &mut rng);
        assert_eq!(s.len(), 10);
        assert!(s.iter().all(|x| *x == g.identity()));
    }

    #[test]
    fn split_identity() {
        let g = ZnStar::new(15u32).unwrap();
        assert!(split_prime_power(&g, &g.identity(), &BigUint::one()).unwrap().is_empty());
    }

    #[test]
    fn split_already_prime_power() {
        let g = ZnStar::new(15u32).unwrap();
        let two = g.element(2u32).unwrap();
        let parts = split_prime_power(&g, &two, &BigUint::from(4u32)).unwrap();
        assert_eq!(
            parts,
            vec![PrimePowerPart {
                element: two,
                prime: BigUint::from(2u32),
                exponent: 2
            }]
        );
    }

    #[test]
    fn split_order_six() {
        let g = CyclicProduct::new(&[6]).unwrap();
        let a = g.element(&[1]).unwrap();
        let parts = split_prime_power(&g, &a, &BigUint::from(6u32)).unwrap();
        assert_eq!(parts.len(), 2);
        assert_eq!(g.coords(&parts[0].element), vec![3]);
        assert_eq!((parts[0].prime.clone(), parts[0].exponent), (BigUint::from(2u32), 1));
        assert_eq!(g.coords(&parts[1].element), vec![2]);
        assert_eq!((parts[1].prime.clone(), parts[1].exponent), (BigUint::from(3u32), 1));
    }

    #[test]
    fn split_detects_wrong_order() {
        let g = CyclicProduct::new(&[6]).unwrap();
        let a = g.element(&[1]).unwrap();
        for bad in [1u32, 2, 3, 12] {
            assert!(
                matches!(
                    split_prime_power(&g, &a, &BigUint::from(bad)),
                    Err(DecomposeError::WrongOrder { .. })
                ),
                "{bad}"
            );
        }
    }

    #[test]
    fn buckets() {
        let g = CyclicProduct::new(&[36]).unwrap();
        let part = |x: u64, p: u32, e: u32| PrimePowerPart {
            element: g.element(&[x]).unwrap(),
            prime: BigUint::from(p),
            exponent: e,
        };
        let b = sylow_bucket(vec![part(9, 2, 2), part(12, 3, 1), part(4, 3, 2)]);
        assert_eq!(b.len(), 2);
        assert_eq!(b[&BigUint::from(2u32)].q, BigUint::from(4u32));
        assert_eq!(b[&BigUint::from(2u32)].generators.len(), 1);
        assert_eq!(b[&BigUint::from(3u32)].q, BigUint::from(9u32));
        assert_eq!(b[&BigUint::from(3u32)].generators.len(), 2);

        assert!(sylow_bucket(vec![]).is_empty());

        let b = sylow_bucket(vec![part(18, 2, 1), part(18, 2, 1), part(0, 2, 3)]);
        assert_eq!(b[&BigUint::from(2u32)].generators.len(), 3);
        assert_eq!(b[&BigUint::from(2u32)].q, BigUint::from(8u32));
    }
}
