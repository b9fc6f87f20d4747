use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::One;

use super::DecomposeError;
use crate::groups::{AbelianGroup, GroupElement};
use crate::hsp::{HiddenSubgroupOracle, HspInstance, RelationLattice};
use crate::intlinalg::{snf, IntMatrix};

/// A cyclic summand given as an exponent vector over the input generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CyclicFactor {
    pub combination: Vec<BigInt>,
    pub order: BigUint,
}

/// Direct-sum basis of `Z^k / intcol(m)` for a full-rank `m` with `k` rows.
///
/// With `u m v = [D 0]`, the columns of `u^-1` map to elements of orders
/// `d_1 | d_2 | ...`; those with `d_i = 1` are trivial and dropped.
pub fn reduce_lattice(m: &IntMatrix) -> Result<Vec<CyclicFactor>, DecomposeError> {
    let s = snf(m);
    if s.rank() < m.rows() {
        return Err(DecomposeError::InfiniteOrder {
            rank: s.rank(),
            generators: m.rows(),
        });
    }
    Ok(s.d
        .iter()
        .enumerate()
        .filter(|(_, d)| !d.is_one())
        .map(|(i, d)| CyclicFactor {
            combination: s.u_inv.column(i),
            order: d.magnitude().clone(),
        })
        .collect())
}

fn combine(group: &dyn AbelianGroup, gens: &[GroupElement], x: &[BigInt]) -> GroupElement {
    gens.iter()
        .zip(x)
        .fold(group.identity(), |acc, (a, e)| group.op(&acc, &group.pow(a, e)))
}

/// Given generators and their full relation lattice, returns elements
/// `g_1, ..., g_l` with `<gens> = <g_1> + ... + <g_l>` (direct), paired
/// with their orders, which form a divisibility chain.
pub fn reduce_generators(
    group: &dyn AbelianGroup,
    gens: &[GroupElement],
    lattice: &RelationLattice,
) -> Result<Vec<(GroupElement, BigUint)>, DecomposeError> {
    if lattice.m.rows() != gens.len() {
        return Err(DecomposeError::LatticeShape {
            rows: lattice.m.rows(),
            generators: gens.len(),
        });
    }
    Ok(reduce_lattice(&lattice.m)?
        .into_iter()
        .map(|f| (combine(group, gens, &f.combination), f.order))
        .collect())
}

/// `[q I | a]`: relations of the cosets `e_i + K` in `Z_q^k / K` when the
/// columns of `a` generate `K`.
pub fn quotient_generators(q: &BigUint, k: usize, a: &IntMatrix) -> Result<IntMatrix, DecomposeError> {
    if a.rows() != k {
        return Err(DecomposeError::LatticeShape {
            rows: a.rows(),
            generators: k,
        });
    }
    let scaled = IntMatrix::identity(k).scale(&BigInt::from(q.clone()));
    Ok(scaled.hconcat(a).expect("both blocks have k rows"))
}

/// Decomposes `<gens>` for generators of prime-power order dividing `q`:
/// find the hidden subgroup `K` of `Z_q^k`, reduce `Z_q^k / K` to a direct
/// sum of cyclic groups, and map the resulting vectors back into the group.
pub fn decompose_group(
    group: &dyn AbelianGroup,
    gens: &[GroupElement],
    q: &BigUint,
    oracle: &dyn HiddenSubgroupOracle,
) -> Result<Vec<(GroupElement, BigUint)>, DecomposeError> {
    let inst = HspInstance::new(group, gens.to_vec(), q.clone())?;
    let lattice = oracle.hidden_subgroup(&inst)?;
    let m = quotient_generators(q, gens.len(), &lattice.m)?;
    let qi = BigInt::from(q.clone());
    reduce_lattice(&m)?
        .into_iter()
        .map(|f| {
            let y: Vec<BigInt> = f.combination.iter().map(|x| x.mod_floor(&qi)).collect();
            Ok((inst.evaluate(&y)?, f.order))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{CyclicProduct, ZnStar};
    use crate::hsp::ClassicalOracle;
    use crate::numtheory::order;

    fn mat(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn orders(g: &dyn AbelianGroup, xs: &[(GroupElement, BigUint)]) -> Vec<u64> {
        xs.iter()
            .map(|(x, d)| {
                assert_eq!(order(g, x, &g.exponent_bound()).unwrap(), *d);
                u64::try_from(d).unwrap()
            })
            .collect()
    }

    #[test]
    fn already_cyclic() {
        let g = CyclicProduct::new(&[4]).unwrap();
        let a = g.element(&[1]).unwrap();
        let lat = RelationLattice { m: mat(&[vec![4]]) };
        let out = reduce_generators(&g, std::slice::from_ref(&a), &lat).unwrap();
        assert_eq!(out, vec![(a, BigUint::from(4u32))]);
    }

    #[test]
    fn repeated_generator() {
        let g = CyclicProduct::new(&[2]).unwrap();
        let a = g.element(&[1]).unwrap();
        let lat = RelationLattice {
            m: mat(&[vec![2, 0, 1], vec![0, 2, 1]]),
        };
        let out = reduce_generators(&g, &[a.clone(), a], &lat).unwrap();
        assert_eq!(orders(&g, &out), vec![2]);
    }

    #[test]
    fn trivial_group_reduces_to_nothing() {
        let g = ZnStar::new(2u32).unwrap();
        let lat = RelationLattice {
            m: IntMatrix::identity(2),
        };
        let out = reduce_generators(&g, &[g.identity(), g.identity()], &lat).unwrap();
        assert!(out.is_empty());
    }

    #[test]
    fn rank_deficient_lattice_is_infinite() {
        let g = CyclicProduct::new(&[2]).unwrap();
        let a = g.element(&[1]).unwrap();
        let lat = RelationLattice {
            m: mat(&[vec![2, 0], vec![0, 0]]),
        };
        assert!(matches!(
            reduce_generators(&g, &[a.clone(), a], &lat),
            Err(DecomposeError::InfiniteOrder { rank: 1, generators: 2 })
        ));
    }

    #[test]
    fn quotient_matrices() {
        let m = quotient_generators(&BigUint::from(4u32), 1, &IntMatrix::zeros(1, 0)).unwrap();
        assert_eq!(m, mat(&[vec![4]]));
        let a = mat(&[vec![1], vec![1], vec![1]]);
        let m = quotient_generators(&BigUint::from(2u32), 3, &a).unwrap();
        assert_eq!(
            m,
            mat(&[vec![2, 0, 0, 1], vec![0, 2, 0, 1], vec![0, 0, 2, 1]])
        );
        // gcd of i x i minors: 1, 2, 4; the quotient Z_2^3 / <(1,1,1)> is Z_2^2
        assert_eq!(snf(&m).d, vec![BigInt::one(), BigInt::from(2), BigInt::from(2)]);
        assert!(quotient_generators(&BigUint::from(2u32), 2, &a).is_err());
    }

    #[test]
    fn z8_star_is_two_copies_of_z2() {
        let g = ZnStar::new(8u32).unwrap();
        let gens = [3u32, 5, 7].map(|x| g.element(x).unwrap());
        let out = decompose_group(&g, &gens, &BigUint::from(2u32), &ClassicalOracle::default()).unwrap();
        assert_eq!(orders(&g, &out), vec![2, 2]);
        assert_ne!(out[0].0, out[1].0);
    }

    #[test]
    fn z4_single_generator() {
        let g = CyclicProduct::new(&[4]).unwrap();
        let gens = [g.element(&[1]).unwrap()];
        let out = decompose_group(&g, &gens, &BigUint::from(4u32), &ClassicalOracle::default()).unwrap();
        assert_eq!(orders(&g, &out), vec![4]);
    }

    #[test]
    fn z5_star_is_cyclic() {
        let g = ZnStar::new(5u32).unwrap();
        let gens = [g.element(2u32).unwrap()];
        let out = decompose_group(&g, &gens, &BigUint::from(4u32), &ClassicalOracle::default()).unwrap();
        assert_eq!(orders(&g, &out), vec![4]);
    }

    #[test]
    fn divisibility_chain_in_bucket() {
        let g = CyclicProduct::new(&[2, 8, 4, 2]).unwrap();
        let gens: Vec<_> = [[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1], [1, 3, 2, 1]]
            .iter()
            .map(|x| g.element(x).unwrap())
            .collect();
        let out = decompose_group(&g, &gens, &BigUint::from(8u32), &ClassicalOracle::default()).unwrap();
        assert_eq!(orders(&g, &out), vec![2, 2, 4, 8]);
    }
}
