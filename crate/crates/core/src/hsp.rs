//! Hidden subgroup of the exponent map `x -> a1^x1 * ... * ak^xk` on
//! `Z_q^k`.
//!
//! [`HiddenSubgroupOracle`] is the seam where a quantum (or sampled)
//! routine would plug in. [`ClassicalOracle`] computes the relation lattice
//! exactly by walking the subgroup chain `<a1> <= <a1,a2> <= ...`.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;
use thiserror::Error;

use crate::groups::{AbelianGroup, GroupElement};
use crate::intlinalg::IntMatrix;

/// Default element budget for [`ClassicalOracle`].
pub const DEFAULT_CAPACITY: usize = 1 << 20;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HspError {
    #[error("exponent vector has length {found}, expected {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("generator {index} is not annihilated by the modulus {modulus}")]
    ModulusMismatch { index: usize, modulus: BigUint },
    #[error("subgroup of size at least {size} exceeds the oracle capacity of {capacity} elements")]
    CapacityExceeded { size: BigUint, capacity: usize },
}

/// Generators `a1..ak` of a subgroup and a common multiple `q` of their
/// orders.
pub struct HspInstance<'g> {
    group: &'g dyn AbelianGroup,
    generators: Vec<GroupElement>,
    modulus: BigUint,
}

impl<'g> HspInstance<'g> {
    pub fn new(
        group: &'g dyn AbelianGroup,
        generators: Vec<GroupElement>,
        modulus: BigUint,
    ) -> Result<Self, HspError> {
        let id = group.identity();
        for (index, a) in generators.iter().enumerate() {
            if group.pow_u(a, &modulus) != id {
                return Err(HspError::ModulusMismatch { index, modulus });
            }
        }
        Ok(HspInstance {
            group,
            generators,
            modulus,
        })
    }

    pub fn group(&self) -> &'g dyn AbelianGroup {
        self.group
    }

    pub fn generators(&self) -> &[GroupElement] {
        &self.generators
    }

    pub fn modulus(&self) -> &BigUint {
        &self.modulus
    }

    pub fn rank(&self) -> usize {
        self.generators.len()
    }

    /// `a1^x1 * ... * ak^xk`.
    pub fn evaluate(&self, x: &[BigInt]) -> Result<GroupElement, HspError> {
        if x.len() != self.generators.len() {
            return Err(HspError::LengthMismatch {
                expected: self.generators.len(),
                found: x.len(),
            });
        }
        Ok(self
            .generators
            .iter()
            .zip(x)
            .filter(|(_, e)| !e.is_zero())
            .fold(self.group.identity(), |acc, (a, e)| {
                self.group.op(&acc, &self.group.pow(a, e))
            }))
    }
}

/// Integer matrix `m` with `k` rows whose column span is exactly the set
/// of exponent vectors that evaluate to the identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationLattice {
    pub m: IntMatrix,
}

pub trait HiddenSubgroupOracle {
    fn hidden_subgroup(&self, inst: &HspInstance<'_>) -> Result<RelationLattice, HspError>;
}

/// Exact classical relation finder.
///
/// Keeps a table from each element of `H_i = <a1..ai>` to the way it was
/// reached. For `a_{i+1}` it finds the least `e >= 1` with
/// `a_{i+1}^e` in `H_i`; the stored witness `w` gives the relation
/// `e * e_{i+1} - w`. The resulting `k x k` upper-triangular matrix is a
/// basis of the relation lattice, with `|det| = |<a1..ak>|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ClassicalOracle {
    pub capacity: usize,
}

impl Default for ClassicalOracle {
    fn default() -> Self {
        ClassicalOracle {
            capacity: DEFAULT_CAPACITY,
        }
    }
}

/// How a table element was reached: `a_gen^power * entries[parent]`.
struct Step {
    parent: usize,
    generator: usize,
    power: u64,
}

const ROOT: usize = usize::MAX;

fn witness(steps: &[Step], mut at: usize, k: usize) -> Vec<BigInt> {
    let mut w = vec![BigInt::zero(); k];
    while at != ROOT {
        let s = &steps[at];
        w[s.generator] += s.power;
        at = s.parent;
    }
    w
}

impl HiddenSubgroupOracle for ClassicalOracle {
    fn hidden_subgroup(&self, inst: &HspInstance<'_>) -> Result<RelationLattice, HspError> {
        let g = inst.group;
        let k = inst.rank();
        let mut table: HashMap<GroupElement, usize> = HashMap::new();
        let mut elements: Vec<GroupElement> = vec![g.identity()];
        let mut steps: Vec<Step> = vec![Step {
            parent: ROOT,
            generator: 0,
            power: 0,
        }];
        table.insert(g.identity(), 0);

        let mut columns = Vec::with_capacity(k);
        for (i, a) in inst.generators.iter().enumerate() {
            // least e with a^e in H_i; bounded by q because a^q = 1
            let mut e = 1u64;
            let mut power = a.clone();
            let hit = loop {
                if let Some(&at) = table.get(&power) {
                    break at;
                }
                e += 1;
                if BigUint::from(e) > inst.modulus {
                    return Err(HspError::ModulusMismatch {
                        index: i,
                        modulus: inst.modulus.clone(),
                    });
                }
                let size = elements.len() as u128 * u128::from(e);
                if size > self.capacity as u128 {
                    return Err(HspError::CapacityExceeded {
                        size: BigUint::from(size),
                        capacity: self.capacity,
                    });
                }
                power = g.op(&power, a);
            };

            let mut col = witness(&steps, hit, k).into_iter().map(|x| -x).collect::<Vec<_>>();
            col[i] += e;
            columns.push(col);

            if e == 1 {
                continue;
            }
            let base = elements.len();
            let mut shift = a.clone();
            for p in 1..e {
                for at in 0..base {
                    let x = g.op(&shift, &elements[at]);
                    table.insert(x.clone(), elements.len());
                    elements.push(x);
                    steps.push(Step {
                        parent: at,
                        generator: i,
                        power: p,
                    });
                }
                shift = g.op(&shift, a);
            }
        }
        let m = IntMatrix::from_columns(k, &columns).expect("columns have k entries");
        Ok(RelationLattice { m })
    }
}

/// Runs the default [`ClassicalOracle`].
pub fn hidden_subgroup(inst: &HspInstance<'_>) -> Result<RelationLattice, HspError> {
    ClassicalOracle::default().hidden_subgroup(inst)
}

/// Number of elements of `<a1..ak>` implied by a lattice basis from
/// [`ClassicalOracle`], i.e. `|det m|`.
pub fn subgroup_order(lattice: &RelationLattice) -> Option<BigUint> {
    let det = lattice.m.determinant().ok()?;
    (!det.is_zero()).then(|| det.magnitude().clone())
}

impl RelationLattice {
    /// Checks the soundness half of the contract: every column evaluates
    /// to the identity.
    pub fn is_sound(&self, inst: &HspInstance<'_>) -> bool {
        let id = inst.group.identity();
        (0..self.m.cols()).all(|c| inst.evaluate(&self.m.column(c)).is_ok_and(|x| x == id))
    }

    pub fn contains_scaled_basis(&self, q: &BigUint) -> bool {
        let s = crate::intlinalg::snf(&self.m);
        let q = BigInt::from(q.clone());
        (0..self.m.rows()).all(|i| {
            let mut v = vec![BigInt::zero(); self.m.rows()];
            v[i] = q.clone();
            crate::intlinalg::membership_with(&s, &v)
        })
    }
}
