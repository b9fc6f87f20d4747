//! Black-box finite Abelian groups.
//!
//! A group is reached only through [`AbelianGroup`]: canonical element
//! encodings, the group operation, inverses, membership recognition,
//! uniform sampling and a known multiple of every element order. Three
//! backends are provided: [`ZnStar`], [`ClassGroup`] and [`CyclicProduct`].

mod classgroup;
mod cyclic;
pub(crate) mod encoding;
mod spec;
mod zn;

pub use classgroup::{ClassGroup, QuadraticForm, MAX_CLASS_GROUP_DISCRIMINANT};
pub use cyclic::CyclicProduct;
pub use spec::GroupSpec;
pub use zn::{ZnStar, MAX_ZN_STAR_BITS};

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, Zero};
use rand::RngCore;
use thiserror::Error;

/// Opaque canonical encoding of a group element. Two elements of the same
/// group are equal iff their encodings are byte-identical.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GroupElement(Vec<u8>);

impl GroupElement {
    pub(crate) fn from_bytes(bytes: Vec<u8>) -> Self {
        GroupElement(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }
}

impl fmt::Debug for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupElement(")?;
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        write!(f, ")")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("Z_N^* needs N >= 2, got {0}")]
    InvalidModulus(BigUint),
    #[error("{0} is not a negative discriminant congruent to 0 or 1 mod 4")]
    InvalidDiscriminant(BigInt),
    #[error("cyclic factor moduli must be >= 1")]
    InvalidCyclicModulus,
    #[error("{what} exceeds the supported size ({limit})")]
    TooLarge { what: String, limit: String },
    #[error("`{input}` is not an element of {group}")]
    NotAnElement { input: String, group: String },
    #[error("invalid group spec `{input}`: {reason}")]
    InvalidSpec { input: String, reason: String },
}

/// The operations a decomposition needs from a finite Abelian group.
///
/// `op`, `inverse` and `display` expect encodings produced by the same
/// group; feeding them foreign bytes is a contract violation and panics.
/// Untrusted bytes go through [`AbelianGroup::is_element`] or
/// [`AbelianGroup::parse_element`] first.
pub trait AbelianGroup: Send + Sync {
    /// Spec string this group was built from, e.g. `znstar:15`.
    fn descriptor(&self) -> String;

    fn identity(&self) -> GroupElement;

    fn op(&self, a: &GroupElement, b: &GroupElement) -> GroupElement;

    fn inverse(&self, a: &GroupElement) -> GroupElement;

    fn is_element(&self, bytes: &[u8]) -> bool;

    /// Checked decoding of a canonical encoding.
    fn element_from_bytes(&self, bytes: &[u8]) -> Result<GroupElement, GroupError> {
        if self.is_element(bytes) {
            Ok(GroupElement::from_bytes(bytes.to_vec()))
        } else {
            Err(GroupError::NotAnElement {
                input: format!("{:?}", GroupElement::from_bytes(bytes.to_vec())),
                group: self.descriptor(),
            })
        }
    }

    /// Uniformly random element.
    fn sample(&self, rng: &mut dyn RngCore) -> GroupElement;

    /// A multiple of every element order.
    fn exponent_bound(&self) -> BigUint;

    /// |G| when the backend knows it.
    fn cardinality(&self) -> Option<BigUint>;

    /// Human-readable form: a residue, `(a,b,c)`, or `x1,x2,...`.
    fn display(&self, a: &GroupElement) -> String;

    /// Inverse of [`AbelianGroup::display`].
    fn parse_element(&self, s: &str) -> Result<GroupElement, GroupError>;

    /// `a^n` by square-and-multiply.
    fn pow_u(&self, a: &GroupElement, n: &BigUint) -> GroupElement {
        let mut acc = self.identity();
        let bits = n.bits();
        for i in (0..bits).rev() {
            acc = self.op(&acc, &acc);
            if n.bit(i) {
                acc = self.op(&acc, a);
            }
        }
        acc
    }

    /// `a^n` for any integer `n`; negative powers go through the inverse.
    fn pow(&self, a: &GroupElement, n: &BigInt) -> GroupElement {
        if n.is_negative() {
            self.pow_u(&self.inverse(a), n.magnitude())
        } else if n.is_zero() {
            self.identity()
        } else {
            self.pow_u(a, n.magnitude())
        }
    }
}
