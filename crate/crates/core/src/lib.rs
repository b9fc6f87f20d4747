//! Decomposition of finite Abelian groups into direct sums of cyclic groups
//! of prime-power order.
//!
//! The pipeline works against black-box groups ([`groups::AbelianGroup`]):
//! it samples a generating set, splits elements into prime-power pieces,
//! finds the relation lattice of each Sylow subgroup ([`hsp`]) and reads the
//! cyclic summands off a Smith normal form ([`intlinalg`]).
//!
//! ```
//! use abelian::decompose::{decompose, DecomposeConfig};
//! use abelian::groups::ZnStar;
//!
//! let g = ZnStar::new(15u32).unwrap();
//! let d = decompose(&g, &DecomposeConfig::default()).unwrap();
//! let orders: Vec<u32> = d.summands.iter().map(|s| 1 << s.exponent).collect();
//! assert_eq!(orders, [2, 4]);
//! ```

pub mod decompose;
pub mod groups;
pub mod hsp;
pub mod intlinalg;
pub mod numtheory;

pub use decompose::{decompose, verify_decomposition, DecomposeConfig, Decomposition};
pub use groups::{AbelianGroup, GroupElement, GroupSpec};
