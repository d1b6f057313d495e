//! Permutation groups and the primitivity hierarchy around them: block
//! systems, quasiprimitivity, pre-primitivity, synchronization, product
//! constructions and small-degree surveys.
//!
//! Points are `0..degree` internally and 1-based in every text form.
//! Permutations compose left to right.

pub mod blocks;
pub mod cayley;
pub mod chain;
pub mod classify;
pub mod construct;
pub mod enumerate;
pub mod error;
pub mod expr;
pub mod group;
pub mod partition;
pub mod perm;
pub mod survey;

pub use blocks::BlockLattice;
pub use cayley::CayleyTable;
pub use error::{Error, Result};
pub use group::{BlockAction, PermGroup};
pub use partition::Partition;
pub use perm::Perm;
