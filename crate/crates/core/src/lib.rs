//! Covering numbers `σ(X)` of small finite simple groups and of their cyclic
//! wreath products `S ≀ C_m`.

pub mod alternating;
pub mod catalog;
pub mod error;
pub mod formulas;
pub mod group;
pub mod numtheory;
pub mod perm;
pub mod serde_big;
pub mod solver;
pub mod subgroup;
pub mod unbeatable;
pub mod wreath;

pub use error::{Error, Result};
pub use group::{ElemId, GroupTable};
pub use perm::{CycleType, Permutation};
pub use subgroup::{SubgroupClass, SubgroupHandle};
