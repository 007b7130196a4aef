//! Finite permutation groups, p-regular elements, Frobenius orbits and
//! quotients by normal p-subgroups.

pub mod catalog;
pub mod finite;
pub mod orbits;
pub mod perm;
pub mod subgroup;

pub use finite::{close_group, FiniteGroup};
pub use orbits::{galois_orbits, GaloisData, OrbitPartition};
pub use perm::Perm;
pub use subgroup::{hall_check, normal_p_subgroups, quotient, HallReport, Subgroup};
