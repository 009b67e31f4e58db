//! Permutation groups and mechanical checks of the classical commutator
//! arguments bounding the minimal degree of multiply transitive groups.
//!
//! Points act on the right and products compose left to right:
//! `α^(uv) = (α^u)^v`, so `[u,v] = u v u⁻¹ v⁻¹` applies `u` first.

pub mod catalog;
pub mod error;
pub mod group;
pub mod mindeg;
pub mod perm;
pub mod verify;

pub use error::{Error, Result};
pub use group::{GeneratorSet, GroupHandle, StabilizerChain};
pub use perm::{Permutation, Point, PointSet};
