//! Finite groups, their subgroup lattices, and exhaustive searches for
//! quadruples of subgroups violating the Ingleton inequality.

pub mod bitset;
pub mod catalogue;
pub mod error;
pub mod example;
pub mod family;
pub mod field;
pub mod group;
pub mod ingleton;
pub mod lattice;
pub mod matrix;
pub mod named;
pub mod perm;
pub mod record;
pub mod search;
pub mod spec;
pub mod subgroup;

pub use error::{Error, Result};
pub use group::{build_group, build_group_with, BuildOptions, ElementId, GroupTable};
pub use ingleton::{IngletonReport, IngletonTerms, Quadruple};
pub use spec::{GroupSpec, NamedParam, Word};
pub use subgroup::Subgroup;

/// Exact `rhs / lhs` of the Ingleton products.
pub type IngletonRatio = num_rational::Ratio<u128>;
/// Floating-point violation score.
pub type Score = f64;
