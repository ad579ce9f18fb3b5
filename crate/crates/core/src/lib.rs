//! Exact Burnside rings of small finite groups.
//!
//! The crate covers finite groups given by multiplication tables, their
//! subgroup lattices, finite G-sets, the Burnside algebra `RB(G)` over `Z`,
//! `Q` or `Z/m`, concrete biset calculus, and decision procedures (with
//! certificates) for separability of `RB(G)` and of the shifted functor `RB_G`.

pub mod biset;
pub mod burnside;
pub mod error;
pub mod group;
pub mod gset;
pub mod par;
pub mod ring;
pub mod separability;

pub use error::{Error, Result};
pub use group::{Group, GroupSpec, Hom, Subgroup, SubgroupLattice};
pub use par::Execution;

/// Resource bounds and execution mode shared by every computation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Config {
    /// Largest group order accepted by any constructor.
    pub max_order: usize,
    /// Cap on the number of subgroups enumerated in a lattice.
    pub max_subgroups: usize,
    /// Largest `|G|` accepted by the commutant solver, which works in `G x G x G`.
    pub max_commutant_order: usize,
    pub execution: Execution,
}

impl Default for Config {
    fn default() -> Self {
        Config { max_order: 255, max_subgroups: 20_000, max_commutant_order: 6, execution: Execution::default() }
    }
}

impl Config {
    pub fn sequential() -> Self {
        Config { execution: Execution::Sequential, ..Config::default() }
    }
}
