//! Finite-quotient invariants of finitely presented groups and the
//! comparison of their profiles.

mod group;
mod homs;
mod lowindex;
mod profile;

use thiserror::Error;

pub use group::{Catalog, CatalogError, FiniteGroup, GroupSpec, Permutation, MAX_GROUP_ORDER};
pub use homs::{count_homs, HomCount};
pub use lowindex::{low_index_subgroups, subgroups_of_index, IndexCount, MAX_INDEX};
pub use profile::{
    distinguish, distinguish_profiles, profile, recompute, verify_witness, ConfigSummary, Entry, InvariantProfile,
    Outcome, ProfileConfig, Recipe, Verdict, Witness, WitnessCheck, WitnessError, DEFAULT_BUDGET, DEFAULT_K,
    SCHEMA_VERSION,
};

/// A search ran past its node limit. The count it would have produced is
/// unknown; no partial value is ever reported.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Error)]
#[error("search budget of {budget} nodes exceeded")]
pub struct BudgetExceeded {
    pub budget: u64,
}
