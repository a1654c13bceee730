//! Fundamental groups of closed 3-manifolds presented by surgery on
//! blackboard framed links, and finite-quotient invariants for telling such
//! groups apart.
//!
//! The pipeline: a [`LinkDiagram`] gives a [`GroupPresentation`] through
//! [`fundamental_group`]; [`tietze_simplify`] shrinks it; [`first_homology`],
//! [`count_homs`] and [`low_index_subgroups`] compute invariants, gathered by
//! [`profile`] and compared by [`distinguish`].

pub mod corpus;
pub mod diagram;
pub mod gem;
pub mod homology;
pub mod presentation;
pub mod quotients;

pub use diagram::{parse_diagram, DiagramError, LinkDiagram};
pub use gem::{is_gem, FourGraph, GemReport};
pub use homology::{first_homology, is_perfect, smith_normal_form, IntegerMatrix};
pub use presentation::{fundamental_group, parse_presentation, serialize, tietze_simplify, Dialect, GroupPresentation};
pub use quotients::{
    count_homs, distinguish, low_index_subgroups, profile, verify_witness, Catalog, InvariantProfile, ProfileConfig,
    Verdict,
};
