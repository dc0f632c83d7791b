//! Exact tools for Coxeter systems given by their matrices.
//!
//! The crate decides finite-type (spherical) subsystems against the
//! classification of finite Coxeter groups, checks membership in a
//! four-condition rigidity class, computes abelianization images over the
//! two-element field, realizes finite groups concretely by coset
//! enumeration, and verifies rigidity of small finite groups by brute
//! force over their Coxeter generating sets.
//!
//! Everything is deterministic and in exact integer arithmetic; there is
//! no floating point and no randomness anywhere.

pub mod class;
pub mod corpus;
pub mod finite;
pub mod gf2;
pub mod group;
pub mod iso;
pub mod matrix;
pub mod oracle;
pub mod parse;
pub mod preset;

pub use class::{check_class_membership, ClassReport, Evenness};
pub use finite::{
    classify_finite_type, coxeter_order, is_spherical, maximal_independent_subsets,
    maximal_spherical_subsets, FiniteTypeLabel, GroupOrder, SphericalFamily,
};
pub use gf2::{odd_components, pi_image, Gf2Subspace, OddComponents};
pub use group::{todd_coxeter, ElementSet, RegularRealization};
pub use iso::{diagram_isomorphic, DiagramBijection};
pub use matrix::{CoxeterMatrix, GeneratorSubset, Label};
pub use oracle::{rigidity_verdict, RigidityVerdict, SearchLimits};
pub use parse::{parse_coxeter_file, serialize, ParseError};
pub use preset::preset;
