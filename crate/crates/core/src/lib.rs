//! Exact computations on Product Replacement graphs of small finite groups.
//!
//! The crate materializes finite groups (`PSL(2,q)`, `SL(2,q)`, `PGL(2,q)`,
//! symmetric, alternating and finite abelian groups), enumerates their
//! generating k-tuples, and analyses the graphs whose edges are Nielsen
//! moves: connected components, explicit connecting words, orbits of the
//! automorphism group on components (T-systems), and the product
//! replacement random walk. The [`lemmas`] module contains executable
//! versions of the supporting constructions: exponent search for abelian
//! generating tuples, greedy selection of matrices preserving invariant
//! lines and subspaces, and regular semisimple coset search.

pub mod bitset;
pub mod error;
pub mod finfield;
pub mod groups;
pub mod lemmas;
pub mod pragraph;
pub mod report;
pub mod tsystems;
pub mod walker;

pub use error::{Error, Result};
pub use finfield::{make_field, FieldCtx, FieldElement};
pub use groups::{build_group, ElementId, FiniteGroupTable};
pub use pragraph::{GenTuple, NielsenMove, NielsenWord};
