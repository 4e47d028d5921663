//! Executable versions of the supporting constructions: exponent search
//! for abelian generating tuples, the Frattini subgroup, common
//! eigenspaces and the potential `w`, greedy selection of matrices with
//! the same invariant lines or subspaces, and regular semisimple elements
//! in cosets.

pub mod eigen;
pub mod gaschuetz;
pub mod greedy;
pub mod linalg;
pub mod oracle;
pub mod rss;

pub use eigen::{common_eigenspaces, w_potential, EigenDecomposition, EigenTable, Eigenspace, SplittingField};
pub use gaschuetz::{
    apply_exponents, brute_force_exponents, frattini, frattini_by_maximal_subgroups, gaschuetz_exponents,
    GaschuetzSolution, PrimeStep,
};
pub use greedy::{
    exterior_block, exterior_power, greedy_line_subset, greedy_subspace_subset, GreedyResult,
    EXTERIOR_DIMENSION_CAP,
};
pub use linalg::{Matrix, RepMatrix, Vector};
pub use oracle::{invariant_lines, invariant_subspaces};
pub use rss::find_rss_in_coset;
