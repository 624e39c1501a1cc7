//! Realizations of mass-action chemical reaction networks.
//!
//! Given a network `(Y, A_k)` this crate computes dynamically equivalent
//! realizations over the same complex set: the dense realization (maximal
//! number of reactions), a sparse one (minimal number), and the densest
//! weakly reversible realization, or a certificate that none exists.
//!
//! The crate is `no_std` with `alloc`. The `std` feature (default) only
//! enables `std` support in dependencies; `parallel` solves the per-column
//! subproblems on a rayon pool.
#![cfg_attr(not(feature = "std"), no_std)]

extern crate alloc;

pub mod graph;
pub mod linalg;
pub mod network;
pub mod optimizer;
pub mod polynomial;
pub mod realization;
mod scalar;

pub use graph::{
    find_cross_component_edges, is_weakly_reversible, strong_components, Edge, EdgeSet,
    ReactionGraph, SccPartition,
};
pub use linalg::Matrix;
pub use network::{
    coefficient_matrix, deficiency, dynamically_equivalent, psi, validate_kirchhoff,
    ComplexVector, CrnError, KirchhoffMatrix, KirchhoffReport, ReactionNetwork, StoichMatrix,
};
pub use polynomial::{as_polynomial, canonical_realization, KineticPolynomialSystem};
pub use realization::{
    build_kinetic_constraints, find_constr_dense_realization, find_sparse_realization,
    find_weakly_reversible_realization, is_removable, IterationRecord, RealizationError,
    RealizationOptions, RealizationOutcome, RealizationProblem, RealizationStatus, SolveMode,
};
pub use scalar::Scalar;

/// Exact rational scalar used by the `--exact` code paths.
pub type Rational = num_rational::Rational64;
