//! Kazhdan–Lusztig R-polynomials, distinguished subexpressions, positroid
//! point counts over small prime fields, pipe-dream counting identities
//! and the ratio-identity scanner for strict boundary data.
//!
//! At `𝔭 ≡ 1/q` the rectangle element `q^{MN}·Y^{w^{M,N}}` becomes
//! `Σ_π R^{π,w}(q)·T_π`, which is what ties the model to point counts.

mod affine;
mod conditional;
mod pipe_count;
mod positroid;
mod rpoly;

pub use affine::{all_bounded_affine, bounded_affine, is_grassmannian, BoundedAffinePermutation};
pub use conditional::{
    class_table, conditional_example, is_inversion, scan_conditional_shift, strict_boundary, ConditionalCounterexample, ConditionalExample,
    ConditionalProbabilities, ConditionalScan, ExampleOutcome,
};
pub use pipe_count::{count_pipe_dreams, pipe_dream_census, rotation_mismatches, CountMode, MAX_PIPE_DREAM_CELLS};
pub use positroid::{
    boundary_of, check_reversal_bijection, count_positroid_cell, count_positroid_points, f_of_matrix, grassmannian_points,
    hecke_point_counts, in_opposite_cell, positroid_census, positroid_census_capped, BoundaryPair, FqMatrix, PositroidCensus,
    ReversalCheck, DEFAULT_POSITROID_CAP,
};
pub use rpoly::{distinguished_subexpressions, distinguished_total, r_polynomial, r_polynomial_element, r_polynomials, Subexpression};
