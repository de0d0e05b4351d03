//! Beta and Gamma polymer degenerations of the model, intersection
//! matrices of left-aligned cut tuples, and two-sample tests of the
//! resulting shift invariance.
//!
//! This layer is floating point and verified statistically; it never mixes
//! with the exact arithmetic used elsewhere.

mod disorder;
mod intersection;
mod partition;
mod shift;
mod stats;

pub use disorder::{eta, DisorderField, PolymerParams};
pub use intersection::{check_left_aligned, clipped_overlaps, intersection_matrix, left_aligned_check, IntersectionMatrix, IntersectionMode};
pub use partition::{beta_partition, gamma_partition};
pub use shift::{
    gamma_degeneration, one_row_shift_spec, shift_invariance_test, wrong_relabelling_spec, ShiftReport, ShiftSpec, ENERGY_PERMUTATIONS,
    ENERGY_SUBSAMPLE,
};
pub use stats::{energy_distance, energy_test, ks_p_value, ks_statistic, TwoSampleTest};
