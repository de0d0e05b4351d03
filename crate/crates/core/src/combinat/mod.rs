//! Permutations, words, skew domains, cuts and boundary conditions.
//!
//! Everything downstream indexes colors, heights and path steps from 1 and
//! composes permutations left to right: `(u·w)(j) = w(u(j))`.

mod boundary;
mod domain;
pub mod permutation;
mod word;

pub use boundary::BoundaryCondition;
pub use domain::{cutoff_levels, cuts_cross, Cut, SkewDomain, Step};
pub use permutation::{grassmannian_perm, grassmannian_word, Permutation};
pub use word::Word;
