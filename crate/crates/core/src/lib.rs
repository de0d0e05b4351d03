//! Exact computations for the stochastic colored six-vertex model through the
//! Hecke algebra of the symmetric group.
//!
//! The crate is organized bottom-up:
//!
//! - [`combinat`]: permutations, words, skew domains, cuts, boundary conditions
//! - [`scalar`]: rationals, prime fields, `ℤ[q]`, evaluation points, identity tests
//! - [`hecke`]: sparse Hecke algebra elements and the Yang–Baxter basis
//! - [`model`]: pipe dreams, exact distributions, height functions, sampling
//! - [`symmetry`]: flip, generalized flip and cut-tuple transformation verifiers
//! - [`klgr`]: R-polynomials, positroid point counts, pipe-dream counts
//! - [`polymer`]: Beta and Gamma polymers and two-sample tests
//! - [`cli`]: configuration, reports and the golden corpus
//!
//! Runnable walkthroughs live in `examples/`; start with
//! `cargo run --release --example flip_theorem`.

pub mod cli;
pub mod combinat;
pub mod error;
pub mod hecke;
pub mod klgr;
pub mod model;
pub mod polymer;
pub mod scalar;
pub mod symmetry;

pub use error::{Error, Result};
