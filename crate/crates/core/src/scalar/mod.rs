//! Exact coefficient rings and randomized identity testing.
//!
//! Rational functions in the rapidities are compared by exact evaluation at
//! random points: rationals for the reference backend, a large prime field
//! for speed, and `ℤ[q]` for Kazhdan–Lusztig computations.

mod identity;
mod point;
mod poly;
mod prime;
mod rational;
mod traits;

pub use identity::{derive_seed, identity_test, randomized_check, rng_for, Stats, Status, Verdict};
pub use point::{one_over_q, random_rational_skew_point, random_skew_point, random_wiring_point, PointConfig, SkewPoint, WiringPoint};
pub use poly::IntPolynomial;
pub use prime::{is_prime, Fp, LARGE_PRIME};
pub use rational::Rational;
pub use traits::{FieldScalar, Scalar};
