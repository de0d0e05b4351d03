use std::fmt::{Debug, Display};
use std::ops::{Add, Mul, Neg, Sub};

/// Exact coefficient ring.
///
/// Constants are produced from an existing value (`zero_like`, `one_like`)
/// because some rings, like prime fields, carry their modulus at runtime.
pub trait Scalar:
    Clone
    + PartialEq
    + Debug
    + Display
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn lift_i64(&self, v: i64) -> Self;
    fn is_zero(&self) -> bool;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }
}

pub trait FieldScalar: Scalar {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.clone() * i)
    }
}
