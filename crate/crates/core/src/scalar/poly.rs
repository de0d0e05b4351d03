use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{Rational, Scalar};

/// Polynomial in `q` with integer coefficients, constant term first.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPolynomial::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial::default()
    }

    pub fn constant(c: i64) -> Self {
        IntPolynomial::from_i64(&[c])
    }

    /// The variable `q`.
    pub fn q() -> Self {
        IntPolynomial::from_i64(&[0, 1])
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn pow(&self, e: usize) -> Self {
        (0..e).fold(IntPolynomial::constant(1), |acc, _| acc * self.clone())
    }

    pub fn eval(&self, at: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * at + c)
    }

    pub fn eval_i64(&self, at: i64) -> BigInt {
        self.eval(&BigInt::from(at))
    }

    pub fn eval_rational(&self, at: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * at.clone() + Rational(c.clone().into()))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{a}q")?,
                (_, true) => write!(f, "q^{k}")?,
                (_, false) => write!(f, "{a}q^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        let as_ints: Option<Vec<i64>> = self.coeffs.iter().map(|c| i64::try_from(c).ok()).collect();
        match as_ints {
            Some(v) => v.serialize(s),
            None => v.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for IntPolynomial {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i64>::deserialize(d)?;
        Ok(IntPolynomial::from_i64(&v))
    }
}

fn zip_with(a: &[BigInt], b: &[BigInt], f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Vec<BigInt> {
    let zero = BigInt::zero();
    (0..a.len().max(b.len())).map(|k| f(a.get(k).unwrap_or(&zero), b.get(k).unwrap_or(&zero))).collect()
}

impl Add for IntPolynomial {
    type Output = IntPolynomial;
    fn add(self, o: IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(zip_with(&self.coeffs, &o.coeffs, |x, y| x + y))
    }
}

impl Sub for IntPolynomial {
    type Output = IntPolynomial;
    fn sub(self, o: IntPolynomial) -> IntPolynomial {
        IntPolynomial::new(zip_with(&self.coeffs, &o.coeffs, |x, y| x - y))
    }
}

impl Mul for IntPolynomial {
    type Output = IntPolynomial;
    fn mul(self, o: IntPolynomial) -> IntPolynomial {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Neg for IntPolynomial {
    type Output = IntPolynomial;
    fn neg(self) -> IntPolynomial {
        IntPolynomial::new(self.coeffs.into_iter().map(|c| -c).collect())
    }
}

impl Scalar for IntPolynomial {
    fn zero_like(&self) -> Self {
        IntPolynomial::zero()
    }
    fn one_like(&self) -> Self {
        IntPolynomial::constant(1)
    }
    fn lift_i64(&self, v: i64) -> Self {
        IntPolynomial::constant(v)
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-50i64..50, 0..6).prop_map(|v| IntPolynomial::from_i64(&v))
    }

    #[test]
    fn display_and_eval() {
        let q1 = IntPolynomial::q() - IntPolynomial::constant(1);
        let r = q1.pow(3) + IntPolynomial::q() * q1.clone();
        assert_eq!(r.to_string(), "q^3 - 2q^2 + 2q - 1");
        assert_eq!(r.eval_i64(2), BigInt::from(3));
        assert_eq!(r.degree(), Some(3));
        assert_eq!(IntPolynomial::zero().degree(), None);
        assert_eq!(serde_json::to_string(&r).unwrap(), "[-1,2,-2,1]");
    }

    proptest! {
        #[test]
        fn ring_laws(a in poly(), b in poly(), c in poly()) {
            prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
            prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
            prop_assert_eq!(a.clone() * (b.clone() + c.clone()), a.clone() * b.clone() + a.clone() * c.clone());
            prop_assert_eq!(a.clone() - a.clone(), IntPolynomial::zero());
        }
    }
}
