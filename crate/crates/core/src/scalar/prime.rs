use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use super::{FieldScalar, Scalar};

/// Default modulus for randomized identity testing: the prime `2^31 - 1`.
pub const LARGE_PRIME: u64 = 2_147_483_647;

/// Element of the prime field `𝔽_p`, carrying its modulus.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Fp {
    value: u64,
    modulus: u64,
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl Fp {
    pub fn new(value: i64, modulus: u64) -> Self {
        debug_assert!(is_prime(modulus));
        let m = modulus as i128;
        Fp { value: (value as i128).rem_euclid(m) as u64, modulus }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn pow(&self, mut e: u64) -> Fp {
        let mut base = *self;
        let mut acc = Fp { value: 1 % self.modulus, modulus: self.modulus };
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base;
            }
            base = base * base;
            e >>= 1;
        }
        acc
    }

    /// Every element of the field, in order.
    pub fn elements(modulus: u64) -> impl Iterator<Item = Fp> {
        (0..modulus).map(move |v| Fp { value: v, modulus })
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.modulus)
    }
}

impl Add for Fp {
    type Output = Fp;
    fn add(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp { value: ((self.value as u128 + o.value as u128) % self.modulus as u128) as u64, modulus: self.modulus }
    }
}

impl Sub for Fp {
    type Output = Fp;
    fn sub(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp { value: ((self.value as u128 + self.modulus as u128 - o.value as u128) % self.modulus as u128) as u64, modulus: self.modulus }
    }
}

impl Mul for Fp {
    type Output = Fp;
    fn mul(self, o: Fp) -> Fp {
        debug_assert_eq!(self.modulus, o.modulus);
        Fp { value: ((self.value as u128 * o.value as u128) % self.modulus as u128) as u64, modulus: self.modulus }
    }
}

impl Neg for Fp {
    type Output = Fp;
    fn neg(self) -> Fp {
        Fp { value: (self.modulus - self.value) % self.modulus, modulus: self.modulus }
    }
}

impl Scalar for Fp {
    fn zero_like(&self) -> Self {
        Fp { value: 0, modulus: self.modulus }
    }
    fn one_like(&self) -> Self {
        Fp { value: 1, modulus: self.modulus }
    }
    fn lift_i64(&self, v: i64) -> Self {
        Fp::new(v, self.modulus)
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
}

impl FieldScalar for Fp {
    fn inv(&self) -> Option<Self> {
        (self.value != 0).then(|| self.pow(self.modulus - 2))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_axioms_small_primes() {
        for p in [2u64, 3, 5, 7] {
            for a in Fp::elements(p) {
                if a.value() != 0 {
                    assert_eq!(a * a.inv().unwrap(), a.one_like());
                }
                for b in Fp::elements(p) {
                    assert_eq!(a - b + b, a);
                    assert_eq!(a * b, b * a);
                }
            }
        }
    }

    #[test]
    fn large_prime_is_prime() {
        assert!(is_prime(LARGE_PRIME));
        let a = Fp::new(-5, LARGE_PRIME);
        assert_eq!(a + Fp::new(5, LARGE_PRIME), a.zero_like());
    }
}
