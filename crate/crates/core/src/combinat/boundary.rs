use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Permutation;
use crate::error::{Error, Result};

/// A set of `(entry, exit)` pairs, kept sorted by first coordinate.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct BoundaryCondition {
    pairs: Vec<(usize, usize)>,
}

impl BoundaryCondition {
    pub fn new(mut pairs: Vec<(usize, usize)>) -> Result<Self> {
        pairs.sort_unstable();
        for w in pairs.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidBoundary(format!("first coordinate {} repeated", w[0].0)));
            }
        }
        let mut seconds: Vec<usize> = pairs.iter().map(|p| p.1).collect();
        seconds.sort_unstable();
        if seconds.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidBoundary("second coordinates repeat".into()));
        }
        Ok(BoundaryCondition { pairs })
    }

    pub fn empty() -> Self {
        BoundaryCondition::default()
    }

    fn from_sorted(pairs: Vec<(usize, usize)>) -> Self {
        BoundaryCondition { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `{(n+1−r, n+1−l)}`.
    pub fn flip_180(&self, n: usize) -> Result<Self> {
        if let Some(&(a, b)) = self.pairs.iter().find(|&&(a, b)| a == 0 || b == 0 || a > n || b > n) {
            return Err(Error::InvalidBoundary(format!("pair ({a},{b}) outside [1,{n}]")));
        }
        let pairs = self.pairs.iter().map(|&(l, r)| (n + 1 - r, n + 1 - l)).collect();
        BoundaryCondition::new(pairs)
    }

    /// `{(i+j+1−r, i+j+1−l)}`, the rotation about the window `[1, i+j]`.
    pub fn flip_180_window(&self, i: usize, j: usize) -> Result<Self> {
        self.flip_180(i + j)
    }

    /// `ℍ^{i,j}_π = {(a, π(a)) : a > i, π(a) ≤ j}`.
    pub fn horizontal(pi: &Permutation, i: usize, j: usize) -> Self {
        Self::from_sorted((i + 1..=pi.n()).filter(|&a| pi.at(a) <= j).map(|a| (a, pi.at(a))).collect())
    }

    /// `𝕍^{i,j}_π = {(a, π(a)) : a ≤ i, π(a) > j}`.
    pub fn vertical(pi: &Permutation, i: usize, j: usize) -> Self {
        Self::from_sorted((1..=i.min(pi.n())).filter(|&a| pi.at(a) > j).map(|a| (a, pi.at(a))).collect())
    }

    /// `ℍ°^{α,δ}_π = {(a, π(a)) : a > α, π(a) < δ}`.
    pub fn horizontal_strict(pi: &Permutation, alpha: usize, delta: usize) -> Self {
        Self::from_sorted((alpha + 1..=pi.n()).filter(|&a| pi.at(a) < delta).map(|a| (a, pi.at(a))).collect())
    }

    /// `𝕍°^{α,δ}_π = {(a, π(a)) : a < α, π(a) > δ}`.
    pub fn vertical_strict(pi: &Permutation, alpha: usize, delta: usize) -> Self {
        Self::from_sorted((1..alpha).filter(|&a| pi.at(a) > delta).map(|a| (a, pi.at(a))).collect())
    }
}

impl fmt::Debug for BoundaryCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, (a, b)) in self.pairs.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "({a},{b})")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for BoundaryCondition {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let v: Vec<[usize; 2]> = self.pairs.iter().map(|&(a, b)| [a, b]).collect();
        v.serialize(s)
    }
}

impl<'de> Deserialize<'de> for BoundaryCondition {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<[usize; 2]>::deserialize(d)?;
        BoundaryCondition::new(v.into_iter().map(|[a, b]| (a, b)).collect()).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bc(p: &[(usize, usize)]) -> BoundaryCondition {
        BoundaryCondition::new(p.to_vec()).unwrap()
    }

    #[test]
    fn rotation_examples() {
        let h = bc(&[(6, 6), (7, 4), (9, 5), (10, 7)]);
        assert_eq!(h.flip_180(11).unwrap(), bc(&[(5, 2), (6, 6), (7, 3), (8, 5)]));
        assert_eq!(BoundaryCondition::empty().flip_180(4).unwrap(), BoundaryCondition::empty());
        assert_eq!(bc(&[(3, 2), (5, 3)]).flip_180(5).unwrap(), bc(&[(4, 3), (3, 1)]));
        assert!(bc(&[(6, 1)]).flip_180(5).is_err());
    }

    #[test]
    fn rotation_is_an_involution() {
        let h = bc(&[(4, 1), (5, 3), (6, 2)]);
        assert_eq!(h.flip_180(6).unwrap().flip_180(6).unwrap(), h);
    }

    #[test]
    fn rejects_repeated_coordinates() {
        assert!(BoundaryCondition::new(vec![(1, 2), (1, 3)]).is_err());
        assert!(BoundaryCondition::new(vec![(1, 2), (3, 2)]).is_err());
    }

    #[test]
    fn projections_of_a_permutation() {
        let pi = Permutation::new(&[4, 2, 5, 1, 3]).unwrap();
        assert_eq!(BoundaryCondition::horizontal(&pi, 2, 3), bc(&[(4, 1), (5, 3)]));
        assert_eq!(BoundaryCondition::vertical(&pi, 2, 3), bc(&[(1, 4)]));
    }
}
