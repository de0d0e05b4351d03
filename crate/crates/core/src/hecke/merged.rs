use std::collections::HashMap;

use crate::scalar::Scalar;

/// Maximum number of heights in a merged state.
pub const MAX_HEIGHTS: usize = 32;

/// Block labels by height, packed four bits per height (height 1 in the
/// lowest nibble).
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct Labels(u128);

impl Labels {
    pub fn from_slice(labels: &[u8]) -> Self {
        assert!(labels.len() <= MAX_HEIGHTS);
        let mut v = 0u128;
        for (h, &b) in labels.iter().enumerate() {
            assert!(b < 16, "at most 16 blocks");
            v |= (b as u128) << (4 * h);
        }
        Labels(v)
    }

    /// Label at height `h` (1-based).
    #[inline]
    pub fn get(&self, h: usize) -> u8 {
        ((self.0 >> (4 * (h - 1))) & 0xF) as u8
    }

    /// Exchanges the labels at heights `k` and `k+1`.
    #[inline]
    pub fn swap(&self, k: usize) -> Self {
        let a = self.get(k) as u128;
        let b = self.get(k + 1) as u128;
        let shift = 4 * (k - 1);
        let cleared = self.0 & !(0xFFu128 << shift);
        Labels(cleared | (b << shift) | (a << (shift + 4)))
    }
}

/// Distribution of colors after merging them into ordered blocks.
///
/// Right multiplication by `R_k(p)` acts on block labelings the way it acts
/// on `T_π`, except that two equal labels are left untouched: exchanging
/// two paths of the same block does not change the labeling. This is the
/// image of the Hecke action on a parabolic permutation module and gives
/// exactly the law of any statistic that only sees blocks.
#[derive(Clone, Debug)]
pub struct MergedDistribution<S> {
    n: usize,
    terms: HashMap<Labels, S>,
}

impl<S: Scalar> MergedDistribution<S> {
    pub fn point_mass(labels: &[u8], one: S) -> Self {
        let mut terms = HashMap::new();
        terms.insert(Labels::from_slice(labels), one);
        MergedDistribution { n: labels.len(), terms }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Labels, &S)> {
        self.terms.iter()
    }

    /// Applies `R_k(p)`. A pair of distinct labels `lo < hi` is only
    /// resolved when `active(lo, hi)` holds; otherwise the state is kept as
    /// if the cell were an elbow with probability one.
    pub fn apply_r(&mut self, k: usize, p: &S, q: &S, active: impl Fn(u8, u8) -> bool) {
        let one = p.one_like();
        let qp = q.clone() * p.clone();
        let stay_up = one.clone() - p.clone();
        let stay_down = one - qp.clone();
        let mut out: HashMap<Labels, S> = HashMap::with_capacity(self.terms.len() * 2);
        let mut push = |key: Labels, c: S| {
            if c.is_zero() {
                return;
            }
            match out.get_mut(&key) {
                Some(v) => *v = v.clone() + c,
                None => {
                    out.insert(key, c);
                }
            }
        };
        for (key, c) in self.terms.drain() {
            let (a, b) = (key.get(k), key.get(k + 1));
            if a == b || !active(a.min(b), a.max(b)) {
                push(key, c);
            } else if a < b {
                push(key.swap(k), c.clone() * p.clone());
                push(key, c * stay_up.clone());
            } else {
                push(key.swap(k), c.clone() * qp.clone());
                push(key, c * stay_down.clone());
            }
        }
        out.retain(|_, c| !c.is_zero());
        self.terms = out;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Permutation;
    use crate::hecke::yb_element;
    use crate::scalar::Rational;

    #[test]
    fn packing_roundtrip() {
        let l = Labels::from_slice(&[0, 3, 1, 2]);
        assert_eq!((1..=4).map(|h| l.get(h)).collect::<Vec<_>>(), vec![0, 3, 1, 2]);
        let s = l.swap(2);
        assert_eq!((1..=4).map(|h| s.get(h)).collect::<Vec<_>>(), vec![0, 1, 3, 2]);
    }

    #[test]
    fn merging_commutes_with_the_hecke_action() {
        let q = Rational::new(2, 7);
        let word = [2usize, 1, 3, 2, 1, 3, 2];
        let params: Vec<Rational> = (0..word.len()).map(|t| Rational::new(t as i64 + 1, 11)).collect();
        let y = yb_element(&word, &params, &Permutation::identity(4), &q);
        let block = |c: usize| -> u8 { [0, 0, 1, 2][c - 1] };
        let mut merged = MergedDistribution::point_mass(&[0, 0, 1, 2], Rational::one());
        for (&k, p) in word.iter().zip(&params) {
            merged.apply_r(k, p, &q, |_, _| true);
        }
        let mut expect: HashMap<Labels, Rational> = HashMap::new();
        for (pi, c) in y.terms() {
            let inv = pi.inverse();
            let labels: Vec<u8> = (1..=4).map(|h| block(inv.at(h))).collect();
            let e = expect.entry(Labels::from_slice(&labels)).or_insert_with(Rational::zero);
            *e = e.clone() + c.clone();
        }
        expect.retain(|_, c| !c.is_zero());
        assert_eq!(merged.terms, expect);
    }
}
