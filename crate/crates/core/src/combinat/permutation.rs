use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};

/// Largest supported `n`. Permutations are stored inline so they can be used
/// as cheap map keys.
pub const MAX_N: usize = 16;

/// A permutation of `[1, n]` in one-line notation.
///
/// Products follow the left-to-right convention `(u·w)(j) = w(u(j))`, so
/// `π·s_k` swaps the values `k, k+1` and `s_k·π` swaps the positions `k, k+1`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    len: u8,
    images: [u8; MAX_N],
}

impl Permutation {
    pub fn new(images: &[usize]) -> Result<Self> {
        let n = images.len();
        if n > MAX_N {
            return Err(Error::InvalidPermutation(format!("n = {n} exceeds {MAX_N}")));
        }
        let mut seen = [false; MAX_N + 1];
        let mut out = [0u8; MAX_N];
        for (pos, &v) in images.iter().enumerate() {
            if v == 0 || v > n || seen[v] {
                return Err(Error::InvalidPermutation(format!("{images:?} is not a bijection of [1,{n}]")));
            }
            seen[v] = true;
            out[pos] = v as u8;
        }
        Ok(Permutation { len: n as u8, images: out })
    }

    pub fn identity(n: usize) -> Self {
        assert!(n <= MAX_N, "n = {n} exceeds {MAX_N}");
        let mut images = [0u8; MAX_N];
        for (i, slot) in images.iter_mut().enumerate().take(n) {
            *slot = (i + 1) as u8;
        }
        Permutation { len: n as u8, images }
    }

    /// The simple transposition `s_k`, `1 ≤ k < n`.
    pub fn simple(n: usize, k: usize) -> Self {
        assert!(k >= 1 && k < n, "s_{k} is not a generator of S_{n}");
        Permutation::identity(n).swap_positions(k)
    }

    /// The longest element `w0(i) = n + 1 - i`.
    pub fn longest(n: usize) -> Self {
        let images: Vec<usize> = (1..=n).rev().collect();
        Permutation::new(&images).expect("reversal is a permutation")
    }

    pub fn from_word(n: usize, letters: &[usize]) -> Self {
        letters.iter().fold(Permutation::identity(n), |p, &k| p.mul_simple_right(k))
    }

    pub fn n(&self) -> usize {
        self.len as usize
    }

    /// Image of `i` (1-based).
    #[inline]
    pub fn at(&self, i: usize) -> usize {
        self.images[i - 1] as usize
    }

    pub fn images(&self) -> Vec<usize> {
        self.images[..self.n()].iter().map(|&v| v as usize).collect()
    }

    /// Position of the value `v`, i.e. `π⁻¹(v)`.
    #[inline]
    pub fn position_of(&self, v: usize) -> usize {
        self.images[..self.n()].iter().position(|&x| x as usize == v).expect("value in range") + 1
    }

    pub fn inverse(&self) -> Self {
        let mut out = [0u8; MAX_N];
        for i in 0..self.n() {
            out[self.images[i] as usize - 1] = (i + 1) as u8;
        }
        Permutation { len: self.len, images: out }
    }

    /// `self · other` under `(u·w)(j) = w(u(j))`.
    pub fn compose(&self, other: &Permutation) -> Self {
        assert_eq!(self.len, other.len, "size mismatch");
        let mut out = [0u8; MAX_N];
        for (slot, &a) in out.iter_mut().zip(&self.images[..self.n()]) {
            *slot = other.images[a as usize - 1];
        }
        Permutation { len: self.len, images: out }
    }

    pub fn length(&self) -> usize {
        let v = &self.images[..self.n()];
        let mut inv = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                if v[i] > v[j] {
                    inv += 1;
                }
            }
        }
        inv
    }

    pub fn is_identity(&self) -> bool {
        (0..self.n()).all(|i| self.images[i] as usize == i + 1)
    }

    /// `s_k·π`: swap positions `k` and `k+1`.
    #[inline]
    pub fn swap_positions(mut self, k: usize) -> Self {
        self.images.swap(k - 1, k);
        self
    }

    /// `π·s_k`: swap the values `k` and `k+1`.
    #[inline]
    pub fn mul_simple_right(mut self, k: usize) -> Self {
        for slot in self.images[..self.len as usize].iter_mut() {
            if *slot as usize == k {
                *slot += 1;
            } else if *slot as usize == k + 1 {
                *slot -= 1;
            }
        }
        self
    }

    #[inline]
    pub fn mul_simple_left(self, k: usize) -> Self {
        self.swap_positions(k)
    }

    /// True when `ℓ(π·s_k) = ℓ(π) + 1`, i.e. `π⁻¹(k) < π⁻¹(k+1)`.
    #[inline]
    pub fn right_ascent(&self, k: usize) -> bool {
        for &v in &self.images[..self.len as usize] {
            if v as usize == k {
                return true;
            }
            if v as usize == k + 1 {
                return false;
            }
        }
        unreachable!("k out of range")
    }

    /// True when `ℓ(s_k·π) = ℓ(π) + 1`, i.e. `π(k) < π(k+1)`.
    #[inline]
    pub fn left_ascent(&self, k: usize) -> bool {
        self.images[k - 1] < self.images[k]
    }

    /// A reduced word `k_1 … k_r` with `s_{k_1}⋯s_{k_r} = π`.
    pub fn reduced_word(&self) -> Vec<usize> {
        let mut rest = *self;
        let mut rev = Vec::new();
        'outer: loop {
            for k in 1..self.n() {
                if !rest.right_ascent(k) {
                    rest = rest.mul_simple_right(k);
                    rev.push(k);
                    continue 'outer;
                }
            }
            break;
        }
        rev.reverse();
        rev
    }

    /// Tableau criterion for the Bruhat order.
    pub fn bruhat_le(&self, other: &Permutation) -> bool {
        let n = self.n();
        assert_eq!(n, other.n());
        for i in 1..=n {
            for j in 1..=n {
                let a = (1..=i).filter(|&t| self.at(t) >= j).count();
                let b = (1..=i).filter(|&t| other.at(t) >= j).count();
                if a > b {
                    return false;
                }
            }
        }
        true
    }

    /// True when `π` only moves elements of `[lo, hi]`.
    pub fn supported_in(&self, lo: usize, hi: usize) -> bool {
        (1..=self.n()).all(|i| (lo <= i && i <= hi) || self.at(i) == i)
    }

    /// All of `S_n` in lexicographic order.
    pub fn all(n: usize) -> Vec<Permutation> {
        let mut cur: Vec<usize> = (1..=n).collect();
        let mut out = vec![Permutation::new(&cur).expect("identity")];
        while let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) {
            let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).expect("successor exists");
            cur.swap(i, j);
            cur[i + 1..].reverse();
            out.push(Permutation::new(&cur).expect("permutation"));
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.n() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", self.images[i])?;
        }
        write!(f, "]")
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Serialize for Permutation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.images().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Permutation {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<usize>::deserialize(d)?;
        Permutation::new(&v).map_err(serde::de::Error::custom)
    }
}

/// `w^{M,N}(i) = i + N mod (M+N)`.
pub fn grassmannian_perm(m: usize, n: usize) -> Permutation {
    let total = m + n;
    let images: Vec<usize> = (1..=total).map(|i| if i <= m { i + n } else { i + n - total }).collect();
    Permutation::new(&images).expect("rotation is a permutation")
}

/// The reduced word `(s_M…s_{M+N−1})(s_{M−1}…s_{M+N−2})⋯(s_1…s_N)` of `w^{M,N}`.
pub fn grassmannian_word(m: usize, n: usize) -> Vec<usize> {
    let mut word = Vec::with_capacity(m * n);
    for a in (1..=m).rev() {
        word.extend(a..a + n);
    }
    word
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lengths() {
        assert_eq!(Permutation::identity(4).length(), 0);
        assert_eq!(grassmannian_perm(2, 2).images(), vec![3, 4, 1, 2]);
        assert_eq!(grassmannian_perm(2, 2).length(), 4);
        assert_eq!(Permutation::new(&[2, 1, 4, 3]).unwrap().length(), 2);
    }

    #[test]
    fn grassmannian_examples() {
        assert_eq!(grassmannian_perm(4, 3).images(), vec![4, 5, 6, 7, 1, 2, 3]);
        assert_eq!(grassmannian_perm(1, 1).images(), vec![2, 1]);
        let w = grassmannian_perm(2, 3);
        assert_eq!(w.images(), vec![4, 5, 1, 2, 3]);
        assert_eq!(w.length(), 6);
        for m in 1..=4 {
            for n in 1..=4 {
                assert_eq!(Permutation::from_word(m + n, &grassmannian_word(m, n)), grassmannian_perm(m, n));
            }
        }
    }

    #[test]
    fn composition_convention() {
        // w = s2 s3 s2 s1 sends 1 to 2 and 3 to 3.
        let w = Permutation::from_word(4, &[2, 3, 2, 1]);
        assert_eq!(w.at(1), 2);
        assert_eq!(w.at(3), 3);
        let a = Permutation::new(&[2, 3, 1]).unwrap();
        let b = Permutation::new(&[3, 1, 2]).unwrap();
        let ab = a.compose(&b);
        for j in 1..=3 {
            assert_eq!(ab.at(j), b.at(a.at(j)));
        }
    }

    #[test]
    fn simple_products_change_length_by_one() {
        for n in 1..=6 {
            for p in Permutation::all(n) {
                let l = p.length();
                for k in 1..n {
                    let r = p.mul_simple_right(k);
                    assert_eq!(r, p.compose(&Permutation::simple(n, k)));
                    assert_eq!(r.length(), if p.right_ascent(k) { l + 1 } else { l - 1 });
                    let s = p.mul_simple_left(k);
                    assert_eq!(s, Permutation::simple(n, k).compose(&p));
                    assert_eq!(s.length(), if p.left_ascent(k) { l + 1 } else { l - 1 });
                }
            }
        }
    }

    #[test]
    fn reduced_words_roundtrip() {
        for p in Permutation::all(5) {
            let w = p.reduced_word();
            assert_eq!(w.len(), p.length());
            assert_eq!(Permutation::from_word(5, &w), p);
        }
    }

    #[test]
    fn enumeration_count() {
        assert_eq!(Permutation::all(5).len(), 120);
        assert_eq!(Permutation::all(0).len(), 1);
    }

    #[test]
    fn bruhat_matches_subword() {
        let w = Permutation::from_word(4, &[2, 3, 1, 2]);
        let word = w.reduced_word();
        let mut below = std::collections::BTreeSet::new();
        for mask in 0..(1u32 << word.len()) {
            let letters: Vec<usize> = (0..word.len()).filter(|b| mask >> b & 1 == 1).map(|b| word[b]).collect();
            below.insert(Permutation::from_word(4, &letters));
        }
        for p in Permutation::all(4) {
            assert_eq!(p.bruhat_le(&w), below.contains(&p), "{p}");
        }
    }

    #[test]
    fn rejects_non_bijections() {
        assert!(Permutation::new(&[1, 1]).is_err());
        assert!(Permutation::new(&[0, 1]).is_err());
        assert!(Permutation::new(&[3, 1]).is_err());
    }
}
