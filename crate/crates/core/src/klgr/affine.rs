use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::Permutation;
use crate::error::{Error, Result};

/// A bijection `f: ℤ → ℤ` with `f(i+n) = f(i)+n`, `i ≤ f(i) ≤ i+n`, and
/// average displacement `M`, stored by its values on `[1, n]`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundedAffinePermutation {
    window: Vec<i64>,
    m: usize,
}

impl BoundedAffinePermutation {
    pub fn new(window: Vec<i64>) -> Result<Self> {
        let n = window.len() as i64;
        if n == 0 {
            return Err(Error::InvalidPermutation("empty window".into()));
        }
        let mut residues: Vec<i64> = window.iter().map(|v| v.rem_euclid(n)).collect();
        residues.sort_unstable();
        if residues.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidPermutation(format!("{window:?} is not a bijection modulo {n}")));
        }
        for (idx, &v) in window.iter().enumerate() {
            let i = idx as i64 + 1;
            if v < i || v > i + n {
                return Err(Error::InvalidPermutation(format!("f({i}) = {v} is outside [{i}, {}]", i + n)));
            }
        }
        let shift: i64 = window.iter().enumerate().map(|(idx, &v)| v - idx as i64 - 1).sum();
        Ok(BoundedAffinePermutation { m: (shift / n) as usize, window })
    }

    /// `i ↦ i + M`.
    pub fn shift(m: usize, n: usize) -> Self {
        BoundedAffinePermutation { window: (1..=n as i64).map(|i| i + m as i64).collect(), m }
    }

    pub fn n(&self) -> usize {
        self.window.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn window(&self) -> &[i64] {
        &self.window
    }

    pub fn at(&self, i: i64) -> i64 {
        let n = self.n() as i64;
        let r = (i - 1).rem_euclid(n);
        self.window[r as usize] + (i - 1 - r)
    }
}

impl fmt::Debug for BoundedAffinePermutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.window)
    }
}

/// Increasing on `[1, M]` and on `[M+1, n]`: the one-line shape of the
/// rectangle permutation `i ↦ i+N mod n`.
pub fn is_grassmannian(w: &Permutation, m: usize) -> bool {
    let img = w.images();
    m <= img.len() && img[..m].windows(2).all(|p| p[0] < p[1]) && img[m..].windows(2).all(|p| p[0] < p[1])
}

/// `f_{π,w} = π ∘ t_{ω_M} ∘ w⁻¹` with `π` extended periodically and
/// `t_{ω_M}` adding `n` on `[1, M]`.
pub fn bounded_affine(pi: &Permutation, w: &Permutation, m: usize) -> Result<BoundedAffinePermutation> {
    let n = w.n();
    if pi.n() != n {
        return Err(Error::InvalidPermutation(format!("{pi} and {w} have different sizes")));
    }
    if m > n || !is_grassmannian(w, m) {
        return Err(Error::Hypothesis(format!("{w} is not ({m},{})-Grassmannian", n.saturating_sub(m))));
    }
    let inv = w.inverse();
    let window = (1..=n)
        .map(|i| {
            let j = inv.at(i);
            let shift = if j <= m { n as i64 } else { 0 };
            pi.at(j) as i64 + shift
        })
        .collect();
    BoundedAffinePermutation::new(window)
}

/// Every element of `Bound(M, n)`.
pub fn all_bounded_affine(m: usize, n: usize) -> Vec<BoundedAffinePermutation> {
    fn rec(n: i64, m: i64, i: i64, used: &mut Vec<bool>, cur: &mut Vec<i64>, out: &mut Vec<BoundedAffinePermutation>) {
        if i > n {
            let shift: i64 = cur.iter().enumerate().map(|(idx, &v)| v - idx as i64 - 1).sum();
            if shift == m * n {
                out.push(BoundedAffinePermutation { window: cur.clone(), m: m as usize });
            }
            return;
        }
        for v in i..=i + n {
            let r = v.rem_euclid(n) as usize;
            if !used[r] {
                used[r] = true;
                cur.push(v);
                rec(n, m, i + 1, used, cur, out);
                cur.pop();
                used[r] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(n as i64, m as i64, 1, &mut vec![false; n], &mut Vec::new(), &mut out);
    out
}
