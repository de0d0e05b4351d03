use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::combinat::{BoundaryCondition, Permutation};
use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, Scalar, WiringPoint};

/// Sparse element `Σ c_π T_π` of the Hecke algebra of `S_n`, with the
/// quadratic relation `T_k² = (1−q)T_k + q`. Zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq)]
pub struct HeckeElement<S> {
    n: usize,
    terms: BTreeMap<Permutation, S>,
}

impl<S: Scalar> HeckeElement<S> {
    pub fn zero(n: usize) -> Self {
        HeckeElement { n, terms: BTreeMap::new() }
    }

    pub fn basis(pi: Permutation, coeff: S) -> Self {
        let mut out = HeckeElement::zero(pi.n());
        out.add_term(pi, coeff);
        out
    }

    pub fn identity(n: usize, one: S) -> Self {
        HeckeElement::basis(Permutation::identity(n), one)
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

    pub fn terms(&self) -> impl Iterator<Item = (&Permutation, &S)> {
        self.terms.iter()
    }

    pub fn coeff(&self, pi: &Permutation) -> Option<&S> {
        self.terms.get(pi)
    }

    pub fn add_term(&mut self, pi: Permutation, c: S) {
        debug_assert_eq!(pi.n(), self.n);
        if c.is_zero() {
            return;
        }
        match self.terms.entry(pi) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (pi, c) in other.terms() {
            out.add_term(*pi, c.clone());
        }
        out
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = HeckeElement::zero(self.n);
        for (pi, a) in self.terms() {
            out.add_term(*pi, a.clone() * c.clone());
        }
        out
    }

    /// Sum of all coefficients, or `None` for the zero element.
    pub fn total(&self) -> Option<S> {
        let mut it = self.terms.values();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, c| acc + c.clone()))
    }

    /// Relabels basis elements by `f`, which must be injective.
    pub fn map_basis(&self, f: impl Fn(&Permutation) -> Permutation) -> Self {
        let mut out = HeckeElement::zero(self.n);
        for (pi, c) in self.terms() {
            out.add_term(f(pi), c.clone());
        }
        out
    }

    /// `self · (a T_k + b)`.
    pub fn mul_right_gen(&self, k: usize, a: &S, b: &S, q: &S) -> Self {
        assert!(k >= 1 && k < self.n, "generator index {k} out of range");
        let mut out = HeckeElement::zero(self.n);
        let up_keep = b.clone();
        let down_move = a.clone() * q.clone();
        let down_keep = a.clone() - a.clone() * q.clone() + b.clone();
        for (pi, c) in self.terms() {
            let moved = pi.mul_simple_right(k);
            if pi.right_ascent(k) {
                out.add_term(moved, c.clone() * a.clone());
                out.add_term(*pi, c.clone() * up_keep.clone());
            } else {
                out.add_term(moved, c.clone() * down_move.clone());
                out.add_term(*pi, c.clone() * down_keep.clone());
            }
        }
        out
    }

    /// `(a T_k + b) · self`.
    pub fn mul_left_gen(&self, k: usize, a: &S, b: &S, q: &S) -> Self {
        assert!(k >= 1 && k < self.n, "generator index {k} out of range");
        let mut out = HeckeElement::zero(self.n);
        let down_move = a.clone() * q.clone();
        let down_keep = a.clone() - a.clone() * q.clone() + b.clone();
        for (pi, c) in self.terms() {
            let moved = pi.mul_simple_left(k);
            if pi.left_ascent(k) {
                out.add_term(moved, c.clone() * a.clone());
                out.add_term(*pi, c.clone() * b.clone());
            } else {
                out.add_term(moved, c.clone() * down_move.clone());
                out.add_term(*pi, c.clone() * down_keep.clone());
            }
        }
        out
    }

    /// `self · R_k(p)` with `R_k(p) = p T_k + (1−p)`.
    pub fn mul_right_r(&self, k: usize, p: &S, q: &S) -> Self {
        self.mul_right_gen(k, p, &(p.one_like() - p.clone()), q)
    }

    /// `R_k(p) · self`.
    pub fn mul_left_r(&self, k: usize, p: &S, q: &S) -> Self {
        self.mul_left_gen(k, p, &(p.one_like() - p.clone()), q)
    }

    pub fn mul_right_t(&self, k: usize, q: &S) -> Self {
        self.mul_right_gen(k, &q.one_like(), &q.zero_like(), q)
    }

    /// Full product `self · other`.
    pub fn mul(&self, other: &Self, q: &S) -> Self {
        assert_eq!(self.n, other.n);
        let mut out = HeckeElement::zero(self.n);
        for (pi, c) in other.terms() {
            let mut part = self.clone();
            for k in pi.reduced_word() {
                part = part.mul_right_t(k, q);
            }
            out = out.add(&part.scale(c));
        }
        out
    }

    /// Sum of coefficients over `π` with `ℍ^{i,j}_π = h` and `𝕍^{i,j}_π = v`.
    pub fn boundary_projection(&self, i: usize, j: usize, h: &BoundaryCondition, v: &BoundaryCondition) -> Option<S> {
        let mut acc: Option<S> = None;
        for (pi, c) in self.terms() {
            if BoundaryCondition::horizontal(pi, i, j) == *h && BoundaryCondition::vertical(pi, i, j) == *v {
                acc = Some(match acc {
                    None => c.clone(),
                    Some(a) => a + c.clone(),
                });
            }
        }
        acc
    }

    /// All nonzero projections at the cutoffs `(i, j)`, keyed by `(ℍ, 𝕍)`.
    pub fn projections(&self, i: usize, j: usize) -> BTreeMap<(BoundaryCondition, BoundaryCondition), S> {
        let mut out: BTreeMap<(BoundaryCondition, BoundaryCondition), S> = BTreeMap::new();
        for (pi, c) in self.terms() {
            let key = (BoundaryCondition::horizontal(pi, i, j), BoundaryCondition::vertical(pi, i, j));
            match out.get_mut(&key) {
                Some(a) => *a = a.clone() + c.clone(),
                None => {
                    out.insert(key, c.clone());
                }
            }
        }
        out.retain(|_, c| !c.is_zero());
        out
    }

    /// The anti-automorphism `T_{k_1}⋯T_{k_r} ↦ T_{i+j−k_r}⋯T_{i+j−k_1}`.
    ///
    /// Every letter of every support element must lie in the window
    /// `[max(1, i+j+1−n), min(n, i+j) − 1]`.
    pub fn star(&self, i: usize, j: usize) -> Result<Self> {
        let (lo, hi) = star_window(self.n, i, j);
        let mut out = HeckeElement::zero(self.n);
        for (pi, c) in self.terms() {
            let word = pi.reduced_word();
            if let Some(&k) = word.iter().find(|&&k| k < lo || k > hi) {
                return Err(Error::Window { index: k, lo, hi });
            }
            let mapped: Vec<usize> = word.iter().rev().map(|&k| i + j - k).collect();
            out.add_term(Permutation::from_word(self.n, &mapped), c.clone());
        }
        Ok(out)
    }

    /// `T_π ↦ T_{π⁻¹}`.
    pub fn cps_transform(&self) -> Self {
        self.map_basis(|pi| pi.inverse())
    }

    /// `T_π ↦ T_{w0 π⁻¹ w0}`.
    pub fn cps_transform_w0(&self) -> Self {
        let w0 = Permutation::longest(self.n);
        self.map_basis(|pi| w0.compose(&pi.inverse()).compose(&w0))
    }

    /// One line per term: `π=[…]; coeff=…`.
    pub fn dump(&self) -> String {
        let mut s = String::new();
        for (pi, c) in self.terms() {
            let _ = writeln!(s, "π={pi}; coeff={c}");
        }
        s
    }
}

/// Letters allowed by [`HeckeElement::star`], as an inclusive range.
pub fn star_window(n: usize, i: usize, j: usize) -> (usize, usize) {
    let k_min = (i + j + 1).saturating_sub(n).max(1);
    let k_max = n.min(i + j);
    (k_min, k_max.saturating_sub(1))
}

/// `T_σ · R_{i_1}(p_1) ⋯ R_{i_r}(p_r)`.
pub fn yb_element<S: Scalar>(word: &[usize], params: &[S], sigma: &Permutation, q: &S) -> HeckeElement<S> {
    assert_eq!(word.len(), params.len(), "one parameter per letter");
    let mut y = HeckeElement::basis(*sigma, q.one_like());
    for (&k, p) in word.iter().zip(params) {
        y = y.mul_right_r(k, p, q);
    }
    y
}

/// Parameters `𝔭_{w⁻¹(k), w⁻¹(k+1)}` attached to the letters of a reduced
/// word of `w` by the Yang–Baxter recurrence.
pub fn yang_baxter_params<S: FieldScalar>(word: &[usize], pt: &WiringPoint<S>) -> Result<Vec<S>> {
    let mut cur = Permutation::identity(pt.n());
    let mut out = Vec::with_capacity(word.len());
    for &k in word {
        out.push(pt.p(cur.position_of(k), cur.position_of(k + 1))?);
        cur = cur.mul_simple_right(k);
    }
    Ok(out)
}

/// The Yang–Baxter basis element `Y^w` at a point, built along `word`
/// (any reduced word of `w`).
pub fn yang_baxter_along<S: FieldScalar>(word: &[usize], pt: &WiringPoint<S>) -> Result<HeckeElement<S>> {
    let params = yang_baxter_params(word, pt)?;
    Ok(yb_element(word, &params, &Permutation::identity(pt.n()), &pt.q))
}

pub fn yang_baxter_basis<S: FieldScalar>(w: &Permutation, pt: &WiringPoint<S>) -> Result<HeckeElement<S>> {
    yang_baxter_along(&w.reduced_word(), pt)
}
