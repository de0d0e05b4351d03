use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::combinat::{Permutation, Word};
use crate::error::{Error, Result};
use crate::hecke::HeckeElement;
use crate::scalar::IntPolynomial;

/// `q^{ℓ(w)}·Y^w` at `𝔭 = 1/q`, i.e. the product of `T_k + (q−1)` along a
/// reduced word of `w`. Its coefficients are the R-polynomials `R^{π,w}`.
pub fn r_polynomial_element(w: &Permutation) -> HeckeElement<IntPolynomial> {
    let one = IntPolynomial::constant(1);
    let q = IntPolynomial::q();
    let shift = q.clone() - one.clone();
    let mut acc = HeckeElement::identity(w.n(), one.clone());
    for k in w.reduced_word() {
        acc = acc.mul_right_gen(k, &one, &shift, &q);
    }
    acc
}

/// `R^{π,w}(q)`; zero unless `π ≤ w`.
pub fn r_polynomial(pi: &Permutation, w: &Permutation) -> IntPolynomial {
    r_polynomial_element(w).coeff(pi).cloned().unwrap_or_else(IntPolynomial::zero)
}

/// Every nonzero `R^{π,w}` for a fixed `w`, keyed by `π`.
pub fn r_polynomials(w: &Permutation) -> BTreeMap<Permutation, IntPolynomial> {
    r_polynomial_element(w).terms().map(|(pi, c)| (*pi, c.clone())).collect()
}

/// Which letters of a word are taken.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Subexpression {
    pub mask: Vec<bool>,
}

impl Subexpression {
    /// Products of the taken letters after each step.
    pub fn partial_products(&self, word: &Word) -> Vec<Permutation> {
        let mut cur = Permutation::identity(word.n());
        let mut out = Vec::with_capacity(word.len());
        for (&k, &take) in word.letters().iter().zip(&self.mask) {
            if take {
                cur = cur.mul_simple_right(k);
            }
            out.push(cur);
        }
        out
    }

    pub fn product(&self, word: &Word) -> Permutation {
        self.partial_products(word).pop().unwrap_or_else(|| Permutation::identity(word.n()))
    }

    /// A letter may only be skipped when taking it would lengthen the
    /// partial product.
    pub fn is_distinguished(&self, word: &Word) -> bool {
        let mut cur = Permutation::identity(word.n());
        for (&k, &take) in word.letters().iter().zip(&self.mask) {
            if !take && !cur.right_ascent(k) {
                return false;
            }
            if take {
                cur = cur.mul_simple_right(k);
            }
        }
        true
    }

    /// `(q−1)^{#skipped} · q^{#taken descents}`.
    pub fn weight(&self, word: &Word) -> IntPolynomial {
        let q = IntPolynomial::q();
        let shift = q.clone() - IntPolynomial::constant(1);
        let mut cur = Permutation::identity(word.n());
        let mut acc = IntPolynomial::constant(1);
        for (&k, &take) in word.letters().iter().zip(&self.mask) {
            let ascent = cur.right_ascent(k);
            if !take {
                acc = acc * shift.clone();
            } else {
                if !ascent {
                    acc = acc * q.clone();
                }
                cur = cur.mul_simple_right(k);
            }
        }
        acc
    }
}

/// Distinguished subexpressions for `π` inside a reduced word, with their
/// weights. Branches only where skipping is allowed.
pub fn distinguished_subexpressions(pi: &Permutation, word: &Word) -> Result<Vec<(Subexpression, IntPolynomial)>> {
    if !word.is_reduced() {
        return Err(Error::InvalidWord(format!("{:?} is not reduced", word.letters())));
    }
    if pi.n() != word.n() {
        return Err(Error::InvalidPermutation(format!("{pi} is not in S_{}", word.n())));
    }
    fn rec(word: &Word, target: &Permutation, pos: usize, cur: Permutation, mask: &mut Vec<bool>, out: &mut Vec<Subexpression>) {
        if pos == word.len() {
            if cur == *target {
                out.push(Subexpression { mask: mask.clone() });
            }
            return;
        }
        let k = word.letters()[pos];
        mask.push(true);
        rec(word, target, pos + 1, cur.mul_simple_right(k), mask, out);
        mask.pop();
        if cur.right_ascent(k) {
            mask.push(false);
            rec(word, target, pos + 1, cur, mask, out);
            mask.pop();
        }
    }
    let mut found = Vec::new();
    rec(word, pi, 0, Permutation::identity(word.n()), &mut Vec::new(), &mut found);
    Ok(found.into_iter().map(|s| {
        let w = s.weight(word);
        (s, w)
    }).collect())
}

/// Sum of the distinguished weights; equals `R^{π,w}` for `w` the product.
pub fn distinguished_total(pi: &Permutation, word: &Word) -> Result<IntPolynomial> {
    Ok(distinguished_subexpressions(pi, word)?.into_iter().fold(IntPolynomial::zero(), |acc, (_, w)| acc + w))
}
