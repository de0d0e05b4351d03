use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::combinat::{BoundaryCondition, Permutation};
use crate::error::{Error, Result};
use crate::hecke::{star_window, yang_baxter_basis, HeckeElement};
use crate::scalar::{random_wiring_point, randomized_check, PointConfig, Rational, Scalar, Verdict, WiringPoint};

/// Data of the generalized flip: a rectangle element sitting between
/// cutoffs `(i, j)`, decorated by four parabolic factors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenFlipInstance {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub rows: usize,
    pub left: Permutation,
    pub down: Permutation,
    pub up: Permutation,
    pub right: Permutation,
}

impl GenFlipInstance {
    /// The permutation of the rectangle element: `[i−M+1, i]` moves up by
    /// `M + j − i`, `[i+1, i+N]` moves down by `N − j + i`.
    pub fn rectangle_permutation(&self) -> Result<Permutation> {
        let (i, j, m, nn) = (self.i as i64, self.j as i64, self.m as i64, self.rows as i64);
        let images: Vec<usize> = (1..=self.n as i64)
            .map(|r| {
                if i - m < r && r <= i {
                    (r + m + j - i) as usize
                } else if i < r && r <= i + nn {
                    (r - nn + j - i) as usize
                } else {
                    r as usize
                }
            })
            .collect();
        Permutation::new(&images)
    }

    pub fn validate(&self) -> Result<()> {
        let (n, i, j, m, nn) = (self.n, self.i, self.j, self.m, self.rows);
        if !(1 <= i && i < n && 1 <= j && j < n) {
            return Err(Error::Parameters("cutoffs must lie in [1, n−1]".into()));
        }
        if !(1 <= m && m <= i && 1 <= nn && nn <= j && nn + i == m + j) {
            return Err(Error::Parameters("need 1 ≤ M ≤ i, 1 ≤ N ≤ j and N + i = M + j".into()));
        }
        let parts = [(&self.left, i + 1, n, "left"), (&self.down, 1, i, "down"), (&self.up, j + 1, n, "up"), (&self.right, 1, j, "right")];
        for (w, lo, hi, name) in parts {
            if w.n() != n {
                return Err(Error::Parameters(format!("{name} factor has size {}", w.n())));
            }
            if !w.supported_in(lo, hi) {
                return Err(Error::Hypothesis(format!("{name} factor {w} is not in the parabolic subgroup of [{lo},{hi}]")));
            }
        }
        let (k_lo, k_hi) = star_window(n, i, j);
        let rect = self.rectangle_permutation()?;
        for (w, name) in [(&self.left, "left"), (&rect, "rectangle"), (&self.right, "right")] {
            if !w.supported_in(k_lo, k_hi + 1) {
                return Err(Error::Hypothesis(format!("{name} factor {w} leaves the window [{k_lo},{}]", k_hi + 1)));
            }
        }
        Ok(())
    }

    fn sides(&self, pt: &WiringPoint<Rational>) -> Result<(HeckeElement<Rational>, HeckeElement<Rational>)> {
        let one = pt.q.one_like();
        let q = &pt.q;
        let t = |w: &Permutation| HeckeElement::basis(*w, one.clone());
        let rect = self.rectangle_permutation()?;
        let y = yang_baxter_basis(&rect, pt)?;
        let y_bar = yang_baxter_basis(&rect, &pt.reversed_range(self.i + 1, self.i + self.rows))?;
        let lhs = t(&self.left).mul(&t(&self.down), q).mul(&y, q).mul(&t(&self.up), q).mul(&t(&self.right), q);
        let right_star = t(&self.right).star(self.i, self.j)?;
        let left_star = t(&self.left).star(self.i, self.j)?;
        let rhs = right_star.mul(&t(&self.down), q).mul(&y_bar, q).mul(&t(&self.up), q).mul(&left_star, q);
        Ok((lhs, rhs))
    }
}

/// Checks that the `(ℍ, 𝕍)` projections of the decorated rectangle element
/// equal the `(180°_{i,j}(ℍ), 𝕍)` projections of its flipped counterpart
/// at every realized boundary condition.
pub fn verify_generalized_flip(inst: &GenFlipInstance, trials: usize, seed: u64) -> Verdict {
    if let Err(e) = inst.validate() {
        return Verdict::invalid(e.to_string());
    }
    let cfg = PointConfig::default();
    let (i, j) = (inst.i, inst.j);
    randomized_check(
        trials,
        seed,
        |rng| random_wiring_point(&Rational::one(), inst.n, rng, &cfg),
        |pt| {
            let (lhs, rhs) = inst.sides(pt)?;
            let left = lhs.projections(i, j);
            let right = rhs.projections(i, j);
            let mut keys: BTreeSet<(BoundaryCondition, BoundaryCondition)> = left.keys().cloned().collect();
            for (h, v) in right.keys() {
                keys.insert((h.flip_180_window(i, j)?, v.clone()));
            }
            for (h, v) in keys {
                let a = left.get(&(h.clone(), v.clone())).cloned().unwrap_or_else(Rational::zero);
                let flipped = h.flip_180_window(i, j)?;
                let b = right.get(&(flipped, v.clone())).cloned().unwrap_or_else(Rational::zero);
                if a != b {
                    return Ok(Some(json!({ "H": h, "V": v, "lhs": a.to_string(), "rhs": b.to_string() })));
                }
            }
            Ok(None)
        },
    )
}

fn random_supported<R: Rng>(n: usize, lo: usize, hi: usize, rng: &mut R) -> Permutation {
    let mut images: Vec<usize> = (1..=n).collect();
    if lo < hi {
        images[lo - 1..hi].shuffle(rng);
    }
    Permutation::new(&images).expect("shuffle of the identity")
}

/// A random valid instance with `n` colors.
pub fn random_instance<R: Rng>(n: usize, rng: &mut R) -> GenFlipInstance {
    loop {
        let i = rng.random_range(1..n);
        let j = rng.random_range(1..n);
        let m = rng.random_range(1..=i);
        let Some(rows) = (m + j).checked_sub(i).filter(|&r| 1 <= r && r <= j) else { continue };
        let (k_lo, k_hi) = star_window(n, i, j);
        let k_top = k_hi + 1;
        if i + 1 - m < k_lo || i + rows > k_top {
            continue;
        }
        let inst = GenFlipInstance {
            n,
            i,
            j,
            m,
            rows,
            left: random_supported(n, (i + 1).max(k_lo), n.min(k_top), rng),
            down: random_supported(n, 1, i, rng),
            up: random_supported(n, j + 1, n, rng),
            right: random_supported(n, k_lo, j.min(k_top), rng),
        };
        if inst.validate().is_ok() {
            return inst;
        }
    }
}

/// Nine colors, cutoffs `(5, 4)`, a `3 × 2` rectangle and one nontrivial
/// factor of each kind.
pub fn nine_color_instance() -> GenFlipInstance {
    let perm = |v: &[usize]| Permutation::new(v).expect("fixed instance");
    GenFlipInstance {
        n: 9,
        i: 5,
        j: 4,
        m: 3,
        rows: 2,
        left: perm(&[1, 2, 3, 4, 5, 7, 9, 6, 8]),
        down: perm(&[2, 1, 3, 5, 4, 6, 7, 8, 9]),
        up: perm(&[1, 2, 3, 4, 6, 5, 8, 7, 9]),
        right: perm(&[3, 1, 2, 4, 5, 6, 7, 8, 9]),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rng_for, Status};
    use crate::symmetry::{verify_flip, FlipInstance};

    #[test]
    fn rectangle_permutation_is_grassmannian_when_it_fills_the_window() {
        let id = Permutation::identity(5);
        let inst = GenFlipInstance { n: 5, i: 2, j: 3, m: 2, rows: 3, left: id, down: id, up: id, right: id };
        assert_eq!(inst.rectangle_permutation().unwrap(), crate::combinat::grassmannian_perm(2, 3));
        assert!(verify_generalized_flip(&inst, 3, 1).is_pass());
        let flip = FlipInstance { m: 2, n: 3, h: BoundaryCondition::empty(), v: BoundaryCondition::empty(), h_image: None };
        assert!(verify_flip(&flip, 3, 1).is_pass());
    }

    #[test]
    fn nine_color_instance_passes() {
        let inst = nine_color_instance();
        inst.validate().unwrap();
        assert!(verify_generalized_flip(&inst, 2, 4).is_pass());
    }

    #[test]
    fn random_instances_pass() {
        let mut rng = rng_for(2, 0);
        for t in 0..15 {
            let n = 3 + t % 4;
            let inst = random_instance(n, &mut rng);
            let v = verify_generalized_flip(&inst, 2, t as u64);
            assert!(v.is_pass(), "{inst:?} {:?}", v.witness);
        }
    }

    #[test]
    fn parabolic_violations_are_invalid() {
        let mut inst = nine_color_instance();
        inst.down = Permutation::new(&[1, 2, 3, 4, 6, 5, 7, 8, 9]).unwrap();
        assert_eq!(verify_generalized_flip(&inst, 1, 0).status, Status::Invalid);
    }
}
