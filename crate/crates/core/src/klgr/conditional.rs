use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use serde::Serialize;

use crate::combinat::{BoundaryCondition, Permutation};
use crate::error::Result;
use crate::hecke::{yang_baxter_basis, HeckeElement};
use crate::scalar::{random_wiring_point, rng_for, FieldScalar, PointConfig, Rational, WiringPoint};

/// Probabilities of the strict class `SAT°_{α,δ}(ℍ,𝕍)`, split by where `α`
/// is sent relative to `δ` and where `δ` comes from relative to `α`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConditionalProbabilities<S> {
    pub total: S,
    /// `π(α) > δ`
    pub sent_above: S,
    /// `π(α) = δ`
    pub matched: S,
    /// `π(α) < δ`
    pub sent_below: S,
    /// `π⁻¹(δ) > α`
    pub from_above: S,
    /// `π⁻¹(δ) < α`
    pub from_below: S,
}

/// `(ℍ°^{α,δ}_π, 𝕍°^{α,δ}_π)`.
pub fn strict_boundary(pi: &Permutation, alpha: usize, delta: usize) -> (BoundaryCondition, BoundaryCondition) {
    (BoundaryCondition::horizontal_strict(pi, alpha, delta), BoundaryCondition::vertical_strict(pi, alpha, delta))
}

impl<S: FieldScalar> ConditionalProbabilities<S> {
    pub fn of(y: &HeckeElement<S>, alpha: usize, delta: usize, h: &BoundaryCondition, v: &BoundaryCondition) -> Self {
        let zero = y.terms().next().map(|(_, c)| c.zero_like()).expect("nonzero element");
        let mut out = ConditionalProbabilities {
            total: zero.clone(),
            sent_above: zero.clone(),
            matched: zero.clone(),
            sent_below: zero.clone(),
            from_above: zero.clone(),
            from_below: zero,
        };
        for (pi, c) in y.terms() {
            if strict_boundary(pi, alpha, delta) != (h.clone(), v.clone()) {
                continue;
            }
            out.total = out.total.clone() + c.clone();
            let image = pi.at(alpha);
            let slot = match image.cmp(&delta) {
                std::cmp::Ordering::Greater => &mut out.sent_above,
                std::cmp::Ordering::Equal => &mut out.matched,
                std::cmp::Ordering::Less => &mut out.sent_below,
            };
            *slot = slot.clone() + c.clone();
            let source = pi.position_of(delta);
            if source > alpha {
                out.from_above = out.from_above.clone() + c.clone();
            } else if source < alpha {
                out.from_below = out.from_below.clone() + c.clone();
            }
        }
        out
    }

    /// Names of the ratio identities violated between `self` at `z` and
    /// `swapped` at `z` with `z_α ↔ z_β`. Ratios are cross-multiplied.
    pub fn violated(&self, swapped: &Self) -> Vec<&'static str> {
        let ratio_eq = |a: &S, b: &S| a.clone() * swapped.total.clone() == b.clone() * self.total.clone();
        let mut bad = Vec::new();
        if !ratio_eq(&self.sent_above, &swapped.from_below) {
            bad.push("sent_above/total = from_below/total swapped");
        }
        if !ratio_eq(&self.matched, &swapped.matched) {
            bad.push("matched/total = matched/total swapped");
        }
        if !ratio_eq(&self.sent_below, &swapped.from_above) {
            bad.push("sent_below/total = from_above/total swapped");
        }
        bad
    }
}

/// `{α, w⁻¹(δ)}` is an inversion of `w`.
pub fn is_inversion(w: &Permutation, alpha: usize, delta: usize) -> bool {
    let beta = w.position_of(delta);
    let gamma = w.at(alpha);
    (alpha < beta && gamma > delta) || (alpha > beta && gamma < delta)
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionalCounterexample {
    pub w: Permutation,
    pub alpha: usize,
    pub delta: usize,
    pub h: BoundaryCondition,
    pub v: BoundaryCondition,
    pub identity: &'static str,
    pub point: WiringPoint<Rational>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConditionalScan {
    pub n: usize,
    pub trials: usize,
    pub seed: u64,
    /// Distinct `(w, α, δ, ℍ°, 𝕍°)` examined.
    pub cases: usize,
    pub counterexamples: Vec<ConditionalCounterexample>,
}

impl ConditionalScan {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

fn scan_one(w: &Permutation, trials: usize, seed: u64, stream: u64) -> Result<(usize, Vec<ConditionalCounterexample>)> {
    let n = w.n();
    let support: Vec<Permutation> = Permutation::all(n).into_iter().filter(|pi| pi.bruhat_le(w)).collect();
    let mut cases = 0;
    let mut found = Vec::new();
    let mut rng = rng_for(seed, stream);
    let points: Vec<WiringPoint<Rational>> =
        (0..trials).map(|_| random_wiring_point(&Rational::one(), n, &mut rng, &PointConfig::default())).collect::<Result<_>>()?;
    let at_points: Vec<HeckeElement<Rational>> = points.iter().map(|pt| yang_baxter_basis(w, pt)).collect::<Result<_>>()?;
    for alpha in 1..=n {
        for delta in 1..=n {
            if is_inversion(w, alpha, delta) {
                continue;
            }
            let beta = w.position_of(delta);
            let classes: BTreeSet<_> = support.iter().map(|pi| strict_boundary(pi, alpha, delta)).collect();
            cases += classes.len();
            for (pt, y) in points.iter().zip(&at_points) {
                let y_swapped = yang_baxter_basis(w, &pt.swapped(alpha, beta))?;
                for (h, v) in &classes {
                    let here = ConditionalProbabilities::of(y, alpha, delta, h, v);
                    let there = ConditionalProbabilities::of(&y_swapped, alpha, delta, h, v);
                    for identity in here.violated(&there) {
                        found.push(ConditionalCounterexample { w: *w, alpha, delta, h: h.clone(), v: v.clone(), identity, point: pt.clone() });
                    }
                }
            }
        }
    }
    Ok((cases, found))
}

/// Checks the three ratio identities for every `w ∈ S_n`, every `α, δ`
/// with `{α, w⁻¹(δ)}` not an inversion and every realized strict class,
/// at `trials` random rational points per `w`.
pub fn scan_conditional_shift(n: usize, trials: usize, seed: u64) -> Result<ConditionalScan> {
    let words = Permutation::all(n);
    let results: Vec<Result<(usize, Vec<ConditionalCounterexample>)>> =
        words.par_iter().enumerate().map(|(t, w)| scan_one(w, trials, seed, t as u64)).collect();
    let mut scan = ConditionalScan { n, trials, seed, cases: 0, counterexamples: Vec::new() };
    for r in results {
        let (cases, found) = r?;
        scan.cases += cases;
        scan.counterexamples.extend(found);
    }
    Ok(scan)
}

/// The worked instance: `n = 4`, `w = s_2s_3s_2s_1`, `α = 3`, `δ = 2`,
/// `ℍ = ∅`, `𝕍 = {(2,4)}`.
pub struct ConditionalExample {
    pub w: Permutation,
    pub alpha: usize,
    pub delta: usize,
    pub h: BoundaryCondition,
    pub v: BoundaryCondition,
}

pub fn conditional_example() -> ConditionalExample {
    ConditionalExample {
        w: Permutation::from_word(4, &[2, 3, 2, 1]),
        alpha: 3,
        delta: 2,
        h: BoundaryCondition::empty(),
        v: BoundaryCondition::new(vec![(2, 4)]).expect("single pair"),
    }
}

impl ConditionalExample {
    pub fn beta(&self) -> usize {
        self.w.position_of(self.delta)
    }

    pub fn probabilities<S: FieldScalar>(&self, pt: &WiringPoint<S>) -> Result<ConditionalProbabilities<S>> {
        let y = yang_baxter_basis(&self.w, pt)?;
        Ok(ConditionalProbabilities::of(&y, self.alpha, self.delta, &self.h, &self.v))
    }

    /// `𝔭₂₃𝔭₂₄(1 − 𝔭₃₄𝔭₁₄)`.
    pub fn closed_total<S: FieldScalar>(pt: &WiringPoint<S>) -> Result<S> {
        let one = pt.q.one_like();
        Ok(pt.p(2, 3)? * pt.p(2, 4)? * (one - pt.p(3, 4)? * pt.p(1, 4)?))
    }
}

/// What the worked instance shows at one point.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExampleOutcome {
    pub total_matches_closed_form: bool,
    pub ratio_identities_hold: bool,
    /// `P(π(α) < δ)` differs from the swapped `P(π⁻¹(δ) > α)` once the
    /// class totals are dropped.
    pub denominator_free_fails: bool,
}

impl ExampleOutcome {
    pub fn reproduced(&self) -> bool {
        self.total_matches_closed_form && self.ratio_identities_hold && self.denominator_free_fails
    }
}

impl ConditionalExample {
    pub fn check<S: FieldScalar>(&self, pt: &WiringPoint<S>) -> Result<ExampleOutcome> {
        let here = self.probabilities(pt)?;
        let there = self.probabilities(&pt.swapped(self.alpha, self.beta()))?;
        Ok(ExampleOutcome {
            total_matches_closed_form: here.total == Self::closed_total(pt)?,
            ratio_identities_hold: here.violated(&there).is_empty(),
            denominator_free_fails: here.sent_below != there.from_above,
        })
    }
}

/// Per-class probability tables for one `(w, α, δ)` at one point, keyed by
/// the strict boundary pair.
pub fn class_table<S: FieldScalar>(
    w: &Permutation,
    alpha: usize,
    delta: usize,
    pt: &WiringPoint<S>,
) -> Result<BTreeMap<(BoundaryCondition, BoundaryCondition), ConditionalProbabilities<S>>> {
    let y = yang_baxter_basis(w, pt)?;
    let classes: BTreeSet<_> = y.terms().map(|(pi, _)| strict_boundary(pi, alpha, delta)).collect();
    Ok(classes.into_iter().map(|(h, v)| {
        let p = ConditionalProbabilities::of(&y, alpha, delta, &h, &v);
        ((h, v), p)
    }).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn point(seed: u64) -> WiringPoint<Rational> {
        random_wiring_point(&Rational::one(), 4, &mut rng_for(seed, 0), &PointConfig::default()).unwrap()
    }

    #[test]
    fn worked_example_total_and_ratio() {
        let ex = conditional_example();
        assert_eq!(ex.beta(), 1);
        assert_eq!(ex.w.at(ex.alpha), 3);
        assert!(!is_inversion(&ex.w, ex.alpha, ex.delta));
        for seed in 0..5 {
            let pt = point(seed);
            assert!(ex.check(&pt).unwrap().reproduced());
        }
    }

    #[test]
    fn worked_example_numerators() {
        let ex = conditional_example();
        let pt = point(9);
        let one = Rational::one();
        let p = |i, j| pt.p(i, j).unwrap();
        let here = ex.probabilities(&pt).unwrap();
        assert_eq!(here.sent_below, p(2, 3) * p(2, 4) * (one.clone() - p(3, 4)) * p(1, 4));
        assert_eq!(here.from_above, p(2, 3) * p(2, 4) * p(3, 4) * (one - p(1, 4)));
    }

    #[test]
    fn inversions_break_the_identities() {
        let w = Permutation::simple(3, 1);
        let (alpha, delta) = (1, 1);
        assert!(is_inversion(&w, alpha, delta));
        let beta = w.position_of(delta);
        let pt = random_wiring_point(&Rational::one(), 3, &mut rng_for(4, 0), &PointConfig::default()).unwrap();
        let here = class_table(&w, alpha, delta, &pt).unwrap();
        let there = class_table(&w, alpha, delta, &pt.swapped(alpha, beta)).unwrap();
        assert!(here.iter().any(|(k, p)| there.get(k).is_some_and(|t| !p.violated(t).is_empty())));
    }

    #[test]
    fn scan_small_sizes() {
        for n in 1..=4 {
            let scan = scan_conditional_shift(n, 2, 11).unwrap();
            assert!(scan.passed(), "{:?}", scan.counterexamples.first());
            assert!(scan.cases > 0);
        }
    }
}
