use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::combinat::{grassmannian_perm, BoundaryCondition, SkewDomain};
use crate::error::{Error, Result};
use crate::hecke::{yang_baxter_basis, HeckeElement};
use crate::model::{exact_distribution, Method};
use crate::scalar::{random_rational_skew_point, randomized_check, rng_for, PointConfig, Rational, SkewPoint, Verdict, WiringPoint};

/// Boundary conditions on an `M × N` rectangle.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FlipInstance {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    #[serde(rename = "H")]
    pub h: BoundaryCondition,
    #[serde(rename = "V")]
    pub v: BoundaryCondition,
    /// Claimed image of `ℍ`; defaults to `180°(ℍ)`. Setting it to anything
    /// else turns the instance into a negative control.
    #[serde(rename = "H_image", default, skip_serializing_if = "Option::is_none")]
    pub h_image: Option<BoundaryCondition>,
}

impl FlipInstance {
    pub fn validate(&self) -> Result<()> {
        let total = self.m + self.n;
        if self.m == 0 || self.n == 0 {
            return Err(Error::Parameters("rectangle sides must be positive".into()));
        }
        for &(a, b) in self.h.pairs().iter().chain(self.h_image.iter().flat_map(|h| h.pairs())) {
            if !(self.m < a && a <= total && 1 <= b && b <= self.n) {
                return Err(Error::InvalidBoundary(format!("horizontal pair ({a},{b}) must lie in [M+1,M+N]×[1,N]")));
            }
        }
        for &(a, b) in self.v.pairs() {
            if !(1 <= a && a <= self.m && self.n < b && b <= total) {
                return Err(Error::InvalidBoundary(format!("vertical pair ({a},{b}) must lie in [1,M]×[N+1,M+N]")));
            }
        }
        Ok(())
    }

    pub fn flipped_h(&self) -> BoundaryCondition {
        self.h.flip_180(self.m + self.n).expect("validated pairs lie in [1,n]")
    }

    /// The horizontal condition compared against on the reversed side.
    pub fn target_h(&self) -> BoundaryCondition {
        self.h_image.clone().unwrap_or_else(|| self.flipped_h())
    }
}

/// `𝔭` at `(x, y)` for the rectangle as a wiring point: `z = (x_M,…,x_1,y_1,…,y_N)`.
pub fn rectangle_wiring_point<S: crate::scalar::FieldScalar>(pt: &SkewPoint<S>, m: usize, n: usize) -> Result<WiringPoint<S>> {
    let (_, z) = SkewDomain::rectangle(m, n).to_wiring(&pt.x, &pt.y)?;
    Ok(WiringPoint { q: pt.q.clone(), z })
}

/// `Y^{w^{M,N}}` at the rectangle point.
pub fn rectangle_element(pt: &SkewPoint<Rational>, m: usize, n: usize) -> Result<HeckeElement<Rational>> {
    yang_baxter_basis(&grassmannian_perm(m, n), &rectangle_wiring_point(pt, m, n)?)
}

fn projection_or_zero(y: &HeckeElement<Rational>, i: usize, j: usize, h: &BoundaryCondition, v: &BoundaryCondition) -> Rational {
    y.boundary_projection(i, j, h, v).unwrap_or_else(Rational::zero)
}

/// Checks `P^{ℍ,𝕍}(x, y) = P^{180°(ℍ),𝕍}(x, rev y)` at random points.
pub fn verify_flip(inst: &FlipInstance, trials: usize, seed: u64) -> Verdict {
    if let Err(e) = inst.validate() {
        return Verdict::invalid(e.to_string());
    }
    compare_with(inst, &inst.target_h(), trials, seed)
}

fn compare_with(inst: &FlipInstance, target_h: &BoundaryCondition, trials: usize, seed: u64) -> Verdict {
    let (m, n) = (inst.m, inst.n);
    let cfg = PointConfig::default();
    randomized_check(
        trials,
        seed,
        |rng| random_rational_skew_point(m, n, rng, &cfg),
        |pt| {
            let lhs = projection_or_zero(&rectangle_element(pt, m, n)?, m, n, &inst.h, &inst.v);
            let rhs = projection_or_zero(&rectangle_element(&pt.rev_y(), m, n)?, m, n, target_h, &inst.v);
            Ok((lhs != rhs).then(|| json!({ "lhs": lhs.to_string(), "rhs": rhs.to_string() })))
        },
    )
}

/// Boundary conditions `(ℍ, 𝕍)` realized by some color permutation of the
/// `M × N` rectangle.
pub fn realized_conditions(m: usize, n: usize) -> Result<BTreeSet<(BoundaryCondition, BoundaryCondition)>> {
    let pt = random_rational_skew_point(m, n, &mut rng_for(0, 0), &PointConfig::default())?;
    Ok(rectangle_element(&pt, m, n)?.projections(m, n).into_keys().collect())
}

/// Result of [`verify_flip_exhaustive`] for one rectangle.
#[derive(Clone, Debug, Serialize)]
pub struct FlipSweep {
    #[serde(rename = "M")]
    pub m: usize,
    #[serde(rename = "N")]
    pub n: usize,
    pub conditions: usize,
    pub verdict: Verdict,
}

/// Every realized `(ℍ, 𝕍)` of every rectangle with `M + N ≤ max_total`.
pub fn verify_flip_exhaustive(max_total: usize, trials: usize, seed: u64) -> Vec<FlipSweep> {
    let shapes: Vec<(usize, usize)> = (2..=max_total).flat_map(|t| (1..t).map(move |m| (m, t - m))).collect();
    shapes
        .into_par_iter()
        .map(|(m, n)| {
            let conditions = match realized_conditions(m, n) {
                Ok(c) => c,
                Err(e) => return FlipSweep { m, n, conditions: 0, verdict: Verdict::invalid(e.to_string()) },
            };
            let count = conditions.len();
            let cfg = PointConfig::default();
            let verdict = randomized_check(
                trials,
                seed ^ ((m as u64) << 32 | n as u64),
                |rng| random_rational_skew_point(m, n, rng, &cfg),
                |pt| {
                    let lhs = rectangle_element(pt, m, n)?;
                    let rhs = rectangle_element(&pt.rev_y(), m, n)?;
                    for (h, v) in &conditions {
                        let flipped = h.flip_180(m + n)?;
                        let (a, b) = (projection_or_zero(&lhs, m, n, h, v), projection_or_zero(&rhs, m, n, &flipped, v));
                        if a != b {
                            return Ok(Some(json!({ "H": h, "V": v, "lhs": a.to_string(), "rhs": b.to_string() })));
                        }
                    }
                    Ok(None)
                },
            );
            FlipSweep { m, n, conditions: count, verdict }
        })
        .collect()
}

/// The worked `2 × 3` example: `ℍ = {(3,2),(5,3)}`, `𝕍 = {(2,4)}`.
pub fn worked_example() -> FlipInstance {
    FlipInstance {
        m: 2,
        n: 3,
        h: BoundaryCondition::new(vec![(3, 2), (5, 3)]).expect("distinct"),
        v: BoundaryCondition::new(vec![(2, 4)]).expect("distinct"),
        h_image: None,
    }
}

/// Closed forms of both sides of the worked example, in terms of the cell
/// parameters `𝔭_{i,j}` at `(x, y)`.
pub fn worked_example_closed_forms(pt: &SkewPoint<Rational>) -> Result<(Rational, Rational)> {
    let p = |i, j| pt.p(i, j);
    let one = Rational::one();
    let q = pt.q.clone();
    let (p11, p12, p13, p21, p22, p23) = (p(1, 1)?, p(1, 2)?, p(1, 3)?, p(2, 1)?, p(2, 2)?, p(2, 3)?);
    let common = p13 * p23;
    let lhs = common.clone()
        * (one.clone() - p12.clone())
        * (one.clone() - p21.clone())
        * (p11.clone() * (one.clone() - q.clone() * p22.clone()) + p22.clone() * (one.clone() - p11.clone()));
    let rhs = common * (one.clone() - p11) * (one.clone() - p22) * (p12.clone() * (one.clone() - q * p21.clone()) + p21 * (one - p12));
    Ok((lhs, rhs))
}

/// Both sides of the worked example by pipe-dream enumeration.
pub fn worked_example_brute_force(pt: &SkewPoint<Rational>) -> Result<(Rational, Rational)> {
    let inst = worked_example();
    let dom = SkewDomain::rectangle(2, 3);
    let lhs = exact_distribution(&dom, pt, Method::BruteForce)?;
    let rhs = exact_distribution(&dom, &pt.rev_y(), Method::BruteForce)?;
    Ok((projection_or_zero(&lhs, 2, 3, &inst.h, &inst.v), projection_or_zero(&rhs, 2, 3, &inst.flipped_h(), &inst.v)))
}
