use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::positroid::BoundaryPair;
use crate::combinat::{BoundaryCondition, SkewDomain};
use crate::error::{Error, Result};
use crate::model::PipeDream;
use crate::scalar::IntPolynomial;

/// Largest rectangle area enumerated exhaustively.
pub const MAX_PIPE_DREAM_CELLS: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CountMode {
    /// `#PD^{ℍ,𝕍}`, returned as a constant polynomial.
    Plain,
    /// `Σ q^{xing(Π)}` over `PD^{ℍ,𝕍}`.
    QAnalog,
}

/// Crossing-count generating polynomial of the pipe dreams in the `M × N`
/// rectangle, split by `(ℍ^{M,N}_π, 𝕍^{M,N}_π)` of their permutation.
pub fn pipe_dream_census(m: usize, rows: usize) -> Result<BTreeMap<BoundaryPair, IntPolynomial>> {
    let cells = m * rows;
    if cells > MAX_PIPE_DREAM_CELLS {
        return Err(Error::CapExceeded { what: "rectangle cells", value: cells, cap: MAX_PIPE_DREAM_CELLS });
    }
    let dom = SkewDomain::rectangle(m, rows);
    let mut by_crossings: BTreeMap<BoundaryPair, Vec<i64>> = BTreeMap::new();
    for mask in 0..1u64 << cells {
        let pi = PipeDream::from_mask(&dom, mask).permutation(&dom);
        let key = (BoundaryCondition::horizontal(&pi, m, rows), BoundaryCondition::vertical(&pi, m, rows));
        by_crossings.entry(key).or_insert_with(|| vec![0; cells + 1])[mask.count_ones() as usize] += 1;
    }
    Ok(by_crossings.into_iter().map(|(k, c)| (k, IntPolynomial::from_i64(&c))).collect())
}

pub fn count_pipe_dreams(m: usize, rows: usize, h: &BoundaryCondition, v: &BoundaryCondition, mode: CountMode) -> Result<IntPolynomial> {
    let poly = pipe_dream_census(m, rows)?.remove(&(h.clone(), v.clone())).unwrap_or_else(IntPolynomial::zero);
    Ok(match mode {
        CountMode::QAnalog => poly,
        CountMode::Plain => IntPolynomial::new(vec![poly.eval_i64(1)]),
    })
}

/// Boundary pairs whose crossing polynomial differs from that of
/// `(180°(ℍ), 𝕍)`. Empty when both counting identities hold.
pub fn rotation_mismatches(m: usize, rows: usize) -> Result<Vec<BoundaryPair>> {
    let census = pipe_dream_census(m, rows)?;
    let mut bad = Vec::new();
    for ((h, v), poly) in &census {
        let rotated = (h.flip_180(m + rows)?, v.clone());
        if census.get(&rotated) != Some(poly) {
            bad.push((h.clone(), v.clone()));
        }
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn totals_partition_all_pipe_dreams() {
        let census = pipe_dream_census(2, 3).unwrap();
        let total: num_bigint::BigInt = census.values().map(|p| p.eval_i64(1)).sum();
        assert_eq!(total, num_bigint::BigInt::from(64));
        // Binomial row sums by crossing count.
        let sum = census.values().fold(IntPolynomial::zero(), |a, p| a + p.clone());
        assert_eq!(sum, IntPolynomial::from_i64(&[1, 6, 15, 20, 15, 6, 1]));
    }

    #[test]
    fn rotation_preserves_counts_up_to_three_by_three() {
        for m in 1..=3 {
            for rows in 1..=3 {
                assert!(rotation_mismatches(m, rows).unwrap().is_empty(), "M={m}, N={rows}");
            }
        }
    }

    #[test]
    fn plain_and_q_modes_agree_at_one() {
        let census = pipe_dream_census(2, 2).unwrap();
        for ((h, v), poly) in census {
            let plain = count_pipe_dreams(2, 2, &h, &v, CountMode::Plain).unwrap();
            assert_eq!(plain.coeffs(), &[poly.eval_i64(1)]);
        }
        assert!(pipe_dream_census(5, 5).is_err());
    }
}
