use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IntersectionMode {
    /// `min(u_i, u_j) − max(d_i, d_j)`, possibly negative.
    Plain,
    /// Negative entries replaced by zero: overlap lengths of `[d_i, u_i]`.
    Clipped,
}

/// Symmetric `m × m` matrix of pairwise segment overlaps.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IntersectionMatrix {
    size: usize,
    entries: Vec<f64>,
}

impl IntersectionMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.entries[i * self.size + j]
    }

    pub fn rows(&self) -> Vec<Vec<f64>> {
        self.entries.chunks(self.size.max(1)).map(<[f64]>::to_vec).collect()
    }
}

pub fn intersection_matrix(d: &[f64], u: &[f64], mode: IntersectionMode) -> Result<IntersectionMatrix> {
    if d.len() != u.len() {
        return Err(Error::Parameters(format!("{} lower ends but {} upper ends", d.len(), u.len())));
    }
    let m = d.len();
    let mut entries = Vec::with_capacity(m * m);
    for i in 0..m {
        for j in 0..m {
            let raw = u[i].min(u[j]) - d[i].max(d[j]);
            entries.push(match mode {
                IntersectionMode::Plain => raw,
                IntersectionMode::Clipped => raw.max(0.0),
            });
        }
    }
    Ok(IntersectionMatrix { size: m, entries })
}

fn as_reals(v: &[usize]) -> Vec<f64> {
    v.iter().map(|&x| x as f64).collect()
}

/// Integer form of the clipped matrix.
pub fn clipped_overlaps(d: &[usize], u: &[usize]) -> Result<IntersectionMatrix> {
    intersection_matrix(&as_reals(d), &as_reals(u), IntersectionMode::Clipped)
}

/// Checks that the cuts `(1, d_i+1, u_i, r_i)` form a left-aligned tuple:
/// each partition function `Z(0, d_i → r_i, u_i)` is defined and the top
/// right corners `(r_i, u_i)` lie on one up-left path.
pub fn check_left_aligned(d: &[usize], u: &[usize], r: &[usize]) -> Result<()> {
    if d.len() != u.len() || d.len() != r.len() {
        return Err(Error::Parameters("d, u and r must have equal lengths".into()));
    }
    for k in 0..d.len() {
        if d[k] > u[k] || r[k] > u[k] - d[k] {
            return Err(Error::Hypothesis(format!("cut {}: need d ≤ u and r ≤ u − d, got d={}, u={}, r={}", k + 1, d[k], u[k], r[k])));
        }
    }
    for a in 0..d.len() {
        for b in a + 1..d.len() {
            let ordered = (r[a] <= r[b] && u[a] >= u[b]) || (r[a] >= r[b] && u[a] <= u[b]);
            if !ordered {
                return Err(Error::Hypothesis(format!("cuts {} and {} are not on a common up-left path", a + 1, b + 1)));
            }
        }
    }
    Ok(())
}

/// A row bijection `φ_V` on `[1, Y]` (identity above `Y`) with
/// `φ_V([d_i+1, u_i]) = [d′_i+1, u′_i]` for every `i`, stored as
/// `phi[y−1] = φ_V(y)`. `None` when the clipped intersection matrices
/// differ, in which case no such bijection exists.
pub fn left_aligned_check(d: &[usize], u: &[usize], d_prime: &[usize], u_prime: &[usize], r: &[usize]) -> Result<Option<Vec<usize>>> {
    check_left_aligned(d, u, r)?;
    check_left_aligned(d_prime, u_prime, r)?;
    if clipped_overlaps(d, u)? != clipped_overlaps(d_prime, u_prime)? {
        return Ok(None);
    }
    let top = u.iter().chain(u_prime).copied().max().unwrap_or(0);
    // Rows grouped by the set of segments containing them, in increasing
    // order; equal overlap data forces equal group sizes.
    let groups = |d: &[usize], u: &[usize]| {
        let mut g: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for y in 1..=top {
            let sig: Vec<usize> = (0..d.len()).filter(|&k| d[k] < y && y <= u[k]).collect();
            g.entry(sig).or_default().push(y);
        }
        g
    };
    let (from, to) = (groups(d, u), groups(d_prime, u_prime));
    let mut phi = vec![0; top];
    for (sig, rows) in &from {
        let Some(targets) = to.get(sig) else {
            return Ok(None);
        };
        if targets.len() != rows.len() {
            return Ok(None);
        }
        for (&y, &t) in rows.iter().zip(targets) {
            phi[y - 1] = t;
        }
    }
    for k in 0..d.len() {
        let mut image: Vec<usize> = (d[k] + 1..=u[k]).map(|y| phi[y - 1]).collect();
        image.sort_unstable();
        if image != (d_prime[k] + 1..=u_prime[k]).collect::<Vec<_>>() {
            return Ok(None);
        }
    }
    Ok(Some(phi))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn overlap_oracle(a: (f64, f64), b: (f64, f64)) -> f64 {
        let lo = a.0.max(b.0);
        let hi = a.1.min(b.1);
        if hi > lo {
            hi - lo
        } else {
            0.0
        }
    }

    #[test]
    fn degenerate_and_disjoint_segments() {
        let im = intersection_matrix(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0], IntersectionMode::Clipped).unwrap();
        assert!(im.rows().iter().flatten().all(|&x| x == 0.0));
        let im = intersection_matrix(&[0.0, 5.0], &[2.0, 7.5], IntersectionMode::Clipped).unwrap();
        assert_eq!(im.rows(), vec![vec![2.0, 0.0], vec![0.0, 2.5]]);
        let plain = intersection_matrix(&[0.0, 5.0], &[2.0, 7.5], IntersectionMode::Plain).unwrap();
        assert_eq!(plain.get(0, 1), -3.0);
    }

    proptest! {
        #[test]
        fn clipped_entries_are_overlap_lengths(segs in prop::collection::vec((0i32..40, 0i32..20), 1..6)) {
            let d: Vec<f64> = segs.iter().map(|s| s.0 as f64 / 4.0).collect();
            let u: Vec<f64> = segs.iter().map(|s| (s.0 + s.1) as f64 / 4.0).collect();
            let im = intersection_matrix(&d, &u, IntersectionMode::Clipped).unwrap();
            for i in 0..d.len() {
                prop_assert_eq!(im.get(i, i), u[i] - d[i]);
                for j in 0..d.len() {
                    prop_assert_eq!(im.get(i, j), im.get(j, i));
                    prop_assert_eq!(im.get(i, j), overlap_oracle((d[i], u[i]), (d[j], u[j])));
                }
            }
        }

        #[test]
        fn common_shift_invariance(segs in prop::collection::vec((-20i32..20, -10i32..20), 1..6), c in -10i32..10) {
            let d: Vec<f64> = segs.iter().map(|s| s.0 as f64).collect();
            let u: Vec<f64> = segs.iter().map(|s| (s.0 + s.1) as f64).collect();
            let ds: Vec<f64> = d.iter().map(|x| x + c as f64).collect();
            let us: Vec<f64> = u.iter().map(|x| x + c as f64).collect();
            for mode in [IntersectionMode::Plain, IntersectionMode::Clipped] {
                prop_assert_eq!(intersection_matrix(&d, &u, mode).unwrap(), intersection_matrix(&ds, &us, mode).unwrap());
            }
        }
    }

    #[test]
    fn identity_bijection() {
        let (d, u, r) = ([0, 1, 2], [9, 8, 7], [1, 2, 3]);
        let phi = left_aligned_check(&d, &u, &d, &u, &r).unwrap().unwrap();
        assert_eq!(phi, (1..=9).collect::<Vec<_>>());
    }

    #[test]
    fn shifted_inner_segment() {
        let (d, u, r) = ([0, 1, 2, 4], [12, 11, 10, 9], [1, 2, 3, 4]);
        let (dp, up) = ([0, 1, 2, 3], [12, 11, 10, 8]);
        let phi = left_aligned_check(&d, &u, &dp, &up, &r).unwrap().unwrap();
        assert_ne!(phi, (1..=12).collect::<Vec<_>>());
        let mut sorted = phi.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, (1..=12).collect::<Vec<_>>());
    }

    #[test]
    fn mismatch_gives_none() {
        let (d, u, r) = ([0, 1, 2, 4], [12, 11, 10, 9], [1, 2, 3, 4]);
        let (dp, up) = ([0, 1, 2, 1], [12, 11, 10, 6]);
        assert!(left_aligned_check(&d, &u, &dp, &up, &r).unwrap().is_none());
    }

    #[test]
    fn non_left_aligned_rejected() {
        assert!(check_left_aligned(&[0, 0], &[5, 6], &[1, 2]).is_err());
        assert!(check_left_aligned(&[3], &[4], &[2]).is_err());
    }
}
