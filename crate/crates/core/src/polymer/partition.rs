use super::disorder::{DisorderField, PolymerParams};
use crate::error::{Error, Result};

fn check_range(l: usize, d: usize, r: usize, u: usize) -> Result<()> {
    if l > r || d > u || r - l > u - d {
        return Err(Error::Parameters(format!("need l ≤ r, d ≤ u and r − l ≤ u − d, got ({l},{d}) → ({r},{u})")));
    }
    Ok(())
}

impl DisorderField {
    fn check_covers(&self, r: usize, u: usize) -> Result<()> {
        if r > self.max_i() || u > self.max_j() {
            return Err(Error::Parameters(format!("field covers columns ≤ {} and rows ≤ {}", self.max_i(), self.max_j())));
        }
        Ok(())
    }

    /// Delayed Beta polymer `Z(l, d → r, u)`: vertical edges into `(i, j)`
    /// weigh `η_{i,j}`, diagonal ones `1 − η_{i,j}`, and only edges weakly
    /// after the first vertical edge count.
    pub fn beta_partition(&self, l: usize, d: usize, r: usize, u: usize) -> Result<f64> {
        check_range(l, d, r, u)?;
        self.check_covers(r, u)?;
        let width = r - l + 1;
        // `before[k]` sums paths at column l+k with no vertical edge yet.
        let mut before = vec![0.0; width];
        let mut after = vec![0.0; width];
        before[0] = 1.0;
        for j in d + 1..=u {
            let mut nb = vec![0.0; width];
            let mut na = vec![0.0; width];
            for k in 0..width {
                let e = self.eta(l + k, j);
                na[k] += (before[k] + after[k]) * e;
                if k > 0 {
                    nb[k] += before[k - 1];
                    na[k] += after[k - 1] * (1.0 - e);
                }
            }
            before = nb;
            after = na;
        }
        Ok(before[width - 1] + after[width - 1])
    }

    /// Gamma polymer `Z(l, d → r, u)`: vertical edges weigh `η_{i,j}`,
    /// diagonal edges weigh one.
    pub fn gamma_partition(&self, l: usize, d: usize, r: usize, u: usize) -> Result<f64> {
        check_range(l, d, r, u)?;
        self.check_covers(r, u)?;
        let width = r - l + 1;
        let mut z = vec![0.0; width];
        z[0] = 1.0;
        for j in d + 1..=u {
            let mut next = vec![0.0; width];
            for k in 0..width {
                next[k] = z[k] * self.eta(l + k, j) + if k > 0 { z[k - 1] } else { 0.0 };
            }
            z = next;
        }
        Ok(z[width - 1])
    }

    /// Sum over explicitly enumerated paths, for checking the recursions.
    pub fn path_sum(&self, l: usize, d: usize, r: usize, u: usize, delayed: bool) -> Result<f64> {
        check_range(l, d, r, u)?;
        self.check_covers(r, u)?;
        let steps = u - d;
        let mut total = 0.0;
        for mask in 0..1u64 << steps {
            if mask.count_ones() as usize != r - l {
                continue;
            }
            let mut i = l;
            let mut started = !delayed;
            let mut weight = 1.0;
            for t in 0..steps {
                let j = d + t + 1;
                if mask >> t & 1 == 1 {
                    i += 1;
                    if started {
                        weight *= if delayed { 1.0 - self.eta(i, j) } else { 1.0 };
                    }
                } else {
                    started = true;
                    weight *= self.eta(i, j);
                }
            }
            total += weight;
        }
        Ok(total)
    }
}

/// `Z^B(l, d → r, u)` on the disorder field of `seed`.
pub fn beta_partition(l: usize, d: usize, r: usize, u: usize, params: &PolymerParams, seed: u64) -> Result<f64> {
    if !matches!(params, PolymerParams::Beta { .. }) {
        return Err(Error::Parameters("Beta partition function needs Beta parameters".into()));
    }
    check_range(l, d, r, u)?;
    DisorderField::sample(params, seed, r, u.max(1))?.beta_partition(l, d, r, u)
}

/// `Z^Γ(l, d → r, u)` on the disorder field of `seed`.
pub fn gamma_partition(l: usize, d: usize, r: usize, u: usize, kappa: f64, seed: u64) -> Result<f64> {
    check_range(l, d, r, u)?;
    DisorderField::sample(&PolymerParams::Gamma { kappa }, seed, r, u.max(1))?.gamma_partition(l, d, r, u)
}
