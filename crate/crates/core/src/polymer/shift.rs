use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::disorder::{DisorderField, PolymerParams};
use super::intersection::{check_left_aligned, left_aligned_check};
use super::stats::{energy_test, ks_p_value, ks_statistic, TwoSampleTest};
use crate::error::{Error, Result};
use crate::scalar::derive_seed;

/// Two left-aligned tuples of cuts sharing `r`, compared through the
/// partition functions `Z(0, d_i → r_i, u_i)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftSpec {
    pub d: Vec<usize>,
    pub u: Vec<usize>,
    pub d_prime: Vec<usize>,
    pub u_prime: Vec<usize>,
    pub r: Vec<usize>,
    pub params: PolymerParams,
    /// Row relabelling applied to `ρ` on the primed side. When absent it is
    /// constructed from the intersection matrices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub phi: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ShiftReport {
    pub samples: usize,
    pub seed: u64,
    pub significance: f64,
    /// Per-test threshold after the Bonferroni correction.
    pub threshold: f64,
    pub phi: Vec<usize>,
    pub tests: Vec<TwoSampleTest>,
    pub decision: String,
}

impl ShiftReport {
    pub fn accepted(&self) -> bool {
        self.decision == "accept"
    }

    pub fn min_p_value(&self) -> f64 {
        self.tests.iter().map(|t| t.p_value).fold(1.0, f64::min)
    }
}

/// Subsample size and permutation count of the joint energy test.
pub const ENERGY_SUBSAMPLE: usize = 400;
pub const ENERGY_PERMUTATIONS: usize = 199;

impl ShiftSpec {
    fn resolve_phi(&self) -> Result<Vec<usize>> {
        check_left_aligned(&self.d, &self.u, &self.r)?;
        check_left_aligned(&self.d_prime, &self.u_prime, &self.r)?;
        if let Some(phi) = &self.phi {
            let mut sorted = phi.clone();
            sorted.sort_unstable();
            if sorted != (1..=phi.len()).collect::<Vec<_>>() {
                return Err(Error::Parameters(format!("phi {phi:?} is not a permutation")));
            }
            return Ok(phi.clone());
        }
        left_aligned_check(&self.d, &self.u, &self.d_prime, &self.u_prime, &self.r)?
            .ok_or_else(|| Error::Hypothesis("clipped intersection matrices differ".into()))
    }

    fn sample_side(&self, params: &PolymerParams, primed: bool, samples: usize, seed: u64) -> Result<Vec<Vec<f64>>> {
        let (d, u) = if primed { (&self.d_prime, &self.u_prime) } else { (&self.d, &self.u) };
        let max_i = self.r.iter().copied().max().unwrap_or(0);
        let max_j = u.iter().copied().max().unwrap_or(0).max(1);
        params.validate(max_i, max_j)?;
        let beta = matches!(params, PolymerParams::Beta { .. });
        (0..samples)
            .into_par_iter()
            .map(|t| {
                let field = DisorderField::sample(params, derive_seed(seed, t as u64), max_i, max_j)?;
                (0..d.len())
                    .map(|k| if beta { field.beta_partition(0, d[k], self.r[k], u[k]) } else { field.gamma_partition(0, d[k], self.r[k], u[k]) })
                    .collect()
            })
            .collect()
    }
}

/// Two-sample comparison of `(Z(0, d_i → r_i, u_i))_i` under `ρ` against
/// `(Z(0, d′_i → r_i, u′_i))_i` under `ρ′ = φ_V⁻¹(ρ)`: one
/// Kolmogorov–Smirnov test per coordinate plus a joint energy test on
/// `log Z`, Bonferroni-corrected at `significance`.
pub fn shift_invariance_test(spec: &ShiftSpec, samples: usize, seed: u64, significance: f64) -> Result<ShiftReport> {
    let phi = spec.resolve_phi()?;
    let left = spec.sample_side(&spec.params, false, samples, derive_seed(seed, 0))?;
    let right = spec.sample_side(&spec.params.relabel_rows(&phi), true, samples, derive_seed(seed, 1))?;
    let m = spec.d.len();
    let mut tests = Vec::with_capacity(m + 1);
    for k in 0..m {
        let a: Vec<f64> = left.iter().map(|v| v[k]).collect();
        let b: Vec<f64> = right.iter().map(|v| v[k]).collect();
        let stat = ks_statistic(&a, &b);
        tests.push(TwoSampleTest {
            name: format!("ks[{}]", k + 1),
            statistic: stat,
            p_value: ks_p_value(stat, a.len(), b.len()),
            n_left: a.len(),
            n_right: b.len(),
        });
    }
    let take = samples.min(ENERGY_SUBSAMPLE);
    let logs = |s: &[Vec<f64>]| -> Vec<Vec<f64>> { s[..take].iter().map(|v| v.iter().map(|z| z.ln()).collect()).collect() };
    let (stat, p) = energy_test(&logs(&left), &logs(&right), ENERGY_PERMUTATIONS, derive_seed(seed, 2));
    tests.push(TwoSampleTest { name: "energy".into(), statistic: stat, p_value: p, n_left: take, n_right: take });
    let threshold = significance / tests.len() as f64;
    let accept = tests.iter().all(|t| t.p_value >= threshold);
    Ok(ShiftReport {
        samples,
        seed,
        significance,
        threshold,
        phi,
        tests,
        decision: if accept { "accept" } else { "reject" }.into(),
    })
}

/// Four left-aligned cuts where the innermost segment moves down by one
/// row inside the common overlap of the others, with inhomogeneous `ρ`.
pub fn one_row_shift_spec() -> ShiftSpec {
    ShiftSpec {
        d: vec![0, 1, 2, 4],
        u: vec![12, 11, 10, 9],
        d_prime: vec![0, 1, 2, 3],
        u_prime: vec![12, 11, 10, 8],
        r: vec![1, 2, 3, 4],
        params: PolymerParams::Beta {
            sigma: vec![3.0, 2.5, 3.5, 2.0, 4.0],
            rho: vec![0.4, 1.6, 0.3, 1.8, 0.2, 1.5, 0.5, 1.9, 0.25, 1.2, 0.7, 1.4],
        },
        phi: None,
    }
}

/// The same pair of tuples with `ρ` left unpermuted on the primed side,
/// which the theorem does not cover.
pub fn wrong_relabelling_spec() -> ShiftSpec {
    ShiftSpec { phi: Some((1..=12).collect()), ..one_row_shift_spec() }
}

/// Kolmogorov–Smirnov distance between `Z^B(0, d → r, u)/ε^V` with
/// `ρ = 1/ε`, `σ = 1/ε + κ` and `Z^Γ(0, d → r, u)`, where `V = u−d−r` is
/// the number of vertical edges. Both sides read the same `Gamma(κ)`
/// numerators, which keeps sampling noise well below the distances.
pub fn gamma_degeneration(kappa: f64, d: usize, r: usize, u: usize, eps: &[f64], samples: usize, seed: u64) -> Result<Vec<(f64, f64)>> {
    if r > u.saturating_sub(d) {
        return Err(Error::Parameters(format!("need r ≤ u − d, got d={d}, r={r}, u={u}")));
    }
    let gamma = PolymerParams::Gamma { kappa };
    let vertical = (u - d - r) as i32;
    let reference: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|t| DisorderField::sample(&gamma, derive_seed(seed, t as u64), r, u)?.gamma_partition(0, d, r, u))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(eps.len());
    for &e in eps {
        let beta = PolymerParams::homogeneous_beta(1.0 / e + kappa, 1.0 / e, r, u);
        let scaled: Vec<f64> = (0..samples)
            .into_par_iter()
            .map(|t| Ok(DisorderField::sample(&beta, derive_seed(seed, t as u64), r, u)?.beta_partition(0, d, r, u)? / e.powi(vertical)))
            .collect::<Result<_>>()?;
        out.push((e, ks_statistic(&scaled, &reference)));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_roundtrip() {
        let spec = one_row_shift_spec();
        let json = serde_json::to_string(&spec).unwrap();
        assert!(json.contains("\"kind\":\"beta\""));
        assert_eq!(serde_json::from_str::<ShiftSpec>(&json).unwrap(), spec);
    }

    #[test]
    fn identity_relabelling_accepts() {
        let spec = ShiftSpec { d_prime: vec![0, 1, 2, 4], u_prime: vec![12, 11, 10, 9], ..one_row_shift_spec() };
        let report = shift_invariance_test(&spec, 3000, 5, 0.01).unwrap();
        assert_eq!(report.phi, (1..=12).collect::<Vec<_>>());
        assert!(report.accepted(), "{report:?}");
    }

    #[test]
    fn shift_accepts_on_a_small_run() {
        let report = shift_invariance_test(&one_row_shift_spec(), 4000, 7, 0.01).unwrap();
        assert!(report.accepted(), "{report:?}");
    }

    #[test]
    fn mismatched_overlaps_rejected_up_front() {
        let spec = ShiftSpec { d_prime: vec![0, 1, 2, 1], u_prime: vec![12, 11, 10, 6], ..one_row_shift_spec() };
        assert!(matches!(shift_invariance_test(&spec, 10, 0, 0.01), Err(Error::Hypothesis(_))));
    }

    #[test]
    fn degeneration_shrinks() {
        let ks = gamma_degeneration(1.5, 0, 2, 5, &[1.0, 0.25, 0.0625], 4000, 3).unwrap();
        assert!(ks[0].1 > ks[1].1 && ks[1].1 > ks[2].1, "{ks:?}");
    }
}
