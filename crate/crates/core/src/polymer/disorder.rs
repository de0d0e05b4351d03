use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Gamma};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::derive_seed;

/// Parameters of the vertical-edge disorder.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PolymerParams {
    /// `η_{i,j} ~ Beta(σ_i − ρ_j, ρ_j)`; `sigma[i]` is `σ_i` for `i ≥ 0`
    /// and `rho[j−1]` is `ρ_j` for `j ≥ 1`.
    Beta { sigma: Vec<f64>, rho: Vec<f64> },
    /// `η_{i,j} ~ Gamma(κ)`.
    Gamma { kappa: f64 },
}

impl PolymerParams {
    pub fn homogeneous_beta(sigma: f64, rho: f64, columns: usize, rows: usize) -> Self {
        PolymerParams::Beta { sigma: vec![sigma; columns + 1], rho: vec![rho; rows] }
    }

    /// Checks the parameters for columns `0..=max_i` and rows `1..=max_j`.
    pub fn validate(&self, max_i: usize, max_j: usize) -> Result<()> {
        match self {
            PolymerParams::Beta { sigma, rho } => {
                if sigma.len() <= max_i || rho.len() < max_j {
                    return Err(Error::Parameters(format!(
                        "need σ_0..σ_{max_i} and ρ_1..ρ_{max_j}, have {} and {}",
                        sigma.len(),
                        rho.len()
                    )));
                }
                for (i, s) in sigma.iter().enumerate().take(max_i + 1) {
                    for (j, r) in rho.iter().enumerate().take(max_j) {
                        if !(0.0 < *r && r < s) {
                            return Err(Error::Parameters(format!("need 0 < ρ_{} < σ_{i}, got {r} and {s}", j + 1)));
                        }
                    }
                }
                Ok(())
            }
            PolymerParams::Gamma { kappa } => {
                if *kappa > 0.0 {
                    Ok(())
                } else {
                    Err(Error::Parameters(format!("κ must be positive, got {kappa}")))
                }
            }
        }
    }

    /// Same parameters with rows relabelled: `ρ′_j = ρ_{φ⁻¹(j)}` where
    /// `phi[y−1] = φ(y)` on its window and `φ` is the identity above it.
    pub fn relabel_rows(&self, phi: &[usize]) -> Self {
        match self {
            PolymerParams::Beta { sigma, rho } => {
                let mut out = rho.clone();
                for (y, &image) in phi.iter().enumerate() {
                    if image <= rho.len() && y < rho.len() {
                        out[image - 1] = rho[y];
                    }
                }
                PolymerParams::Beta { sigma: sigma.clone(), rho: out }
            }
            other => other.clone(),
        }
    }
}

/// `η_{i,j}` as a pure function of `(seed, i, j)`. Beta variables are built
/// as `X/(X+Y)` with `X ~ Gamma(σ_i − ρ_j)` drawn first, so a Gamma field
/// with `κ = σ_i − ρ_j` shares its `X`.
pub fn eta(params: &PolymerParams, seed: u64, i: usize, j: usize) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(seed, ((i as u64) << 32) | j as u64));
    match params {
        PolymerParams::Beta { sigma, rho } => {
            let (s, r) = (sigma[i], rho[j - 1]);
            let x = Gamma::new(s - r, 1.0).expect("validated shape").sample(&mut rng);
            let y = Gamma::new(r, 1.0).expect("validated shape").sample(&mut rng);
            x / (x + y)
        }
        PolymerParams::Gamma { kappa } => Gamma::new(*kappa, 1.0).expect("validated shape").sample(&mut rng),
    }
}

/// The disorder on columns `0..=max_i` and rows `1..=max_j`, materialized
/// once so that several partition functions read identical values.
#[derive(Clone, Debug)]
pub struct DisorderField {
    params: PolymerParams,
    max_i: usize,
    max_j: usize,
    values: Vec<f64>,
}

impl DisorderField {
    pub fn sample(params: &PolymerParams, seed: u64, max_i: usize, max_j: usize) -> Result<Self> {
        params.validate(max_i, max_j)?;
        let mut values = Vec::with_capacity((max_i + 1) * max_j);
        for i in 0..=max_i {
            for j in 1..=max_j {
                values.push(eta(params, seed, i, j));
            }
        }
        Ok(DisorderField { params: params.clone(), max_i, max_j, values })
    }

    pub fn params(&self) -> &PolymerParams {
        &self.params
    }

    pub fn max_i(&self) -> usize {
        self.max_i
    }

    pub fn max_j(&self) -> usize {
        self.max_j
    }

    pub fn eta(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i <= self.max_i && (1..=self.max_j).contains(&j));
        self.values[i * self.max_j + j - 1]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_is_a_pure_function_of_seed_and_cell() {
        let params = PolymerParams::homogeneous_beta(2.0, 0.7, 4, 6);
        let small = DisorderField::sample(&params, 5, 2, 3).unwrap();
        let large = DisorderField::sample(&params, 5, 4, 6).unwrap();
        for i in 0..=2 {
            for j in 1..=3 {
                assert_eq!(small.eta(i, j).to_bits(), large.eta(i, j).to_bits());
            }
        }
        let other = DisorderField::sample(&params, 6, 2, 3).unwrap();
        assert_ne!(small.eta(1, 1), other.eta(1, 1));
    }

    #[test]
    fn beta_mean_matches() {
        let (sigma, rho) = (3.0, 1.0);
        let params = PolymerParams::homogeneous_beta(sigma, rho, 0, 1);
        let n = 20_000;
        let draws: Vec<f64> = (0..n).map(|s| eta(&params, s, 0, 1)).collect();
        let mean = draws.iter().sum::<f64>() / n as f64;
        let var = draws.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1) as f64;
        let expect = (sigma - rho) / sigma;
        assert!((mean - expect).abs() < 4.0 * (var / n as f64).sqrt(), "{mean} vs {expect}");
    }

    #[test]
    fn parameter_domain() {
        assert!(PolymerParams::homogeneous_beta(1.0, 1.0, 1, 1).validate(1, 1).is_err());
        assert!(PolymerParams::Gamma { kappa: 0.0 }.validate(0, 1).is_err());
        assert!(PolymerParams::homogeneous_beta(2.0, 1.0, 1, 1).validate(2, 1).is_err());
    }

    #[test]
    fn relabelled_rows_follow_the_bijection() {
        let params = PolymerParams::Beta { sigma: vec![5.0], rho: vec![1.0, 2.0, 3.0] };
        // φ = (1 2 3) ↦ (2 3 1): ρ′_{φ(y)} = ρ_y.
        let PolymerParams::Beta { rho, .. } = params.relabel_rows(&[2, 3, 1]) else { unreachable!() };
        assert_eq!(rho, vec![3.0, 1.0, 2.0]);
    }
}
