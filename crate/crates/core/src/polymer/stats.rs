use rand::seq::SliceRandom;
use serde::{Deserialize, Serialize};

use crate::scalar::rng_for;

/// Two-sample Kolmogorov–Smirnov statistic `sup |F_a − F_b|`.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> f64 {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (na, nb) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j, mut best) = (0, 0, 0.0f64);
    while i < a.len() && j < b.len() {
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        best = best.max((i as f64 / na - j as f64 / nb).abs());
    }
    best
}

/// Asymptotic `P(D ≥ d)` with Stephens' small-sample correction.
pub fn ks_p_value(d: f64, na: usize, nb: usize) -> f64 {
    let ne = (na * nb) as f64 / (na + nb) as f64;
    let lambda = (ne.sqrt() + 0.12 + 0.11 / ne.sqrt()) * d;
    if lambda < 1e-3 {
        return 1.0;
    }
    let mut sum = 0.0;
    for k in 1..=100 {
        let k = k as f64;
        let term = 2.0 * (-1f64).powf(k - 1.0) * (-2.0 * k * k * lambda * lambda).exp();
        sum += term;
        if term.abs() < 1e-12 {
            break;
        }
    }
    sum.clamp(0.0, 1.0)
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y).powi(2)).sum::<f64>().sqrt()
}

/// Energy distance `2E|X−Y| − E|X−X′| − E|Y−Y′|` (V-statistic form).
pub fn energy_distance(a: &[Vec<f64>], b: &[Vec<f64>]) -> f64 {
    let mean = |s: &[Vec<f64>], t: &[Vec<f64>]| {
        let mut acc = 0.0;
        for x in s {
            for y in t {
                acc += dist(x, y);
            }
        }
        acc / (s.len() * t.len()) as f64
    };
    2.0 * mean(a, b) - mean(a, a) - mean(b, b)
}

/// Energy distance with a permutation p-value over `permutations` random
/// relabellings of the pooled sample.
pub fn energy_test(a: &[Vec<f64>], b: &[Vec<f64>], permutations: usize, seed: u64) -> (f64, f64) {
    let pooled: Vec<&Vec<f64>> = a.iter().chain(b).collect();
    let n = pooled.len();
    let mut dm = vec![0.0; n * n];
    for i in 0..n {
        for j in i + 1..n {
            let v = dist(pooled[i], pooled[j]);
            dm[i * n + j] = v;
            dm[j * n + i] = v;
        }
    }
    let stat = |labels: &[bool]| {
        let (mut ab, mut aa, mut bb) = (0.0, 0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                let v = dm[i * n + j];
                match (labels[i], labels[j]) {
                    (true, true) => aa += v,
                    (false, false) => bb += v,
                    _ => ab += v,
                }
            }
        }
        let (na, nb) = (a.len() as f64, b.len() as f64);
        // `ab` counts each cross pair twice.
        ab / (na * nb) - aa / (na * na) - bb / (nb * nb)
    };
    let mut labels: Vec<bool> = (0..n).map(|i| i < a.len()).collect();
    let observed = stat(&labels);
    let mut rng = rng_for(seed, 0);
    let mut at_least = 0;
    for _ in 0..permutations {
        labels.shuffle(&mut rng);
        if stat(&labels) >= observed - 1e-15 {
            at_least += 1;
        }
    }
    (observed, (1 + at_least) as f64 / (1 + permutations) as f64)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct TwoSampleTest {
    pub name: String,
    pub statistic: f64,
    pub p_value: f64,
    pub n_left: usize,
    pub n_right: usize,
}
