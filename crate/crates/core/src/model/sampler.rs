use std::collections::BTreeMap;

use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{height, PipeDream, Tile};
use crate::combinat::{cutoff_levels, Cut, Permutation, SkewDomain};
use crate::error::{Error, Result};
use crate::scalar::{rng_for, Rational, SkewPoint};

/// Monte Carlo sampler sweeping the domain with one Bernoulli draw per cell.
#[derive(Clone, Debug)]
pub struct Sampler {
    dom: SkewDomain,
    cells: Vec<(usize, usize)>,
    probs: Vec<f64>,
    q: f64,
}

/// One line of the sampler's NDJSON stream.
#[derive(Clone, Debug, Serialize)]
pub struct SampleRecord {
    pub seed: u64,
    pub permutation: Permutation,
    pub heights: Vec<usize>,
}

impl Sampler {
    /// Requires `0 < q < 1` and `0 < x_i < y_j` on every cell, so that all
    /// four cell weights are probabilities.
    pub fn new(dom: &SkewDomain, pt: &SkewPoint<Rational>) -> Result<Self> {
        let q = pt.q.to_f64();
        if !(pt.q.is_positive() && q < 1.0) {
            return Err(Error::Parameters(format!("sampling needs 0 < q < 1, got q = {}", pt.q)));
        }
        let cells = dom.cells();
        let mut probs = Vec::with_capacity(cells.len());
        for &(i, j) in &cells {
            let (x, y) = (&pt.x[i - 1], &pt.y[j - 1]);
            if !(x.is_positive() && x < y) {
                return Err(Error::Parameters(format!("sampling needs 0 < x_{i} < y_{j}")));
            }
            probs.push(pt.p(i, j)?.to_f64());
        }
        Ok(Sampler { dom: dom.clone(), cells, probs, q })
    }

    /// Forces `𝔭 = p` at one cell; `p` must lie in `[0, 1]`.
    pub fn with_override(mut self, cell: (usize, usize), p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::Parameters(format!("override {p} outside [0, 1]")));
        }
        let t = self.cells.iter().position(|&c| c == cell).ok_or_else(|| Error::InvalidDomain(format!("{cell:?} is not a cell")))?;
        self.probs[t] = p;
        Ok(self)
    }

    pub fn domain(&self) -> &SkewDomain {
        &self.dom
    }

    pub fn sample<R: Rng>(&self, rng: &mut R) -> PipeDream {
        self.run(rng).0
    }

    /// Samples a pipe dream and its color permutation in a single sweep.
    pub fn run<R: Rng>(&self, rng: &mut R) -> (PipeDream, Permutation) {
        let n = self.dom.n();
        // frontier[h] is the color on step h of the current up-left path.
        let mut frontier: Vec<usize> = (0..=n).collect();
        let mut tiles = Vec::with_capacity(self.cells.len());
        for (&(i, j), &p) in self.cells.iter().zip(&self.probs) {
            let c = self.dom.content(i, j);
            let (bottom, left) = (frontier[c], frontier[c + 1]);
            let prob = if bottom < left { p } else { self.q * p };
            if rng.random::<f64>() < prob {
                frontier.swap(c, c + 1);
                tiles.push(Tile::Crossing);
            } else {
                tiles.push(Tile::Elbow);
            }
        }
        let mut images = vec![0; n];
        for (h, &color) in frontier.iter().enumerate().skip(1) {
            images[color - 1] = h;
        }
        (PipeDream::new(&self.dom, tiles).expect("one tile per cell"), Permutation::new(&images).expect("frontier is a bijection"))
    }

    /// Sample number `index` of the stream seeded by `seed`.
    pub fn record(&self, seed: u64, index: u64, cuts: &[Cut]) -> Result<SampleRecord> {
        let (_, pi) = self.run(&mut rng_for(seed, index));
        let heights = cuts.iter().map(|c| Ok(height(&pi, cutoff_levels(&self.dom, c)?))).collect::<Result<Vec<_>>>()?;
        Ok(SampleRecord { seed, permutation: pi, heights })
    }

    /// Empirical counts of color permutations over `samples` draws.
    pub fn frequencies(&self, samples: usize, seed: u64) -> BTreeMap<Permutation, usize> {
        const CHUNK: usize = 4096;
        let chunks = samples.div_ceil(CHUNK);
        (0..chunks)
            .into_par_iter()
            .map(|b| {
                let mut rng = rng_for(seed, b as u64);
                let mut counts = BTreeMap::new();
                for _ in 0..CHUNK.min(samples - b * CHUNK) {
                    *counts.entry(self.run(&mut rng).1).or_insert(0) += 1;
                }
                counts
            })
            .reduce(BTreeMap::new, |mut a, b| {
                for (k, v) in b {
                    *a.entry(k).or_insert(0) += v;
                }
                a
            })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{exact_distribution, Method};
    use crate::scalar::{random_rational_skew_point, PointConfig};

    fn setup(m: usize, n: usize) -> (SkewDomain, SkewPoint<Rational>) {
        let dom = SkewDomain::rectangle(m, n);
        let pt = random_rational_skew_point(m, n, &mut rng_for(17, 0), &PointConfig::constrained()).unwrap();
        (dom, pt)
    }

    #[test]
    fn permutation_matches_the_pipe_dream() {
        let (dom, pt) = setup(2, 3);
        let s = Sampler::new(&dom, &pt).unwrap();
        let mut rng = rng_for(1, 1);
        for _ in 0..50 {
            let (pd, pi) = s.run(&mut rng);
            assert_eq!(pd.permutation(&dom), pi);
        }
    }

    #[test]
    fn zero_overrides_force_elbows() {
        let (dom, pt) = setup(2, 2);
        let mut s = Sampler::new(&dom, &pt).unwrap();
        for cell in dom.cells() {
            s = s.with_override(cell, 0.0).unwrap();
        }
        assert_eq!(s.sample(&mut rng_for(3, 0)), PipeDream::all_elbows(&dom));
    }

    #[test]
    fn deterministic_in_seed() {
        let (dom, pt) = setup(2, 3);
        let s = Sampler::new(&dom, &pt).unwrap();
        assert_eq!(s.sample(&mut rng_for(5, 2)), s.sample(&mut rng_for(5, 2)));
        assert_eq!(s.frequencies(1000, 4), s.frequencies(1000, 4));
    }

    #[test]
    fn rejects_unconstrained_points() {
        let dom = SkewDomain::rectangle(1, 1);
        let pt = SkewPoint { q: Rational::integer(2), x: vec![Rational::one()], y: vec![Rational::integer(3)] };
        assert!(Sampler::new(&dom, &pt).is_err());
        let pt = SkewPoint { q: Rational::new(1, 2), x: vec![Rational::integer(3)], y: vec![Rational::integer(2)] };
        assert!(Sampler::new(&dom, &pt).is_err());
    }

    #[test]
    fn frequencies_match_exact_law() {
        let (dom, pt) = setup(2, 2);
        let exact = exact_distribution(&dom, &pt, Method::Hecke).unwrap();
        let samples = 20_000;
        let freq = Sampler::new(&dom, &pt).unwrap().frequencies(samples, 11);
        for (pi, c) in exact.terms() {
            let p = c.to_f64();
            let se = (p * (1.0 - p) / samples as f64).sqrt().max(1e-9);
            let emp = *freq.get(pi).unwrap_or(&0) as f64 / samples as f64;
            assert!((emp - p).abs() <= 5.0 * se + 1e-12, "{pi}: {emp} vs {p}");
        }
    }
}
