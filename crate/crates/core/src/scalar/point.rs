use rand::Rng;
use serde::{Deserialize, Serialize};

use super::{FieldScalar, Rational};
use crate::error::{Error, Result};

/// Point at which wiring-convention parameters
/// `𝔭_{i,j} = (z_j − z_i)/(z_j − q z_i)` are evaluated. `z[0]` is `z_1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WiringPoint<S> {
    pub q: S,
    pub z: Vec<S>,
}

/// Point for skew domains: `𝔭_{i,j} = (y_j − x_i)/(y_j − q x_i)` for the
/// cell in column `i` and row `j`. `x[0]` is `x_1`, `y[0]` is `y_1`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SkewPoint<S> {
    pub q: S,
    pub x: Vec<S>,
    pub y: Vec<S>,
}

fn ratio<S: FieldScalar>(num: S, den: S, what: impl FnOnce() -> String) -> Result<S> {
    num.div(&den).ok_or_else(|| Error::SingularPoint(what()))
}

impl<S: FieldScalar> WiringPoint<S> {
    pub fn n(&self) -> usize {
        self.z.len()
    }

    pub fn p(&self, i: usize, j: usize) -> Result<S> {
        let (zi, zj) = (self.z[i - 1].clone(), self.z[j - 1].clone());
        ratio(zj.clone() - zi.clone(), zj - self.q.clone() * zi, || format!("z_{j} - q z_{i} = 0"))
    }

    pub fn validate(&self) -> Result<()> {
        if self.q.is_zero() || self.q.is_one() {
            return Err(Error::SingularPoint("q must avoid 0 and 1".into()));
        }
        for i in 0..self.n() {
            for j in 0..self.n() {
                if i != j && (self.z[j].clone() - self.q.clone() * self.z[i].clone()).is_zero() {
                    return Err(Error::SingularPoint(format!("z_{} - q z_{} = 0", j + 1, i + 1)));
                }
            }
        }
        Ok(())
    }

    /// Exchanges `z_a` and `z_b`.
    pub fn swapped(&self, a: usize, b: usize) -> Self {
        let mut out = self.clone();
        out.z.swap(a - 1, b - 1);
        out
    }

    /// Reverses `z_lo, …, z_hi`.
    pub fn reversed_range(&self, lo: usize, hi: usize) -> Self {
        let mut out = self.clone();
        if lo < hi {
            out.z[lo - 1..hi].reverse();
        }
        out
    }
}

impl<S: FieldScalar> SkewPoint<S> {
    pub fn p(&self, i: usize, j: usize) -> Result<S> {
        let (xi, yj) = (self.x[i - 1].clone(), self.y[j - 1].clone());
        ratio(yj.clone() - xi.clone(), yj - self.q.clone() * xi, || format!("y_{j} - q x_{i} = 0"))
    }

    pub fn validate(&self) -> Result<()> {
        let all: Vec<S> = self.x.iter().chain(&self.y).cloned().collect();
        WiringPoint { q: self.q.clone(), z: all }.validate()
    }

    /// The point `(x, rev(y))`.
    pub fn rev_y(&self) -> Self {
        let mut out = self.clone();
        out.y.reverse();
        out
    }

    /// Relabelled rapidities `x′_s = x_{xmap[s]}`, `y′_t = y_{ymap[t]}`
    /// (maps are 1-based through slot 0).
    pub fn relabel(&self, xmap: &[usize], ymap: &[usize]) -> Self {
        SkewPoint {
            q: self.q.clone(),
            x: xmap.iter().map(|&k| self.x[k - 1].clone()).collect(),
            y: ymap.iter().map(|&k| self.y[k - 1].clone()).collect(),
        }
    }
}

/// The constant specialization `𝔭 = 1/q`.
pub fn one_over_q<S: FieldScalar>(q: &S) -> Result<S> {
    q.inv().ok_or_else(|| Error::SingularPoint("q = 0".into()))
}

/// How random points are drawn.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointConfig {
    /// Numerators and denominators are drawn from `[1, box_size]`.
    pub box_size: i64,
    /// Enforce `0 < q < 1` and `0 < x_i < 1 < y_j`.
    pub constrained: bool,
    pub max_attempts: usize,
}

impl Default for PointConfig {
    fn default() -> Self {
        PointConfig { box_size: 1_000_000, constrained: false, max_attempts: 64 }
    }
}

impl PointConfig {
    pub fn constrained() -> Self {
        PointConfig { constrained: true, ..Default::default() }
    }
}

fn fraction<S: FieldScalar, R: Rng>(template: &S, rng: &mut R, cfg: &PointConfig, unit: bool) -> S {
    let b = rng.random_range(2..=cfg.box_size.max(2));
    let a = if unit { rng.random_range(1..b) } else { rng.random_range(1..=cfg.box_size) };
    let num = template.lift_i64(a);
    let den = template.lift_i64(b);
    num.div(&den).unwrap_or_else(|| template.one_like())
}

fn draw<S: FieldScalar, R: Rng>(template: &S, rng: &mut R, cfg: &PointConfig, nx: usize, ny: usize) -> (S, Vec<S>, Vec<S>) {
    let q = fraction(template, rng, cfg, cfg.constrained);
    let x = (0..nx).map(|_| fraction(template, rng, cfg, cfg.constrained)).collect();
    let y = (0..ny)
        .map(|_| {
            let f = fraction(template, rng, cfg, cfg.constrained);
            if cfg.constrained {
                f + template.one_like()
            } else {
                f
            }
        })
        .collect();
    (q, x, y)
}

/// Random skew point with `m` column and `n` row rapidities, resampled until
/// all parameter denominators are nonzero.
pub fn random_skew_point<S: FieldScalar, R: Rng>(template: &S, m: usize, n: usize, rng: &mut R, cfg: &PointConfig) -> Result<SkewPoint<S>> {
    for _ in 0..cfg.max_attempts {
        let (q, x, y) = draw(template, rng, cfg, m, n);
        let pt = SkewPoint { q, x, y };
        if pt.validate().is_ok() {
            return Ok(pt);
        }
    }
    Err(Error::ResampleExhausted(cfg.max_attempts))
}

/// Random wiring point with `n` rapidities. Under `constrained`, all `z_i`
/// lie in `(0,1)` and `0 < q < 1`.
pub fn random_wiring_point<S: FieldScalar, R: Rng>(template: &S, n: usize, rng: &mut R, cfg: &PointConfig) -> Result<WiringPoint<S>> {
    for _ in 0..cfg.max_attempts {
        let (q, z, _) = draw(template, rng, cfg, n, 0);
        let pt = WiringPoint { q, z };
        if pt.validate().is_ok() {
            return Ok(pt);
        }
    }
    Err(Error::ResampleExhausted(cfg.max_attempts))
}

/// Convenience for the exact rational backend.
pub fn random_rational_skew_point<R: Rng>(m: usize, n: usize, rng: &mut R, cfg: &PointConfig) -> Result<SkewPoint<Rational>> {
    random_skew_point(&Rational::one(), m, n, rng, cfg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rng_for, Scalar};

    #[test]
    fn parameter_values() {
        let pt = SkewPoint { q: Rational::new(1, 2), x: vec![Rational::integer(1)], y: vec![Rational::integer(2)] };
        assert_eq!(pt.p(1, 1).unwrap(), Rational::new(2, 3));
        let w = WiringPoint { q: Rational::new(1, 3), z: vec![Rational::integer(5), Rational::integer(5)] };
        assert!(w.p(1, 2).unwrap().is_zero());
        let bad = WiringPoint { q: Rational::integer(2), z: vec![Rational::integer(1), Rational::integer(2)] };
        assert!(matches!(bad.p(1, 2), Err(Error::SingularPoint(_))));
    }

    #[test]
    fn deterministic_in_seed() {
        let cfg = PointConfig::default();
        let a = random_rational_skew_point(3, 2, &mut rng_for(9, 0), &cfg).unwrap();
        let b = random_rational_skew_point(3, 2, &mut rng_for(9, 0), &cfg).unwrap();
        assert_eq!(a, b);
        a.validate().unwrap();
    }

    #[test]
    fn constrained_points_respect_order() {
        let cfg = PointConfig::constrained();
        for s in 0..50 {
            let pt = random_rational_skew_point(3, 3, &mut rng_for(s, 1), &cfg).unwrap();
            let zero = Rational::zero();
            let one = Rational::one();
            assert!(pt.q > zero && pt.q < one);
            for x in &pt.x {
                for y in &pt.y {
                    assert!(&zero < x && x < y);
                }
            }
            for i in 1..=3 {
                for j in 1..=3 {
                    let p = pt.p(i, j).unwrap();
                    assert!(p > zero && p < one && pt.q.clone() * p < one);
                }
            }
        }
    }
}
