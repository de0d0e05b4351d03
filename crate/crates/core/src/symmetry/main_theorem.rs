use serde::{Deserialize, Serialize};
use serde_json::json;

use crate::combinat::{Cut, SkewDomain};
use crate::error::{Error, Result};
use crate::model::joint_distribution;
use crate::scalar::{random_skew_point, randomized_check, FieldScalar, Fp, PointConfig, Rational, SkewPoint, Verdict, LARGE_PRIME};

use super::catalog::{flip_instance, FlipSpec};
use super::transform::{check_admissible, Transformation};

/// Two cut tuples on two domains, together with the relabelling of the
/// rapidities: the image domain sees `x′_s = x_{xmap[s]}` and
/// `y′_t = y_{ymap[t]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MainInstance {
    pub domain: SkewDomain,
    pub cuts: Vec<Cut>,
    pub image_domain: SkewDomain,
    pub image_cuts: Vec<Cut>,
    pub xmap: Vec<usize>,
    pub ymap: Vec<usize>,
}

fn is_permutation(v: &[usize]) -> bool {
    let mut seen = vec![false; v.len() + 1];
    v.iter().all(|&k| k >= 1 && k <= v.len() && !std::mem::replace(&mut seen[k], true))
}

impl MainInstance {
    /// The instance obtained by transforming `cuts` inside the same box,
    /// relabelling with `x′ = φ_H⁻¹(x)`, `y′ = φ_V⁻¹(y)`.
    pub fn from_transformation(domain: &SkewDomain, cuts: &[Cut], t: &Transformation) -> Result<Self> {
        for c in cuts {
            c.validate(domain)?;
        }
        let (m, n) = (domain.m_inf(), domain.n_inf());
        let (image_cuts, image_domain) =
            check_admissible(t, cuts, m, n).ok_or_else(|| Error::Hypothesis("transformed cuts are not hosted by any domain in the box".into()))?;
        let xlen = m.max(t.horizontal.support_len());
        let ylen = n.max(t.vertical.support_len());
        Ok(MainInstance {
            domain: domain.clone(),
            cuts: cuts.to_vec(),
            image_domain,
            image_cuts,
            xmap: t.horizontal.inverse().window(xlen),
            ymap: t.vertical.inverse().window(ylen),
        })
    }

    /// Structural checks: cut validity, equal tuple lengths and relabellings
    /// long enough for both domains.
    pub fn validate_shape(&self) -> Result<()> {
        if self.cuts.len() != self.image_cuts.len() {
            return Err(Error::Parameters(format!("{} cuts against {} image cuts", self.cuts.len(), self.image_cuts.len())));
        }
        for c in &self.cuts {
            c.validate(&self.domain)?;
        }
        for c in &self.image_cuts {
            c.validate(&self.image_domain)?;
        }
        for (map, name, need) in [
            (&self.xmap, "xmap", self.domain.m_inf().max(self.image_domain.m_inf())),
            (&self.ymap, "ymap", self.domain.n_inf().max(self.image_domain.n_inf())),
        ] {
            if !is_permutation(map) || map.len() < need {
                return Err(Error::Parameters(format!("{name} must be a permutation of [1, k] with k ≥ {need}")));
            }
        }
        Ok(())
    }

    /// Every cut covers the same sets of column and row rapidities as its
    /// image.
    pub fn check_supports(&self) -> Result<()> {
        self.validate_shape()?;
        let covers = |map: &[usize], lo: usize, hi: usize, a: usize, b: usize| {
            let mut img: Vec<usize> = (lo..=hi).map(|s| map[s - 1]).collect();
            img.sort_unstable();
            img == (a..=b).collect::<Vec<_>>()
        };
        for (idx, (c, d)) in self.cuts.iter().zip(&self.image_cuts).enumerate() {
            if !covers(&self.xmap, d.l, d.r, c.l, c.r) {
                return Err(Error::Hypothesis(format!("cut {}: column rapidities differ", idx + 1)));
            }
            if !covers(&self.ymap, d.d, d.u, c.d, c.u) {
                return Err(Error::Hypothesis(format!("cut {}: row rapidities differ", idx + 1)));
            }
        }
        Ok(())
    }

    fn compare<S: FieldScalar>(&self, pt: &SkewPoint<S>) -> Result<Option<serde_json::Value>> {
        let restrict = |p: &SkewPoint<S>, dom: &SkewDomain| SkewPoint { q: p.q.clone(), x: p.x[..dom.m_inf()].to_vec(), y: p.y[..dom.n_inf()].to_vec() };
        let left = joint_distribution(&self.domain, &self.cuts, &restrict(pt, &self.domain))?;
        let moved = pt.relabel(&self.xmap, &self.ymap);
        let right = joint_distribution(&self.image_domain, &self.image_cuts, &restrict(&moved, &self.image_domain))?;
        if left == right {
            return Ok(None);
        }
        let mut keys: Vec<&Vec<usize>> = left.table().keys().chain(right.table().keys()).collect();
        keys.sort();
        keys.dedup();
        let key = keys.into_iter().find(|k| left.get(k) != right.get(k)).expect("tables differ somewhere");
        let show = |v: Option<&S>| v.map_or_else(|| "0".to_string(), |r| r.to_string());
        Ok(Some(json!({ "heights": key, "lhs": show(left.get(key)), "rhs": show(right.get(key)) })))
    }
}

/// Coefficient field for evaluating height laws.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum Backend {
    /// Exact rationals.
    #[default]
    Rational,
    /// The prime field of size `2^31 − 1`; much faster on large domains.
    Prime,
}

/// Compares the joint height laws of both cut tuples exactly at random
/// rational points, after checking the support conditions.
pub fn verify_main(inst: &MainInstance, trials: usize, seed: u64) -> Verdict {
    verify_main_with(inst, trials, seed, Backend::Rational)
}

pub fn verify_main_with(inst: &MainInstance, trials: usize, seed: u64, backend: Backend) -> Verdict {
    if let Err(e) = inst.check_supports() {
        return Verdict::invalid(e.to_string());
    }
    verify_main_unchecked(inst, trials, seed, backend)
}

/// Same comparison without the support check; used as a negative control.
pub fn verify_main_unchecked(inst: &MainInstance, trials: usize, seed: u64, backend: Backend) -> Verdict {
    if let Err(e) = inst.validate_shape() {
        return Verdict::invalid(e.to_string());
    }
    match backend {
        Backend::Rational => compare_at::<Rational>(inst, Rational::one(), trials, seed),
        Backend::Prime => compare_at::<Fp>(inst, Fp::new(1, LARGE_PRIME), trials, seed),
    }
}

fn compare_at<S: FieldScalar + Serialize>(inst: &MainInstance, template: S, trials: usize, seed: u64) -> Verdict {
    // Small numerators keep rational coefficients short on large domains.
    let cfg = PointConfig { box_size: 100, ..PointConfig::default() };
    randomized_check(trials, seed, |rng| random_skew_point(&template, inst.xmap.len(), inst.ymap.len(), rng, &cfg), |pt| inst.compare(pt))
}

fn fixed(spec: FlipSpec, dom: SkewDomain, cuts: &[(usize, usize, usize, usize)]) -> (FlipSpec, MainInstance) {
    let cuts: Vec<Cut> = cuts.iter().map(|&(l, d, u, r)| Cut::new(l, d, u, r).expect("fixed cut")).collect();
    let inst = flip_instance(&spec, &dom, &cuts).expect("fixed instance satisfies its hypotheses");
    (spec, inst)
}

/// Six cuts in the `8 × 9` box under the double flip of rows `[3,9]` and
/// `[5,6]`: the first three cuts shift, the next two rotate, the last one
/// spans both bands.
pub fn double_flip_example() -> (FlipSpec, MainInstance) {
    let cuts = [(4, 5, 6, 7), (3, 5, 5, 7), (3, 6, 6, 7), (4, 3, 8, 7), (4, 4, 9, 7), (5, 3, 9, 6)];
    let tuple: Vec<Cut> = cuts.iter().map(|&(l, d, u, r)| Cut { l, d, u, r }).collect();
    let dom = SkewDomain::hosting(&tuple, 8, 9).expect("cuts fit in the box");
    fixed(FlipSpec::DoubleH { d: 3, u: 9, dp: 5, up: 6 }, dom, &cuts)
}

/// Three cuts crossing the column band `[2,3]` of a `4 × 4` square.
pub fn global_flip_example() -> (FlipSpec, MainInstance) {
    fixed(FlipSpec::GlobalH { l: 2, d: 1, u: 4, r: 3 }, SkewDomain::rectangle(4, 4), &[(2, 1, 4, 2), (1, 2, 3, 4), (1, 3, 3, 4)])
}

/// Three cuts inside the row strip `[2,4]` sharing columns `[1,3]`, and one
/// cut spanning the strip.
pub fn local_flip_example() -> (FlipSpec, MainInstance) {
    fixed(FlipSpec::LocalH { d: 2, u: 4 }, SkewDomain::rectangle(3, 5), &[(1, 2, 2, 3), (1, 3, 3, 3), (1, 2, 3, 3), (2, 1, 5, 2)])
}
