use std::collections::{BTreeMap, BTreeSet};

use serde::{Serialize, Serializer};

use super::{sweep_distribution, PipeDream, Tile};
use crate::combinat::{cutoff_levels, Cut, Permutation, SkewDomain};
use crate::error::{Error, Result};
use crate::hecke::{HeckeElement, MergedDistribution, MAX_HEIGHTS};
use crate::scalar::{FieldScalar, Scalar, SkewPoint};

/// `#{c > i : π(c) ≤ j}`.
pub fn height(pi: &Permutation, (i, j): (usize, usize)) -> usize {
    (i + 1..=pi.n()).filter(|&c| pi.at(c) <= j).count()
}

/// Number of paths entering the left side of the cut rectangle and leaving
/// through its right side, read off the pipe dream directly.
pub fn height_by_paths(dom: &SkewDomain, pd: &PipeDream, cut: &Cut) -> usize {
    let (_, meetings) = pd.trace(dom);
    let mut entering = BTreeSet::new();
    let mut leaving = BTreeSet::new();
    for mt in meetings {
        let (i, j) = mt.cell;
        if !(cut.d..=cut.u).contains(&j) {
            continue;
        }
        if i == cut.l {
            entering.insert(mt.from_left);
        }
        if i == cut.r {
            leaving.insert(if mt.tile == Tile::Crossing { mt.from_left } else { mt.from_bottom });
        }
    }
    entering.intersection(&leaving).count()
}

/// Exact law of a vector of heights, keyed by the height vector.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution<S> {
    table: BTreeMap<Vec<usize>, S>,
}

impl<S: Scalar> JointDistribution<S> {
    pub fn from_table(mut table: BTreeMap<Vec<usize>, S>) -> Self {
        table.retain(|_, c| !c.is_zero());
        JointDistribution { table }
    }

    /// Pushforward of a distribution on permutations through
    /// `π ↦ (Ht_π(i_1,j_1), …)`.
    pub fn pushforward(elem: &HeckeElement<S>, levels: &[(usize, usize)]) -> Self {
        let mut table: BTreeMap<Vec<usize>, S> = BTreeMap::new();
        for (pi, c) in elem.terms() {
            let key: Vec<usize> = levels.iter().map(|&l| height(pi, l)).collect();
            accumulate(&mut table, key, c.clone());
        }
        JointDistribution::from_table(table)
    }

    pub fn table(&self) -> &BTreeMap<Vec<usize>, S> {
        &self.table
    }

    pub fn get(&self, heights: &[usize]) -> Option<&S> {
        self.table.get(heights)
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    pub fn total(&self) -> Option<S> {
        self.table.values().cloned().reduce(|a, b| a + b)
    }

    /// Law of the coordinates listed in `keep`.
    pub fn marginal(&self, keep: &[usize]) -> Self {
        let mut table = BTreeMap::new();
        for (k, c) in &self.table {
            accumulate(&mut table, keep.iter().map(|&t| k[t]).collect(), c.clone());
        }
        JointDistribution::from_table(table)
    }
}

impl<S: Scalar> Serialize for JointDistribution<S> {
    fn serialize<Se: Serializer>(&self, s: Se) -> std::result::Result<Se::Ok, Se::Error> {
        let rows: Vec<(&Vec<usize>, String)> = self.table.iter().map(|(k, v)| (k, v.to_string())).collect();
        rows.serialize(s)
    }
}

fn accumulate<K: Ord, S: Scalar>(table: &mut BTreeMap<K, S>, key: K, c: S) {
    match table.get_mut(&key) {
        Some(v) => *v = v.clone() + c,
        None => {
            table.insert(key, c);
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Engine {
    /// Full distribution on permutations, then pushforward. Needs `n ≤ 16`.
    Permutations,
    /// Colors merged into blocks between consecutive cutoff levels.
    Merged,
    /// Merged, and cells not involved in any cut are treated as elbows.
    MergedRelevant,
}

/// Joint law of the heights of `cuts` at a point.
pub fn joint_distribution<S: FieldScalar>(dom: &SkewDomain, cuts: &[Cut], pt: &SkewPoint<S>) -> Result<JointDistribution<S>> {
    joint_distribution_with(dom, cuts, pt, Engine::MergedRelevant)
}

pub fn joint_distribution_with<S: FieldScalar>(dom: &SkewDomain, cuts: &[Cut], pt: &SkewPoint<S>, engine: Engine) -> Result<JointDistribution<S>> {
    let levels = cuts.iter().map(|c| cutoff_levels(dom, c)).collect::<Result<Vec<_>>>()?;
    match engine {
        Engine::Permutations => Ok(JointDistribution::pushforward(&sweep_distribution(dom, pt)?, &levels)),
        Engine::Merged => merged(dom, cuts, &levels, pt, false),
        Engine::MergedRelevant => merged(dom, cuts, &levels, pt, true),
    }
}

fn merged<S: FieldScalar>(dom: &SkewDomain, cuts: &[Cut], levels: &[(usize, usize)], pt: &SkewPoint<S>, prune: bool) -> Result<JointDistribution<S>> {
    let n = dom.n();
    if n > MAX_HEIGHTS {
        return Err(Error::CapExceeded { what: "colors", value: n, cap: MAX_HEIGHTS });
    }
    let mut cut_levels: Vec<usize> = levels.iter().map(|l| l.0).collect();
    cut_levels.sort_unstable();
    cut_levels.dedup();
    if cut_levels.len() >= 16 {
        return Err(Error::CapExceeded { what: "distinct cutoff levels", value: cut_levels.len(), cap: 15 });
    }
    // Color c belongs to block #{levels < c}; cut k counts the colors of
    // blocks ≥ its rank among the levels.
    let block = |c: usize| cut_levels.iter().filter(|&&l| l < c).count() as u8;
    let rank: Vec<u8> = levels.iter().map(|l| (cut_levels.iter().position(|&x| x == l.0).unwrap() + 1) as u8).collect();
    let labels: Vec<u8> = (1..=n).map(block).collect();
    let mut dist = MergedDistribution::point_mass(&labels, pt.q.one_like());
    for (i, j) in dom.cells() {
        let p = pt.p(i, j)?;
        let involved: Vec<u8> = cuts.iter().zip(&rank).filter(|(c, _)| c.contains(i, j)).map(|(_, &s)| s).collect();
        dist.apply_r(dom.content(i, j), &p, &pt.q, |lo, hi| !prune || involved.iter().any(|&s| lo < s && s <= hi));
    }
    let mut table = BTreeMap::new();
    for (lab, c) in dist.terms() {
        let key: Vec<usize> = levels.iter().zip(&rank).map(|(&(_, jj), &s)| (1..=jj).filter(|&h| lab.get(h) >= s).count()).collect();
        accumulate(&mut table, key, c.clone());
    }
    Ok(JointDistribution::from_table(table))
}

/// Cells `(i,j)` involved in some cut: the cell lies in the cut rectangle
/// and the cut's level `𝔦` separates the two colors meeting there.
pub fn relevant_cells(dom: &SkewDomain, pd: &PipeDream, cuts: &[Cut]) -> Result<BTreeSet<(usize, usize)>> {
    let levels = cuts.iter().map(|c| cutoff_levels(dom, c)).collect::<Result<Vec<_>>>()?;
    let (_, meetings) = pd.trace(dom);
    let mut out = BTreeSet::new();
    for mt in meetings {
        let (lo, hi) = (mt.from_bottom.min(mt.from_left), mt.from_bottom.max(mt.from_left));
        let (i, j) = mt.cell;
        if cuts.iter().zip(&levels).any(|(c, &(ii, _))| c.contains(i, j) && lo <= ii && ii < hi) {
            out.insert(mt.cell);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{exact_distribution, Method};
    use crate::scalar::{random_rational_skew_point, rng_for, PointConfig, Rational};

    fn point(dom: &SkewDomain, seed: u64) -> SkewPoint<Rational> {
        random_rational_skew_point(dom.m_inf(), dom.n_inf(), &mut rng_for(seed, 0), &PointConfig::default()).unwrap()
    }

    #[test]
    fn height_formula() {
        assert_eq!(height(&Permutation::identity(5), (3, 2)), 0);
        assert_eq!(height(&Permutation::new(&[3, 4, 1, 2]).unwrap(), (2, 2)), 2);
    }

    #[test]
    fn path_count_matches_formula() {
        let dom = SkewDomain::parse("LLULUU", "UULULL").unwrap();
        let cuts: Vec<Cut> = [(1, 2, 3, 2), (2, 1, 2, 3), (1, 2, 2, 3), (2, 2, 2, 2)]
            .iter()
            .filter_map(|&(l, d, u, r)| Cut::new(l, d, u, r).ok().filter(|c| c.validate(&dom).is_ok()))
            .collect();
        assert!(!cuts.is_empty());
        for mask in 0..1u64 << dom.num_cells() {
            let pd = PipeDream::from_mask(&dom, mask);
            let pi = pd.permutation(&dom);
            for c in &cuts {
                assert_eq!(height_by_paths(&dom, &pd, c), height(&pi, cutoff_levels(&dom, c).unwrap()), "{c:?}");
            }
        }
    }

    #[test]
    fn engines_agree() {
        let dom = SkewDomain::rectangle(3, 3);
        let cuts = vec![Cut::new(1, 1, 3, 3).unwrap(), Cut::new(2, 1, 3, 3).unwrap(), Cut::new(1, 1, 2, 3).unwrap(), Cut::new(3, 1, 1, 3).unwrap()];
        for c in &cuts {
            c.validate(&dom).unwrap();
        }
        let pt = point(&dom, 5);
        let a = joint_distribution_with(&dom, &cuts, &pt, Engine::Permutations).unwrap();
        let b = joint_distribution_with(&dom, &cuts, &pt, Engine::Merged).unwrap();
        let c = joint_distribution_with(&dom, &cuts, &pt, Engine::MergedRelevant).unwrap();
        assert_eq!(a, b);
        assert_eq!(a, c);
        assert_eq!(a.total(), Some(Rational::one()));
    }

    #[test]
    fn no_cuts_is_a_point_mass() {
        let dom = SkewDomain::rectangle(2, 2);
        let d = joint_distribution(&dom, &[], &point(&dom, 1)).unwrap();
        assert_eq!(d.get(&[]), Some(&Rational::one()));
    }

    #[test]
    fn relevant_cells_lie_in_the_cut_support() {
        let dom = SkewDomain::rectangle(3, 3);
        let cuts = vec![Cut::new(2, 1, 3, 3).unwrap(), Cut::new(1, 1, 2, 3).unwrap()];
        assert!(relevant_cells(&dom, &PipeDream::all_elbows(&dom), &[]).unwrap().is_empty());
        for mask in (0..1u64 << 9).step_by(7) {
            let pd = PipeDream::from_mask(&dom, mask);
            for cell in relevant_cells(&dom, &pd, &cuts).unwrap() {
                assert!(cuts.iter().any(|c| c.contains(cell.0, cell.1)));
            }
        }
    }

    #[test]
    fn irrelevant_flips_preserve_relevance_and_heights() {
        let dom = SkewDomain::rectangle(3, 3);
        let cuts = vec![Cut::new(2, 1, 3, 3).unwrap(), Cut::new(1, 1, 2, 3).unwrap()];
        let levels: Vec<_> = cuts.iter().map(|c| cutoff_levels(&dom, c).unwrap()).collect();
        let pt = point(&dom, 2);
        let cells = dom.cells();
        for mask in 0..1u64 << 9 {
            let pd = PipeDream::from_mask(&dom, mask);
            let rel = relevant_cells(&dom, &pd, &cuts).unwrap();
            let (pi, meetings) = pd.trace(&dom);
            for (t, cell) in cells.iter().enumerate() {
                if rel.contains(cell) {
                    continue;
                }
                let other = pd.with_tile(t, if pd.tiles()[t] == Tile::Crossing { Tile::Elbow } else { Tile::Crossing });
                assert_eq!(relevant_cells(&dom, &other, &cuts).unwrap(), rel);
                let (pi2, meetings2) = other.trace(&dom);
                for l in &levels {
                    assert_eq!(height(&pi, *l), height(&pi2, *l));
                }
                for (a, b) in meetings.iter().zip(&meetings2) {
                    if rel.contains(&a.cell) {
                        let pa = pt.p(a.cell.0, a.cell.1).unwrap();
                        assert_eq!(
                            super::super::pipe_dream::cell_weight(a, pa.clone(), &pt.q),
                            super::super::pipe_dream::cell_weight(b, pa, &pt.q)
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn class_probability_is_the_product_over_relevant_cells() {
        let dom = SkewDomain::parse("LLUULU", "UULULL").unwrap();
        let cuts: Vec<Cut> = vec![Cut::new(2, 1, 3, 2).unwrap(), Cut::new(3, 1, 2, 3).unwrap()];
        for c in &cuts {
            c.validate(&dom).unwrap();
        }
        let pt = point(&dom, 3);
        let cells = dom.cells();
        type Pattern = Vec<((usize, usize), bool)>;
        let mut classes: BTreeMap<Pattern, (Rational, Option<Rational>)> = BTreeMap::new();
        for mask in 0..1u64 << cells.len() {
            let pd = PipeDream::from_mask(&dom, mask);
            let rel = relevant_cells(&dom, &pd, &cuts).unwrap();
            let (_, meetings) = pd.trace(&dom);
            let key: Vec<_> = meetings.iter().filter(|m| rel.contains(&m.cell)).map(|m| (m.cell, m.tile == Tile::Crossing)).collect();
            let mut prod = Rational::one();
            for m in meetings.iter().filter(|m| rel.contains(&m.cell)) {
                prod = prod * super::super::pipe_dream::cell_weight(m, pt.p(m.cell.0, m.cell.1).unwrap(), &pt.q);
            }
            let e = classes.entry(key).or_insert((Rational::zero(), None));
            e.0 = e.0.clone() + pd.weight(&dom, &pt).unwrap();
            if let Some(prev) = &e.1 {
                assert_eq!(prev, &prod);
            }
            e.1 = Some(prod);
        }
        for (sum, prod) in classes.values() {
            assert_eq!(Some(sum), prod.as_ref());
        }
    }

    #[test]
    fn domain_independence() {
        // One cut hosted by two different domains.
        let cut = Cut::new(1, 2, 3, 2).unwrap();
        let d1 = SkewDomain::parse("LULUUU", "UUUULL").unwrap();
        let d2 = SkewDomain::parse("ULLUUU", "UUUULL").unwrap();
        for d in [&d1, &d2] {
            cut.validate(d).unwrap();
        }
        let pt = point(&d1, 8);
        assert_eq!(
            joint_distribution(&d1, &[cut], &pt).unwrap(),
            joint_distribution_with(&d2, &[cut], &pt, Engine::Permutations).unwrap()
        );
        let brute = exact_distribution(&d1, &pt, Method::BruteForce).unwrap();
        let levels = [cutoff_levels(&d1, &cut).unwrap()];
        assert_eq!(JointDistribution::pushforward(&brute, &levels), joint_distribution(&d1, &[cut], &pt).unwrap());
    }
}
