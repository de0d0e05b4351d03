use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::{Cut, SkewDomain};

/// A bijection of the positive integers that is the identity beyond a finite
/// window `[1, len]`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(into = "Vec<usize>", try_from = "Vec<usize>")]
pub struct Bijection {
    images: Vec<usize>,
}

impl Bijection {
    pub fn identity() -> Self {
        Bijection { images: Vec::new() }
    }

    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let mut seen = vec![false; images.len() + 1];
        for &v in &images {
            if v == 0 || v > images.len() || seen[v] {
                return None;
            }
            seen[v] = true;
        }
        Some(Bijection { images }.trimmed())
    }

    /// `rev_{l,r}`: `k ↦ l + r − k` on `[l, r]`.
    pub fn rev(l: usize, r: usize) -> Self {
        assert!(1 <= l && l <= r, "rev needs 1 ≤ l ≤ r");
        Bijection { images: (1..=r).map(|k| if k >= l { l + r - k } else { k }).collect() }.trimmed()
    }

    fn trimmed(mut self) -> Self {
        while let Some(&last) = self.images.last() {
            if last != self.images.len() {
                break;
            }
            self.images.pop();
        }
        self
    }

    pub fn apply(&self, k: usize) -> usize {
        if k >= 1 && k <= self.images.len() {
            self.images[k - 1]
        } else {
            k
        }
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.images.len()];
        for (k, &v) in self.images.iter().enumerate() {
            inv[v - 1] = k + 1;
        }
        Bijection { images: inv }
    }

    /// `self ∘ first`: apply `first`, then `self`.
    pub fn after(&self, first: &Bijection) -> Self {
        let len = self.images.len().max(first.images.len());
        Bijection { images: (1..=len).map(|k| self.apply(first.apply(k))).collect() }.trimmed()
    }

    /// The image of `[lo, hi]` when it is again an interval.
    pub fn image_interval(&self, lo: usize, hi: usize) -> Option<(usize, usize)> {
        let vals: Vec<usize> = (lo..=hi).map(|k| self.apply(k)).collect();
        let (a, b) = (*vals.iter().min()?, *vals.iter().max()?);
        (b - a == hi - lo).then_some((a, b))
    }

    /// Images of `1..=len`, i.e. the index vector of the relabelled
    /// variables `v′_s = v_{self(s)}`.
    pub fn window(&self, len: usize) -> Vec<usize> {
        (1..=len).map(|k| self.apply(k)).collect()
    }

    pub fn support_len(&self) -> usize {
        self.images.len()
    }
}

impl From<Bijection> for Vec<usize> {
    fn from(b: Bijection) -> Vec<usize> {
        b.images
    }
}

impl TryFrom<Vec<usize>> for Bijection {
    type Error = String;
    fn try_from(v: Vec<usize>) -> Result<Self, String> {
        Bijection::from_images(v).ok_or_else(|| "not a bijection of [1, len]".into())
    }
}

impl fmt::Debug for Bijection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.images)
    }
}

/// A pair `(φ_H, φ_V)` acting on columns and rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transformation {
    pub horizontal: Bijection,
    pub vertical: Bijection,
}

impl Transformation {
    pub fn identity() -> Self {
        Transformation { horizontal: Bijection::identity(), vertical: Bijection::identity() }
    }

    pub fn new(horizontal: Bijection, vertical: Bijection) -> Self {
        Transformation { horizontal, vertical }
    }

    /// `self ∘ first`.
    pub fn after(&self, first: &Transformation) -> Self {
        Transformation { horizontal: self.horizontal.after(&first.horizontal), vertical: self.vertical.after(&first.vertical) }
    }

    pub fn inverse(&self) -> Self {
        Transformation { horizontal: self.horizontal.inverse(), vertical: self.vertical.inverse() }
    }

    /// Images of the cuts, if every side interval maps to an interval.
    pub fn map_cuts(&self, cuts: &[Cut]) -> Option<Vec<Cut>> {
        cuts.iter()
            .map(|c| {
                let (l, r) = self.horizontal.image_interval(c.l, c.r)?;
                let (d, u) = self.vertical.image_interval(c.d, c.u)?;
                Some(Cut { l, d, u, r })
            })
            .collect()
    }
}

/// The transformed cut tuple together with a domain in the box
/// `[1,m_inf]×[1,n_inf]` hosting it, when both exist.
pub fn check_admissible(t: &Transformation, cuts: &[Cut], m_inf: usize, n_inf: usize) -> Option<(Vec<Cut>, SkewDomain)> {
    let mapped = t.map_cuts(cuts)?;
    let dom = SkewDomain::hosting(&mapped, m_inf, n_inf)?;
    Some((mapped, dom))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rev_and_composition() {
        let r = Bijection::rev(3, 9).after(&Bijection::rev(5, 6));
        assert_eq!(r.window(10), vec![1, 2, 9, 8, 6, 7, 5, 4, 3, 10]);
        assert_eq!(r.after(&r.inverse()), Bijection::identity());
        assert_eq!(Bijection::rev(2, 2), Bijection::identity());
    }

    #[test]
    fn intervals() {
        let b = Bijection::from_images(vec![2, 1, 4, 3]).unwrap();
        assert_eq!(b.image_interval(1, 2), Some((1, 2)));
        assert_eq!(b.image_interval(2, 3), None);
        assert!(Bijection::from_images(vec![1, 1]).is_none());
    }

    #[test]
    fn identity_keeps_cuts() {
        let dom = SkewDomain::rectangle(3, 3);
        let cuts = vec![Cut::new(1, 1, 3, 3).unwrap(), Cut::new(2, 1, 3, 3).unwrap()];
        let (mapped, host) = check_admissible(&Transformation::identity(), &cuts, 3, 3).unwrap();
        assert_eq!(mapped, cuts);
        for c in &cuts {
            c.validate(&host).unwrap();
            c.validate(&dom).unwrap();
        }
    }

    #[test]
    fn non_interval_image_is_rejected() {
        let t = Transformation::new(Bijection::from_images(vec![1, 3, 2]).unwrap(), Bijection::identity());
        assert!(check_admissible(&t, &[Cut::new(1, 1, 2, 2).unwrap()], 3, 3).is_none());
    }

    #[test]
    fn serde_roundtrip() {
        let t = Transformation::new(Bijection::rev(1, 4), Bijection::rev(2, 3));
        let s = serde_json::to_string(&t).unwrap();
        assert_eq!(s, r#"{"horizontal":[4,3,2,1],"vertical":[1,3,2]}"#);
        assert_eq!(serde_json::from_str::<Transformation>(&s).unwrap(), t);
    }
}
