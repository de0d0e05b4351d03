use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::Permutation;
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Step {
    Up,
    Left,
}

fn parse_path(s: &str, which: &str) -> Result<Vec<Step>> {
    s.chars()
        .enumerate()
        .map(|(pos, ch)| match ch {
            'U' => Ok(Step::Up),
            'L' => Ok(Step::Left),
            other => Err(Error::Parse(format!("path {which}: unexpected character {other:?} at position {}", pos + 1))),
        })
        .collect()
}

fn path_string(steps: &[Step]) -> String {
    steps.iter().map(|s| if *s == Step::Up { 'U' } else { 'L' }).collect()
}

/// Points visited by an up-left path starting at `(m_inf, 0)`.
fn path_points(steps: &[Step], m_inf: usize) -> Vec<(usize, usize)> {
    let mut pts = Vec::with_capacity(steps.len() + 1);
    let (mut x, mut y) = (m_inf, 0usize);
    pts.push((x, y));
    for s in steps {
        match s {
            Step::Up => y += 1,
            Step::Left => x -= 1,
        }
        pts.push((x, y));
    }
    pts
}

/// Heights at which a path crosses each column: entry `i-1` is the `y`
/// coordinate of the left step spanning column `i`.
fn column_heights(steps: &[Step], m_inf: usize) -> Vec<usize> {
    let mut h = vec![0; m_inf];
    let (mut x, mut y) = (m_inf, 0usize);
    for s in steps {
        match s {
            Step::Up => y += 1,
            Step::Left => {
                h[x - 1] = y;
                x -= 1;
            }
        }
    }
    h
}

fn path_from_heights(heights: &[usize], n_inf: usize) -> Vec<Step> {
    let mut steps = Vec::new();
    let mut y = 0;
    for &h in heights.iter().rev() {
        while y < h {
            steps.push(Step::Up);
            y += 1;
        }
        steps.push(Step::Left);
    }
    while y < n_inf {
        steps.push(Step::Up);
        y += 1;
    }
    steps
}

/// The region between two up-left lattice paths.
///
/// Both paths run from `(M∞, 0)` to `(0, N∞)`, where `M∞` and `N∞` count the
/// left and up steps. Cells are unit squares `[i-1,i]×[j-1,j]` addressed by
/// `(column, row)`; column `i` contains the rows strictly above `P` and
/// weakly below `Q`.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewDomain {
    p: Vec<Step>,
    q: Vec<Step>,
    m_inf: usize,
    n_inf: usize,
    lower: Vec<usize>,
    upper: Vec<usize>,
}

impl SkewDomain {
    pub fn new(p: Vec<Step>, q: Vec<Step>) -> Result<Self> {
        if p.len() != q.len() {
            return Err(Error::InvalidDomain(format!("paths have lengths {} and {}", p.len(), q.len())));
        }
        let count = |v: &[Step], s: Step| v.iter().filter(|&&t| t == s).count();
        let m_inf = count(&p, Step::Left);
        if m_inf != count(&q, Step::Left) {
            return Err(Error::InvalidDomain("paths do not share endpoints".into()));
        }
        let n_inf = p.len() - m_inf;
        let (mut up_p, mut up_q) = (0, 0);
        for (idx, (a, b)) in p.iter().zip(&q).enumerate() {
            up_p += usize::from(*a == Step::Up);
            up_q += usize::from(*b == Step::Up);
            if up_p > up_q {
                return Err(Error::InvalidDomain(format!("P rises above Q at step {}", idx + 1)));
            }
        }
        let lower = column_heights(&p, m_inf);
        let upper = column_heights(&q, m_inf);
        Ok(SkewDomain { p, q, m_inf, n_inf, lower, upper })
    }

    pub fn parse(p: &str, q: &str) -> Result<Self> {
        SkewDomain::new(parse_path(p, "P")?, parse_path(q, "Q")?)
    }

    /// The `M × N` rectangle: `P = L^M U^N`, `Q = U^N L^M`.
    pub fn rectangle(m: usize, n: usize) -> Self {
        let mut p = vec![Step::Left; m];
        p.extend(vec![Step::Up; n]);
        let mut q = vec![Step::Up; n];
        q.extend(vec![Step::Left; m]);
        SkewDomain::new(p, q).expect("rectangle is a valid domain")
    }

    /// Builds a domain from per-column row ranges: column `i` holds rows
    /// `lower[i-1]+1 ..= upper[i-1]`. Both sequences must be nonincreasing.
    pub fn from_profiles(lower: &[usize], upper: &[usize], n_inf: usize) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::InvalidDomain("profile lengths differ".into()));
        }
        let nonincreasing = |v: &[usize]| v.windows(2).all(|w| w[0] >= w[1]);
        if !nonincreasing(lower) || !nonincreasing(upper) || upper.iter().any(|&h| h > n_inf) {
            return Err(Error::InvalidDomain("profiles must be nonincreasing and bounded by N∞".into()));
        }
        SkewDomain::new(path_from_heights(lower, n_inf), path_from_heights(upper, n_inf))
    }

    pub fn path_p(&self) -> &[Step] {
        &self.p
    }

    pub fn path_q(&self) -> &[Step] {
        &self.q
    }

    pub fn p_string(&self) -> String {
        path_string(&self.p)
    }

    pub fn q_string(&self) -> String {
        path_string(&self.q)
    }

    /// Number of steps of each path, i.e. the number of colors.
    pub fn n(&self) -> usize {
        self.p.len()
    }

    pub fn m_inf(&self) -> usize {
        self.m_inf
    }

    pub fn n_inf(&self) -> usize {
        self.n_inf
    }

    pub fn is_cell(&self, i: usize, j: usize) -> bool {
        i >= 1 && i <= self.m_inf && j > self.lower[i - 1] && j <= self.upper[i - 1]
    }

    /// Rows `(lo, hi]` occupied by column `i`.
    pub fn column_rows(&self, i: usize) -> (usize, usize) {
        (self.lower[i - 1], self.upper[i - 1])
    }

    /// Cells in sweep order: rows bottom to top, columns left to right.
    pub fn cells(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for j in 1..=self.n_inf {
            for i in 1..=self.m_inf {
                if self.is_cell(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn num_cells(&self) -> usize {
        self.lower.iter().zip(&self.upper).map(|(a, b)| b - a).sum()
    }

    /// Index along any up-left path from `(M∞,0)` of the bottom edge of cell
    /// `(i,j)`; the left edge has the next index.
    pub fn content(&self, i: usize, j: usize) -> usize {
        self.m_inf + j - i
    }

    /// The pair `(w^{P,Q}, z)` of the equivalent wiring diagram domain.
    ///
    /// Step `a` of `P` is matched with the step of `Q` in the same row
    /// (vertical steps, `z_a = y_row`) or the same column (horizontal steps,
    /// `z_a = x_col`), and `w(a)` is the index of that `Q` step. `x` and `y`
    /// are 1-indexed through slot 0.
    pub fn to_wiring<T: Clone>(&self, x: &[T], y: &[T]) -> Result<(Permutation, Vec<T>)> {
        if x.len() < self.m_inf || y.len() < self.n_inf {
            return Err(Error::InvalidDomain("rapidities do not cover the domain".into()));
        }
        let labels = |steps: &[Step]| -> Vec<(Step, usize)> {
            let (mut col, mut row) = (self.m_inf, 0);
            steps
                .iter()
                .map(|s| match s {
                    Step::Up => {
                        row += 1;
                        (Step::Up, row)
                    }
                    Step::Left => {
                        col -= 1;
                        (Step::Left, col + 1)
                    }
                })
                .collect()
        };
        let lp = labels(&self.p);
        let lq = labels(&self.q);
        let mut images = Vec::with_capacity(self.n());
        let mut z = Vec::with_capacity(self.n());
        for key in &lp {
            let j = lq
                .iter()
                .position(|k| k == key)
                .ok_or_else(|| Error::InvalidDomain(format!("step {key:?} of P has no partner in Q")))?;
            images.push(j + 1);
            z.push(match key.0 {
                Step::Up => y[key.1 - 1].clone(),
                Step::Left => x[key.1 - 1].clone(),
            });
        }
        Ok((Permutation::new(&images)?, z))
    }

    /// Number of `P` steps taken before reaching `pt`, if `pt` lies on `P`.
    pub fn p_steps_to(&self, pt: (usize, usize)) -> Option<usize> {
        path_points(&self.p, self.m_inf).iter().position(|&x| x == pt)
    }

    pub fn q_steps_to(&self, pt: (usize, usize)) -> Option<usize> {
        path_points(&self.q, self.m_inf).iter().position(|&x| x == pt)
    }

    /// Every valid cut of the domain.
    pub fn all_cuts(&self) -> Vec<Cut> {
        let mut out = Vec::new();
        for (l, d) in self.cells() {
            for (r, u) in self.cells() {
                if l <= r && d <= u {
                    let c = Cut { l, d, u, r };
                    if c.validate(self).is_ok() {
                        out.push(c);
                    }
                }
            }
        }
        out.sort();
        out
    }

    /// A domain in the box `[1,m_inf]×[1,n_inf]` hosting every cut, or `None`
    /// when no skew domain in that box does. The smallest candidate (just the
    /// staircase hull of the cut rectangles) is tried before the largest.
    pub fn hosting(cuts: &[Cut], m_inf: usize, n_inf: usize) -> Option<SkewDomain> {
        if cuts.iter().any(|c| c.r > m_inf || c.u > n_inf || c.l == 0 || c.d == 0 || c.l > c.r || c.d > c.u) {
            return None;
        }
        let top: Vec<usize> = (1..=m_inf).map(|i| cuts.iter().filter(|c| c.r >= i).map(|c| c.u).max().unwrap_or(0)).collect();
        let smallest_lower: Vec<usize> =
            (1..=m_inf).map(|i| cuts.iter().filter(|c| c.l <= i).map(|c| c.d - 1).min().unwrap_or(n_inf).min(top[i - 1])).collect();
        let largest_lower: Vec<usize> = (1..=m_inf)
            .map(|i| cuts.iter().filter(|c| c.l > i).map(|c| c.d - 1).max().unwrap_or(0))
            .collect();
        let largest_upper: Vec<usize> = (1..=m_inf)
            .map(|i| cuts.iter().filter(|c| c.r < i && c.u < n_inf).map(|c| c.u).min().unwrap_or(n_inf))
            .collect();
        [(smallest_lower, top), (largest_lower, largest_upper)].into_iter().find_map(|(lower, upper)| {
            if lower.iter().zip(&upper).any(|(a, b)| a > b) {
                return None;
            }
            let dom = SkewDomain::from_profiles(&lower, &upper, n_inf).ok()?;
            cuts.iter().all(|c| c.validate(&dom).is_ok()).then_some(dom)
        })
    }
}

impl fmt::Debug for SkewDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SkewDomain(P={}, Q={})", self.p_string(), self.q_string())
    }
}

#[derive(Serialize, Deserialize)]
struct DomainRepr {
    #[serde(rename = "P")]
    p: String,
    #[serde(rename = "Q")]
    q: String,
}

impl Serialize for SkewDomain {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DomainRepr { p: self.p_string(), q: self.q_string() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for SkewDomain {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DomainRepr::deserialize(d)?;
        SkewDomain::parse(&r.p, &r.q).map_err(serde::de::Error::custom)
    }
}

/// A rectangle `[l,r]×[d,u]` of cells whose bottom-left corner touches `P`
/// and whose top-right corner touches `Q`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Cut {
    pub l: usize,
    pub d: usize,
    pub u: usize,
    pub r: usize,
}

impl Cut {
    pub fn new(l: usize, d: usize, u: usize, r: usize) -> Result<Self> {
        let c = Cut { l, d, u, r };
        if l == 0 || d == 0 || l > r || d > u {
            return Err(c.invalid("need 1 ≤ l ≤ r and 1 ≤ d ≤ u"));
        }
        Ok(c)
    }

    fn invalid(&self, reason: &str) -> Error {
        Error::InvalidCut { cut: [self.l as u32, self.d as u32, self.u as u32, self.r as u32], reason: reason.into() }
    }

    pub fn validate(&self, dom: &SkewDomain) -> Result<()> {
        if !dom.is_cell(self.l, self.d) {
            return Err(self.invalid("(l,d) is not a cell"));
        }
        if !dom.is_cell(self.r, self.u) {
            return Err(self.invalid("(r,u) is not a cell"));
        }
        if self.l >= 2 && self.d >= 2 && dom.is_cell(self.l - 1, self.d - 1) {
            return Err(self.invalid("(l-1,d-1) is a cell"));
        }
        if dom.is_cell(self.r + 1, self.u + 1) {
            return Err(self.invalid("(r+1,u+1) is a cell"));
        }
        Ok(())
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        self.l <= i && i <= self.r && self.d <= j && j <= self.u
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (self.d..=self.u).flat_map(move |j| (self.l..=self.r).map(move |i| (i, j)))
    }

    pub fn as_array(&self) -> [usize; 4] {
        [self.l, self.d, self.u, self.r]
    }
}

impl fmt::Debug for Cut {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.l, self.d, self.u, self.r)
    }
}

impl Serialize for Cut {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.as_array().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Cut {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [l, d_, u, r] = <[usize; 4]>::deserialize(d)?;
        Cut::new(l, d_, u, r).map_err(serde::de::Error::custom)
    }
}

/// Color cutoff levels `(𝔦, 𝔧)`: `P` steps before the bottom-left corner of
/// `(l,d)` and `Q` steps before the top-right corner of `(r,u)`.
pub fn cutoff_levels(dom: &SkewDomain, c: &Cut) -> Result<(usize, usize)> {
    c.validate(dom)?;
    let i = dom.p_steps_to((c.l - 1, c.d - 1)).ok_or_else(|| c.invalid("bottom-left corner is off P"))?;
    let j = dom.q_steps_to((c.r, c.u)).ok_or_else(|| c.invalid("top-right corner is off Q"))?;
    Ok((i, j))
}

/// Whether the segments `[(l,d),(r,u)]` of two distinct cuts meet.
pub fn cuts_cross(a: &Cut, b: &Cut) -> bool {
    if a == b {
        return false;
    }
    let h_in = |x: &Cut, y: &Cut| y.l <= x.l && x.r <= y.r;
    let v_in = |x: &Cut, y: &Cut| y.d <= x.d && x.u <= y.u;
    (h_in(a, b) && v_in(b, a)) || (h_in(b, a) && v_in(a, b))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rectangle_wiring() {
        let dom = SkewDomain::rectangle(2, 3);
        let x = ["x1", "x2"];
        let y = ["y1", "y2", "y3"];
        let (w, z) = dom.to_wiring(&x, &y).unwrap();
        assert_eq!(w, super::super::grassmannian_perm(2, 3));
        assert_eq!(z, vec!["x2", "x1", "y1", "y2", "y3"]);
    }

    #[test]
    fn empty_domain_is_identity() {
        let dom = SkewDomain::parse("LULU", "LULU").unwrap();
        assert_eq!(dom.num_cells(), 0);
        let (w, _) = dom.to_wiring(&[0, 0], &[0, 0]).unwrap();
        assert!(w.is_identity());
    }

    #[test]
    fn parse_errors_report_position() {
        let err = SkewDomain::parse("LUXU", "UULL").unwrap_err();
        assert!(err.to_string().contains("position 3"), "{err}");
        assert!(SkewDomain::parse("UULL", "LLUU").is_err());
    }

    #[test]
    fn full_rectangle_cut() {
        for m in 1..=3 {
            for n in 1..=3 {
                let dom = SkewDomain::rectangle(m, n);
                let c = Cut::new(1, 1, n, m).unwrap();
                assert_eq!(cutoff_levels(&dom, &c).unwrap(), (m, n));
            }
        }
    }

    #[test]
    fn cells_in_sweep_order() {
        let dom = SkewDomain::parse("LLUULU", "UULULL").unwrap();
        let cells = dom.cells();
        assert_eq!(cells.len(), dom.num_cells());
        for w in cells.windows(2) {
            assert!(w[0].1 < w[1].1 || (w[0].1 == w[1].1 && w[0].0 < w[1].0));
        }
    }

    #[test]
    fn crossing_examples() {
        let c1 = Cut::new(1, 3, 9, 7).unwrap();
        let c2 = Cut::new(4, 5, 6, 7).unwrap();
        assert!(!cuts_cross(&c1, &c2));
        assert!(!cuts_cross(&c1, &c1));
        let c3 = Cut::new(2, 1, 9, 3).unwrap();
        assert!(cuts_cross(&c1, &c3));
        assert!(cuts_cross(&c3, &c1));
    }

    #[test]
    fn hosting_rectangle_cut() {
        let c = Cut::new(1, 1, 3, 2).unwrap();
        let dom = SkewDomain::hosting(&[c], 2, 3).unwrap();
        assert_eq!(dom, SkewDomain::rectangle(2, 3));
        let bad = Cut::new(1, 1, 3, 3).unwrap();
        assert!(SkewDomain::hosting(&[bad], 2, 3).is_none());
    }
}
