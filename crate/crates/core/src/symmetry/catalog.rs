use rand::seq::{IndexedRandom, SliceRandom};
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::combinat::{cuts_cross, Cut, SkewDomain};
use crate::error::{Error, Result};

use super::main_theorem::MainInstance;
use super::transform::{Bijection, Transformation};

/// An elementary transformation together with its parameters. `H` kinds act
/// on a band of rows, `V` kinds on a band of columns.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum FlipSpec {
    #[serde(rename = "cps")]
    Cps,
    #[serde(rename = "global_H")]
    GlobalH { l: usize, d: usize, u: usize, r: usize },
    #[serde(rename = "global_V")]
    GlobalV { l: usize, d: usize, u: usize, r: usize },
    #[serde(rename = "local_H")]
    LocalH { d: usize, u: usize },
    #[serde(rename = "local_V")]
    LocalV { l: usize, r: usize },
    #[serde(rename = "double_H")]
    DoubleH { d: usize, u: usize, dp: usize, up: usize },
    #[serde(rename = "double_V")]
    DoubleV { l: usize, r: usize, lp: usize, rp: usize },
    #[serde(rename = "H_shift")]
    HShift { d: usize, u: usize, dp: usize, up: usize },
    #[serde(rename = "V_shift")]
    VShift { l: usize, r: usize, lp: usize, rp: usize },
}

impl FlipSpec {
    pub fn name(&self) -> &'static str {
        match self {
            FlipSpec::Cps => "cps",
            FlipSpec::GlobalH { .. } => "global_H",
            FlipSpec::GlobalV { .. } => "global_V",
            FlipSpec::LocalH { .. } => "local_H",
            FlipSpec::LocalV { .. } => "local_V",
            FlipSpec::DoubleH { .. } => "double_H",
            FlipSpec::DoubleV { .. } => "double_V",
            FlipSpec::HShift { .. } => "H_shift",
            FlipSpec::VShift { .. } => "V_shift",
        }
    }
}

/// Which side of a cut a strip condition looks at.
#[derive(Clone, Copy)]
enum Axis {
    Rows,
    Columns,
}

impl Axis {
    /// The interval along which the strip runs, then the interval across it.
    fn split(self, c: &Cut) -> ((usize, usize), (usize, usize)) {
        match self {
            Axis::Rows => ((c.d, c.u), (c.l, c.r)),
            Axis::Columns => ((c.l, c.r), (c.d, c.u)),
        }
    }

    fn transformation(self, along: Bijection) -> Transformation {
        match self {
            Axis::Rows => Transformation::new(Bijection::identity(), along),
            Axis::Columns => Transformation::new(along, Bijection::identity()),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Axis::Rows => "horizontal",
            Axis::Columns => "vertical",
        }
    }
}

fn subset((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    c <= a && b <= d
}

fn hypothesis(msg: String) -> Error {
    Error::Hypothesis(msg)
}

fn check_band(lo: usize, hi: usize) -> Result<()> {
    if lo == 0 || lo > hi {
        return Err(Error::Parameters(format!("band [{lo},{hi}] must satisfy 1 ≤ lo ≤ hi")));
    }
    Ok(())
}

fn check_strip(axis: Axis, cuts: &[Cut], band: (usize, usize)) -> Result<()> {
    let (d, u) = band;
    for (idx, c) in cuts.iter().enumerate() {
        let ((di, ui), _) = axis.split(c);
        if (di < d && d <= ui && ui < u) || (d < di && di <= u && u < ui) {
            return Err(hypothesis(format!("[{d},{u}] is not a {} strip: cut {} straddles its boundary", axis.name(), idx + 1)));
        }
    }
    Ok(())
}

/// The common interval `[l, r]` across the strip: equal to the across
/// interval of every `J` cut, containing those of `K`, contained in those
/// of `I`.
fn check_across(axis: Axis, cuts: &[Cut], inner: &[usize], middle: &[usize], outer: &[usize]) -> Result<()> {
    let across = |k: usize| axis.split(&cuts[k]).1;
    if let Some(&first) = middle.first() {
        let lr = across(first);
        if let Some(&k) = middle.iter().find(|&&k| across(k) != lr) {
            return Err(hypothesis(format!("J clause: cuts {} and {} differ across the strip", first + 1, k + 1)));
        }
        if let Some(&k) = outer.iter().find(|&&k| !subset(across(k), lr)) {
            return Err(hypothesis(format!("K clause: cut {} is not inside [{},{}]", k + 1, lr.0, lr.1)));
        }
        if let Some(&k) = inner.iter().find(|&&k| !subset(lr, across(k))) {
            return Err(hypothesis(format!("I clause: cut {} does not contain [{},{}]", k + 1, lr.0, lr.1)));
        }
        return Ok(());
    }
    // No J cuts: need hull(K) ⊂ [l,r] ⊂ ∩ I for some interval.
    let hull = outer.iter().map(|&k| across(k)).reduce(|a, b| (a.0.min(b.0), a.1.max(b.1)));
    let meet = inner.iter().map(|&k| across(k)).reduce(|a, b| (a.0.max(b.0), a.1.min(b.1)));
    match (hull, meet) {
        (_, Some(m)) if m.0 > m.1 => Err(hypothesis("I clause: the I cuts share no common interval".into())),
        (Some(h), Some(m)) if !subset(h, m) => Err(hypothesis("I/K clause: no interval lies between the K cuts and the I cuts".into())),
        _ => Ok(()),
    }
}

fn local(axis: Axis, cuts: &[Cut], band: (usize, usize)) -> Result<Transformation> {
    check_band(band.0, band.1)?;
    check_strip(axis, cuts, band)?;
    let (mut middle, mut outer) = (Vec::new(), Vec::new());
    for (k, c) in cuts.iter().enumerate() {
        let along = axis.split(c).0;
        if along != band && subset(along, band) {
            middle.push(k);
        } else if subset(band, along) {
            outer.push(k);
        }
    }
    check_across(axis, cuts, &[], &middle, &outer)?;
    Ok(axis.transformation(Bijection::rev(band.0, band.1)))
}

fn double(axis: Axis, cuts: &[Cut], band: (usize, usize), inner_band: (usize, usize), shift: bool) -> Result<Transformation> {
    check_band(band.0, band.1)?;
    check_band(inner_band.0, inner_band.1)?;
    if inner_band == band || !subset(inner_band, band) {
        return Err(hypothesis(format!("inner band [{},{}] must be a proper part of [{},{}]", inner_band.0, inner_band.1, band.0, band.1)));
    }
    check_strip(axis, cuts, band)?;
    check_strip(axis, cuts, inner_band)?;
    let (mut inner, mut middle, mut outer) = (Vec::new(), Vec::new(), Vec::new());
    for (k, c) in cuts.iter().enumerate() {
        let along = axis.split(c).0;
        if subset(along, inner_band) {
            inner.push(k);
        } else if along != band && subset(along, band) {
            middle.push(k);
        } else if subset(band, along) {
            outer.push(k);
        }
    }
    if shift && !middle.is_empty() {
        return Err(hypothesis(format!("shift clause: J must be empty, found cut {}", middle[0] + 1)));
    }
    check_across(axis, cuts, &inner, &middle, &outer)?;
    let along = Bijection::rev(band.0, band.1).after(&Bijection::rev(inner_band.0, inner_band.1));
    Ok(axis.transformation(along))
}

fn global(dom: &SkewDomain, cuts: &[Cut], c: Cut, rows: bool) -> Result<Transformation> {
    c.validate(dom)?;
    if let Some(k) = cuts.iter().position(|ci| !cuts_cross(&c, ci)) {
        return Err(hypothesis(format!("crossing clause: {c:?} does not cross cut {}", k + 1)));
    }
    let (m, n) = (dom.m_inf(), dom.n_inf());
    Ok(if rows {
        Transformation::new(Bijection::rev(1, m).after(&Bijection::rev(c.l, c.r)), Bijection::rev(c.d, c.u))
    } else {
        Transformation::new(Bijection::rev(c.l, c.r), Bijection::rev(1, n).after(&Bijection::rev(c.d, c.u)))
    })
}

/// The transformation of an elementary flip, after checking its
/// hypotheses against the cut tuple.
pub fn elementary_flip(spec: &FlipSpec, dom: &SkewDomain, cuts: &[Cut]) -> Result<Transformation> {
    match *spec {
        FlipSpec::Cps => Ok(Transformation::new(Bijection::rev(1, dom.m_inf()), Bijection::rev(1, dom.n_inf()))),
        FlipSpec::GlobalH { l, d, u, r } => global(dom, cuts, Cut::new(l, d, u, r)?, true),
        FlipSpec::GlobalV { l, d, u, r } => global(dom, cuts, Cut::new(l, d, u, r)?, false),
        FlipSpec::LocalH { d, u } => local(Axis::Rows, cuts, (d, u)),
        FlipSpec::LocalV { l, r } => local(Axis::Columns, cuts, (l, r)),
        FlipSpec::DoubleH { d, u, dp, up } => double(Axis::Rows, cuts, (d, u), (dp, up), false),
        FlipSpec::DoubleV { l, r, lp, rp } => double(Axis::Columns, cuts, (l, r), (lp, rp), false),
        FlipSpec::HShift { d, u, dp, up } => double(Axis::Rows, cuts, (d, u), (dp, up), true),
        FlipSpec::VShift { l, r, lp, rp } => double(Axis::Columns, cuts, (l, r), (lp, rp), true),
    }
}

/// Applies an elementary flip and packages the result for the main
/// verifier.
pub fn flip_instance(spec: &FlipSpec, dom: &SkewDomain, cuts: &[Cut]) -> Result<MainInstance> {
    MainInstance::from_transformation(dom, cuts, &elementary_flip(spec, dom, cuts)?)
}

/// A random domain in the `m × n` box; every column holds at least one cell.
pub fn random_domain<R: Rng>(m: usize, n: usize, rng: &mut R) -> SkewDomain {
    let mut upper: Vec<usize> = (0..m).map(|_| rng.random_range(1..=n)).collect();
    upper.sort_unstable_by(|a, b| b.cmp(a));
    upper[0] = n;
    let mut lower = Vec::with_capacity(m);
    for (i, &top) in upper.iter().enumerate() {
        let cap = if i == 0 { top - 1 } else { lower[i - 1] };
        lower.push(rng.random_range(0..=cap.min(top - 1)));
    }
    SkewDomain::from_profiles(&lower, &upper, n).expect("profiles are nonincreasing")
}

fn random_band<R: Rng>(len: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.random_range(1..=len);
    let b = rng.random_range(1..=len);
    (a.min(b), a.max(b))
}

fn random_spec<R: Rng>(dom: &SkewDomain, all: &[Cut], rng: &mut R) -> FlipSpec {
    let (m, n) = (dom.m_inf(), dom.n_inf());
    let inner = |band: (usize, usize), rng: &mut R| {
        let lo = rng.random_range(band.0..=band.1);
        let hi = rng.random_range(lo..=band.1);
        (lo, hi)
    };
    match rng.random_range(0..9) {
        0 => FlipSpec::Cps,
        1 | 2 => {
            let c = *all.choose(rng).expect("domain has cuts");
            if rng.random_bool(0.5) {
                FlipSpec::GlobalH { l: c.l, d: c.d, u: c.u, r: c.r }
            } else {
                FlipSpec::GlobalV { l: c.l, d: c.d, u: c.u, r: c.r }
            }
        }
        3 => {
            let (d, u) = random_band(n, rng);
            FlipSpec::LocalH { d, u }
        }
        4 => {
            let (l, r) = random_band(m, rng);
            FlipSpec::LocalV { l, r }
        }
        5 | 7 => {
            let (d, u) = random_band(n, rng);
            let (dp, up) = inner((d, u), rng);
            if rng.random_bool(0.5) {
                FlipSpec::DoubleH { d, u, dp, up }
            } else {
                FlipSpec::HShift { d, u, dp, up }
            }
        }
        _ => {
            let (l, r) = random_band(m, rng);
            let (lp, rp) = inner((l, r), rng);
            if rng.random_bool(0.5) {
                FlipSpec::DoubleV { l, r, lp, rp }
            } else {
                FlipSpec::VShift { l, r, lp, rp }
            }
        }
    }
}

/// Draws a domain in the `m × n` box, an elementary flip and up to
/// `max_cuts` cuts satisfying its hypotheses. Candidate cuts are filtered
/// one at a time before a subset is drawn, so most draws succeed quickly.
pub fn random_flip_instance<R: Rng>(m: usize, n: usize, max_cuts: usize, rng: &mut R) -> (FlipSpec, MainInstance) {
    loop {
        let dom = random_domain(m, n, rng);
        let all = dom.all_cuts();
        if all.is_empty() {
            continue;
        }
        let spec = random_spec(&dom, &all, rng);
        let mut ok: Vec<Cut> = all.iter().copied().filter(|c| elementary_flip(&spec, &dom, &[*c]).is_ok()).collect();
        if ok.is_empty() {
            continue;
        }
        ok.shuffle(rng);
        let k = rng.random_range(1..=ok.len().min(max_cuts));
        let cuts = &ok[..k];
        if let Ok(inst) = flip_instance(&spec, &dom, cuts) {
            return (spec, inst);
        }
    }
}
