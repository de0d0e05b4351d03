use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::affine::BoundedAffinePermutation;
use super::rpoly::r_polynomials;
use crate::combinat::{grassmannian_perm, BoundaryCondition};
use crate::error::{Error, Result};
use crate::scalar::{is_prime, FieldScalar, Fp, Scalar};

/// Default bound on `M + N` for Grassmannian enumeration.
pub const DEFAULT_POSITROID_CAP: usize = 5;

/// An `M × n` matrix over `𝔽_p`, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct FqMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Fp>,
}

impl std::fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let rows: Vec<Vec<u64>> = (0..self.rows).map(|r| (0..self.cols).map(|c| self.get(r, c).value()).collect()).collect();
        write!(f, "{rows:?}")
    }
}

impl FqMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Fp>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Parameters(format!("{} entries for a {rows}x{cols} matrix", entries.len())));
        }
        if entries.windows(2).any(|w| w[0].modulus() != w[1].modulus()) {
            return Err(Error::Parameters("entries from different fields".into()));
        }
        Ok(FqMatrix { rows, cols, entries })
    }

    pub fn from_i64(rows: usize, cols: usize, p: u64, values: &[i64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::Parameters(format!("{p} is not prime")));
        }
        FqMatrix::new(rows, cols, values.iter().map(|&v| Fp::new(v, p)).collect())
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> Fp {
        self.entries[r * self.cols + c]
    }

    /// Column `c`, 1-based.
    pub fn column(&self, c: usize) -> Vec<Fp> {
        (0..self.rows).map(|r| self.get(r, c - 1)).collect()
    }

    /// Reduced row echelon form; zero rows sink to the bottom.
    pub fn rref(&self) -> FqMatrix {
        let mut a = self.clone();
        let mut lead = 0;
        for c in 0..a.cols {
            if lead == a.rows {
                break;
            }
            let Some(piv) = (lead..a.rows).find(|&r| !a.get(r, c).is_zero()) else {
                continue;
            };
            for k in 0..a.cols {
                a.entries.swap(piv * a.cols + k, lead * a.cols + k);
            }
            let inv = a.get(lead, c).inv().expect("nonzero pivot");
            for k in 0..a.cols {
                a.entries[lead * a.cols + k] = a.get(lead, k) * inv;
            }
            for r in 0..a.rows {
                let factor = a.get(r, c);
                if r != lead && !factor.is_zero() {
                    for k in 0..a.cols {
                        a.entries[r * a.cols + k] = a.get(r, k) - factor * a.get(lead, k);
                    }
                }
            }
            lead += 1;
        }
        a
    }

    pub fn rank(&self) -> usize {
        let e = self.rref();
        (0..e.rows).filter(|&r| (0..e.cols).any(|c| !e.get(r, c).is_zero())).count()
    }

    /// Reverses the order of columns `lo..=hi` (1-based).
    pub fn reverse_columns(&self, lo: usize, hi: usize) -> FqMatrix {
        let mut out = self.clone();
        for r in 0..self.rows {
            for c in lo..=hi {
                out.entries[r * self.cols + c - 1] = self.get(r, lo + hi - c - 1);
            }
        }
        out
    }
}

fn rank_of(vectors: &[Vec<Fp>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let entries = vectors.iter().flatten().copied().collect();
    FqMatrix { rows: vectors.len(), cols: first.len(), entries }.rank()
}

/// `f_A(i) = min{j ≥ i : A_i ∈ Span(A_{i+1}, …, A_j)}` with columns
/// indexed cyclically.
pub fn f_of_matrix(a: &FqMatrix) -> Result<BoundedAffinePermutation> {
    if a.rank() != a.rows {
        return Err(Error::Parameters(format!("matrix has rank {} < {}", a.rank(), a.rows)));
    }
    let n = a.cols;
    let cols: Vec<Vec<Fp>> = (1..=n).map(|c| a.column(c)).collect();
    let col = |i: usize| &cols[(i - 1) % n];
    let mut window = Vec::with_capacity(n);
    for i in 1..=n {
        let target = col(i);
        let mut span: Vec<Vec<Fp>> = Vec::new();
        let mut j = i;
        loop {
            let base = rank_of(&span);
            let mut with = span.clone();
            with.push(target.clone());
            if rank_of(&with) == base {
                break;
            }
            j += 1;
            span.push(col(j).clone());
        }
        window.push(j as i64);
    }
    BoundedAffinePermutation::new(window)
}

fn check_field(m: usize, rows: usize, p: u64, cap: usize) -> Result<()> {
    if !is_prime(p) {
        return Err(Error::Parameters(format!("{p} is not prime")));
    }
    if m + rows > cap {
        return Err(Error::CapExceeded { what: "M+N", value: m + rows, cap });
    }
    Ok(())
}

/// Reduced row echelon representatives of every point of `Gr(M, n)(𝔽_p)`.
pub fn grassmannian_points(m: usize, n: usize, p: u64) -> Vec<FqMatrix> {
    fn pivots(n: usize, m: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == m {
            out.push(cur.clone());
            return;
        }
        for c in start..n {
            cur.push(c);
            pivots(n, m, c + 1, cur, out);
            cur.pop();
        }
    }
    let mut sets = Vec::new();
    pivots(n, m, 0, &mut Vec::new(), &mut sets);
    let mut out = Vec::new();
    for set in sets {
        let free: Vec<(usize, usize)> = (0..m)
            .flat_map(|r| (set[r] + 1..n).filter(|c| !set.contains(c)).map(move |c| (r, c)))
            .collect();
        let total = (p as usize).pow(free.len() as u32);
        for code in 0..total {
            let mut entries = vec![Fp::new(0, p); m * n];
            for (r, &c) in set.iter().enumerate() {
                entries[r * n + c] = Fp::new(1, p);
            }
            let mut rest = code;
            for &(r, c) in &free {
                entries[r * n + c] = Fp::new((rest % p as usize) as i64, p);
                rest /= p as usize;
            }
            out.push(FqMatrix { rows: m, cols: n, entries });
        }
    }
    out
}

/// Columns `N+1, …, n` form a basis.
pub fn in_opposite_cell(a: &FqMatrix, rows: usize) -> bool {
    let tail: Vec<Vec<Fp>> = (rows + 1..=a.cols).map(|c| a.column(c)).collect();
    rank_of(&tail) == a.rows && tail.len() == a.rows
}

/// The boundary data `(ℍ, 𝕍)` read off `f` through `ℍ̃_f`, `𝕍̃_f` shifted
/// by `M`: `ℍ` collects `(i+M, f(i))` for `i, f(i) ∈ [1,N]`, `𝕍` collects
/// `(i+M, f(i))` for `i ∈ [1−M, 0]`, `f(i) ∈ [N+1, n]`.
pub fn boundary_of(f: &BoundedAffinePermutation, rows: usize) -> (BoundaryCondition, BoundaryCondition) {
    let (m, n) = (f.m() as i64, f.n() as i64);
    let rows = rows as i64;
    let h = (1..=rows)
        .filter_map(|i| {
            let v = f.at(i);
            (1..=rows).contains(&v).then_some(((i + m) as usize, v as usize))
        })
        .collect();
    let v = (1 - m..=0)
        .filter_map(|i| {
            let v = f.at(i);
            (rows + 1..=n).contains(&v).then_some(((i + m) as usize, v as usize))
        })
        .collect();
    (
        BoundaryCondition::new(h).expect("f is injective"),
        BoundaryCondition::new(v).expect("f is injective"),
    )
}

pub type BoundaryPair = (BoundaryCondition, BoundaryCondition);

/// Point counts of the opposite Schubert cell `Ω_{[N+1,n]}(𝔽_p)`, split by
/// boundary data and by positroid cell.
#[derive(Clone, Debug)]
pub struct PositroidCensus {
    pub m: usize,
    pub rows: usize,
    pub p: u64,
    pub by_boundary: BTreeMap<BoundaryPair, u64>,
    pub by_cell: BTreeMap<BoundedAffinePermutation, u64>,
}

pub fn positroid_census(m: usize, rows: usize, p: u64) -> Result<PositroidCensus> {
    positroid_census_capped(m, rows, p, DEFAULT_POSITROID_CAP)
}

pub fn positroid_census_capped(m: usize, rows: usize, p: u64, cap: usize) -> Result<PositroidCensus> {
    check_field(m, rows, p, cap)?;
    let mut census = PositroidCensus { m, rows, p, by_boundary: BTreeMap::new(), by_cell: BTreeMap::new() };
    for a in grassmannian_points(m, m + rows, p) {
        if !in_opposite_cell(&a, rows) {
            continue;
        }
        let f = f_of_matrix(&a)?;
        *census.by_boundary.entry(boundary_of(&f, rows)).or_default() += 1;
        *census.by_cell.entry(f).or_default() += 1;
    }
    Ok(census)
}

/// `#Π^{ℍ,𝕍}(𝔽_p)`.
pub fn count_positroid_points(m: usize, rows: usize, h: &BoundaryCondition, v: &BoundaryCondition, p: u64) -> Result<u64> {
    let census = positroid_census(m, rows, p)?;
    Ok(census.by_boundary.get(&(h.clone(), v.clone())).copied().unwrap_or(0))
}

/// `#Π°_f(𝔽_p)` over the whole Grassmannian.
pub fn count_positroid_cell(f: &BoundedAffinePermutation, p: u64) -> Result<u64> {
    check_field(f.m(), f.n() - f.m(), p, DEFAULT_POSITROID_CAP)?;
    let mut count = 0;
    for a in grassmannian_points(f.m(), f.n(), p) {
        if f_of_matrix(&a)? == *f {
            count += 1;
        }
    }
    Ok(count)
}

/// `Σ R^{π,w}(p)` over `π ≤ w^{M,N}` grouped by `(ℍ^{M,N}_π, 𝕍^{M,N}_π)`:
/// this is `p^{MN}·P^{ℍ,𝕍}` at `𝔭 ≡ 1/p`.
pub fn hecke_point_counts(m: usize, rows: usize, p: u64) -> BTreeMap<BoundaryPair, i64> {
    let w = grassmannian_perm(m, rows);
    let mut out: BTreeMap<BoundaryPair, i64> = BTreeMap::new();
    for (pi, r) in r_polynomials(&w) {
        let value: i64 = r.eval_i64(p as i64).try_into().expect("small count");
        let key = (BoundaryCondition::horizontal(&pi, m, rows), BoundaryCondition::vertical(&pi, m, rows));
        *out.entry(key).or_default() += value;
    }
    out
}

/// Outcome of pushing every point of `Π^{ℍ,𝕍}` through the reversal of
/// the first `N` columns.
#[derive(Clone, Debug, Default, Serialize)]
pub struct ReversalCheck {
    pub points: usize,
    pub misplaced: usize,
    pub collisions: usize,
}

impl ReversalCheck {
    pub fn is_bijection(&self) -> bool {
        self.misplaced == 0 && self.collisions == 0
    }
}

/// Checks pointwise that reversing columns `1..=N` sends `Π^{ℍ,𝕍}` into
/// `Π^{180°(ℍ),𝕍}` injectively for every `(ℍ, 𝕍)`. Equal counts on both
/// sides then make it a bijection.
pub fn check_reversal_bijection(m: usize, rows: usize, p: u64) -> Result<ReversalCheck> {
    check_field(m, rows, p, DEFAULT_POSITROID_CAP)?;
    let n = m + rows;
    let mut report = ReversalCheck::default();
    let mut images = std::collections::BTreeSet::new();
    let mut counts: BTreeMap<BoundaryPair, i64> = BTreeMap::new();
    for a in grassmannian_points(m, n, p) {
        if !in_opposite_cell(&a, rows) {
            continue;
        }
        report.points += 1;
        let (h, v) = boundary_of(&f_of_matrix(&a)?, rows);
        let b = a.reverse_columns(1, rows).rref();
        let image = boundary_of(&f_of_matrix(&b)?, rows);
        if !in_opposite_cell(&b, rows) || image != (h.flip_180(n)?, v.clone()) {
            report.misplaced += 1;
        }
        if !images.insert(b) {
            report.collisions += 1;
        }
        *counts.entry((h, v)).or_default() += 1;
    }
    for ((h, v), c) in &counts {
        let key = (h.flip_180(n)?, v.clone());
        if counts.get(&key) != Some(c) {
            report.misplaced += 1;
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinat::Permutation;

    #[test]
    fn identity_block_fixes_zero_columns() {
        let a = FqMatrix::from_i64(2, 4, 3, &[1, 0, 0, 0, 0, 1, 0, 0]).unwrap();
        assert_eq!(f_of_matrix(&a).unwrap().window(), &[5, 6, 3, 4]);
    }

    #[test]
    fn generic_matrix_gives_the_shift() {
        let a = FqMatrix::from_i64(2, 4, 2, &[1, 1, 0, 1, 0, 1, 1, 1]).unwrap();
        assert_eq!(f_of_matrix(&a).unwrap(), BoundedAffinePermutation::shift(2, 4));
        let mixed = FqMatrix::from_i64(2, 4, 2, &[1, 0, 1, 0, 0, 1, 1, 1]).unwrap();
        assert_eq!(mixed.rref(), a.rref());
        assert_eq!(f_of_matrix(&mixed).unwrap(), f_of_matrix(&a).unwrap());
    }

    #[test]
    fn rank_deficient_rejected() {
        let a = FqMatrix::from_i64(2, 3, 2, &[1, 1, 0, 1, 1, 0]).unwrap();
        assert!(f_of_matrix(&a).is_err());
    }

    #[test]
    fn grassmannian_sizes() {
        // Gaussian binomials [4 choose 2]_q = (q²+1)(q²+q+1).
        assert_eq!(grassmannian_points(2, 4, 2).len(), 35);
        assert_eq!(grassmannian_points(2, 4, 3).len(), 130);
    }

    #[test]
    fn census_matches_r_polynomials() {
        for (m, rows) in [(1, 2), (2, 2), (2, 3)] {
            for p in [2, 3] {
                let census = positroid_census(m, rows, p).unwrap();
                let total: u64 = census.by_boundary.values().sum();
                assert_eq!(total, p.pow((m * rows) as u32));
                let predicted = hecke_point_counts(m, rows, p);
                let observed: BTreeMap<BoundaryPair, i64> = census.by_boundary.iter().map(|(k, &c)| (k.clone(), c as i64)).collect();
                let predicted: BTreeMap<_, _> = predicted.into_iter().filter(|(_, c)| *c != 0).collect();
                assert_eq!(observed, predicted, "M={m}, N={rows}, p={p}");
                let w = grassmannian_perm(m, rows);
                for pi in Permutation::all(m + rows).into_iter().filter(|pi| pi.bruhat_le(&w)) {
                    let f = super::super::affine::bounded_affine(&pi, &w, m).unwrap();
                    let r = super::super::rpoly::r_polynomial(&pi, &w).eval_i64(p as i64);
                    assert_eq!(census.by_cell.get(&f).copied().unwrap_or(0) as i64, i64::try_from(r).unwrap());
                }
            }
        }
    }

    #[test]
    fn top_cell_counts() {
        let f = BoundedAffinePermutation::shift(2, 4);
        assert_eq!(count_positroid_cell(&f, 2).unwrap(), 3);
        assert_eq!(count_positroid_cell(&f, 3).unwrap(), 28);
    }

    #[test]
    fn reversal_is_a_bijection() {
        for (m, rows) in [(1, 2), (2, 2), (2, 3)] {
            let report = check_reversal_bijection(m, rows, 2).unwrap();
            assert!(report.is_bijection(), "{report:?}");
            assert_eq!(report.points, 1 << (m * rows));
        }
    }

    #[test]
    fn caps_and_fields() {
        assert!(matches!(positroid_census(3, 3, 2), Err(Error::CapExceeded { .. })));
        assert!(positroid_census(1, 2, 4).is_err());
    }
}
