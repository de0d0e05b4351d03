use serde::{Deserialize, Serialize};

use crate::combinat::{Permutation, SkewDomain};
use crate::error::{Error, Result};
use crate::scalar::{FieldScalar, SkewPoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Tile {
    Crossing,
    Elbow,
}

/// One configuration of the model: a tile for every cell, listed in the
/// domain's sweep order (rows bottom to top, columns left to right).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PipeDream {
    tiles: Vec<Tile>,
}

/// Colors meeting at one cell during a sweep.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Meeting {
    pub cell: (usize, usize),
    pub from_bottom: usize,
    pub from_left: usize,
    pub tile: Tile,
}

impl Meeting {
    /// The two paths have not crossed an odd number of times yet, which is
    /// the same as the bottom color being the smaller one.
    pub fn in_order(&self) -> bool {
        self.from_bottom < self.from_left
    }
}

impl PipeDream {
    pub fn new(dom: &SkewDomain, tiles: Vec<Tile>) -> Result<Self> {
        if tiles.len() != dom.num_cells() {
            return Err(Error::InvalidDomain(format!("{} tiles for {} cells", tiles.len(), dom.num_cells())));
        }
        Ok(PipeDream { tiles })
    }

    pub fn all_elbows(dom: &SkewDomain) -> Self {
        PipeDream { tiles: vec![Tile::Elbow; dom.num_cells()] }
    }

    /// Bit `t` of `mask` set means the `t`-th cell in sweep order is a crossing.
    pub fn from_mask(dom: &SkewDomain, mask: u64) -> Self {
        let tiles = (0..dom.num_cells()).map(|t| if mask >> t & 1 == 1 { Tile::Crossing } else { Tile::Elbow }).collect();
        PipeDream { tiles }
    }

    pub fn tiles(&self) -> &[Tile] {
        &self.tiles
    }

    pub fn crossings(&self) -> usize {
        self.tiles.iter().filter(|&&t| t == Tile::Crossing).count()
    }

    pub fn with_tile(&self, index: usize, tile: Tile) -> Self {
        let mut out = self.clone();
        out.tiles[index] = tile;
        out
    }

    /// Rows as strings of `X` (crossing) and `E` (elbow), top row first;
    /// each string lists the cells of its row from left to right.
    pub fn to_rows(&self, dom: &SkewDomain) -> Vec<String> {
        let mut rows = vec![String::new(); dom.n_inf()];
        for ((_, j), t) in dom.cells().into_iter().zip(&self.tiles) {
            rows[j - 1].push(if *t == Tile::Crossing { 'X' } else { 'E' });
        }
        rows.reverse();
        rows
    }

    pub fn from_rows(dom: &SkewDomain, rows: &[String]) -> Result<Self> {
        if rows.len() != dom.n_inf() {
            return Err(Error::Parse(format!("expected {} rows, got {}", dom.n_inf(), rows.len())));
        }
        let mut tiles = Vec::with_capacity(dom.num_cells());
        for j in 1..=dom.n_inf() {
            let row = &rows[dom.n_inf() - j];
            let width = (1..=dom.m_inf()).filter(|&i| dom.is_cell(i, j)).count();
            if row.chars().count() != width {
                return Err(Error::Parse(format!("row {j} has {} tiles, expected {width}", row.chars().count())));
            }
            for (pos, ch) in row.chars().enumerate() {
                tiles.push(match ch {
                    'X' => Tile::Crossing,
                    'E' => Tile::Elbow,
                    other => return Err(Error::Parse(format!("row {j}, position {}: unexpected {other:?}", pos + 1))),
                });
            }
        }
        Ok(PipeDream { tiles })
    }

    /// Follows every path; returns the color permutation and the meetings
    /// in sweep order.
    pub fn trace(&self, dom: &SkewDomain) -> (Permutation, Vec<Meeting>) {
        let (m, nn) = (dom.m_inf(), dom.n_inf());
        let idx = |i: usize, j: usize| (j - 1) * m + (i - 1);
        let mut right = vec![0usize; m * nn];
        let mut top = vec![0usize; m * nn];
        let mut exit = vec![0usize; dom.n() + 1];
        let mut meetings = Vec::with_capacity(self.tiles.len());
        for ((i, j), &tile) in dom.cells().into_iter().zip(&self.tiles) {
            let c = dom.content(i, j);
            let from_left = if dom.is_cell(i - 1, j) { right[idx(i - 1, j)] } else { c + 1 };
            let from_bottom = if j > 1 && dom.is_cell(i, j - 1) { top[idx(i, j - 1)] } else { c };
            let (r, t) = match tile {
                Tile::Crossing => (from_left, from_bottom),
                Tile::Elbow => (from_bottom, from_left),
            };
            right[idx(i, j)] = r;
            top[idx(i, j)] = t;
            if !dom.is_cell(i + 1, j) {
                exit[r] = c;
            }
            if !dom.is_cell(i, j + 1) {
                exit[t] = c + 1;
            }
            meetings.push(Meeting { cell: (i, j), from_bottom, from_left, tile });
        }
        // Colors that never enter a cell exit through the same step index.
        for (c, e) in exit.iter_mut().enumerate().skip(1) {
            if *e == 0 {
                *e = c;
            }
        }
        (Permutation::new(&exit[1..]).expect("paths induce a bijection"), meetings)
    }

    pub fn permutation(&self, dom: &SkewDomain) -> Permutation {
        self.trace(dom).0
    }

    /// Product of the per-cell weights `𝔭`, `1−𝔭`, `q𝔭`, `1−q𝔭`.
    pub fn weight<S: FieldScalar>(&self, dom: &SkewDomain, pt: &SkewPoint<S>) -> Result<S> {
        let (_, meetings) = self.trace(dom);
        let one = pt.q.one_like();
        let mut acc = one.clone();
        for mt in meetings {
            acc = acc * cell_weight(&mt, pt.p(mt.cell.0, mt.cell.1)?, &pt.q);
        }
        Ok(acc)
    }
}

pub(crate) fn cell_weight<S: FieldScalar>(mt: &Meeting, p: S, q: &S) -> S {
    let one = p.one_like();
    match (mt.in_order(), mt.tile) {
        (true, Tile::Crossing) => p,
        (true, Tile::Elbow) => one - p,
        (false, Tile::Crossing) => q.clone() * p,
        (false, Tile::Elbow) => one - q.clone() * p,
    }
}
