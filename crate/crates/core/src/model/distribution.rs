use std::collections::BTreeMap;

use rayon::prelude::*;

use super::PipeDream;
use crate::combinat::{Permutation, SkewDomain};
use crate::error::{Error, Result};
use crate::hecke::{yang_baxter_basis, yb_element, HeckeElement};
use crate::scalar::{FieldScalar, SkewPoint, WiringPoint};

/// Largest domain enumerated configuration by configuration unless the
/// caller raises the cap.
pub const DEFAULT_CELL_CAP: usize = 20;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// `Y^{w^{P,Q}}` in the equivalent wiring diagram domain.
    Hecke,
    /// Sum of pipe-dream weights over all `2^{#cells}` configurations.
    BruteForce,
}

/// Law of the color permutation, as an element of the Hecke algebra.
pub fn exact_distribution<S: FieldScalar>(dom: &SkewDomain, pt: &SkewPoint<S>, method: Method) -> Result<HeckeElement<S>> {
    exact_distribution_capped(dom, pt, method, DEFAULT_CELL_CAP)
}

pub fn exact_distribution_capped<S: FieldScalar>(dom: &SkewDomain, pt: &SkewPoint<S>, method: Method, cap: usize) -> Result<HeckeElement<S>> {
    match method {
        Method::Hecke => {
            let (w, z) = dom.to_wiring(&pt.x, &pt.y)?;
            yang_baxter_basis(&w, &WiringPoint { q: pt.q.clone(), z })
        }
        Method::BruteForce => brute_force(dom, pt, cap),
    }
}

/// The product of `R_{c(i,j)}(𝔭_{i,j})` over cells in sweep order, where
/// `c(i,j)` is the content of the cell.
pub fn sweep_distribution<S: FieldScalar>(dom: &SkewDomain, pt: &SkewPoint<S>) -> Result<HeckeElement<S>> {
    let cells = dom.cells();
    let word: Vec<usize> = cells.iter().map(|&(i, j)| dom.content(i, j)).collect();
    let params = cells.iter().map(|&(i, j)| pt.p(i, j)).collect::<Result<Vec<_>>>()?;
    Ok(yb_element(&word, &params, &Permutation::identity(dom.n()), &pt.q))
}

fn brute_force<S: FieldScalar>(dom: &SkewDomain, pt: &SkewPoint<S>, cap: usize) -> Result<HeckeElement<S>> {
    let cells = dom.num_cells();
    if cells > cap {
        return Err(Error::CapExceeded { what: "cells", value: cells, cap });
    }
    // Split the configurations into blocks by their lowest bits.
    let block_bits = cells.min(8);
    let tables: Vec<Result<BTreeMap<Permutation, S>>> = (0u64..1 << block_bits)
        .into_par_iter()
        .map(|low| {
            let mut table: BTreeMap<Permutation, S> = BTreeMap::new();
            for high in 0u64..1 << (cells - block_bits) {
                let pd = PipeDream::from_mask(dom, low | high << block_bits);
                let w = pd.weight(dom, pt)?;
                let pi = pd.permutation(dom);
                match table.get_mut(&pi) {
                    Some(v) => *v = v.clone() + w,
                    None => {
                        table.insert(pi, w);
                    }
                }
            }
            Ok(table)
        })
        .collect();
    let mut out = HeckeElement::zero(dom.n());
    for t in tables {
        for (pi, c) in t? {
            out.add_term(pi, c);
        }
    }
    Ok(out)
}
