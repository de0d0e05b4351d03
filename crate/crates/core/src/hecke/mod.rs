//! Sparse Hecke algebra arithmetic.
//!
//! `R_k(p) = p·T_k + (1−p)` acts on `T_π` by
//! `p·T_{πs_k} + (1−p)·T_π` when the length goes up and
//! `q·p·T_{πs_k} + (1−q·p)·T_π` when it goes down. Coefficients of products
//! of such factors are the transition probabilities of the colored
//! six-vertex model. [`MergedDistribution`] runs the same action on block
//! labelings when only coarse color information is needed.

mod cps;
mod element;
mod merged;

pub use cps::{verify_color_position, CpsInstance};
pub use element::{star_window, yang_baxter_along, yang_baxter_basis, yang_baxter_params, yb_element, HeckeElement};
pub use merged::{Labels, MergedDistribution, MAX_HEIGHTS};
