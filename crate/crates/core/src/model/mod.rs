//! The colored six-vertex model on skew domains.
//!
//! Colors enter along the lower path `P` (color `c` on its `c`-th step) and
//! leave along `Q`; the color permutation sends a color to the index of its
//! exit step. Cells are processed bottom to top, left to right. A cell of
//! content `c` exchanges the paths on frontier steps `c` and `c+1`, so the
//! law of the color permutation is a product of `R_c(𝔭)` factors.

mod distribution;
mod height;
mod pipe_dream;
mod sampler;
mod wiring;

pub use distribution::{exact_distribution, exact_distribution_capped, sweep_distribution, Method, DEFAULT_CELL_CAP};
pub use height::{height, height_by_paths, joint_distribution, joint_distribution_with, relevant_cells, Engine, JointDistribution};
pub use pipe_dream::{Meeting, PipeDream, Tile};
pub use sampler::{SampleRecord, Sampler};
pub use wiring::wiring_configuration_sum;
