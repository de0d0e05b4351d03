//! Symmetries of the model: the flip of a rectangle, its generalization to
//! decorated Hecke elements, and transformations of cut tuples that
//! preserve joint height distributions.

mod catalog;
mod flip;
mod genflip;
mod main_theorem;
mod transform;

pub use flip::{
    realized_conditions, rectangle_element, rectangle_wiring_point, verify_flip, verify_flip_exhaustive, worked_example, worked_example_brute_force,
    worked_example_closed_forms, FlipInstance, FlipSweep,
};
pub use catalog::{elementary_flip, flip_instance, random_domain, random_flip_instance, FlipSpec};
pub use genflip::{nine_color_instance, random_instance, verify_generalized_flip, GenFlipInstance};
pub use main_theorem::{double_flip_example, global_flip_example, local_flip_example, verify_main, verify_main_unchecked, verify_main_with, Backend, MainInstance};
pub use transform::{check_admissible, Bijection, Transformation};
