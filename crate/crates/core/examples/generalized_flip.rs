//! The generalized flip identity on the nine-color instance and on random
//! decorated rectangle elements.
//!
//! `cargo run --release --example generalized_flip`

use sc6v::scalar::rng_for;
use sc6v::symmetry::{nine_color_instance, random_instance, verify_generalized_flip};

fn main() -> sc6v::Result<()> {
    let inst = nine_color_instance();
    println!("n = {}, cutoffs ({}, {}), rectangle {}x{}", inst.n, inst.i, inst.j, inst.m, inst.rows);
    println!("rectangle permutation {}", inst.rectangle_permutation()?);
    println!("nine-color instance: {}", verify_generalized_flip(&inst, 5, 0).status.as_str());
    let mut rng = rng_for(6, 0);
    let passed = (0..20).filter(|&t| verify_generalized_flip(&random_instance(6, &mut rng), 3, t).is_pass()).count();
    println!("random instances with n = 6: {passed}/20 pass");
    Ok(())
}
