//! Joint laws of height functions under cut transformations: the three
//! built-in flip instances and a handful of random catalog instances.
//!
//! `cargo run --release --example height_symmetries`

use sc6v::scalar::rng_for;
use sc6v::symmetry::{double_flip_example, global_flip_example, local_flip_example, random_flip_instance, verify_main, verify_main_with, Backend};

fn main() {
    for (spec, inst) in [double_flip_example(), global_flip_example(), local_flip_example()] {
        let verdict = verify_main_with(&inst, 3, 1, Backend::Prime);
        println!("{:<9} {} cuts on {} cells: {}", spec.name(), inst.cuts.len(), inst.domain.num_cells(), verdict.status.as_str());
        for (c, d) in inst.cuts.iter().zip(&inst.image_cuts) {
            println!("    {:?} -> {:?}", c.as_array(), d.as_array());
        }
    }
    let mut rng = rng_for(2, 0);
    for t in 0..5 {
        let (spec, inst) = random_flip_instance(3, 4, 3, &mut rng);
        println!("random {:<8} {} cuts: {}", spec.name(), inst.cuts.len(), verify_main(&inst, 3, t).status.as_str());
    }
}
