//! Flip invariance on a 2×3 rectangle: both boundary-conditioned
//! probabilities of the worked example, by pipe-dream enumeration and by the
//! Hecke algebra, then an exhaustive check of every small rectangle.
//!
//! `cargo run --release --example flip_theorem`

use sc6v::scalar::{random_rational_skew_point, rng_for, PointConfig};
use sc6v::symmetry::{verify_flip, verify_flip_exhaustive, worked_example, worked_example_brute_force, worked_example_closed_forms};

fn main() -> sc6v::Result<()> {
    let inst = worked_example();
    println!("H = {:?}, V = {:?}, rotated H = {:?}", inst.h.pairs(), inst.v.pairs(), inst.flipped_h().pairs());

    let cfg = PointConfig { box_size: 20, ..PointConfig::default() };
    let pt = random_rational_skew_point(2, 3, &mut rng_for(1, 0), &cfg)?;
    let (lhs, rhs) = worked_example_closed_forms(&pt)?;
    let (brute_lhs, brute_rhs) = worked_example_brute_force(&pt)?;
    println!("at q = {}, x = {:?}, y = {:?}:", pt.q, pt.x, pt.y);
    println!("  closed forms   {lhs}  |  {rhs}");
    println!("  64 pipe dreams {brute_lhs}  |  {brute_rhs}");

    let verdict = verify_flip(&inst, 20, 7);
    println!("verify_flip at 20 points: {}", verdict.status.as_str());

    for sweep in verify_flip_exhaustive(6, 10, 7) {
        println!("  {}x{}: {:>3} boundary pairs  {}", sweep.m, sweep.n, sweep.conditions, sweep.verdict.status.as_str());
    }
    Ok(())
}
