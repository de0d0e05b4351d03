//! Conditional shift identities: the worked n = 4 instance and an
//! exhaustive scan of S_4.
//!
//! `cargo run --release --example conditional_shift`

use sc6v::klgr::{conditional_example, scan_conditional_shift};
use sc6v::scalar::{random_wiring_point, rng_for, PointConfig, Rational};

fn main() -> sc6v::Result<()> {
    let ex = conditional_example();
    let pt = random_wiring_point(&Rational::one(), 4, &mut rng_for(3, 0), &PointConfig { box_size: 20, ..PointConfig::default() })?;
    let here = ex.probabilities(&pt)?;
    let there = ex.probabilities(&pt.swapped(ex.alpha, ex.beta()))?;
    println!("w = {}, alpha = {}, delta = {}", ex.w, ex.alpha, ex.delta);
    println!("class total {} (swapped {})", here.total, there.total);
    println!("P(pi(alpha) < delta) = {}, swapped P(pi^-1(delta) > alpha) = {}", here.sent_below, there.from_above);
    println!("{:?}", ex.check(&pt)?);
    let scan = scan_conditional_shift(4, 3, 1)?;
    println!("S_4 scan: {} classes, {} counterexamples", scan.cases, scan.counterexamples.len());
    Ok(())
}
