//! Bondal-Thomsen collections of the built-in inputs, checked against the
//! brute-force sweep over a grid of torsion points.
//!
//! ```bash
//! cargo run --release --example theta_collection
//! ```

use std::time::Instant;

use toric_cox::bondal::{enumerate_strata, frobenius_oracle};
use toric_cox::class_group::class_group;
use toric_cox::input::{ToricInput, BUILTIN_NAMES};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in BUILTIN_NAMES {
        let rays = ToricInput::builtin(name).expect("builtin").ray_config()?;
        let cg = class_group(&rays);
        let start = Instant::now();
        let theta = enumerate_strata(&rays, &cg)?;
        let took = start.elapsed();
        let counts = theta.counts_by_dim();
        let euler: i64 = counts.iter().enumerate().map(|(j, &c)| if j % 2 == 0 { c as i64 } else { -(c as i64) }).sum();
        let ell = if name == "perm4" { 12 } else { 6 };
        let oracle = frobenius_oracle(&rays, &cg, ell);
        let same = oracle.iter().cloned().collect::<Vec<_>>() == theta.classes;
        println!(
            "{name:>6}: strata {counts:?} (Euler {euler}), |Θ| = {:>2}, grid 1/{ell} agrees: {same}  [{took:.1?}]",
            theta.len()
        );
    }
    Ok(())
}
