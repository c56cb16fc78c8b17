//! The dimension and depth decompositions of `Θ`, with the semi-orthogonality
//! check against the Hom table.
//!
//! ```bash
//! cargo run --example semiorthogonal -- perm3
//! ```

use toric_cox::bondal::enumerate_strata;
use toric_cox::coxcat::{sod, verify_sod_semiorthogonality, HomMatrix, SodKind};
use toric_cox::report::Context;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "perm3".into());
    let ctx = Context::builtin(&name)?;
    let theta = enumerate_strata(&ctx.rays, &ctx.cg)?;
    let hom = HomMatrix::new(&theta, &ctx.rays)?;
    for kind in [SodKind::Dimension, SodKind::Depth] {
        let d = sod(&theta, kind)?;
        let check = verify_sod_semiorthogonality(&theta, &hom, &d)?;
        println!("{kind:?} (clean: {}):", check.passed());
        for p in &d.pieces {
            let members: Vec<String> = p.classes.iter().map(|&c| ctx.class_name(&theta.classes[c])).collect();
            println!("  {:>2}: {}", p.index, members.join(", "));
        }
    }
    Ok(())
}
