//! A simplicial refinement of all chamber fans that the symmetry group
//! preserves, with stacky weights and the compatibility grid.
//!
//! ```bash
//! cargo run --release --example equivariant_refinement -- BlP2
//! ```

use toric_cox::gkz::enumerate_chambers;
use toric_cox::refine::{equivariant_refinement, verify_compatibility};
use toric_cox::report::Context;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "BlP2".into());
    let ctx = Context::builtin(&name)?;
    let chambers = enumerate_chambers(&ctx.rays, &ctx.cg)?;
    let r = equivariant_refinement(&chambers, &ctx.group)?;
    println!("{} chamber fans; common refinement has {} cones", chambers.len(), r.refinement.max_cones().len());
    for (rho, u) in r.fan().rays().rays().iter().enumerate() {
        let p = &r.ray_provenance[rho];
        println!("  ray {:?}  barycenter of {:?} (scale {})  b = {}  a = {:?}", u, p.cone, p.scale, r.weights()[rho], r.multipliers[rho]);
    }
    println!(
        "simplicial {}, refines all {}, invariant {}, stacky maps {}",
        r.is_simplicial(),
        r.refines_all(&chambers),
        r.is_invariant(),
        r.maps_are_stacky()
    );
    let grid = verify_compatibility(&r, &ctx.group, &chambers, &ctx.cg)?;
    println!("compatibility over {} x {} squares: {}", ctx.group.order(), chambers.len(), grid.passed());
    Ok(())
}
