//! Chambers of the secondary fan: one per simplicial fan on (a subset of)
//! the rays, and the symmetry action on them.
//!
//! ```bash
//! cargo run --example gkz_chambers
//! ```

use toric_cox::gkz::{chamber_action_table, enumerate_chambers, is_group_action};
use toric_cox::report::Context;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["P2", "P1xP1", "BlP2", "perm3"] {
        let ctx = Context::builtin(name)?;
        let chambers = enumerate_chambers(&ctx.rays, &ctx.cg)?;
        let table = chamber_action_table(&ctx.group, &chambers, &ctx.cg)?;
        println!("{name}: {} chambers, action ok: {}", chambers.len(), is_group_action(&ctx.group, &table));
        if chambers.len() <= 2 {
            for c in &chambers {
                println!("  sample {}  cones {:?}  unused {:?}", c.sample, c.fan.max_cones(), c.unused_rays);
            }
        }
    }
    let ctx = Context::builtin("perm4")?;
    if let Err(e) = enumerate_chambers(&ctx.rays, &ctx.cg) {
        println!("perm4: {e}");
    }
    Ok(())
}
