//! Hom dimensions between members of `Θ` and an exceptional ordering.
//!
//! ```bash
//! cargo run --example hom_and_order -- P2
//! ```

use toric_cox::bondal::enumerate_strata;
use toric_cox::coxcat::{exceptional_order, HomMatrix};
use toric_cox::report::Context;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "P2".into());
    let ctx = Context::builtin(&name)?;
    let theta = enumerate_strata(&ctx.rays, &ctx.cg)?;
    let hom = HomMatrix::new(&theta, &ctx.rays)?;
    let names: Vec<String> = theta.classes.iter().map(|c| ctx.class_name(c)).collect();
    println!("dim Hom(row, column):");
    for (s, row) in hom.dims.iter().enumerate() {
        println!("  {:>24}  {:?}", names[s], row);
    }
    let order = exceptional_order(&theta, &ctx.cg, &ctx.rays)?;
    let listed: Vec<&str> = order.iter().map(|&c| names[c].as_str()).collect();
    println!("order: {}", listed.join(" < "));
    Ok(())
}
