//! Write SVG pictures of the planar stratifications, labelled by class.
//!
//! ```bash
//! cargo run --example plot_svg -- /tmp
//! ```

use toric_cox::bondal::enumerate_strata;
use toric_cox::report::Context;
use toric_cox::svg::plot_strata;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = std::env::args().nth(1).unwrap_or_else(|| std::env::temp_dir().display().to_string());
    for name in ["P2", "P1xP1", "BlP2", "perm3"] {
        let ctx = Context::builtin(name)?;
        let theta = enumerate_strata(&ctx.rays, &ctx.cg)?;
        let svg = plot_strata(&ctx.rays, &theta, |s| ctx.class_name(&theta.strata[s].theta_class))?;
        let path = format!("{dir}/{name}.svg");
        std::fs::write(&path, svg)?;
        println!("wrote {path}");
    }
    Ok(())
}
