//! The Bondal stratification of the torus for the projective plane, with the
//! polytopes `P_θ` and their lattice points.
//!
//! ```bash
//! cargo run --example bondal_strata
//! ```

use toric_cox::bondal::{enumerate_strata, polytope_p};
use toric_cox::class_group::class_group;
use toric_cox::input::ToricInput;
use toric_cox::linalg::format_rat;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let rays = ToricInput::builtin("P2").expect("builtin").ray_config()?;
    let cg = class_group(&rays);
    let theta = enumerate_strata(&rays, &cg)?;
    println!("strata by dimension: {:?}", theta.counts_by_dim());
    for s in &theta.strata {
        let p = polytope_p(&s.sample.0, &rays)?;
        let verts: Vec<String> =
            p.vertices().iter().map(|v| format!("({})", v.iter().map(format_rat).collect::<Vec<_>>().join(","))).collect();
        println!(
            "θ = {:<12} dim {}  J = {:<9} class {:>2}  P_θ has {} lattice points, vertices {}",
            s.sample.to_string(),
            s.dim,
            format!("{:?}", s.j),
            s.theta_class.to_string(),
            p.lattice_points().len(),
            verts.join(" ")
        );
    }
    Ok(())
}
