//! The symmetry group permutes `Θ`; orbits stay inside single pieces of both
//! decompositions.
//!
//! ```bash
//! cargo run --example theta_orbits
//! ```

use toric_cox::bondal::enumerate_strata;
use toric_cox::coxcat::theta_orbit_report;
use toric_cox::linalg::IntMatrix;
use toric_cox::report::Context;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let ctx = Context::builtin("perm3")?;
    let theta = enumerate_strata(&ctx.rays, &ctx.cg)?;
    let report = theta_orbit_report(&theta, &ctx.group, &ctx.cg)?;
    for orbit in &report.orbits {
        let names: Vec<String> = orbit.iter().map(|&c| ctx.class_name(&theta.classes[c])).collect();
        println!("orbit of size {}: {}", orbit.len(), names.join(", "));
    }
    println!("homomorphism: {}, orbits respect decompositions: {}", report.homomorphism, report.orbits_respect_sod);

    let minus = ctx.group.find_by_matrix(&IntMatrix::from_i64_rows(&[&[-1, 0], &[0, -1]])).expect("-1 is a symmetry");
    for (c, &d) in report.permutations[minus].iter().enumerate() {
        if c != d {
            println!("-1 sends {} to {}", ctx.class_name(&theta.classes[c]), ctx.class_name(&theta.classes[d]));
        }
    }
    Ok(())
}
