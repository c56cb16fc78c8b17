//! Class groups from the Smith normal form of the ray pairing matrix.
//!
//! ```bash
//! cargo run --example class_group
//! ```

use toric_cox::class_group::class_group;
use toric_cox::input::ToricInput;
use toric_cox::rays::RayConfig;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["P2", "P1xP1", "BlP2", "perm3"] {
        let rays = ToricInput::builtin(name).expect("builtin").ray_config()?;
        let cg = class_group(&rays);
        let degrees: Vec<String> = (0..rays.len()).map(|r| cg.degree_of_ray(r).to_string()).collect();
        println!("{name:>6}: rank {}, deg D_ρ = {}", cg.rank(), degrees.join(", "));
    }

    // a weighted projective plane with torsion-free but non-reduced degrees,
    // and a fake projective plane quotient with torsion
    let p123 = RayConfig::from_i64(2, &[&[1, 0], &[0, 1], &[-2, -3]])?;
    let cg = class_group(&p123);
    println!("P(1,2,3): degrees {:?}", (0..3).map(|r| cg.degree_of_ray(r).to_string()).collect::<Vec<_>>());
    let fake = RayConfig::from_i64(2, &[&[1, 0], &[1, 3], &[-2, -3]])?;
    let cg = class_group(&fake);
    println!("P2/μ3: rank {}, torsion {:?}", cg.rank(), cg.torsion_orders());
    Ok(())
}
