//! The group of lattice automorphisms permuting the rays, for a few inputs.
//!
//! ```bash
//! cargo run --example symmetry_group
//! ```

use toric_cox::input::ToricInput;
use toric_cox::linalg::IntMatrix;
use toric_cox::symmetry::compute_symmetry_group;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for name in ["P1", "P2", "P1xP1", "BlP2", "perm3", "perm4"] {
        let rays = ToricInput::builtin(name).expect("builtin").ray_config()?;
        let g = compute_symmetry_group(&rays)?;
        println!("{name:>6}: |G| = {:>2}, {} generators", g.order(), g.generators.len());
    }

    // On the braid fan of rank 3, swapping the last two coordinates of
    // Z^4/(1,1,1,1) acts on M by the matrix below.
    let rays = ToricInput::builtin("perm4").expect("builtin").ray_config()?;
    let g = compute_symmetry_group(&rays)?;
    let on_m = IntMatrix::from_i64_rows(&[&[1, 0, 0], &[0, 1, 0], &[-1, -1, -1]]);
    let swap = g.elements.iter().find(|e| e.dual_matrix == on_m).expect("the transposition is a symmetry");
    println!("\ntransposition acting on N:\n{}", swap.matrix);
    println!("ray permutation: {:?}", swap.ray_permutation);
    Ok(())
}
